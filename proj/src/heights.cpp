#include "tricolor/heights.hpp"

#include <cmath>
#include <deque>

namespace tricolor {

namespace {

int32_t floor_div(int32_t a, int32_t b) {
    int32_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// +1 when the color increases by 1 mod 3 across the edge, -1 when by 2.
int gradient_increment(int from, int to) {
    int diff = ((to - from) % 3 + 3) % 3;
    if (diff == 1) return +1;
    if (diff == 2) return -1;
    throw InconsistentGradient("equal colors across an edge");
}

}  // namespace

uint8_t Coloring::at(const Vec& v) const {
    return values[static_cast<size_t>(Grid::torus_grid(dims).index(v))];
}

int32_t TorusHHF::at(const Vec& v) const {
    return values[static_cast<size_t>(Grid::torus_grid(dims).index(v))];
}

int32_t QpHeight::eval(const Vec& v) const {
    Vec r = v;
    int32_t shift = 0;
    for (int i = 0; i < dims.d; ++i) {
        int32_t q = floor_div(r[i], dims.n);
        r[i] -= q * dims.n;
        shift += q * slope[i];
    }
    return base[static_cast<size_t>(Grid::torus_grid(dims).index(r))] + shift;
}

std::vector<Violation> validate(const Coloring& f) {
    std::vector<Violation> out;
    Grid g = Grid::torus_grid(f.dims);
    if (static_cast<int64_t>(f.values.size()) != g.cell_count()) {
        out.push_back({"value array size does not match n^d"});
        return out;
    }
    for (int64_t i = 0; i < g.cell_count(); ++i) {
        if (f.at(i) > 2) out.push_back({"color out of range at " + g.vertex(i).str()});
        for (int ax = 0; ax < f.dims.d; ++ax) {
            int64_t j = g.neighbor(i, ax, +1);
            if (f.at(i) == f.at(j))
                out.push_back({"monochromatic edge at " + g.vertex(i).str() + " axis " + std::to_string(ax)});
        }
    }
    if (f.values[0] != 0) out.push_back({"not normalized: f(0) != 0"});
    return out;
}

std::vector<Violation> validate(const TorusHHF& h) {
    std::vector<Violation> out;
    Grid g = Grid::torus_grid(h.dims);
    if (static_cast<int64_t>(h.values.size()) != g.cell_count()) {
        out.push_back({"value array size does not match n^d"});
        return out;
    }
    if (h.values[0] != 0) out.push_back({"not normalized: h(0) != 0"});
    for (int64_t i = 0; i < g.cell_count(); ++i) {
        Vec v = g.vertex(i);
        if (((h.at(i) % 2) + 2) % 2 != parity(v))
            out.push_back({"height parity mismatch at " + v.str()});
        for (int ax = 0; ax < h.dims.d; ++ax) {
            int64_t j = g.neighbor(i, ax, +1);
            if (std::abs(h.at(i) - h.at(j)) != 1)
                out.push_back({"non-unit step at " + v.str() + " axis " + std::to_string(ax)});
        }
    }
    return out;
}

std::vector<Violation> validate(const QpHeight& h, bool coloring_lift) {
    std::vector<Violation> out;
    Grid g = Grid::torus_grid(h.dims);
    if (static_cast<int64_t>(h.base.size()) != g.cell_count()) {
        out.push_back({"base array size does not match n^d"});
        return out;
    }
    if (h.base[0] != 0) out.push_back({"not normalized: h(0) != 0"});
    const int mod = coloring_lift ? 6 : 2;
    for (int i = 0; i < h.dims.d; ++i) {
        if (((h.slope[i] % mod) + mod) % mod != 0)
            out.push_back({"slope component " + std::to_string(i) + " not a multiple of " + std::to_string(mod)});
        if (std::abs(h.slope[i]) > h.dims.n)
            out.push_back({"slope component " + std::to_string(i) + " exceeds n in absolute value"});
    }
    // every edge, wrap edges included via eval
    for (int64_t i = 0; i < g.cell_count(); ++i) {
        Vec v = g.vertex(i);
        if (((h.at(i) % 2) + 2) % 2 != parity(v))
            out.push_back({"height parity mismatch at " + v.str()});
        for (int ax = 0; ax < h.dims.d; ++ax) {
            Vec w = v;
            w[ax] += 1;
            if (std::abs(h.eval(w) - h.at(i)) != 1)
                out.push_back({"non-unit step at " + v.str() + " axis " + std::to_string(ax)});
        }
    }
    return out;
}

Coloring normalized(const Coloring& f) {
    Coloring r = f;
    int shift = f.values.empty() ? 0 : f.values[0];
    if (shift == 0) return r;
    for (auto& c : r.values) c = static_cast<uint8_t>(((c - shift) % 3 + 3) % 3);
    return r;
}

Coloring mod3(const TorusHHF& h) {
    Coloring f{h.dims, {}};
    f.values.reserve(h.values.size());
    for (int32_t v : h.values) f.values.push_back(static_cast<uint8_t>(((v % 3) + 3) % 3));
    return f;
}

Coloring mod3(const QpHeight& h) {
    for (int i = 0; i < h.dims.d; ++i)
        if (h.slope[i] % 3 != 0)
            throw NonPeriodicResult("mod3 image is not periodic: slope " + h.slope.str() + " not in 3Z^d");
    Coloring f{h.dims, {}};
    f.values.reserve(h.base.size());
    for (int32_t v : h.base) f.values.push_back(static_cast<uint8_t>(((v % 3) + 3) % 3));
    return f;
}

QpHeight lift(const Coloring& f) {
    Grid g = Grid::torus_grid(f.dims);
    const int64_t n = g.cell_count();
    const int d = f.dims.d;
    QpHeight h{f.dims, Vec::zero(d), std::vector<int32_t>(static_cast<size_t>(n), 0)};
    std::vector<bool> seen(static_cast<size_t>(n), false);

    // BFS over the fundamental box without wrap edges; the box is connected.
    std::deque<int64_t> q{0};
    seen[0] = true;
    while (!q.empty()) {
        int64_t i = q.front();
        q.pop_front();
        Vec v = g.vertex(i);
        for (int ax = 0; ax < d; ++ax) {
            for (int dir : {+1, -1}) {
                Vec w = v;
                w[ax] += dir;
                if (w[ax] < 0 || w[ax] >= f.dims.n) continue;  // wrap edges handled below
                int64_t j = g.index(w);
                if (seen[static_cast<size_t>(j)]) continue;
                seen[static_cast<size_t>(j)] = true;
                h.base[static_cast<size_t>(j)] =
                    h.base[static_cast<size_t>(i)] + gradient_increment(f.at(i), f.at(j));
                q.push_back(j);
            }
        }
    }

    // Slope from wrap edges; first wrap edge per axis fixes m_i, the
    // verification pass below re-checks all of them.
    for (int ax = 0; ax < d; ++ax) {
        Vec v = Vec::zero(d);
        v[ax] = f.dims.n - 1;
        Vec w = Vec::zero(d);
        int inc = gradient_increment(f.at(v), f.at(w));
        h.slope[ax] = h.base[static_cast<size_t>(g.index(v))] + inc - h.base[static_cast<size_t>(g.index(w))];
    }

    // Full verification pass over every edge, wrap edges included.
    for (int64_t i = 0; i < n; ++i) {
        Vec v = g.vertex(i);
        for (int ax = 0; ax < d; ++ax) {
            Vec w = v;
            w[ax] += 1;
            int64_t j = g.neighbor(i, ax, +1);
            int expect = gradient_increment(f.at(i), f.at(j));
            if (h.eval(w) - h.at(i) != expect)
                throw InconsistentGradient("gradient integration inconsistent at " + v.str() + " axis " +
                                           std::to_string(ax));
        }
    }
    return h;
}

Vec slope_of(const QpHeight& h) {
    return h.slope;
}

Vec slope_of(const Coloring& f) {
    return lift(normalized(f)).slope;
}

QpHeight negate(const QpHeight& h) {
    QpHeight r = h;
    r.slope = -h.slope;
    for (auto& v : r.base) v = -v;
    return r;
}

TorusHHF to_torus_hhf(const QpHeight& h) {
    if (!h.slope.is_zero()) throw PreconditionFailed("torus HHF requires slope 0, got " + h.slope.str());
    return TorusHHF{h.dims, h.base};
}

QpHeight from_torus_hhf(const TorusHHF& h) {
    return QpHeight{h.dims, Vec::zero(h.dims.d), h.values};
}

namespace {

Json header_json(const char* kind, const Dims& dims) {
    Json j;
    j["kind"] = kind;
    j["d"] = dims.d;
    j["n"] = dims.n;
    return j;
}

Dims dims_from(const Json& j) {
    return Dims::of(j.at("d").get<int>(), j.at("n").get<int>());
}

}  // namespace

Json to_json(const Coloring& f) {
    Json j = header_json("coloring", f.dims);
    j["values"] = f.values;
    return j;
}

Json to_json(const TorusHHF& h) {
    Json j = header_json("hhf", h.dims);
    j["values"] = h.values;
    return j;
}

Json to_json(const QpHeight& h) {
    Json j = header_json("qp", h.dims);
    std::vector<int32_t> m(h.slope.c.begin(), h.slope.c.begin() + h.dims.d);
    j["slope"] = m;
    j["values"] = h.base;
    return j;
}

Coloring coloring_from_json(const Json& j) {
    if (j.at("kind") != "coloring") throw PreconditionFailed("expected kind=coloring");
    return Coloring{dims_from(j), j.at("values").get<std::vector<uint8_t>>()};
}

TorusHHF hhf_from_json(const Json& j) {
    if (j.at("kind") != "hhf") throw PreconditionFailed("expected kind=hhf");
    return TorusHHF{dims_from(j), j.at("values").get<std::vector<int32_t>>()};
}

QpHeight qp_from_json(const Json& j) {
    if (j.at("kind") != "qp") throw PreconditionFailed("expected kind=qp");
    Dims dims = dims_from(j);
    auto m = j.at("slope").get<std::vector<int32_t>>();
    if (static_cast<int>(m.size()) != dims.d) throw PreconditionFailed("slope length does not match d");
    Vec slope = Vec::zero(dims.d);
    for (int i = 0; i < dims.d; ++i) slope[i] = m[static_cast<size_t>(i)];
    return QpHeight{dims, slope, j.at("values").get<std::vector<int32_t>>()};
}

}  // namespace tricolor
