#include "tricolor/enumeration.hpp"

#include <algorithm>

namespace tricolor {

namespace {

constexpr int64_t kFeasibleCount = 100'000'000;

// Proper colorings of one layer: a single vertex for d=1, a cycle C_n for
// d=2. Each state is the color vector of the layer, encoded base 3.
struct LayerStates {
    int cells;  // vertices per layer
    std::vector<std::vector<uint8_t>> states;

    static LayerStates build(const Dims& dims) {
        if (dims.d > 2) throw TooLarge("transfer matrix supported for d <= 2 only");
        LayerStates ls;
        ls.cells = dims.d == 1 ? 1 : dims.n;
        std::vector<uint8_t> cur(static_cast<size_t>(ls.cells), 0);
        std::function<void(int)> rec = [&](int i) {
            if (i == ls.cells) {
                if (ls.cells > 1 && cur[0] == cur[static_cast<size_t>(ls.cells - 1)]) return;  // wrap edge
                ls.states.push_back(cur);
                return;
            }
            for (uint8_t c = 0; c < 3; ++c) {
                if (i > 0 && cur[static_cast<size_t>(i - 1)] == c) continue;
                cur[static_cast<size_t>(i)] = c;
                rec(i + 1);
            }
        };
        rec(0);
        if (ls.states.size() > 70'000) throw TooLarge("transfer matrix layer state space too large");
        return ls;
    }

    bool compatible(size_t a, size_t b) const {
        for (int i = 0; i < cells; ++i)
            if (states[a][static_cast<size_t>(i)] == states[b][static_cast<size_t>(i)]) return false;
        return true;
    }
};

using BigMatrix = std::vector<std::vector<BigInt>>;

BigMatrix matmul(const BigMatrix& a, const BigMatrix& b) {
    size_t s = a.size();
    BigMatrix r(s, std::vector<BigInt>(s, 0));
    for (size_t i = 0; i < s; ++i)
        for (size_t k = 0; k < s; ++k) {
            if (a[i][k] == 0) continue;
            for (size_t j = 0; j < s; ++j) r[i][j] += a[i][k] * b[k][j];
        }
    return r;
}

BigMatrix matpow(BigMatrix m, int e) {
    size_t s = m.size();
    BigMatrix r(s, std::vector<BigInt>(s, 0));
    for (size_t i = 0; i < s; ++i) r[i][i] = 1;
    while (e > 0) {
        if (e & 1) r = matmul(r, m);
        m = matmul(m, m);
        e >>= 1;
    }
    return r;
}

BigInt transfer_count(const Dims& dims) {
    LayerStates ls = LayerStates::build(dims);
    size_t s = ls.states.size();
    BigMatrix m(s, std::vector<BigInt>(s, 0));
    for (size_t a = 0; a < s; ++a)
        for (size_t b = 0; b < s; ++b)
            if (ls.compatible(a, b)) m[a][b] = 1;
    BigMatrix p = matpow(m, dims.n);
    BigInt trace = 0;
    for (size_t a = 0; a < s; ++a) trace += p[a][a];
    // raw torus count / 3 = normalized count
    return trace / 3;
}

}  // namespace

void check_enumeration_feasible(const Dims& dims) {
    if (dims.d == 1) {
        // (2^n + 2) / 3 for even n
        if (dims.n > 26) throw TooLarge("d=1 enumeration infeasible for n > 26");
        return;
    }
    if (dims.d == 2) {
        BigInt c = transfer_count(dims);
        if (c > kFeasibleCount) throw TooLarge("estimated count " + c.str() + " exceeds the 1e8 guard");
        return;
    }
    throw TooLarge("exact enumeration supported for d <= 2 only");
}

void enumerate_colorings(const Dims& dims, const std::function<bool(const Coloring&)>& cb) {
    check_enumeration_feasible(dims);
    Grid g = Grid::torus_grid(dims);
    const int64_t cells = g.cell_count();
    const int d = dims.d;

    // For each cell, the already-assigned neighbors (smaller index) to check
    // against. Wrap constraints appear once the far side of an axis is hit.
    std::vector<std::vector<int32_t>> back(static_cast<size_t>(cells));
    for (int64_t i = 0; i < cells; ++i)
        for (int ax = 0; ax < d; ++ax)
            for (int dir : {+1, -1}) {
                int64_t j = g.neighbor(i, ax, dir);
                if (j < i) back[static_cast<size_t>(i)].push_back(static_cast<int32_t>(j));
            }

    Coloring f{dims, std::vector<uint8_t>(static_cast<size_t>(cells), 0)};
    bool stop = false;
    std::function<void(int64_t)> rec = [&](int64_t i) {
        if (stop) return;
        if (i == cells) {
            if (!cb(f)) stop = true;
            return;
        }
        const uint8_t last = (i == 0) ? 0 : 2;  // cell 0 pinned to color 0
        for (uint8_t c = 0; c <= last; ++c) {
            bool ok = true;
            for (int32_t j : back[static_cast<size_t>(i)])
                if (f.values[static_cast<size_t>(j)] == c) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            f.values[static_cast<size_t>(i)] = c;
            rec(i + 1);
            if (stop) return;
        }
    };
    rec(0);
}

BigInt count_colorings(const Dims& dims, CountMethod method) {
    if (method == CountMethod::transfer) return transfer_count(dims);
    BigInt count = 0;
    enumerate_colorings(dims, [&](const Coloring&) {
        ++count;
        return true;
    });
    return count;
}

Vec fast_slope(const Coloring& f) {
    Vec m = Vec::zero(f.dims.d);
    for (int ax = 0; ax < f.dims.d; ++ax) {
        int32_t acc = 0;
        Vec v = Vec::zero(f.dims.d);
        for (int k = 0; k < f.dims.n; ++k) {
            Vec w = v;
            w[ax] = (v[ax] + 1) % f.dims.n;
            int diff = ((f.at(w) - f.at(v)) % 3 + 3) % 3;
            acc += diff == 1 ? 1 : -1;
            v = w;
        }
        m[ax] = acc;
    }
    return m;
}

BigInt count_torus_hhfs(const Dims& dims) {
    check_enumeration_feasible(dims);
    Grid g = Grid::torus_grid(dims);
    const int64_t cells = g.cell_count();
    const int d = dims.d;
    std::vector<std::vector<int32_t>> back(static_cast<size_t>(cells));
    for (int64_t i = 0; i < cells; ++i)
        for (int ax = 0; ax < d; ++ax)
            for (int dir : {+1, -1}) {
                int64_t j = g.neighbor(i, ax, dir);
                if (j < i) back[static_cast<size_t>(i)].push_back(static_cast<int32_t>(j));
            }
    std::vector<int32_t> h(static_cast<size_t>(cells), 0);
    BigInt count = 0;
    std::function<void(int64_t)> rec = [&](int64_t i) {
        if (i == cells) {
            ++count;
            return;
        }
        // lexicographic order guarantees at least one earlier neighbor
        for (int32_t step : {+1, -1}) {
            int32_t val = h[static_cast<size_t>(back[static_cast<size_t>(i)][0])] + step;
            bool ok = true;
            for (int32_t j : back[static_cast<size_t>(i)])
                if (std::abs(h[static_cast<size_t>(j)] - val) != 1) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            h[static_cast<size_t>(i)] = val;
            rec(i + 1);
        }
    };
    rec(1);
    return count;
}

SlopePartition partition_by_slope(const Dims& dims) {
    SlopePartition p{dims, {}, 0};
    enumerate_colorings(dims, [&](const Coloring& f) {
        p.counts[fast_slope(f)] += 1;
        p.total += 1;
        return true;
    });
    return p;
}

void enumerate_slope_class(const Dims& dims, const Vec& m,
                           const std::function<bool(const QpHeight&)>& cb) {
    for (int i = 0; i < dims.d; ++i)
        if (std::abs(m[i]) > dims.n) return;  // QP_m empty when |m_i| > n
    enumerate_colorings(dims, [&](const Coloring& f) {
        if (fast_slope(f) == m) return cb(lift(f));
        return true;
    });
}

std::vector<QpHeight> slope_class(const Dims& dims, const Vec& m) {
    std::vector<QpHeight> out;
    enumerate_slope_class(dims, m, [&](const QpHeight& h) {
        out.push_back(h);
        return true;
    });
    return out;
}

std::map<Vec, std::vector<QpHeight>, VecLess> nonzero_slope_classes(const Dims& dims) {
    std::map<Vec, std::vector<QpHeight>, VecLess> out;
    enumerate_colorings(dims, [&](const Coloring& f) {
        Vec m = fast_slope(f);
        if (!m.is_zero()) out[m].push_back(lift(f));
        return true;
    });
    return out;
}

Json to_json(const SlopePartition& p) {
    Json j;
    j["d"] = p.dims.d;
    j["n"] = p.dims.n;
    j["total"] = p.total.str();
    Json counts = Json::array();
    for (const auto& [m, c] : p.counts) {
        Json entry;
        std::vector<int32_t> mv(m.c.begin(), m.c.begin() + m.d);
        entry["m"] = mv;
        entry["count"] = c.str();
        counts.push_back(entry);
    }
    j["counts"] = counts;
    return j;
}

SlopePartition partition_from_json(const Json& j) {
    SlopePartition p{Dims::of(j.at("d").get<int>(), j.at("n").get<int>()), {}, BigInt(j.at("total").get<std::string>())};
    for (const auto& entry : j.at("counts")) {
        auto mv = entry.at("m").get<std::vector<int32_t>>();
        Vec m = Vec::zero(p.dims.d);
        for (int i = 0; i < p.dims.d; ++i) m[i] = mv[static_cast<size_t>(i)];
        p.counts[m] = BigInt(entry.at("count").get<std::string>());
    }
    return p;
}

}  // namespace tricolor
