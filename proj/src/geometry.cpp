#include "tricolor/geometry.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <deque>
#include <sstream>

namespace tricolor {

Dims Dims::of(int d, int n) {
    if (d < 1 || d > kMaxDim) throw PreconditionFailed("dimension must be in [1, " + std::to_string(kMaxDim) + "]");
    if (n < 4 || n % 2 != 0) throw PreconditionFailed("side length must be an even integer >= 4");
    return Dims{d, n};
}

int64_t Dims::cells() const {
    int64_t c = 1;
    for (int i = 0; i < d; ++i) c *= n;
    return c;
}

Vec Vec::zero(int d) {
    Vec v;
    v.d = d;
    return v;
}

Vec Vec::axis(int d, int ax, int32_t value) {
    Vec v = zero(d);
    v[ax] = value;
    return v;
}

Vec Vec::operator+(const Vec& o) const {
    Vec r = *this;
    for (int i = 0; i < d; ++i) r[i] += o[i];
    return r;
}

Vec Vec::operator-(const Vec& o) const {
    Vec r = *this;
    for (int i = 0; i < d; ++i) r[i] -= o[i];
    return r;
}

Vec Vec::operator*(int32_t k) const {
    Vec r = *this;
    for (int i = 0; i < d; ++i) r[i] *= k;
    return r;
}

Vec Vec::operator-() const {
    Vec r = *this;
    for (int i = 0; i < d; ++i) r[i] = -r[i];
    return r;
}

bool Vec::lex_less(const Vec& o) const {
    for (int i = 0; i < d; ++i) {
        if (c[static_cast<size_t>(i)] != o[i]) return c[static_cast<size_t>(i)] < o[i];
    }
    return false;
}

int64_t Vec::l1() const {
    int64_t s = 0;
    for (int i = 0; i < d; ++i) s += std::abs(static_cast<int64_t>(c[static_cast<size_t>(i)]));
    return s;
}

bool Vec::is_zero() const {
    for (int i = 0; i < d; ++i)
        if (c[static_cast<size_t>(i)] != 0) return false;
    return true;
}

std::string Vec::str() const {
    std::ostringstream os;
    os << "(";
    for (int i = 0; i < d; ++i) os << (i ? "," : "") << c[static_cast<size_t>(i)];
    os << ")";
    return os.str();
}

size_t VecHash::operator()(const Vec& v) const {
    uint64_t h = 0x9e3779b97f4a7c15ull + static_cast<uint64_t>(v.d);
    for (int i = 0; i < v.d; ++i) {
        h ^= static_cast<uint64_t>(static_cast<uint32_t>(v[i])) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return static_cast<size_t>(h);
}

std::vector<Vec> neighbors(const Dims& dims, const Vec& v, bool torus) {
    std::vector<Vec> out;
    out.reserve(static_cast<size_t>(2 * dims.d));
    for (int ax = 0; ax < dims.d; ++ax) {
        for (int dir : {+1, -1}) {
            Vec w = v;
            w[ax] += dir;
            if (torus) w[ax] = static_cast<int32_t>(((w[ax] % dims.n) + dims.n) % dims.n);
            out.push_back(w);
        }
    }
    return out;
}

Vec project_vertex(const Dims& dims, const Vec& v) {
    Vec r = v;
    for (int i = 0; i < dims.d; ++i) r[i] = static_cast<int32_t>(((r[i] % dims.n) + dims.n) % dims.n);
    return r;
}

Grid Grid::torus_grid(Dims dims) {
    Grid g;
    g.dims = dims;
    g.torus = true;
    return g;
}

Grid Grid::window_grid(Dims dims, int K) {
    if (K < 1 || K > kMaxWindowK) throw PreconditionFailed("window radius K must be in [1, 8]");
    Grid g;
    g.dims = dims;
    g.torus = false;
    g.window_k = K;
    return g;
}

int64_t Grid::cell_count() const {
    int64_t c = 1;
    for (int i = 0; i < dims.d; ++i) c *= side();
    return c;
}

bool Grid::contains(const Vec& v) const {
    for (int i = 0; i < dims.d; ++i)
        if (v[i] < lo() || v[i] >= hi()) return false;
    return true;
}

int64_t Grid::index(const Vec& v) const {
    int64_t idx = 0;
    int64_t stride = 1;
    for (int i = 0; i < dims.d; ++i) {
        idx += (static_cast<int64_t>(v[i]) - lo()) * stride;
        stride *= side();
    }
    return idx;
}

Vec Grid::vertex(int64_t idx) const {
    Vec v = Vec::zero(dims.d);
    for (int i = 0; i < dims.d; ++i) {
        v[i] = static_cast<int32_t>(idx % side()) + lo();
        idx /= side();
    }
    return v;
}

int64_t Grid::neighbor(int64_t idx, int axis, int dir) const {
    int64_t stride = 1;
    for (int i = 0; i < axis; ++i) stride *= side();
    int32_t coord = static_cast<int32_t>((idx / stride) % side());
    if (torus) {
        int32_t next = coord + dir;
        if (next < 0) next += side();
        if (next >= side()) next -= side();
        return idx + static_cast<int64_t>(next - coord) * stride;
    }
    int32_t next = coord + dir;
    if (next < 0 || next >= side()) return -1;
    return idx + static_cast<int64_t>(dir) * stride;
}

bool Grid::on_frame(int64_t idx) const {
    if (torus) return false;
    for (int i = 0; i < dims.d; ++i) {
        int32_t coord = static_cast<int32_t>(idx % side());
        if (coord == 0 || coord == side() - 1) return true;
        idx /= side();
    }
    return false;
}

bool Grid::on_frame_vec(const Vec& v) const {
    if (torus) return false;
    for (int i = 0; i < dims.d; ++i)
        if (v[i] == lo() || v[i] == hi() - 1) return true;
    return false;
}

Bits::Bits(int64_t n, bool value) : w_(static_cast<size_t>((n + 63) / 64), value ? ~uint64_t{0} : 0), n_(n) {
    if (value && n % 64 != 0 && !w_.empty()) w_.back() &= (uint64_t{1} << (n % 64)) - 1;
}

int64_t Bits::count() const {
    int64_t c = 0;
    for (uint64_t w : w_) c += std::popcount(w);
    return c;
}

bool Bits::any() const {
    for (uint64_t w : w_)
        if (w) return true;
    return false;
}

int64_t Bits::find_first() const {
    for (size_t i = 0; i < w_.size(); ++i)
        if (w_[i]) return static_cast<int64_t>(i) * 64 + std::countr_zero(w_[i]);
    return -1;
}

Bits Bits::operator&(const Bits& o) const {
    Bits r = *this;
    for (size_t i = 0; i < w_.size(); ++i) r.w_[i] &= o.w_[i];
    return r;
}

Bits Bits::operator|(const Bits& o) const {
    Bits r = *this;
    for (size_t i = 0; i < w_.size(); ++i) r.w_[i] |= o.w_[i];
    return r;
}

Bits Bits::and_not(const Bits& o) const {
    Bits r = *this;
    for (size_t i = 0; i < w_.size(); ++i) r.w_[i] &= ~o.w_[i];
    return r;
}

Bits Bits::complement() const {
    Bits r(n_, true);
    for (size_t i = 0; i < w_.size(); ++i) r.w_[i] &= ~w_[i];
    return r;
}

bool Bits::subset_of(const Bits& o) const {
    for (size_t i = 0; i < w_.size(); ++i)
        if (w_[i] & ~o.w_[i]) return false;
    return true;
}

bool Bits::intersects(const Bits& o) const {
    for (size_t i = 0; i < w_.size(); ++i)
        if (w_[i] & o.w_[i]) return true;
    return false;
}

CellSet CellSet::full(const Grid& g) {
    return {g, Bits(g.cell_count(), true)};
}

bool frame_contact(const CellSet& u) {
    if (u.grid.torus) return false;
    const int64_t n = u.grid.cell_count();
    for (int64_t i = 0; i < n; ++i) {
        if (!u.bits.get(i)) continue;
        if (u.grid.on_frame(i)) return true;
        for (int ax = 0; ax < u.grid.dims.d; ++ax) {
            for (int dir : {+1, -1}) {
                int64_t j = u.grid.neighbor(i, ax, dir);
                if (j >= 0 && u.grid.on_frame(j)) return true;
            }
        }
    }
    return false;
}

CellSet op_plus(const CellSet& u) {
    CellSet r = u;
    const int64_t n = u.grid.cell_count();
    for (int64_t i = 0; i < n; ++i) {
        if (u.bits.get(i)) continue;
        for (int ax = 0; ax < u.grid.dims.d && !r.bits.get(i); ++ax) {
            for (int dir : {+1, -1}) {
                int64_t j = u.grid.neighbor(i, ax, dir);
                if (j >= 0 && u.bits.get(j)) {
                    r.bits.set(i);
                    break;
                }
            }
        }
    }
    return r;
}

CellSet op_minus(const CellSet& u) {
    // Off-window neighbors count as members, so U^- = ((U^c)^+)^c holds
    // verbatim on the whole window.
    CellSet r = CellSet::empty(u.grid);
    const int64_t n = u.grid.cell_count();
    for (int64_t i = 0; i < n; ++i) {
        if (!u.bits.get(i)) continue;
        bool all_in = true;
        for (int ax = 0; ax < u.grid.dims.d && all_in; ++ax) {
            for (int dir : {+1, -1}) {
                int64_t j = u.grid.neighbor(i, ax, dir);
                if (j >= 0 && !u.bits.get(j)) {
                    all_in = false;
                    break;
                }
            }
        }
        if (all_in) r.bits.set(i);
    }
    return r;
}

CellSet intb(const CellSet& u) {
    return {u.grid, u.bits.and_not(op_minus(u).bits)};
}

CellSet extb(const CellSet& u) {
    return {u.grid, op_plus(u).bits.and_not(u.bits)};
}

std::vector<int64_t> boundary_edges(const CellSet& u) {
    std::vector<int64_t> out;
    const int64_t n = u.grid.cell_count();
    const int d = u.grid.dims.d;
    for (int64_t i = 0; i < n; ++i) {
        for (int ax = 0; ax < d; ++ax) {
            int64_t j = u.grid.neighbor(i, ax, +1);
            if (j < 0) continue;
            if (u.bits.get(i) != u.bits.get(j)) out.push_back(i * d + ax);
        }
    }
    return out;
}

Bits boundary_edge_bits(const CellSet& u) {
    const int d = u.grid.dims.d;
    Bits r(u.grid.cell_count() * d);
    for (int64_t e : boundary_edges(u)) r.set(e);
    return r;
}

bool is_odd_set(const CellSet& u) {
    CellSet b = intb(u);
    int seen = -1;
    const int64_t n = u.grid.cell_count();
    for (int64_t i = 0; i < n; ++i) {
        if (!b.bits.get(i)) continue;
        int p = parity(u.grid.vertex(i));
        if (seen < 0) seen = p;
        else if (seen != p) return false;
    }
    return true;
}

namespace {

// BFS flood fill over members of `mask` starting from `start`.
Bits flood(const Grid& g, const Bits& mask, int64_t start) {
    Bits seen(g.cell_count());
    if (start < 0 || !mask.get(start)) return seen;
    std::deque<int64_t> q{start};
    seen.set(start);
    while (!q.empty()) {
        int64_t i = q.front();
        q.pop_front();
        for (int ax = 0; ax < g.dims.d; ++ax) {
            for (int dir : {+1, -1}) {
                int64_t j = g.neighbor(i, ax, dir);
                if (j >= 0 && mask.get(j) && !seen.get(j)) {
                    seen.set(j);
                    q.push_back(j);
                }
            }
        }
    }
    return seen;
}

}  // namespace

bool is_connected(const CellSet& u) {
    int64_t first = u.bits.find_first();
    if (first < 0) return true;
    return flood(u.grid, u.bits, first) == u.bits;
}

std::vector<CellSet> connected_components(const CellSet& u) {
    std::vector<CellSet> out;
    Bits rest = u.bits;
    for (int64_t s = rest.find_first(); s >= 0; s = rest.find_first()) {
        Bits comp = flood(u.grid, rest, s);
        rest = rest.and_not(comp);
        out.push_back({u.grid, comp});
    }
    return out;
}

std::optional<int64_t> set_distance(const Grid& g, const Bits& a, const Bits& b) {
    if (a.none() || b.none()) return std::nullopt;
    if (a.intersects(b)) return 0;
    // multi-source BFS from a until b is hit
    Bits seen = a;
    std::deque<int64_t> q;
    const int64_t n = g.cell_count();
    for (int64_t i = 0; i < n; ++i)
        if (a.get(i)) q.push_back(i);
    std::vector<int64_t> dist(static_cast<size_t>(n), 0);
    while (!q.empty()) {
        int64_t i = q.front();
        q.pop_front();
        for (int ax = 0; ax < g.dims.d; ++ax) {
            for (int dir : {+1, -1}) {
                int64_t j = g.neighbor(i, ax, dir);
                if (j < 0 || seen.get(j)) continue;
                dist[static_cast<size_t>(j)] = dist[static_cast<size_t>(i)] + 1;
                if (b.get(j)) return dist[static_cast<size_t>(j)];
                seen.set(j);
                q.push_back(j);
            }
        }
    }
    // b unreachable within the grid
    return std::nullopt;
}

int64_t vertex_distance(const Dims& dims, bool torus, const Vec& a, const Vec& b) {
    int64_t s = 0;
    for (int i = 0; i < dims.d; ++i) {
        int64_t diff = std::abs(static_cast<int64_t>(a[i]) - b[i]);
        if (torus) {
            diff %= dims.n;
            diff = std::min(diff, dims.n - diff);
        }
        s += diff;
    }
    return s;
}

CellSet translate_strict(const CellSet& u, const Vec& x) {
    if (u.grid.torus) {
        CellSet r = CellSet::empty(u.grid);
        const int64_t n = u.grid.cell_count();
        for (int64_t i = 0; i < n; ++i)
            if (u.bits.get(i)) r.insert(project_vertex(u.grid.dims, u.grid.vertex(i) + x));
        return r;
    }
    CellSet r = CellSet::empty(u.grid);
    const int64_t n = u.grid.cell_count();
    for (int64_t i = 0; i < n; ++i) {
        if (!u.bits.get(i)) continue;
        Vec w = u.grid.vertex(i) + x;
        if (!u.grid.contains(w)) throw WindowOverflow("translate by " + x.str() + " leaves the window");
        r.insert(w);
    }
    return r;
}

ClippedTranslate translate_clipped(const CellSet& u, const Vec& x) {
    ClippedTranslate r{CellSet::empty(u.grid), Bits(u.grid.cell_count())};
    const int64_t n = u.grid.cell_count();
    for (int64_t i = 0; i < n; ++i) {
        Vec w = u.grid.vertex(i) - x;
        if (!u.grid.contains(w)) continue;
        r.known.set(i);
        if (u.bits.get(u.grid.index(w))) r.set.bits.set(i);
    }
    return r;
}

CellSet project(const CellSet& lattice_set) {
    if (lattice_set.grid.torus) throw PreconditionFailed("project expects a lattice set");
    Grid tg = Grid::torus_grid(lattice_set.grid.dims);
    CellSet r = CellSet::empty(tg);
    const int64_t n = lattice_set.grid.cell_count();
    for (int64_t i = 0; i < n; ++i)
        if (lattice_set.bits.get(i)) r.insert(project_vertex(tg.dims, lattice_set.grid.vertex(i)));
    return r;
}

int64_t project_edge(const Grid& lattice, int64_t edge_id) {
    const int d = lattice.dims.d;
    int64_t cell = edge_id / d;
    int axis = static_cast<int>(edge_id % d);
    Grid tg = Grid::torus_grid(lattice.dims);
    return tg.index(project_vertex(lattice.dims, lattice.vertex(cell))) * d + axis;
}

std::vector<int64_t> project_edges(const Grid& lattice, const std::vector<int64_t>& edges) {
    std::vector<int64_t> out;
    out.reserve(edges.size());
    for (int64_t e : edges) out.push_back(project_edge(lattice, e));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace tricolor
