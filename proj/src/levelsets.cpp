#include "tricolor/levelsets.hpp"

#include <algorithm>
#include <deque>

#include "tricolor/trichotomy.hpp"

namespace tricolor {

HeightField HeightField::torus(const TorusHHF& f) {
    return HeightField{Grid::torus_grid(f.dims), f.values, std::nullopt};
}

HeightField HeightField::lattice(const QpHeight& f, int K) {
    Grid g = Grid::window_grid(f.dims, K);
    HeightField hf{g, std::vector<int32_t>(static_cast<size_t>(g.cell_count())), f};
    for (int64_t i = 0; i < g.cell_count(); ++i) hf.h[static_cast<size_t>(i)] = f.eval(g.vertex(i));
    return hf;
}

HeightField HeightField::negated() const {
    HeightField r = *this;
    for (auto& v : r.h) v = -v;
    if (r.source) r.source = negate(*source);
    return r;
}

int32_t HeightField::min_height() const {
    return *std::min_element(h.begin(), h.end());
}

int32_t HeightField::max_height() const {
    return *std::max_element(h.begin(), h.end());
}

namespace {

// BFS from start over cells with height <= k.
Bits low_flood(const HeightField& f, int64_t start, int32_t k, bool* touched_frame) {
    Bits seen(f.grid.cell_count());
    seen.set(start);
    std::deque<int64_t> q{start};
    while (!q.empty()) {
        int64_t i = q.front();
        q.pop_front();
        if (touched_frame && f.grid.on_frame(i)) *touched_frame = true;
        for (int ax = 0; ax < f.grid.dims.d; ++ax)
            for (int dir : {+1, -1}) {
                int64_t j = f.grid.neighbor(i, ax, dir);
                if (j < 0 || seen.get(j) || f.at(j) > k) continue;
                seen.set(j);
                q.push_back(j);
            }
    }
    return seen;
}

// BFS from start over cells of `mask`.
Bits mask_flood(const Grid& g, const Bits& mask, int64_t start, bool* touched_frame) {
    Bits seen(g.cell_count());
    seen.set(start);
    std::deque<int64_t> q{start};
    while (!q.empty()) {
        int64_t i = q.front();
        q.pop_front();
        if (touched_frame && g.on_frame(i)) *touched_frame = true;
        for (int ax = 0; ax < g.dims.d; ++ax)
            for (int dir : {+1, -1}) {
                int64_t j = g.neighbor(i, ax, dir);
                if (j < 0 || seen.get(j) || !mask.get(j)) continue;
                seen.set(j);
                q.push_back(j);
            }
    }
    return seen;
}

void require_in_grid(const HeightField& f, const Vec& v, const char* role) {
    if (!f.grid.contains(v))
        throw WindowOverflow(std::string(role) + " anchor " + v.str() + " lies outside the grid");
}

void require_level_in_range(const HeightField& f, int32_t k) {
    if (k < f.min_height() || k > f.max_height())
        throw LevelMismatch("level " + std::to_string(k) + " outside the height range of the grid");
}

}  // namespace

CellSet sublevel_set(const HeightField& f, const Vec& u, int32_t k, bool* touched_frame) {
    require_in_grid(f, u, "sublevel");
    require_level_in_range(f, k);
    if (f.at(u) > k) throw LevelMismatch("h(u) > k for sublevel set at " + u.str());
    return {f.grid, low_flood(f, f.grid.index(u), k, touched_frame)};
}

LevelComponent sublevel_component(const HeightField& f, const Vec& u, const Vec& v, int32_t k) {
    require_in_grid(f, u, "inside");
    require_in_grid(f, v, "outside");
    require_level_in_range(f, k);
    if (!(f.at(u) <= k && k < f.at(v)))
        throw LevelMismatch("need h(u) <= k < h(v), got h(u)=" + std::to_string(f.at(u)) + " k=" +
                            std::to_string(k) + " h(v)=" + std::to_string(f.at(v)));
    bool clipped = false;
    Bits ll = low_flood(f, f.grid.index(u), k, &clipped);
    Bits rest = ll.complement();
    Bits comp_v = mask_flood(f.grid, rest, f.grid.index(v), &clipped);
    LevelComponent lc;
    lc.kind = LcKind::sub;
    lc.level = k;
    lc.u = u;
    lc.v = v;
    lc.carrier = {f.grid, comp_v.complement()};
    lc.inner_height = k;
    lc.outer_height = k + 1;
    lc.clipped = clipped;
    return lc;
}

LevelComponent superlevel_component(const HeightField& f, const Vec& u, const Vec& v, int32_t k) {
    // LC_h^{k-}(u,v) := LC_{-h}^{(-k)+}(u,v)
    LevelComponent lc = sublevel_component(f.negated(), u, v, -k);
    lc.kind = LcKind::super;
    lc.level = k;
    lc.inner_height = k;
    lc.outer_height = k - 1;
    return lc;
}

LevelComponent component_of_edge(const HeightField& f, const Vec& a, const Vec& b) {
    require_in_grid(f, a, "edge");
    require_in_grid(f, b, "edge");
    const Vec lo = f.at(a) < f.at(b) ? a : b;
    const Vec hi = f.at(a) < f.at(b) ? b : a;
    return sublevel_component(f, lo, hi, f.at(lo));
}

namespace {

// One fixed shortest path from u to v: axis by axis, wrap-aware on the torus.
std::vector<Vec> shortest_path(const Grid& g, const Vec& u, const Vec& v) {
    std::vector<Vec> path{u};
    Vec cur = u;
    for (int ax = 0; ax < g.dims.d; ++ax) {
        int32_t diff = v[ax] - cur[ax];
        int step;
        int64_t len;
        if (g.torus) {
            int32_t fwd = ((diff % g.dims.n) + g.dims.n) % g.dims.n;
            if (fwd <= g.dims.n - fwd && fwd != 0) {
                step = +1;
                len = fwd;
            } else {
                step = -1;
                len = (g.dims.n - fwd) % g.dims.n;
            }
        } else {
            step = diff >= 0 ? +1 : -1;
            len = std::abs(static_cast<int64_t>(diff));
        }
        for (int64_t s = 0; s < len; ++s) {
            cur[ax] += step;
            if (g.torus) cur[ax] = static_cast<int32_t>(((cur[ax] % g.dims.n) + g.dims.n) % g.dims.n);
            path.push_back(cur);
        }
    }
    return path;
}

void dedupe_components(std::vector<LevelComponent>& comps) {
    std::vector<LevelComponent> out;
    for (auto& c : comps) {
        bool dup = false;
        for (const auto& o : out)
            if (o.carrier.bits == c.carrier.bits && o.kind == c.kind) {
                dup = true;
                break;
            }
        if (!dup) out.push_back(std::move(c));
    }
    comps = std::move(out);
}

}  // namespace

std::vector<LevelComponent> separating_family(const HeightField& f, const Vec& u, const Vec& v) {
    std::vector<LevelComponent> family;
    if (u == v) return family;
    require_in_grid(f, u, "from");
    require_in_grid(f, v, "to");
    std::vector<Vec> path = shortest_path(f.grid, u, v);
    // Each unit step adds or removes at most one separating component: the
    // unique component whose boundary carries that edge.
    std::vector<LevelComponent> met;
    for (size_t i = 0; i + 1 < path.size(); ++i)
        met.push_back(component_of_edge(f, path[i], path[i + 1]));
    dedupe_components(met);
    for (auto& c : met) {
        if (c.carrier.contains(u) && !c.carrier.contains(v)) family.push_back(std::move(c));
    }
    std::sort(family.begin(), family.end(),
              [](const LevelComponent& a, const LevelComponent& b) { return a.carrier.count() < b.carrier.count(); });
    for (size_t i = 0; i + 1 < family.size(); ++i) {
        if (!family[i].carrier.bits.subset_of(family[i + 1].carrier.bits))
            throw WindowUnstable("separating family is not totally ordered by inclusion within the window");
    }
    return family;
}

int64_t height_diff_via_components(const HeightField& f, const Vec& u, const Vec& v) {
    if (u == v) return 0;
    std::vector<Vec> path = shortest_path(f.grid, u, v);
    std::vector<LevelComponent> met;
    for (size_t i = 0; i + 1 < path.size(); ++i)
        met.push_back(component_of_edge(f, path[i], path[i + 1]));
    dedupe_components(met);
    int64_t fwd = 0, bwd = 0;
    for (const auto& c : met) {
        bool has_u = c.carrier.contains(u), has_v = c.carrier.contains(v);
        if (has_u && !has_v) ++fwd;
        if (has_v && !has_u) ++bwd;
    }
    return fwd - bwd;
}

LevelComponent translate_component(const LevelComponent& a, const Vec& x, const HeightField& f) {
    if (f.grid.torus) throw PreconditionFailed("translate_component expects a lattice component");
    if (!f.source) throw PreconditionFailed("lattice field lost its generating function");
    for (int i = 0; i < f.grid.dims.d; ++i)
        if (x[i] % f.grid.dims.n != 0) throw PreconditionFailed("translation must lie in nZ^d");
    // An anchor against the window frame yields a fragmented carrier (the
    // true set routes around the outside), so demand one period of margin.
    for (const Vec* anchor : {&a.u, &a.v}) {
        Vec w = *anchor + x;
        for (int i = 0; i < f.grid.dims.d; ++i)
            if (w[i] < f.grid.lo() + f.grid.dims.n || w[i] >= f.grid.hi() - f.grid.dims.n)
                throw WindowOverflow("translated anchor " + w.str() + " too close to the window frame");
    }
    const int32_t delta = f.source->eval(x);  // h(x) - h(0)
    if (a.kind == LcKind::sub) return sublevel_component(f, a.u + x, a.v + x, a.level + delta);
    return superlevel_component(f, a.u + x, a.v + x, a.level + delta);
}

std::vector<LevelComponent> components_of_edges(const HeightField& f, const std::vector<int64_t>& edges) {
    std::vector<LevelComponent> out;
    const int d = f.grid.dims.d;
    for (int64_t e : edges) {
        Vec a = f.grid.vertex(e / d);
        int64_t bj = f.grid.neighbor(e / d, static_cast<int>(e % d), +1);
        if (bj < 0) continue;
        out.push_back(component_of_edge(f, a, f.grid.vertex(bj)));
    }
    dedupe_components(out);
    return out;
}

std::vector<LevelComponent> fundamental_components(const HeightField& f) {
    std::vector<int64_t> edges;
    const int d = f.grid.dims.d;
    const int64_t cells = f.grid.cell_count();
    for (int64_t i = 0; i < cells; ++i) {
        Vec v = f.grid.vertex(i);
        bool in_fd = true;
        for (int ax = 0; ax < d; ++ax)
            if (v[ax] < 0 || v[ax] >= f.grid.dims.n) in_fd = false;
        if (!in_fd) continue;
        for (int ax = 0; ax < d; ++ax)
            if (f.grid.neighbor(i, ax, +1) >= 0) edges.push_back(i * d + ax);
    }
    return components_of_edges(f, edges);
}

std::vector<Violation> check_basic_properties(const LevelComponent& lc, const HeightField& f) {
    std::vector<Violation> out;
    const CellSet& u = lc.carrier;
    if (!u.contains(lc.u)) out.push_back({"inside anchor not in carrier"});
    if (u.contains(lc.v)) out.push_back({"outside anchor in carrier"});

    const HeightField work = lc.kind == LcKind::sub ? f : f.negated();
    const int32_t k = lc.kind == LcKind::sub ? lc.level : -lc.level;

    CellSet ib = intb(u);
    CellSet eb = extb(u);
    for (int64_t i = 0; i < u.grid.cell_count(); ++i) {
        if (ib.bits.get(i) && work.at(i) != k)
            out.push_back({"intb height != k at " + u.grid.vertex(i).str()});
        if (eb.bits.get(i) && work.at(i) != k + 1)
            out.push_back({"extb height != k+1 at " + u.grid.vertex(i).str()});
    }
    if (std::abs(lc.inner_height - lc.outer_height) != 1) out.push_back({"inner/outer heights do not differ by 1"});
    if (!is_odd_set(u)) out.push_back({"carrier is not an odd set"});
    if (!is_bicon(u)) out.push_back({"carrier is not biconnected"});
    // intb U <= LL^{k+}(u) <= U
    CellSet ll = sublevel_set(work, lc.u, k);
    if (!ib.bits.subset_of(ll.bits)) out.push_back({"intb not contained in the sublevel set"});
    if (!ll.bits.subset_of(u.bits)) out.push_back({"sublevel set not contained in the carrier"});
    return out;
}

const LevelComponent& ComponentCache::of_edge(const Vec& a, const Vec& b) {
    const Vec lo = f_.at(a) < f_.at(b) ? a : b;
    const Vec hi = f_.at(a) < f_.at(b) ? b : a;
    int64_t key = f_.grid.index(lo) * 2 * f_.grid.dims.d;
    for (int ax = 0; ax < f_.grid.dims.d; ++ax) {
        if (hi - lo == Vec::axis(f_.grid.dims.d, ax, 1)) key += ax;
        if (lo - hi == Vec::axis(f_.grid.dims.d, ax, 1)) key += f_.grid.dims.d + ax;
    }
    auto it = by_edge_.find(key);
    if (it == by_edge_.end()) it = by_edge_.emplace(key, component_of_edge(f_, lo, hi)).first;
    return it->second;
}

int64_t ComponentCache::height_diff(const Vec& u, const Vec& v) {
    if (u == v) return 0;
    // walk one fixed shortest path, collect the components of its edges
    std::vector<const LevelComponent*> met;
    Vec cur = u;
    for (int ax = 0; ax < f_.grid.dims.d; ++ax) {
        int32_t diff = v[ax] - cur[ax];
        int step = diff >= 0 ? +1 : -1;
        if (f_.grid.torus) {
            int32_t fwd = ((diff % f_.grid.dims.n) + f_.grid.dims.n) % f_.grid.dims.n;
            step = (fwd <= f_.grid.dims.n - fwd && fwd != 0) ? +1 : -1;
            diff = step > 0 ? fwd : static_cast<int32_t>(fwd - f_.grid.dims.n);
        }
        for (int32_t s = 0; s != diff; s += step) {
            Vec next = cur;
            next[ax] += step;
            if (f_.grid.torus) next[ax] = static_cast<int32_t>(((next[ax] % f_.grid.dims.n) + f_.grid.dims.n) % f_.grid.dims.n);
            met.push_back(&of_edge(cur, next));
            cur = next;
        }
    }
    std::vector<const LevelComponent*> uniq;
    for (const LevelComponent* c : met) {
        bool dup = false;
        for (const LevelComponent* o : uniq)
            if (o == c || o->carrier.bits == c->carrier.bits) dup = true;
        if (!dup) uniq.push_back(c);
    }
    int64_t fwd = 0, bwd = 0;
    for (const LevelComponent* c : uniq) {
        bool has_u = c->carrier.contains(u), has_v = c->carrier.contains(v);
        if (has_u && !has_v) ++fwd;
        if (has_v && !has_u) ++bwd;
    }
    return fwd - bwd;
}

Json to_json(const LevelComponent& lc) {
    Json j;
    j["kind"] = lc.kind == LcKind::sub ? "sub" : "super";
    j["level"] = lc.level;
    std::vector<int32_t> uu(lc.u.c.begin(), lc.u.c.begin() + lc.u.d);
    std::vector<int32_t> vv(lc.v.c.begin(), lc.v.c.begin() + lc.v.d);
    j["u"] = uu;
    j["v"] = vv;
    j["window_k"] = lc.carrier.grid.torus ? 0 : lc.carrier.grid.window_k;
    Json cells = Json::array();
    for (int64_t i = 0; i < lc.carrier.grid.cell_count(); ++i)
        if (lc.carrier.bits.get(i)) {
            Vec v = lc.carrier.grid.vertex(i);
            std::vector<int32_t> c(v.c.begin(), v.c.begin() + v.d);
            cells.push_back(c);
        }
    j["carrier"] = cells;
    return j;
}

}  // namespace tricolor
