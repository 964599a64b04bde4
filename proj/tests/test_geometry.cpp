#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>

#include "tricolor/geometry.hpp"

using namespace tricolor;

namespace {

Vec v2(int32_t x, int32_t y) {
    Vec v = Vec::zero(2);
    v[0] = x;
    v[1] = y;
    return v;
}

Vec v1(int32_t x) {
    Vec v = Vec::zero(1);
    v[0] = x;
    return v;
}

CellSet from_vertices(const Grid& g, const std::vector<Vec>& vs) {
    CellSet s = CellSet::empty(g);
    for (const Vec& v : vs) s.insert(v);
    return s;
}

// Independent union-find component counter.
int uf_component_count(const CellSet& u) {
    const int64_t n = u.grid.cell_count();
    std::vector<int64_t> parent(static_cast<size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int64_t(int64_t)> find = [&](int64_t x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    };
    auto unite = [&](int64_t a, int64_t b) { parent[static_cast<size_t>(find(a))] = find(b); };
    for (int64_t i = 0; i < n; ++i) {
        if (!u.bits.get(i)) continue;
        for (int ax = 0; ax < u.grid.dims.d; ++ax) {
            int64_t j = u.grid.neighbor(i, ax, +1);
            if (j >= 0 && u.bits.get(j)) unite(i, j);
        }
    }
    std::set<int64_t> roots;
    for (int64_t i = 0; i < n; ++i)
        if (u.bits.get(i)) roots.insert(find(i));
    return static_cast<int>(roots.size());
}

}  // namespace

TEST_CASE("dims validation") {
    CHECK_THROWS_AS(Dims::of(2, 3), PreconditionFailed);
    CHECK_THROWS_AS(Dims::of(2, 5), PreconditionFailed);
    CHECK_THROWS_AS(Dims::of(0, 4), PreconditionFailed);
    CHECK(Dims::of(2, 4).cells() == 16);
    CHECK(Dims::of(3, 4).cells() == 64);
}

TEST_CASE("torus neighbors") {
    Dims d24 = Dims::of(2, 4);
    auto nb = neighbors(d24, v2(0, 0), true);
    std::set<std::pair<int, int>> got;
    for (const Vec& v : nb) got.insert({v[0], v[1]});
    CHECK(got == std::set<std::pair<int, int>>{{1, 0}, {3, 0}, {0, 1}, {0, 3}});

    auto lat = neighbors(Dims::of(1, 4), v1(5), false);
    std::set<int> lg;
    for (const Vec& v : lat) lg.insert(v[0]);
    CHECK(lg == std::set<int>{4, 6});

    Dims d34 = Dims::of(3, 4);
    Grid g = Grid::torus_grid(d34);
    for (int64_t i = 0; i < g.cell_count(); ++i) {
        auto vs = neighbors(d34, g.vertex(i), true);
        std::set<std::array<int32_t, kMaxDim>> uniq;
        for (const Vec& v : vs) uniq.insert(v.c);
        CHECK(uniq.size() == 6);
    }
}

TEST_CASE("parity alternates across edges") {
    CHECK(parity(v2(0, 0)) == 0);
    CHECK(parity(v2(1, 2)) == 1);
    Dims dims = Dims::of(2, 6);
    Grid g = Grid::torus_grid(dims);
    for (int64_t i = 0; i < g.cell_count(); ++i)
        for (int ax = 0; ax < 2; ++ax)
            CHECK(parity(g.vertex(i)) != parity(g.vertex(g.neighbor(i, ax, +1))));
}

TEST_CASE("boundary operators on a singleton in T_4^2") {
    Grid g = Grid::torus_grid(Dims::of(2, 4));
    CellSet u = from_vertices(g, {v2(0, 0)});
    CHECK(boundary_edges(u).size() == 4);
    CHECK(extb(u).count() == 4);
    CellSet ib = intb(u);
    CHECK(ib.count() == 1);
    CHECK(ib.contains(v2(0, 0)));
    CHECK(op_minus(u).count() == 0);
}

TEST_CASE("boundary operators on the full torus") {
    Grid g = Grid::torus_grid(Dims::of(2, 4));
    CellSet u = CellSet::full(g);
    CHECK(boundary_edges(u).empty());
    CHECK(op_plus(u).bits == u.bits);
    CHECK(op_minus(u).bits == u.bits);
}

TEST_CASE("half-line in a window") {
    Grid g = Grid::window_grid(Dims::of(1, 6), 2);
    CellSet u = CellSet::empty(g);
    for (int64_t i = 0; i < g.cell_count(); ++i)
        if (g.vertex(i)[0] <= 0) u.bits.set(i);
    CellSet ib = intb(u);
    CHECK(ib.count() == 1);
    CHECK(ib.contains(v1(0)));
    CellSet eb = extb(u);
    CHECK(eb.count() == 1);
    CHECK(eb.contains(v1(1)));
    CHECK(boundary_edges(u).size() == 1);
    CHECK(frame_contact(u));
    CHECK(is_odd_set(u));
}

TEST_CASE("minus equals complement-plus-complement identity") {
    // exhaustively on small subsets of T_4^2, then randomly on larger ones
    Grid g = Grid::torus_grid(Dims::of(2, 4));
    std::mt19937_64 rng(7);
    auto check_identity = [&](const CellSet& u) {
        CellSet lhs = op_minus(u);
        CellSet rhs = op_plus(u.complement()).complement();
        CHECK(lhs.bits == rhs.bits);
    };
    // all subsets of a fixed 6-cell patch
    std::vector<Vec> patch{v2(0, 0), v2(1, 0), v2(2, 0), v2(0, 1), v2(1, 1), v2(2, 1)};
    for (int mask = 0; mask < 64; ++mask) {
        std::vector<Vec> vs;
        for (int b = 0; b < 6; ++b)
            if (mask >> b & 1) vs.push_back(patch[static_cast<size_t>(b)]);
        check_identity(from_vertices(g, vs));
    }
    for (int trial = 0; trial < 50; ++trial) {
        CellSet u = CellSet::empty(g);
        for (int64_t i = 0; i < g.cell_count(); ++i)
            if (rng() & 1) u.bits.set(i);
        check_identity(u);
    }
    // and on window grids, where the frame convention must keep it exact
    Grid w = Grid::window_grid(Dims::of(2, 4), 1);
    for (int trial = 0; trial < 50; ++trial) {
        CellSet u = CellSet::empty(w);
        for (int64_t i = 0; i < w.cell_count(); ++i)
            if (rng() & 1) u.bits.set(i);
        check_identity(u);
    }
}

TEST_CASE("plus-subset relation") {
    // U^+ <= V iff U <= V and boundary(U) disjoint from boundary(V)
    Grid g = Grid::torus_grid(Dims::of(2, 4));
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        CellSet u = CellSet::empty(g), v = CellSet::empty(g);
        for (int64_t i = 0; i < g.cell_count(); ++i) {
            if (rng() % 3 == 0) u.bits.set(i);
            if (rng() % 2 == 0) v.bits.set(i);
        }
        Bits bu = boundary_edge_bits(u), bv = boundary_edge_bits(v);
        bool lhs = op_plus(u).bits.subset_of(v.bits);
        bool rhs = u.bits.subset_of(v.bits) && !bu.intersects(bv);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("distance basics and the plus identity") {
    Grid g = Grid::torus_grid(Dims::of(2, 4));
    CellSet u = from_vertices(g, {v2(0, 0)});
    CellSet v = from_vertices(g, {v2(2, 0)});
    CHECK(set_distance(g, u.bits, v.bits) == 2);
    CHECK(!set_distance(g, Bits(g.cell_count()), v.bits).has_value());

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        CellSet a = CellSet::empty(g), b = CellSet::empty(g);
        for (int64_t i = 0; i < g.cell_count(); ++i) {
            if (rng() % 4 == 0) a.bits.set(i);
            if (rng() % 4 == 0) b.bits.set(i);
        }
        if (a.bits.none() || b.bits.none()) continue;
        auto base = set_distance(g, a.bits, b.bits);
        auto plus = set_distance(g, op_plus(a).bits, b.bits);
        REQUIRE(base.has_value());
        REQUIRE(plus.has_value());
        CHECK(*plus == std::max<int64_t>(*base - 1, 0));
    }
}

TEST_CASE("distance is monotone under set growth") {
    Grid g = Grid::torus_grid(Dims::of(2, 4));
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        CellSet u = CellSet::empty(g), w = CellSet::empty(g);
        for (int64_t i = 0; i < g.cell_count(); ++i) {
            if (rng() % 5 == 0) u.bits.set(i);
            if (rng() % 5 == 0) w.bits.set(i);
        }
        CellSet v = u;
        for (int64_t i = 0; i < g.cell_count(); ++i)
            if (rng() % 3 == 0) v.bits.set(i);
        if (u.bits.none() || v.bits.none() || w.bits.none()) continue;
        auto du = set_distance(g, u.bits, w.bits);
        auto dv = set_distance(g, v.bits, w.bits);
        CHECK(*du >= *dv);
    }
}

TEST_CASE("connected components against union-find") {
    Grid g = Grid::torus_grid(Dims::of(2, 4));
    CellSet two = from_vertices(g, {v2(0, 0), v2(2, 0)});
    CHECK(connected_components(two).size() == 2);
    CellSet line = from_vertices(g, {v2(0, 0), v2(1, 0), v2(2, 0)});
    auto comps = connected_components(line);
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].bits == line.bits);

    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        CellSet u = CellSet::empty(g);
        for (int64_t i = 0; i < g.cell_count(); ++i)
            if (rng() & 1) u.bits.set(i);
        CHECK(static_cast<int>(connected_components(u).size()) == uf_component_count(u));
    }
}

TEST_CASE("odd sets") {
    Grid g = Grid::torus_grid(Dims::of(2, 4));
    CHECK(is_odd_set(from_vertices(g, {v2(0, 0)})));
    CHECK_FALSE(is_odd_set(from_vertices(g, {v2(0, 0), v2(1, 0)})));
}

TEST_CASE("translate and project") {
    Dims dims = Dims::of(2, 4);
    Grid w = Grid::window_grid(dims, 1);
    CellSet u = from_vertices(w, {v2(0, 0), v2(1, 0)});
    CHECK(translate_strict(u, Vec::zero(2)).bits == u.bits);

    CHECK(project_vertex(dims, v2(5, 1)) == v2(1, 1));

    // pi(boundary(U + n e1)) = pi(boundary(U)) for random windowed U
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        CellSet s = CellSet::empty(w);
        // a small random blob near the origin stays clear of the frame
        for (int64_t i = 0; i < w.cell_count(); ++i) {
            Vec v = w.vertex(i);
            if (v[0] >= 0 && v[0] < 3 && v[1] >= 0 && v[1] < 3 && rng() % 2 == 0) s.bits.set(i);
        }
        CellSet t = translate_strict(s, Vec::axis(2, 0, dims.n));
        auto pe_s = project_edges(w, boundary_edges(s));
        auto pe_t = project_edges(w, boundary_edges(t));
        CHECK(pe_s == pe_t);
    }

    // strict translate overflows when members leave the window
    CellSet edge_set = from_vertices(w, {v2(7, 0)});
    CHECK_THROWS_AS(translate_strict(edge_set, Vec::axis(2, 0, 4)), WindowOverflow);
}

TEST_CASE("clipped translate reports known region") {
    Grid w = Grid::window_grid(Dims::of(1, 4), 1);  // cells [-4, 8)
    CellSet u = CellSet::empty(w);
    for (int64_t i = 0; i < w.cell_count(); ++i)
        if (w.vertex(i)[0] <= 0) u.bits.set(i);
    ClippedTranslate t = translate_clipped(u, v1(4));
    // membership of cell x is known iff x-4 is a window cell, i.e. x >= 0
    CHECK(t.known.get(w.index(v1(0))));
    CHECK(!t.known.get(w.index(v1(-1))));
    CHECK(t.set.contains(v1(4)));
    CHECK(!t.set.contains(v1(5)));
}
