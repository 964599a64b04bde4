#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "tricolor/enumeration.hpp"
#include "tricolor/heights.hpp"

using namespace tricolor;

namespace {

Coloring coloring_1d(int n, std::vector<uint8_t> v) {
    return Coloring{Dims::of(1, n), std::move(v)};
}

QpHeight qp_1d(int n, int m, std::vector<int32_t> base) {
    return QpHeight{Dims::of(1, n), Vec::axis(1, 0, m), std::move(base)};
}

Coloring checkerboard(const Dims& dims) {
    Grid g = Grid::torus_grid(dims);
    Coloring f{dims, std::vector<uint8_t>(static_cast<size_t>(g.cell_count()))};
    for (int64_t i = 0; i < g.cell_count(); ++i)
        f.values[static_cast<size_t>(i)] = static_cast<uint8_t>(parity(g.vertex(i)));
    return f;
}

}  // namespace

TEST_CASE("validate flags monochromatic edges") {
    Dims dims = Dims::of(2, 4);
    Coloring zero{dims, std::vector<uint8_t>(16, 0)};
    auto bad = validate(zero);
    CHECK(bad.size() == 32);  // every edge of T_4^2
    CHECK(validate(checkerboard(dims)).empty());
}

TEST_CASE("all colorings of T_6^1 validate ok") {
    int count = 0;
    enumerate_colorings(Dims::of(1, 6), [&](const Coloring& f) {
        CHECK(validate(f).empty());
        ++count;
        return true;
    });
    CHECK(count == 22);  // (2^6 + 2) / 3
}

TEST_CASE("mod3 of the monotone staircase is 012012") {
    QpHeight h = qp_1d(6, 6, {0, 1, 2, 3, 4, 5});
    CHECK(validate(h).empty());
    Coloring f = mod3(h);
    CHECK(f.values == std::vector<uint8_t>{0, 1, 2, 0, 1, 2});
}

TEST_CASE("mod3 of the alternating function is the 01 pattern") {
    QpHeight h = qp_1d(6, 0, {0, 1, 0, 1, 0, 1});
    CHECK(mod3(h).values == std::vector<uint8_t>{0, 1, 0, 1, 0, 1});
}

TEST_CASE("mod3 requires slope in 3Z^d") {
    QpHeight h = qp_1d(4, 2, {0, 1, 2, 1});
    CHECK(validate(h).empty());
    CHECK_THROWS_AS(mod3(h), NonPeriodicResult);
}

TEST_CASE("lift of 012012 gives the staircase with slope 6") {
    QpHeight h = lift(coloring_1d(6, {0, 1, 2, 0, 1, 2}));
    CHECK(h.base == std::vector<int32_t>{0, 1, 2, 3, 4, 5});
    CHECK(h.slope == Vec::axis(1, 0, 6));
    CHECK(validate(h, /*coloring_lift=*/true).empty());
}

TEST_CASE("lift of the checkerboard has slope zero") {
    QpHeight h = lift(checkerboard(Dims::of(2, 4)));
    CHECK(h.slope == Vec::zero(2));
    for (size_t i = 0; i < h.base.size(); ++i) CHECK((h.base[i] == 0 || h.base[i] == 1));
}

TEST_CASE("lift is injective and mod3 inverts it on T_6^1") {
    std::set<std::vector<int32_t>> bases;
    int count = 0;
    enumerate_colorings(Dims::of(1, 6), [&](const Coloring& f) {
        QpHeight h = lift(f);
        bases.insert(h.base);
        CHECK(mod3(h) == f);
        ++count;
        return true;
    });
    CHECK(count == 22);
    CHECK(bases.size() == 22);
}

TEST_CASE("slope histogram of col(T_6^1)") {
    std::map<int, int> hist;
    enumerate_colorings(Dims::of(1, 6), [&](const Coloring& f) {
        ++hist[slope_of(f)[0]];
        return true;
    });
    CHECK(hist == std::map<int, int>{{-6, 1}, {0, 20}, {6, 1}});
}

TEST_CASE("slope of anything with a torus HHF preimage is zero") {
    TorusHHF h{Dims::of(2, 4), lift(checkerboard(Dims::of(2, 4))).base};
    CHECK(slope_of(mod3(h)) == Vec::zero(2));
}

TEST_CASE("eval follows the quasi-periodic rule") {
    QpHeight h = qp_1d(6, 6, {0, 1, 2, 3, 4, 5});
    CHECK(h.eval(Vec::axis(1, 0, 7)) == 7);  // base(1) + 6
    CHECK(h.eval(Vec::zero(1)) == 0);
    CHECK(h.eval(Vec::axis(1, 0, -1)) == -1);
    // parity: eval(h, v) = parity(v) mod 2
    for (int32_t x = -13; x <= 13; ++x) {
        Vec v = Vec::axis(1, 0, x);
        CHECK(((h.eval(v) % 2) + 2) % 2 == parity(v));
    }
}

TEST_CASE("negate flips base and slope") {
    QpHeight h = qp_1d(6, 6, {0, 1, 2, 3, 4, 5});
    QpHeight nh = negate(h);
    CHECK(nh.slope == Vec::axis(1, 0, -6));
    CHECK(negate(nh) == h);
    CHECK(validate(nh).empty());
}

TEST_CASE("normalization shifts colors cyclically") {
    Coloring f = coloring_1d(6, {1, 2, 0, 1, 2, 0});
    Coloring g = normalized(f);
    CHECK(g.values == std::vector<uint8_t>{0, 1, 2, 0, 1, 2});
    CHECK(normalized(g) == g);
}

TEST_CASE("json round trip is bit exact") {
    QpHeight h = qp_1d(6, 6, {0, 1, 2, 3, 4, 5});
    CHECK(qp_from_json(to_json(h)) == h);
    Json j = to_json(h);
    CHECK(Json::parse(j.dump()) == j);

    Coloring f = checkerboard(Dims::of(2, 4));
    CHECK(coloring_from_json(to_json(f)) == f);

    TorusHHF t{Dims::of(2, 4), lift(f).base};
    CHECK(hhf_from_json(to_json(t)) == t);
}

TEST_CASE("lift rejects corrupt input") {
    // not a proper coloring: gradient integration must fail loudly
    Coloring broken = coloring_1d(6, {0, 0, 1, 2, 1, 2});
    CHECK_THROWS_AS(lift(broken), InconsistentGradient);
}
