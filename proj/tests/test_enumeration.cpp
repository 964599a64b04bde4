#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "tricolor/enumeration.hpp"

using namespace tricolor;

namespace {

// Closed-form oracle: proper 3-colorings of the n-cycle, normalized.
BigInt cycle_count(int n) {
    BigInt two_n = 1;
    for (int i = 0; i < n; ++i) two_n *= 2;
    return (two_n + 2) / 3;  // even n
}

BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    BigInt r = 1;
    for (int i = 0; i < k; ++i) {
        r *= n - i;
        r /= i + 1;
    }
    return r;
}

Vec m1(int v) {
    return Vec::axis(1, 0, v);
}

}  // namespace

TEST_CASE("d=1 counts match the cycle chromatic polynomial") {
    CHECK(count_colorings(Dims::of(1, 4), CountMethod::dfs) == 6);
    CHECK(count_colorings(Dims::of(1, 6), CountMethod::dfs) == 22);
    CHECK(count_colorings(Dims::of(1, 8), CountMethod::dfs) == 86);
    for (int n : {4, 6, 8, 10, 12}) {
        CHECK(count_colorings(Dims::of(1, n), CountMethod::dfs) == cycle_count(n));
        CHECK(count_colorings(Dims::of(1, n), CountMethod::transfer) == cycle_count(n));
    }
}

TEST_CASE("transfer and dfs agree on T_4^2") {
    BigInt dfs = count_colorings(Dims::of(2, 4), CountMethod::dfs);
    BigInt tm = count_colorings(Dims::of(2, 4), CountMethod::transfer);
    CHECK(dfs == tm);
    CHECK(dfs > 0);
}

TEST_CASE("enumeration is deterministic and hits each coloring once") {
    std::vector<Coloring> first, second;
    enumerate_colorings(Dims::of(1, 6), [&](const Coloring& f) {
        first.push_back(f);
        return true;
    });
    enumerate_colorings(Dims::of(1, 6), [&](const Coloring& f) {
        second.push_back(f);
        return true;
    });
    CHECK(first == second);
    std::set<std::vector<uint8_t>> uniq;
    for (const auto& f : first) uniq.insert(f.values);
    CHECK(uniq.size() == first.size());
}

TEST_CASE("partitions for d=1") {
    SlopePartition p4 = partition_by_slope(Dims::of(1, 4));
    CHECK(p4.total == 6);
    CHECK(p4.counts.size() == 1);
    CHECK(p4.counts.at(m1(0)) == 6);

    SlopePartition p6 = partition_by_slope(Dims::of(1, 6));
    CHECK(p6.total == 22);
    CHECK(p6.counts.at(m1(0)) == 20);
    CHECK(p6.counts.at(m1(6)) == 1);
    CHECK(p6.counts.at(m1(-6)) == 1);

    SlopePartition p8 = partition_by_slope(Dims::of(1, 8));
    CHECK(p8.total == 86);
    CHECK(p8.counts.at(m1(0)) == 70);
    CHECK(p8.counts.at(m1(6)) == 8);
    CHECK(p8.counts.at(m1(-6)) == 8);

    // closed forms: C(n, n/2) at slope 0, C(n, n/2+3) at slope +-6
    for (int n : {4, 6, 8, 10}) {
        SlopePartition p = partition_by_slope(Dims::of(1, n));
        CHECK(p.counts.at(m1(0)) == binomial(n, n / 2));
        BigInt six = binomial(n, n / 2 + 3);
        if (six > 0) {
            CHECK(p.counts.at(m1(6)) == six);
            CHECK(p.counts.at(m1(-6)) == six);
        }
        CHECK(p.total == cycle_count(n));
        BigInt sum = 0;
        for (const auto& [m, c] : p.counts) sum += c;
        CHECK(sum == p.total);
    }
}

TEST_CASE("partition symmetries on T_4^2") {
    SlopePartition p = partition_by_slope(Dims::of(2, 4));
    // only slope 0 exists for n=4 (6Z intersect [-4,4] is {0})
    CHECK(p.counts.size() == 1);
    CHECK(p.counts.begin()->first == Vec::zero(2));
    CHECK(p.counts.begin()->second == p.total);
}

TEST_CASE("slope class streams exactly the matching lifts") {
    auto cls = slope_class(Dims::of(1, 6), m1(6));
    REQUIRE(cls.size() == 1);
    CHECK(cls[0].base == std::vector<int32_t>{0, 1, 2, 3, 4, 5});

    CHECK(slope_class(Dims::of(1, 6), m1(12)).empty());

    BigInt sum = 0;
    SlopePartition p6 = partition_by_slope(Dims::of(1, 6));
    for (const auto& [m, c] : p6.counts) sum += BigInt(slope_class(Dims::of(1, 6), m).size());
    CHECK(sum == p6.total);
}

TEST_CASE("feasibility guard") {
    CHECK_THROWS_AS(check_enumeration_feasible(Dims::of(3, 4)), TooLarge);
    CHECK_THROWS_AS(check_enumeration_feasible(Dims::of(1, 28)), TooLarge);
    CHECK_THROWS_AS(count_colorings(Dims::of(2, 8), CountMethod::dfs), TooLarge);
    CHECK_NOTHROW(check_enumeration_feasible(Dims::of(2, 6)));
}

TEST_CASE("fast slope agrees with the verified lift") {
    for (Dims dims : {Dims::of(1, 6), Dims::of(2, 4)}) {
        enumerate_colorings(dims, [&](const Coloring& f) {
            CHECK(fast_slope(f) == lift(f).slope);
            return true;
        });
    }
}

TEST_CASE("slope-0 class size equals the independent torus HHF count") {
    CHECK(count_torus_hhfs(Dims::of(1, 6)) == 20);
    SlopePartition p = partition_by_slope(Dims::of(2, 4));
    CHECK(count_torus_hhfs(Dims::of(2, 4)) == p.counts.at(Vec::zero(2)));
}

TEST_CASE("partition json round trip") {
    SlopePartition p = partition_by_slope(Dims::of(1, 6));
    Json j = to_json(p);
    SlopePartition q = partition_from_json(j);
    CHECK(q.total == p.total);
    CHECK(q.counts == p.counts);
    CHECK(j.at("counts").size() == 3);
    CHECK(j.at("total") == "22");
}
