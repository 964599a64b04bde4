#pragma once

// Exact enumeration and counting of normalized proper 3-colorings of the
// torus, and the partition of col(T) into slope classes.
//
// The DFS enumerator walks vertices in lexicographic order with properness
// pruning and emits every normalized coloring exactly once, in a
// deterministic order. The transfer-matrix counter indexes proper colorings
// of one (d-1)-dimensional layer and takes the trace of the n-th power of
// the layer compatibility operator; counts are exact big integers.

#include <boost/multiprecision/cpp_int.hpp>
#include <functional>
#include <map>

#include "tricolor/heights.hpp"

namespace tricolor {

using BigInt = boost::multiprecision::cpp_int;

enum class CountMethod { dfs, transfer };

struct VecLess {
    bool operator()(const Vec& a, const Vec& b) const {
        if (a.d != b.d) return a.d < b.d;
        return a.lex_less(b);
    }
};

struct SlopePartition {
    Dims dims;
    std::map<Vec, BigInt, VecLess> counts;  // slope -> |col_m|
    BigInt total;                           // |col(T)|
};

// Feasibility guard: throws TooLarge when the exact normalized count exceeds
// 10^8 (or cannot be estimated cheaply).
void check_enumeration_feasible(const Dims& dims);

// Calls cb for every normalized proper coloring; stop early by returning
// false from cb. Deterministic lexicographic order.
void enumerate_colorings(const Dims& dims, const std::function<bool(const Coloring&)>& cb);

BigInt count_colorings(const Dims& dims, CountMethod method);

// Slope read off straight axis walks (the mod-3 gradient of a proper coloring
// sums consistently along any path). Agrees with lift(f).slope; the lift
// verifies every edge, this does not.
Vec fast_slope(const Coloring& f);

// Independent DFS enumeration of torus HHFs normalized at the origin; equals
// the slope-0 class size of the partition.
BigInt count_torus_hhfs(const Dims& dims);

SlopePartition partition_by_slope(const Dims& dims);

// Streams the lifts of exactly the colorings whose slope is m.
void enumerate_slope_class(const Dims& dims, const Vec& m,
                           const std::function<bool(const QpHeight&)>& cb);
std::vector<QpHeight> slope_class(const Dims& dims, const Vec& m);

// All nonzero-slope lifts bucketed by slope, in one enumeration sweep.
std::map<Vec, std::vector<QpHeight>, VecLess> nonzero_slope_classes(const Dims& dims);

// {"d":..,"n":..,"total":"..","counts":[{"m":[..],"count":".."}...]} with
// counts as decimal strings and slopes in lexicographic order.
Json to_json(const SlopePartition& p);
SlopePartition partition_from_json(const Json& j);

}  // namespace tricolor
