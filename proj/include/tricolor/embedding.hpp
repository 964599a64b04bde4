#pragma once

// The slope-flattening embedding: from a quasi-periodic HHF with nonzero
// slope, construct the scaffold (W0, V0, U0, Delta, delta) and optionally the
// steep family V^0 ... V^{p-1}, apply the gradient-reversal map to land in
// the slope-0 class, and invert it.
//
// Constructions are phrased with the first slope coordinate positive and
// maximal in absolute value; orient() supplies the coordinate permutation and
// sign flips that make it so, and the public entry points wrap/unwrap it.
//
// Scaffolds are certified by window doubling: the same scaffold is built at
// K and 2K and must agree on the smaller window. Internal theorems (delta >=
// 6, the containment chain, seam arithmetic) are asserted at runtime and
// raise ScaffoldInvariantViolated when they fail.

#include "tricolor/trichotomy.hpp"

namespace tricolor {

struct OrientationTransform {
    int d = 0;
    std::array<int8_t, kMaxDim> perm{};  // new axis i reads old axis perm[i]
    std::array<int8_t, kMaxDim> sign{};  // applied to the old axis before permuting

    static OrientationTransform identity(int d);
    OrientationTransform inverse() const;
    bool is_identity() const;

    Vec apply(const Vec& x) const;
    Vec apply_slope(const Vec& m) const;
    QpHeight apply(const QpHeight& h) const;
};

// Transform making slope coordinate 0 positive and maximal in absolute
// value; lowest original axis index wins ties, sign flip before permutation.
OrientationTransform orient(const Vec& m);

struct Scaffold {
    QpHeight h;               // oriented function the scaffold was built from
    OrientationTransform tf;  // original -> oriented coordinates
    int K = 0;                // window radius of the certified build

    LevelComponent w0, v0;
    LevelComponent u0_complement;  // the superlevel component (of -h, stored as such)
    CellSet u0;
    CellSet w_minus1;  // W0 - Delta

    Vec delta;
    int32_t delta_h = 0;  // delta = h(Delta)
    int ell = 0;          // W0 + n e_1 = W0 + ell * Delta
    int p = 0;            // delta / 6
    int sigma = 0;        // m_1 / 6 = ell * p

    std::vector<LevelComponent> steep;  // V^0 .. V^{p-1} when built

    int32_t h_intb_w0() const { return w0.inner_height; }
    int32_t h_extb_w0() const { return w0.outer_height; }
};

// Builds and certifies the scaffold; steep additionally builds the family
// V^0 ... V^{p-1}. The input may have any nonzero slope.
Scaffold build_scaffold(const QpHeight& h, bool steep = false, int K0 = kDefaultWindowK);

// The gradient-reversal map: a slope-0 quasi-periodic HHF, Delta-periodic,
// injective per slope class, with an explicit inverse.
QpHeight psi(const QpHeight& h, int K0 = kDefaultWindowK);
QpHeight psi_from_scaffold(const Scaffold& sc);  // result in oriented coordinates
QpHeight psi_inverse(const QpHeight& t, const Vec& m, int K0 = kDefaultWindowK);

// Independent one-dimensional construction (gradient reversal between the
// first height-2 vertex and the last height-(2-3l) vertex); an oracle for
// cross-checking the general construction at d=1.
QpHeight psi_d1(const QpHeight& h);

struct SteepWitness {
    Vec u, v;  // torus vertices
    int64_t boundary_sum = 0;
};

// Torus vertices u in pi(intb V^{p-1}), v in pi(extb V^0) and the total
// boundary size of the p sublevel components of pi(psi(h)) between them.
SteepWitness steep_witness(const Scaffold& sc);

Json to_json(const Scaffold& sc);

}  // namespace tricolor
