#pragma once

// Topology of hypersurface-like sets in Z^d: biconnectedness, boundary
// disjointness, the pair trichotomy for biconnected boundary-disjoint sets,
// and the translation trichotomy (type +1 / -1 / 0, minimal translation,
// order function) for translation-respecting sets.
//
// Verdicts about windowed sets are certified by window doubling: the verdict
// is recomputed at twice the radius and must agree, escalating up to K = 8
// before failing with WindowUnstable. A conclusive counterexample (e.g. an
// actual boundary intersection) is definitive at any radius.

#include <functional>
#include <memory>

#include "tricolor/levelsets.hpp"

namespace tricolor {

enum class Pairing { Disjoint, CoDisjoint, FirstInSecond, SecondInFirst };

struct TrichotomyVerdict {
    Pairing tag;
    bool nested() const { return tag == Pairing::FirstInSecond || tag == Pairing::SecondInFirst; }
};

// U nonempty, proper, with U and U^c connected. Connectivity of windowed sets
// is judged inside the window (the frame layer is part of the window).
bool is_bicon(const CellSet& u);

// Edge boundaries disjoint and no transversally-crossing 4-cycle. For odd
// sets the 4-cycle condition is vacuous.
bool is_boundary_disjoint(const CellSet& a, const CellSet& b);

// Exactly one of: disjoint, co-disjoint, strictly nested. Preconditions:
// both biconnected, boundary disjoint, distinct.
TrichotomyVerdict pair_trichotomy(const CellSet& a, const CellSet& b);

enum class SetType : int { plus = +1, minus = -1, zero = 0, degenerate = 2 };

// -type; degenerate sets count as both +1 and -1, so they stay degenerate.
SetType complement_type(SetType t);

struct TypeClassification {
    SetType type = SetType::degenerate;
    Vec delta;       // minimal translation, valid when type == zero
    int window_k = 0;  // radius at which the verdict stabilized
};

// A materialization of a set and its nZ^d-translates on one window. The
// known mask marks cells where the translate's membership is determined.
class TranslationView {
  public:
    virtual ~TranslationView() = default;
    virtual const CellSet& base() const = 0;
    virtual ClippedTranslate translate(const Vec& z) const = 0;  // z in nZ^d
};

// Rebuilds a TranslationView at a requested window radius. The drivers below
// call it at K and 2K and demand agreement.
using ViewFactory = std::function<std::unique_ptr<TranslationView>(int K)>;

// View that shifts a stored bitset (membership known only on the overlap).
ViewFactory shift_view(Dims dims, std::function<bool(const Vec&)> member);
// View that recomputes a level component at shifted anchors (membership
// known on the whole window).
ViewFactory component_view(QpHeight h, LcKind kind, Vec u, Vec v, int32_t level);
// ... and the complement of such a component ((U+z)^c = U^c + z, so the
// translates stay exact).
ViewFactory complement_component_view(QpHeight h, LcKind kind, Vec u, Vec v, int32_t level);

bool is_translation_respecting(const ViewFactory& make, int K0 = kDefaultWindowK);
TypeClassification classify_type(const ViewFactory& make, int K0 = kDefaultWindowK);

// o(U+z) for a type-0 classification; o(U) = 0, o(U+delta) = 1.
int order_index(const ViewFactory& make, const TypeClassification& cls, const Vec& z);

// Single-window (uncertified) classification; the building blocks of the
// stable drivers, also used by scaffold construction which certifies whole
// scaffolds at once. zrange is the translate search radius in units of n per
// axis.
bool is_translation_respecting_at(const TranslationView& view, int zrange);
TypeClassification classify_type_at(const TranslationView& view, int zrange);
int order_index_at(const TranslationView& view, const TypeClassification& cls, const Vec& z);

// Count of distinct projected boundary edges of V oriented along the given
// axis (as torus edges).
int64_t directed_boundary_count(const CellSet& v_lattice, int axis);

}  // namespace tricolor
