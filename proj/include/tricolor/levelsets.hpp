#pragma once

// Sublevel sets, sublevel/superlevel components, separating families, and the
// height-difference formula, on the torus and on windowed views of Z^d.
//
// For an HHF h and h(u) <= k < h(v):
//   LL_h^{k+}(u)    connected component of u among vertices of height <= k
//   LC_h^{k+}(u,v)  complement of the connected component of v in the
//                   complement of LL_h^{k+}(u)
// Superlevel components are defined by duality through the negated function.
//
// Component carriers on Z^d are computed by BFS clipped to the window; the
// `clipped` flag records whether any construction BFS touched the window
// frame. Verdicts derived from clipped carriers are certified by window
// doubling (see trichotomy.hpp), never silently truncated.

#include <optional>
#include <unordered_map>

#include "tricolor/heights.hpp"

namespace tricolor {

// A height field over a finite grid: either a torus HHF or a window view of a
// quasi-periodic HHF. Lattice fields keep the generating function so that
// translated components can be recomputed exactly.
struct HeightField {
    Grid grid;
    std::vector<int32_t> h;
    std::optional<QpHeight> source;  // set for lattice fields

    static HeightField torus(const TorusHHF& f);
    static HeightField lattice(const QpHeight& f, int K);
    HeightField negated() const;

    int32_t at(int64_t idx) const { return h[static_cast<size_t>(idx)]; }
    int32_t at(const Vec& v) const { return h[static_cast<size_t>(grid.index(v))]; }
    int32_t min_height() const;
    int32_t max_height() const;
};

enum class LcKind { sub, super };

struct LevelComponent {
    LcKind kind = LcKind::sub;
    int32_t level = 0;  // k
    Vec u, v;           // anchors: u inside, v outside
    CellSet carrier;
    int32_t inner_height = 0;  // h on intb (= k for sub, k for super)
    int32_t outer_height = 0;  // h on extb (= k+1 for sub, k-1 for super)
    bool clipped = false;      // a construction BFS touched the window frame
};

// LL_h^{k+}(u). Throws LevelMismatch when h(u) > k or k is outside the height
// range of the grid.
CellSet sublevel_set(const HeightField& f, const Vec& u, int32_t k, bool* touched_frame = nullptr);

LevelComponent sublevel_component(const HeightField& f, const Vec& u, const Vec& v, int32_t k);
LevelComponent superlevel_component(const HeightField& f, const Vec& u, const Vec& v, int32_t k);

// The unique sublevel component whose boundary contains the edge (a,b); the
// low endpoint becomes the inside anchor.
LevelComponent component_of_edge(const HeightField& f, const Vec& a, const Vec& b);

// L_(u,v): every sublevel component containing u and not v, collected along
// one fixed shortest path and deduplicated, sorted by strict inclusion.
std::vector<LevelComponent> separating_family(const HeightField& f, const Vec& u, const Vec& v);

// |L_(u,v)| - |L_(v,u)|; equals h(v) - h(u).
int64_t height_diff_via_components(const HeightField& f, const Vec& u, const Vec& v);

// A + x for x in nZ^d, recomputed at the shifted anchors and level k + h(x).
LevelComponent translate_component(const LevelComponent& a, const Vec& x, const HeightField& f);

// Distinct sublevel components met by the given edges (deduplicated by
// carrier).
std::vector<LevelComponent> components_of_edges(const HeightField& f, const std::vector<int64_t>& edges);
// ... for all edges with both endpoints in the fundamental domain (lattice
// fields) or all torus edges (torus fields).
std::vector<LevelComponent> fundamental_components(const HeightField& f);

// The basic-properties bundle: anchor membership, constant inner/outer
// heights differing by one, biconnectedness, oddness, intb <= LL <= U.
std::vector<Violation> check_basic_properties(const LevelComponent& lc, const HeightField& f);

// Memoizes the component of each edge; the separating walks of all vertex
// pairs of one function share almost all of their components.
class ComponentCache {
  public:
    explicit ComponentCache(const HeightField& f) : f_(f) {}
    const LevelComponent& of_edge(const Vec& a, const Vec& b);
    // |L_(u,v)| - |L_(v,u)| along one fixed shortest path
    int64_t height_diff(const Vec& u, const Vec& v);

  private:
    const HeightField& f_;
    std::unordered_map<int64_t, LevelComponent> by_edge_;
};

Json to_json(const LevelComponent& lc);

}  // namespace tricolor
