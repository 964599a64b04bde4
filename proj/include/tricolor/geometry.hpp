#pragma once

// Geometry of the integer lattice Z^d and the discrete torus (Z/nZ)^d:
// vertices, adjacency, parity, set-boundary operators, distances,
// connectivity, finite windows for lattice sets, and the projection to the
// torus.
//
// Conventions used throughout the project:
//  * Cells are indexed row-major with axis 0 fastest.
//  * A torus grid covers [0,n)^d. A window grid of radius K covers
//    [-K*n, (K+1)*n)^d; the outermost single cell layer is the "frame".
//  * A windowed set represents the restriction of a (possibly infinite)
//    lattice set to the window. Operators treat off-window neighbors as
//    members for erosion (minus) and as non-members for dilation (plus),
//    which keeps the identity U^- = ((U^c)^+)^c valid on the whole window
//    and makes results exact on the window interior whenever the represented
//    set continues naturally past the frame. Global verdicts derived from
//    windowed sets are certified elsewhere by window doubling.
//  * Edges are identified as cell_index * d + axis, meaning the edge from
//    the cell to its +1 neighbor along that axis.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tricolor/errors.hpp"

namespace tricolor {

inline constexpr int kMaxDim = 4;
inline constexpr int kDefaultWindowK = 2;
inline constexpr int kMaxWindowK = 8;

// Torus / lattice geometry parameters shared by everything.
struct Dims {
    int d = 0;
    int n = 0;

    static Dims of(int d, int n);  // validates d >= 1, n even, n >= 4
    int64_t cells() const;         // n^d
    bool operator==(const Dims&) const = default;
};

// A d-dimensional integer vector. Unused slots are always zero so that
// equality and hashing can look at the whole array.
struct Vec {
    std::array<int32_t, kMaxDim> c{};
    int d = 0;

    static Vec zero(int d);
    static Vec axis(int d, int ax, int32_t value = 1);

    int32_t operator[](int i) const { return c[static_cast<size_t>(i)]; }
    int32_t& operator[](int i) { return c[static_cast<size_t>(i)]; }

    Vec operator+(const Vec& o) const;
    Vec operator-(const Vec& o) const;
    Vec operator*(int32_t k) const;
    Vec operator-() const;
    bool operator==(const Vec&) const = default;
    bool lex_less(const Vec& o) const;
    int64_t l1() const;
    bool is_zero() const;
    std::string str() const;
};

struct VecHash {
    size_t operator()(const Vec& v) const;
};

// Bipartition class; the origin is even.
inline int parity(const Vec& v) {
    int64_t s = 0;
    for (int i = 0; i < v.d; ++i) s += v[i];
    return static_cast<int>(((s % 2) + 2) % 2);
}

// 2d lattice or torus neighbors of a vertex (no window involved).
std::vector<Vec> neighbors(const Dims& dims, const Vec& v, bool torus);

// Reduce lattice coordinates mod n.
Vec project_vertex(const Dims& dims, const Vec& v);

// Finite cell grid: either the full torus or a window into the lattice.
struct Grid {
    Dims dims;
    bool torus = true;
    int window_k = 0;

    static Grid torus_grid(Dims dims);
    static Grid window_grid(Dims dims, int K);

    int32_t lo() const { return torus ? 0 : -window_k * dims.n; }
    int32_t hi() const { return torus ? dims.n : (window_k + 1) * dims.n; }
    int32_t side() const { return hi() - lo(); }
    int64_t cell_count() const;

    bool contains(const Vec& v) const;
    int64_t index(const Vec& v) const;  // caller guarantees contains(v)
    Vec vertex(int64_t idx) const;
    // -1 when the step leaves a window. dir is +1 or -1.
    int64_t neighbor(int64_t idx, int axis, int dir) const;
    // Outermost single layer of a window. Always false on the torus.
    bool on_frame(int64_t idx) const;
    bool on_frame_vec(const Vec& v) const;

    bool operator==(const Grid&) const = default;
};

// Plain dynamic bitset over cells.
class Bits {
  public:
    Bits() = default;
    explicit Bits(int64_t n, bool value = false);

    int64_t size() const { return n_; }
    bool get(int64_t i) const { return (w_[static_cast<size_t>(i >> 6)] >> (i & 63)) & 1u; }
    void set(int64_t i) { w_[static_cast<size_t>(i >> 6)] |= (uint64_t{1} << (i & 63)); }
    void reset(int64_t i) { w_[static_cast<size_t>(i >> 6)] &= ~(uint64_t{1} << (i & 63)); }
    void assign(int64_t i, bool v) { v ? set(i) : reset(i); }

    int64_t count() const;
    bool any() const;
    bool none() const { return !any(); }
    int64_t find_first() const;  // -1 when empty

    Bits operator&(const Bits& o) const;
    Bits operator|(const Bits& o) const;
    Bits and_not(const Bits& o) const;
    Bits complement() const;  // within [0, size)
    bool subset_of(const Bits& o) const;
    bool intersects(const Bits& o) const;
    bool operator==(const Bits&) const = default;

  private:
    std::vector<uint64_t> w_;
    int64_t n_ = 0;
};

// A vertex set materialized on a grid.
struct CellSet {
    Grid grid;
    Bits bits;

    static CellSet empty(const Grid& g) { return {g, Bits(g.cell_count())}; }
    static CellSet full(const Grid& g);

    bool contains(const Vec& v) const { return grid.contains(v) && bits.get(grid.index(v)); }
    void insert(const Vec& v) { bits.set(grid.index(v)); }
    int64_t count() const { return bits.count(); }
    bool empty_set() const { return bits.none(); }
    CellSet complement() const { return {grid, bits.complement()}; }
    bool operator==(const CellSet&) const = default;
};

// True when a member, or a neighbor of a member, touches the window frame.
bool frame_contact(const CellSet& u);

// Dilation U^+ and erosion U^- (see header comment for the frame convention).
CellSet op_plus(const CellSet& u);
CellSet op_minus(const CellSet& u);
CellSet intb(const CellSet& u);  // U \ U^-
CellSet extb(const CellSet& u);  // U^+ \ U

// Edge boundary: all in-grid edges with exactly one endpoint in U, as sorted
// edge ids (cell * d + axis).
std::vector<int64_t> boundary_edges(const CellSet& u);
Bits boundary_edge_bits(const CellSet& u);  // bitset over cell_count * d edges

// True iff all vertices of intb(U) share a parity (vacuously true if empty).
bool is_odd_set(const CellSet& u);

// Connectivity under grid adjacency.
bool is_connected(const CellSet& u);
std::vector<CellSet> connected_components(const CellSet& u);

// min over pairs of shortest-path distance; nullopt means infinity (an empty
// side). Distances on a window are window-internal.
std::optional<int64_t> set_distance(const Grid& g, const Bits& a, const Bits& b);
int64_t vertex_distance(const Dims& dims, bool torus, const Vec& a, const Vec& b);

// U + x. Throws WindowOverflow when a member leaves the window.
CellSet translate_strict(const CellSet& u, const Vec& x);
// U + x clipped to the grid, plus the mask of cells whose membership is known
// (cells v with v - x inside the grid).
struct ClippedTranslate {
    CellSet set;
    Bits known;
};
ClippedTranslate translate_clipped(const CellSet& u, const Vec& x);

// Projection pi from a window grid onto the torus (cells and edges).
CellSet project(const CellSet& lattice_set);
int64_t project_edge(const Grid& lattice, int64_t edge_id);
std::vector<int64_t> project_edges(const Grid& lattice, const std::vector<int64_t>& edges);

}  // namespace tricolor
