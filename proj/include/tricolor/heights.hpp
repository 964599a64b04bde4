#pragma once

// Proper 3-colorings of the torus, homomorphism height functions (HHFs), and
// quasi-periodic HHFs on the lattice, together with the mod-3 map, the
// gradient-integration lift, and slope computation.
//
// An HHF differs by exactly 1 across every edge. A quasi-periodic function of
// slope m satisfies h(v + n e_i) = h(v) + m_i; it is stored as its values on
// the fundamental domain [0,n)^d plus the slope vector.
//
// All functions are normalized to take the value 0 at the origin unless
// stated otherwise.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "tricolor/geometry.hpp"

namespace tricolor {

using Json = nlohmann::ordered_json;

struct Coloring {
    Dims dims;
    std::vector<uint8_t> values;  // row-major over [0,n)^d, axis 0 fastest

    uint8_t at(int64_t idx) const { return values[static_cast<size_t>(idx)]; }
    uint8_t at(const Vec& v) const;
    bool operator==(const Coloring&) const = default;
};

struct TorusHHF {
    Dims dims;
    std::vector<int32_t> values;

    int32_t at(int64_t idx) const { return values[static_cast<size_t>(idx)]; }
    int32_t at(const Vec& v) const;
    bool operator==(const TorusHHF&) const = default;
};

struct QpHeight {
    Dims dims;
    Vec slope;                  // m
    std::vector<int32_t> base;  // values on the fundamental domain

    // base(v mod n) + sum_i m_i * floor(v_i / n), for any lattice vertex.
    int32_t eval(const Vec& v) const;
    int32_t at(int64_t fd_idx) const { return base[static_cast<size_t>(fd_idx)]; }
    bool operator==(const QpHeight&) const = default;
};

struct Violation {
    std::string message;
};

// Violation lists are data: an empty list means every invariant holds.
std::vector<Violation> validate(const Coloring& f);
std::vector<Violation> validate(const TorusHHF& h);
// coloring_lift additionally demands slope in 6Z^d (lifts of colorings).
std::vector<Violation> validate(const QpHeight& h, bool coloring_lift = false);

// Accepts any proper coloring and shifts colors cyclically so f(0) = 0.
Coloring normalized(const Coloring& f);

// h mod 3. For quasi-periodic input the slope must lie in 3Z^d for the result
// to be periodic; otherwise NonPeriodicResult is thrown.
Coloring mod3(const TorusHHF& h);
Coloring mod3(const QpHeight& h);

// The unique quasi-periodic HHF with mod3(lift(f)) = f, built by BFS gradient
// integration from the origin (+1 across an edge when the color increases by
// 1 mod 3, -1 when it increases by 2 mod 3), with the slope read off the wrap
// edges and every edge re-verified afterwards. Throws InconsistentGradient on
// corrupt input.
QpHeight lift(const Coloring& f);

Vec slope_of(const QpHeight& h);
Vec slope_of(const Coloring& f);  // lifts first

QpHeight negate(const QpHeight& h);

TorusHHF to_torus_hhf(const QpHeight& h);  // requires slope 0
QpHeight from_torus_hhf(const TorusHHF& h);

// Canonical JSON for function files:
//   {"kind":"coloring"|"hhf"|"qp", "d":int, "n":int, "slope":[...]?,
//    "values":[... row-major, axis 0 fastest ...]}
// Round-trips bit-exactly.
Json to_json(const Coloring& f);
Json to_json(const TorusHHF& h);
Json to_json(const QpHeight& h);
Coloring coloring_from_json(const Json& j);
TorusHHF hhf_from_json(const Json& j);
QpHeight qp_from_json(const Json& j);

}  // namespace tricolor
