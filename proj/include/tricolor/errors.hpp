#pragma once

#include <stdexcept>
#include <string>

namespace tricolor {

// Error taxonomy. Everything derives from Error so callers can catch the
// whole family; the CLI maps TooLarge/WindowUnstable to a distinct exit code.

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A requested set operation cannot be represented inside the current window
// (e.g. a translate pushes members off the window, or an anchor lies outside).
struct WindowOverflow : Error {
    using Error::Error;
};

// A windowed verdict kept changing under window doubling up to the maximum
// radius. Never downgraded to a best-effort answer.
struct WindowUnstable : Error {
    using Error::Error;
};

// Exact enumeration was requested beyond the feasibility guard.
struct TooLarge : Error {
    using Error::Error;
};

// Level k is incompatible with the anchor heights (h(u) <= k < h(v) violated,
// or k outside the height range of the grid).
struct LevelMismatch : Error {
    using Error::Error;
};

// A stated precondition of an operation does not hold for the given input.
struct PreconditionFailed : Error {
    using Error::Error;
};

// mod3 of a quasi-periodic function whose slope is not a multiple of 3.
struct NonPeriodicResult : Error {
    using Error::Error;
};

// Gradient integration of a coloring hit an inconsistent edge. Impossible for
// proper colorings; signals a corrupt input.
struct InconsistentGradient : Error {
    using Error::Error;
};

struct ZeroSlope : Error {
    using Error::Error;
};

// An internal theorem about the embedding scaffold failed at runtime. This is
// treated as a bug, never an expected input condition.
struct ScaffoldInvariantViolated : Error {
    using Error::Error;
};

// The function handed to the inverse slope-flattening map is not in the image
// of the forward map for the given slope.
struct NotInImage : Error {
    using Error::Error;
};

} // namespace tricolor
