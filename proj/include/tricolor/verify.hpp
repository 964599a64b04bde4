#pragma once

// Verification suites: thin drivers over the module invariants, shared by
// the command-line `verify` subcommand and the acceptance runner. Each suite
// returns the list of violated facts (empty = pass) plus a few key numbers
// for the machine-readable report.

#include "tricolor/embedding.hpp"
#include "tricolor/sampler.hpp"

namespace tricolor {

struct Report {
    std::string suite;
    Dims dims;
    std::vector<std::string> failures;
    Json facts = Json::object();

    bool ok() const { return failures.empty(); }
    void fail(const std::string& msg) { failures.push_back(msg); }
};

// Roundtrips of the mod-3 correspondence over the full enumeration, slope
// constraints, the partition identity, and the independent torus-HHF count.
Report verify_bijection(const Dims& dims);

// Height-difference formula on all fundamental-domain pairs for up to
// max_functions lifts (all of them when the class is small; otherwise a
// seeded deterministic sample).
Report verify_height_formula(const Dims& dims, int max_functions, uint64_t seed);

// Pair trichotomy over all ordered pairs of distinct level components of the
// corpus, the complement rule, oddness and boundary disjointness.
Report verify_trichotomy(const Dims& dims, int max_functions, uint64_t seed);

// The slope-flattening map on every nonzero slope class: validity of images,
// injectivity, roundtrips, stability of W0/V0/U0 under the map, the
// projection relation, exact class ratios, and the d=1 oracle cross-check.
Report verify_embedding(const Dims& dims);

// Steep-family scaffolds on every nonzero slope class: witness boundary sums
// and directed boundary counts against sigma * n^(d-1) and ell * n^(d-1).
Report verify_steep(const Dims& dims);

// Sampler calibration: chi-square against the full enumeration, slope-event
// frequency, and (d = 2) the distance-2 conditioning probabilities.
Report verify_stats(const Dims& dims, uint64_t seed, int64_t draws);

Json report_to_json(const Report& r);

}  // namespace tricolor
