#pragma once

// Uniform sampling of proper 3-colorings (exact and Glauber dynamics) and the
// statistics built on samples: color proportions per bipartition class,
// slope-event frequency, distance-2 conditioning events, and boundary-size
// histograms of level components.
//
// RNG: splitmix64 seeds per-chain xoshiro256++ streams; bounded integers by
// rejection, so streams are reproducible across platforms.
//
// The exact samplers are the only ones claiming uniformity over the full
// coloring space: Glauber dynamics is not irreducible across slope classes
// (the 012012 coloring of the 6-cycle is frozen), so its stationarity claims
// are restricted to reachability classes.

#include <boost/rational.hpp>
#include <map>

#include "tricolor/enumeration.hpp"

namespace tricolor {

using Rational = boost::rational<int64_t>;

struct Rng {
    std::array<uint64_t, 4> s{};

    // stream-split construction: one generator per (seed, stream) pair
    static Rng seeded(uint64_t seed, uint64_t stream = 0);
    uint64_t next();
    uint64_t below(uint64_t bound);  // uniform in [0, bound), rejection sampled
    double unit();                   // uniform in [0, 1)
};

enum class SampleMethod { exact, glauber };

struct SampleConfig {
    Dims dims;
    SampleMethod method = SampleMethod::exact;
    uint64_t steps = 1;     // glauber: sweeps between emitted samples
    uint64_t burn_in = 0;   // glauber: sweeps before the first sample
    uint64_t seed = 0;
    uint64_t chains = 1;
};

// Exact uniform sampler over raw (unnormalized) proper colorings. For d = 1
// it samples an index into the deterministic enumeration; for d = 2 it runs
// transfer-matrix backward sampling, column by column. Draws are i.i.d.
class ExactSampler {
  public:
    explicit ExactSampler(Dims dims);
    Coloring draw_raw(Rng& rng) const;
    Coloring draw_normalized(Rng& rng) const;  // cyclic color shift to f(0) = 0

  private:
    Dims dims_;
    // d=1 path: materialized enumeration
    std::vector<Coloring> all_;
    // d=2 path: layer states and u64 transfer powers
    std::vector<std::vector<uint8_t>> states_;
    std::vector<std::vector<std::vector<uint64_t>>> powers_;  // powers_[k] = M^k
    std::vector<uint8_t> compat_;                             // row-major layer compatibility
};

// One heat-bath update: uniform vertex, uniform recolor among the colors
// differing from all neighbors. Returns true when the state changed.
bool glauber_step(Coloring& f, Rng& rng);
// steps full sweeps (n^d single-site updates each).
void glauber_sweeps(Coloring& f, Rng& rng, uint64_t sweeps);
// True when no single-site move can change the state.
bool glauber_frozen(const Coloring& f);

struct RigidityStats {
    // rho[i][k]: proportion of color k on bipartition class i
    std::array<std::array<Rational, 3>, 2> rho{};
    std::array<Rational, 3> min_rho{};  // min over classes, per color
    Vec slope;
};

RigidityStats rho_stats(const Coloring& f);

// Fraction of samples whose coloring lies outside the slope-0 class.
Rational slope_event_freq(const std::vector<Coloring>& samples);

// A_x: all vertices at distance exactly 2 from x take color 0.
bool a_x_event(const Coloring& f, const Vec& x);
std::vector<Vec> distance_two_sphere(const Dims& dims, const Vec& x);

struct AxConditionals {
    int64_t events = 0;       // number of samples with A_x
    int64_t center_one = 0;   // f(x) = 1 among them
    int64_t neighbor_one = 0; // f(x + e_1) = 1 among them
    int64_t total = 0;
};
AxConditionals a_x_conditionals(const std::vector<Coloring>& samples, const Vec& x);

// Boundary sizes of all distinct sublevel components of a torus HHF
// (one component per edge, deduplicated): size -> multiplicity.
std::map<int64_t, int64_t> boundary_size_histogram(const TorusHHF& r);

// Upper-tail p-value of the chi-square statistic with df degrees of freedom
// (regularized incomplete gamma Q(df/2, x/2)).
double chi_square_pvalue(double statistic, double df);

// Goodness of fit of observed counts against the uniform distribution over
// all enumerated colorings; returns the p-value.
double uniformity_pvalue(const std::map<std::vector<uint8_t>, int64_t>& observed, int64_t n_outcomes,
                         int64_t n_draws);

}  // namespace tricolor
