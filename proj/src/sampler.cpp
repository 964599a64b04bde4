#include "tricolor/sampler.hpp"

#include <algorithm>
#include <cmath>

#include "tricolor/levelsets.hpp"

namespace tricolor {

namespace {

uint64_t splitmix64(uint64_t& x) {
    x += 0x9e3779b97f4a7c15ull;
    uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

uint64_t rotl(uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

}  // namespace

Rng Rng::seeded(uint64_t seed, uint64_t stream) {
    // derive the state from (seed, stream) through splitmix64
    uint64_t x = seed ^ (0x6a09e667f3bcc909ull * (stream + 1));
    Rng r;
    for (auto& w : r.s) w = splitmix64(x);
    return r;
}

uint64_t Rng::next() {
    // xoshiro256++
    const uint64_t result = rotl(s[0] + s[3], 23) + s[0];
    const uint64_t t = s[1] << 17;
    s[2] ^= s[0];
    s[3] ^= s[1];
    s[1] ^= s[2];
    s[0] ^= s[3];
    s[2] ^= t;
    s[3] = rotl(s[3], 45);
    return result;
}

uint64_t Rng::below(uint64_t bound) {
    // rejection from the top to avoid modulo bias
    const uint64_t limit = bound * (UINT64_MAX / bound);
    uint64_t x;
    do {
        x = next();
    } while (x >= limit);
    return x % bound;
}

double Rng::unit() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

namespace {

// Proper colorings of the cycle C_n (d=2 layer states).
std::vector<std::vector<uint8_t>> cycle_states(int n) {
    std::vector<std::vector<uint8_t>> states;
    std::vector<uint8_t> cur(static_cast<size_t>(n));
    std::function<void(int)> rec = [&](int i) {
        if (i == n) {
            if (cur[0] != cur[static_cast<size_t>(n - 1)]) states.push_back(cur);
            return;
        }
        for (uint8_t c = 0; c < 3; ++c) {
            if (i > 0 && cur[static_cast<size_t>(i - 1)] == c) continue;
            cur[static_cast<size_t>(i)] = c;
            rec(i + 1);
        }
    };
    rec(0);
    return states;
}

bool layers_compatible(const std::vector<uint8_t>& a, const std::vector<uint8_t>& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] == b[i]) return false;
    return true;
}

}  // namespace

ExactSampler::ExactSampler(Dims dims) : dims_(dims) {
    check_enumeration_feasible(dims);
    if (dims.d == 1) {
        enumerate_colorings(dims, [&](const Coloring& f) {
            all_.push_back(f);
            return true;
        });
        return;
    }
    if (dims.d != 2) throw TooLarge("exact sampling supported for d <= 2");
    states_ = cycle_states(dims.n);
    const size_t s = states_.size();
    compat_.assign(s * s, 0);
    // u64 is enough whenever the feasibility guard passes (raw counts < 3e8 * 3)
    std::vector<std::vector<uint64_t>> m(s, std::vector<uint64_t>(s, 0));
    for (size_t a = 0; a < s; ++a)
        for (size_t b = 0; b < s; ++b)
            if (layers_compatible(states_[a], states_[b])) {
                m[a][b] = 1;
                compat_[a * s + b] = 1;
            }
    powers_.resize(static_cast<size_t>(dims.n) + 1);
    powers_[0].assign(s, std::vector<uint64_t>(s, 0));
    for (size_t a = 0; a < s; ++a) powers_[0][a][a] = 1;
    powers_[1] = m;
    for (int k = 2; k <= dims.n; ++k) {
        powers_[static_cast<size_t>(k)].assign(s, std::vector<uint64_t>(s, 0));
        for (size_t i = 0; i < s; ++i)
            for (size_t j = 0; j < s; ++j) {
                if (!powers_[static_cast<size_t>(k - 1)][i][j]) continue;
                for (size_t l = 0; l < s; ++l)
                    powers_[static_cast<size_t>(k)][i][l] += powers_[static_cast<size_t>(k - 1)][i][j] * m[j][l];
            }
    }
}

Coloring ExactSampler::draw_raw(Rng& rng) const {
    if (dims_.d == 1) {
        Coloring raw = all_[static_cast<size_t>(rng.below(all_.size()))];
        // re-randomize the pinned color by a uniform cyclic shift
        int shift = static_cast<int>(rng.below(3));
        for (auto& c : raw.values) c = static_cast<uint8_t>((c + shift) % 3);
        return raw;
    }
    const int n = dims_.n;
    const size_t s = states_.size();
    // column 1 with weight [M^n]_{a,a}, then sequential conditionals
    uint64_t total = 0;
    for (size_t a = 0; a < s; ++a) total += powers_[static_cast<size_t>(n)][a][a];
    uint64_t target = rng.below(total);
    size_t first = 0;
    for (size_t a = 0; a < s; ++a) {
        uint64_t w = powers_[static_cast<size_t>(n)][a][a];
        if (target < w) {
            first = a;
            break;
        }
        target -= w;
    }
    std::vector<size_t> cols{first};
    for (int j = 1; j < n; ++j) {
        size_t prev = cols.back();
        // weight of column j being b: M[prev][b] * [M^(n-j)]_{b, first}
        const auto& rest = powers_[static_cast<size_t>(n - j)];
        uint64_t tot = 0;
        for (size_t b = 0; b < s; ++b)
            if (compat_[prev * s + b]) tot += rest[b][first];
        uint64_t pick = rng.below(tot);
        size_t chosen = 0;
        for (size_t b = 0; b < s; ++b) {
            if (!compat_[prev * s + b]) continue;
            uint64_t w = rest[b][first];
            if (pick < w) {
                chosen = b;
                break;
            }
            pick -= w;
        }
        cols.push_back(chosen);
    }
    Coloring f{dims_, std::vector<uint8_t>(static_cast<size_t>(dims_.cells()))};
    Grid g = Grid::torus_grid(dims_);
    for (int x1 = 0; x1 < n; ++x1)
        for (int x0 = 0; x0 < n; ++x0) {
            Vec v = Vec::zero(2);
            v[0] = x0;
            v[1] = x1;
            f.values[static_cast<size_t>(g.index(v))] = states_[cols[static_cast<size_t>(x1)]][static_cast<size_t>(x0)];
        }
    return f;
}

Coloring ExactSampler::draw_normalized(Rng& rng) const {
    return normalized(draw_raw(rng));
}

bool glauber_step(Coloring& f, Rng& rng) {
    Grid g = Grid::torus_grid(f.dims);
    const int64_t site = static_cast<int64_t>(rng.below(static_cast<uint64_t>(g.cell_count())));
    uint8_t used = 0;
    for (int ax = 0; ax < f.dims.d; ++ax)
        for (int dir : {+1, -1}) used |= static_cast<uint8_t>(1u << f.at(g.neighbor(site, ax, dir)));
    uint8_t allowed[3];
    int count = 0;
    for (uint8_t c = 0; c < 3; ++c)
        if (!(used >> c & 1)) allowed[count++] = c;
    // the current color is always allowed, so count >= 1
    uint8_t pick = allowed[rng.below(static_cast<uint64_t>(count))];
    bool changed = pick != f.at(site);
    f.values[static_cast<size_t>(site)] = pick;
    return changed;
}

void glauber_sweeps(Coloring& f, Rng& rng, uint64_t sweeps) {
    const uint64_t per_sweep = static_cast<uint64_t>(f.dims.cells());
    for (uint64_t s = 0; s < sweeps * per_sweep; ++s) glauber_step(f, rng);
}

bool glauber_frozen(const Coloring& f) {
    Grid g = Grid::torus_grid(f.dims);
    for (int64_t site = 0; site < g.cell_count(); ++site) {
        uint8_t used = 0;
        for (int ax = 0; ax < f.dims.d; ++ax)
            for (int dir : {+1, -1}) used |= static_cast<uint8_t>(1u << f.at(g.neighbor(site, ax, dir)));
        for (uint8_t c = 0; c < 3; ++c)
            if (c != f.at(site) && !(used >> c & 1)) return false;
    }
    return true;
}

RigidityStats rho_stats(const Coloring& f) {
    Grid g = Grid::torus_grid(f.dims);
    std::array<std::array<int64_t, 3>, 2> counts{};
    int64_t class_size = g.cell_count() / 2;
    for (int64_t i = 0; i < g.cell_count(); ++i)
        counts[static_cast<size_t>(parity(g.vertex(i)))][f.at(i)] += 1;
    RigidityStats st;
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 3; ++k)
            st.rho[static_cast<size_t>(i)][static_cast<size_t>(k)] =
                Rational(counts[static_cast<size_t>(i)][static_cast<size_t>(k)], class_size);
    for (int k = 0; k < 3; ++k)
        st.min_rho[static_cast<size_t>(k)] =
            std::min(st.rho[0][static_cast<size_t>(k)], st.rho[1][static_cast<size_t>(k)]);
    st.slope = slope_of(f);
    return st;
}

Rational slope_event_freq(const std::vector<Coloring>& samples) {
    if (samples.empty()) return Rational(0);
    int64_t nonzero = 0;
    for (const Coloring& f : samples)
        if (!slope_of(f).is_zero()) ++nonzero;
    return Rational(nonzero, static_cast<int64_t>(samples.size()));
}

std::vector<Vec> distance_two_sphere(const Dims& dims, const Vec& x) {
    Grid g = Grid::torus_grid(dims);
    std::vector<Vec> out;
    for (int64_t i = 0; i < g.cell_count(); ++i) {
        Vec y = g.vertex(i);
        if (vertex_distance(dims, true, x, y) == 2) out.push_back(y);
    }
    return out;
}

bool a_x_event(const Coloring& f, const Vec& x) {
    for (const Vec& y : distance_two_sphere(f.dims, x))
        if (f.at(y) != 0) return false;
    return true;
}

AxConditionals a_x_conditionals(const std::vector<Coloring>& samples, const Vec& x) {
    AxConditionals out;
    out.total = static_cast<int64_t>(samples.size());
    if (samples.empty()) return out;
    const Dims dims = samples.front().dims;
    const std::vector<Vec> sphere = distance_two_sphere(dims, x);
    Vec xe = x;
    xe[0] = (x[0] + 1) % dims.n;
    for (const Coloring& f : samples) {
        bool event = true;
        for (const Vec& y : sphere)
            if (f.at(y) != 0) {
                event = false;
                break;
            }
        if (!event) continue;
        ++out.events;
        if (f.at(x) == 1) ++out.center_one;
        if (f.at(xe) == 1) ++out.neighbor_one;
    }
    return out;
}

std::map<int64_t, int64_t> boundary_size_histogram(const TorusHHF& r) {
    HeightField f = HeightField::torus(r);
    std::map<int64_t, int64_t> hist;
    for (const LevelComponent& c : fundamental_components(f))
        hist[static_cast<int64_t>(boundary_edges(c.carrier).size())] += 1;
    return hist;
}

namespace {

// Regularized upper incomplete gamma Q(a, x): series for x < a+1, continued
// fraction otherwise.
double gamma_q(double a, double x) {
    if (x < 0 || a <= 0) return 1.0;
    if (x == 0) return 1.0;
    const double gln = std::lgamma(a);
    if (x < a + 1.0) {
        double ap = a, sum = 1.0 / a, del = sum;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::abs(del) < std::abs(sum) * 1e-15) break;
        }
        return 1.0 - sum * std::exp(-x + a * std::log(x) - gln);
    }
    double b = x + 1.0 - a, c = 1e308, d = 1.0 / b, h = d;
    for (int i = 1; i <= 500; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < 1e-300) d = 1e-300;
        c = b + an / c;
        if (std::abs(c) < 1e-300) c = 1e-300;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-15) break;
    }
    return std::exp(-x + a * std::log(x) - gln) * h;
}

}  // namespace

double chi_square_pvalue(double statistic, double df) {
    return gamma_q(df / 2.0, statistic / 2.0);
}

double uniformity_pvalue(const std::map<std::vector<uint8_t>, int64_t>& observed, int64_t n_outcomes,
                         int64_t n_draws) {
    const double expected = static_cast<double>(n_draws) / static_cast<double>(n_outcomes);
    double stat = 0;
    int64_t seen = 0;
    for (const auto& [key, count] : observed) {
        stat += (static_cast<double>(count) - expected) * (static_cast<double>(count) - expected) / expected;
        ++seen;
    }
    // outcomes never observed contribute their full expectation
    stat += static_cast<double>(n_outcomes - seen) * expected;
    return chi_square_pvalue(stat, static_cast<double>(n_outcomes - 1));
}

}  // namespace tricolor
