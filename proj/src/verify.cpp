#include "tricolor/verify.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace tricolor {

namespace {

std::string vecstr(const Vec& v) {
    return v.str();
}

// Deterministic sample of `want` colorings (all of them if the class is at
// most `want`).
std::vector<Coloring> sample_colorings(const Dims& dims, int want, uint64_t seed) {
    BigInt total = count_colorings(dims, dims.d <= 2 ? CountMethod::transfer : CountMethod::dfs);
    std::vector<Coloring> out;
    if (total <= want) {
        enumerate_colorings(dims, [&](const Coloring& f) {
            out.push_back(f);
            return true;
        });
        return out;
    }
    // seeded index set into the deterministic enumeration order
    Rng rng = Rng::seeded(seed, 17);
    std::set<uint64_t> picks;
    uint64_t n = total.convert_to<uint64_t>();
    while (picks.size() < static_cast<size_t>(want)) picks.insert(rng.below(n));
    uint64_t index = 0;
    enumerate_colorings(dims, [&](const Coloring& f) {
        if (picks.count(index)) out.push_back(f);
        ++index;
        return out.size() < static_cast<size_t>(want);
    });
    return out;
}

std::vector<Vec> nonzero_slopes(const SlopePartition& p) {
    std::vector<Vec> out;
    for (const auto& [m, c] : p.counts)
        if (!m.is_zero()) out.push_back(m);
    return out;
}

}  // namespace

Report verify_bijection(const Dims& dims) {
    Report r{"bijection", dims, {}, Json::object()};
    // The explicit collision set is belt and braces for small corpora;
    // injectivity already follows from mod3 being a left inverse of lift.
    const bool track_bases = count_colorings(dims, dims.d <= 2 ? CountMethod::transfer : CountMethod::dfs) <= 100000;
    std::set<std::vector<int32_t>> lift_bases;
    SlopePartition part{dims, {}, 0};
    int64_t checked = 0;
    enumerate_colorings(dims, [&](const Coloring& f) {
        QpHeight h = lift(f);
        if (mod3(h) != f) r.fail("mod3(lift(f)) != f at enumeration index " + std::to_string(checked));
        if (track_bases && !lift_bases.insert(h.base).second)
            r.fail("lift collision at index " + std::to_string(checked));
        auto bad = validate(h, /*coloring_lift=*/true);
        if (!bad.empty()) r.fail("invalid lift: " + bad.front().message);
        if (!(fast_slope(f) == h.slope)) r.fail("fast slope disagrees with lift at " + std::to_string(checked));
        part.counts[h.slope] += 1;
        part.total += 1;
        ++checked;
        return true;
    });
    r.facts["colorings"] = checked;

    // partition identity and slope-class symmetries
    BigInt sum = 0;
    for (const auto& [m, c] : part.counts) sum += c;
    if (sum != part.total) r.fail("slope class sizes do not sum to the total");
    for (const auto& [m, c] : part.counts) {
        if (part.counts[-m] != c) r.fail("class size asymmetry under negation at m=" + vecstr(m));
        if (dims.d == 2) {
            Vec swapped = Vec::zero(2);
            swapped[0] = m[1];
            swapped[1] = m[0];
            if (part.counts[swapped] != c) r.fail("class size asymmetry under axis swap at m=" + vecstr(m));
        }
    }

    // the slope-0 class is exactly the set of torus HHF colorings
    BigInt hhf_count = count_torus_hhfs(dims);
    if (hhf_count != part.counts[Vec::zero(dims.d)])
        r.fail("slope-0 class size " + part.counts[Vec::zero(dims.d)].str() + " != torus HHF count " +
               hhf_count.str());
    r.facts["torus_hhfs"] = hhf_count.str();

    // lift(mod3(qp)) = qp across all nonzero classes
    for (const Vec& m : nonzero_slopes(part)) {
        enumerate_slope_class(dims, m, [&](const QpHeight& h) {
            if (!(lift(mod3(h)) == h)) r.fail("lift(mod3(qp)) != qp in class m=" + vecstr(m));
            return true;
        });
    }
    return r;
}

Report verify_height_formula(const Dims& dims, int max_functions, uint64_t seed) {
    Report r{"height-formula", dims, {}, Json::object()};
    std::vector<Coloring> corpus = sample_colorings(dims, max_functions, seed);
    Grid fd = Grid::torus_grid(dims);
    int64_t pairs = 0;
    for (const Coloring& f : corpus) {
        QpHeight h = lift(f);
        HeightField field = HeightField::lattice(h, kDefaultWindowK);
        ComponentCache cache(field);
        for (int64_t a = 0; a < fd.cell_count(); ++a) {
            for (int64_t b = 0; b < fd.cell_count(); ++b) {
                Vec u = fd.vertex(a), v = fd.vertex(b);
                int64_t via = cache.height_diff(u, v);
                if (via != h.eval(v) - h.eval(u)) {
                    r.fail("height formula fails at u=" + vecstr(u) + " v=" + vecstr(v));
                    if (r.failures.size() > 20) return r;
                }
                ++pairs;
            }
        }
    }
    r.facts["functions"] = corpus.size();
    r.facts["pairs"] = pairs;
    return r;
}

Report verify_trichotomy(const Dims& dims, int max_functions, uint64_t seed) {
    Report r{"trichotomy", dims, {}, Json::object()};
    std::vector<Coloring> corpus = sample_colorings(dims, max_functions, seed);
    int64_t pair_count = 0, comp_count = 0;
    for (const Coloring& f : corpus) {
        QpHeight h = lift(f);
        HeightField field = HeightField::lattice(h, kDefaultWindowK);
        std::vector<LevelComponent> comps = fundamental_components(field);
        comp_count += static_cast<int64_t>(comps.size());
        for (const LevelComponent& c : comps) {
            auto bad = check_basic_properties(c, field);
            for (const auto& v : bad) r.fail("component property: " + v.message);
            if (!is_odd_set(c.carrier)) r.fail("component is not an odd set");
        }
        for (size_t i = 0; i < comps.size(); ++i) {
            for (size_t j = 0; j < comps.size(); ++j) {
                if (i == j) continue;
                if (comps[i].carrier.bits == comps[j].carrier.bits) continue;
                if (!is_boundary_disjoint(comps[i].carrier, comps[j].carrier)) {
                    r.fail("distinct components share boundary");
                    continue;
                }
                try {
                    const bool disjoint = !comps[i].carrier.bits.intersects(comps[j].carrier.bits);
                    const bool codisjoint =
                        !comps[i].carrier.bits.complement().intersects(comps[j].carrier.bits.complement());
                    const bool nested = comps[i].carrier.bits.subset_of(comps[j].carrier.bits) ||
                                        comps[j].carrier.bits.subset_of(comps[i].carrier.bits);
                    if (int(disjoint) + int(codisjoint) + int(nested) != 1)
                        r.fail("pair trichotomy alternatives not exclusive");
                    TrichotomyVerdict v = pair_trichotomy(comps[i].carrier, comps[j].carrier);
                    (void)v;
                    ++pair_count;
                } catch (const Error& e) {
                    r.fail(std::string("pair trichotomy: ") + e.what());
                }
                if (r.failures.size() > 20) return r;
            }
        }
        // complement rule on a few components per function
        size_t limit = std::min<size_t>(comps.size(), 2);
        for (size_t i = 0; i < limit; ++i) {
            const LevelComponent& c = comps[i];
            try {
                ViewFactory comp_view = complement_component_view(h, c.kind, c.u, c.v, c.level);
                TypeClassification a = classify_type(component_view(h, c.kind, c.u, c.v, c.level));
                TypeClassification b = classify_type(comp_view);
                if (b.type != complement_type(a.type)) r.fail("complement type rule fails");
                // -Delta is a minimal translation of the complement; the
                // canonical tie-break need not commute with complementation,
                // so check the order index rather than vector equality
                if (a.type == SetType::zero && order_index(comp_view, b, -a.delta) != 1)
                    r.fail("complement minimal translation rule fails");
            } catch (const Error& e) {
                r.fail(std::string("complement rule: ") + e.what());
            }
        }
    }
    r.facts["functions"] = corpus.size();
    r.facts["components"] = comp_count;
    r.facts["ordered_pairs"] = pair_count;
    return r;
}

namespace {

// W0, V0 and U0^c stay level components after the gradient reversal.
void check_stability_and_projection(Report& r, const Scaffold& sc, const QpHeight& t_oriented) {
    HeightField tfield = HeightField::lattice(t_oriented, sc.K);

    auto adjacent_pair = [&](const CellSet& carrier) -> std::pair<Vec, Vec> {
        CellSet ib = intb(carrier), eb = extb(carrier);
        for (int64_t i = 0; i < carrier.grid.cell_count(); ++i) {
            if (!ib.bits.get(i)) continue;
            for (int ax = 0; ax < carrier.grid.dims.d; ++ax)
                for (int dir : {+1, -1}) {
                    int64_t j = carrier.grid.neighbor(i, ax, dir);
                    if (j >= 0 && eb.bits.get(j)) return {carrier.grid.vertex(i), carrier.grid.vertex(j)};
                }
        }
        throw ScaffoldInvariantViolated("no boundary edge found");
    };

    // W0 and V0 are sublevel components of the image
    for (const LevelComponent* part : {&sc.w0, &sc.v0}) {
        auto [u, v] = adjacent_pair(part->carrier);
        LevelComponent again = component_of_edge(tfield, u, v);
        if (!(again.carrier.bits == part->carrier.bits))
            r.fail("scaffold component is not a level component of the image");
    }
    // U0^c is a superlevel component of the image
    {
        auto [u, v] = adjacent_pair(sc.u0_complement.carrier);
        LevelComponent again = component_of_edge(tfield.negated(), u, v);
        if (!(again.carrier.bits == sc.u0_complement.carrier.bits))
            r.fail("U0 complement is not a superlevel component of the image");
    }

    // projection relation: pi(boundary V0) inside the boundary of the torus
    // component between the projected anchors
    auto [u, v] = adjacent_pair(sc.v0.carrier);
    CellSet ll = sublevel_set(tfield, u, tfield.at(u));
    CellSet vplus2 = op_plus(op_plus(sc.v0.carrier));
    CellSet ring = {tfield.grid, vplus2.bits.and_not(sc.v0.carrier.bits)};
    CellSet pring = project(ring);
    CellSet pll = project(ll);
    if (pring.bits.intersects(pll.bits)) {
        r.fail("projection hypothesis fails: pi(V0^{++} \\ V0) meets pi(LL+(u))");
        return;
    }
    TorusHHF rt = to_torus_hhf(t_oriented);
    HeightField tor = HeightField::torus(rt);
    Vec pu = project_vertex(sc.h.dims, u), pv = project_vertex(sc.h.dims, v);
    LevelComponent big = sublevel_component(tor, pu, pv, tor.at(pu));
    Bits pb_v0;
    {
        std::vector<int64_t> edges = boundary_edges(sc.v0.carrier);
        std::vector<int64_t> proj = project_edges(sc.v0.carrier.grid, edges);
        pb_v0 = Bits(tor.grid.cell_count() * tor.grid.dims.d);
        for (int64_t e : proj) pb_v0.set(e);
    }
    Bits pb_big = boundary_edge_bits(big.carrier);
    if (!pb_v0.subset_of(pb_big)) r.fail("pi(boundary V0) not contained in the torus component boundary");
}

}  // namespace

Report verify_embedding(const Dims& dims) {
    Report r{"embedding", dims, {}, Json::object()};
    SlopePartition part = partition_by_slope(dims);
    const BigInt zero_count = part.counts[Vec::zero(dims.d)];
    Json ratios = Json::array();

    std::map<Vec, std::vector<QpHeight>, VecLess> classes = nonzero_slope_classes(dims);
    for (const auto& [m, cls] : classes) {
        if (BigInt(cls.size()) != part.counts[m]) r.fail("slope class size mismatch at m=" + vecstr(m));
        std::set<std::vector<int32_t>> images;
        std::set<std::vector<int32_t>> oracle_images;
        int pointwise_agree = 0;
        for (const QpHeight& h : cls) {
            try {
                Scaffold sc = build_scaffold(h);
                QpHeight ot = psi_from_scaffold(sc);
                QpHeight t = sc.tf.inverse().apply(ot);
                if (!t.slope.is_zero()) r.fail("image slope nonzero at m=" + vecstr(m));
                auto bad = validate(t);
                if (!bad.empty()) r.fail("invalid image: " + bad.front().message);
                images.insert(t.base);
                QpHeight back = psi_inverse(t, m);
                if (!(back == h)) r.fail("inverse roundtrip fails at m=" + vecstr(m));
                check_stability_and_projection(r, sc, ot);
                if (dims.d == 1) {
                    QpHeight s = psi_d1(h);
                    auto sbad = validate(s);
                    if (!sbad.empty()) r.fail("d=1 oracle image invalid");
                    if (!s.slope.is_zero()) r.fail("d=1 oracle image slope nonzero");
                    oracle_images.insert(s.base);
                    if (s == t) ++pointwise_agree;
                }
            } catch (const Error& e) {
                r.fail(std::string("embedding at m=") + vecstr(m) + ": " + e.what());
            }
            if (r.failures.size() > 20) return r;
        }
        if (images.size() != cls.size()) r.fail("images not pairwise distinct at m=" + vecstr(m));
        if (dims.d == 1) {
            if (oracle_images.size() != cls.size()) r.fail("d=1 oracle not injective at m=" + vecstr(m));
            r.facts["pointwise_agreement_observed_m=" + vecstr(m)] =
                std::to_string(pointwise_agree) + "/" + std::to_string(cls.size());
        }
        // exact desk-scale ratio |QP_m| / |QP_0| < 1
        if (!(part.counts[m] < zero_count)) r.fail("class ratio not below one at m=" + vecstr(m));
        Json entry;
        std::vector<int32_t> mv(m.c.begin(), m.c.begin() + m.d);
        entry["m"] = mv;
        entry["qp_m"] = part.counts[m].str();
        entry["qp_0"] = zero_count.str();
        ratios.push_back(entry);
    }
    r.facts["ratios"] = ratios;
    return r;
}

Report verify_steep(const Dims& dims) {
    Report r{"steep", dims, {}, Json::object()};
    int64_t n_pow = 1;
    for (int i = 0; i < dims.d - 1; ++i) n_pow *= dims.n;

    int64_t scaffolds = 0;
    for (const auto& [m, cls] : nonzero_slope_classes(dims)) {
        for (const QpHeight& h : cls) {
            try {
                Scaffold sc = build_scaffold(h, /*steep=*/true);
                if (sc.p != sc.delta_h / 6) r.fail("p != delta/6");
                SteepWitness wit = steep_witness(sc);
                if (wit.boundary_sum < static_cast<int64_t>(sc.sigma) * n_pow)
                    r.fail("steep witness boundary sum below sigma * n^(d-1) at m=" + vecstr(m));
                int64_t directed = directed_boundary_count(sc.v0.carrier, 0);
                if (directed < static_cast<int64_t>(sc.ell) * n_pow)
                    r.fail("directed boundary of V0 below ell * n^(d-1) at m=" + vecstr(m));
                ++scaffolds;
            } catch (const Error& e) {
                r.fail(std::string("steep at m=") + vecstr(m) + ": " + e.what());
            }
            if (r.failures.size() > 20) return r;
        }
    }
    r.facts["scaffolds"] = scaffolds;
    return r;
}

Report verify_stats(const Dims& dims, uint64_t seed, int64_t draws) {
    Report r{"stats", dims, {}, Json::object()};
    SlopePartition part = partition_by_slope(dims);
    BigInt total = part.total;

    ExactSampler sampler(dims);
    Rng rng = Rng::seeded(seed, 1);

    // chi-square goodness of fit against uniform over the full enumeration;
    // only meaningful when every outcome expects a healthy count
    if (total * 20 <= draws) {
        std::map<std::vector<uint8_t>, int64_t> counts;
        Rng chain = Rng::seeded(seed, 2);
        for (int64_t i = 0; i < draws; ++i) counts[sampler.draw_normalized(chain).values] += 1;
        double p = uniformity_pvalue(counts, total.convert_to<int64_t>(), draws);
        r.facts["chi_square_p"] = p;
        if (p <= 0.001) r.fail("chi-square p-value " + std::to_string(p) + " <= 0.001");
    } else {
        r.facts["chi_square_skipped"] = "expected count per outcome below 20";
    }

    // slope-event frequency against the exact partition ratio
    {
        BigInt nonzero_total = total - part.counts[Vec::zero(dims.d)];
        double exact = nonzero_total.convert_to<double>() / total.convert_to<double>();
        int64_t hits = 0;
        Rng chain = Rng::seeded(seed, 3);
        const int64_t n_slope = std::min<int64_t>(draws, 20000);
        for (int64_t i = 0; i < n_slope; ++i)
            if (!fast_slope(sampler.draw_normalized(chain)).is_zero()) ++hits;
        double got = static_cast<double>(hits) / static_cast<double>(n_slope);
        double sigma = std::sqrt(std::max(exact * (1 - exact), 1e-12) / static_cast<double>(n_slope));
        r.facts["slope_event_exact"] = exact;
        r.facts["slope_event_sampled"] = got;
        if (std::abs(got - exact) > 4 * sigma + 1e-12)
            r.fail("slope-event frequency outside the 4-sigma band");
    }

    // distance-2 conditioning probabilities (raw samples, d >= 2)
    if (dims.d == 2) {
        Vec x0 = Vec::zero(2);
        Vec x1 = Vec::zero(2);
        x1[0] = dims.n / 2;
        x1[1] = dims.n / 2;
        int64_t events = 0, center = 0, nbr = 0;
        Rng chain = Rng::seeded(seed, 4);
        for (int64_t i = 0; i < draws; ++i) {
            Coloring f = sampler.draw_raw(chain);
            for (const Vec& x : {x0, x1}) {
                if (!a_x_event(f, x)) continue;
                ++events;
                if (f.at(x) == 1) ++center;
                Vec xe = x;
                xe[0] = (x[0] + 1) % dims.n;
                if (f.at(xe) == 1) ++nbr;
            }
        }
        r.facts["a_x_events"] = events;
        if (events < 32) {
            r.fail("too few conditioning events (" + std::to_string(events) + ") for the 4-sigma bands");
        } else {
            const double pc = 1.0 / (std::pow(2.0, 2 * dims.d) + 2.0);
            const double pn = 0.5;
            double got_c = static_cast<double>(center) / static_cast<double>(events);
            double got_n = static_cast<double>(nbr) / static_cast<double>(events);
            double sc = std::sqrt(pc * (1 - pc) / static_cast<double>(events));
            double sn = std::sqrt(pn * (1 - pn) / static_cast<double>(events));
            r.facts["p_center_one"] = got_c;
            r.facts["p_neighbor_one"] = got_n;
            if (std::abs(got_c - pc) > 4 * sc) r.fail("P(f(x)=1 | A_x) outside the 4-sigma band");
            if (std::abs(got_n - pn) > 4 * sn) r.fail("P(f(x+e)=1 | A_x) outside the 4-sigma band");
        }
    }
    (void)rng;
    return r;
}

Json report_to_json(const Report& r) {
    Json j;
    j["schema"] = "1";
    j["suite"] = r.suite;
    j["d"] = r.dims.d;
    j["n"] = r.dims.n;
    j["ok"] = r.ok();
    j["failures"] = r.failures;
    j["facts"] = r.facts;
    return j;
}

}  // namespace tricolor
