#include "tricolor/embedding.hpp"

#include <algorithm>
#include <map>

namespace tricolor {

OrientationTransform OrientationTransform::identity(int d) {
    OrientationTransform t;
    t.d = d;
    for (int i = 0; i < d; ++i) {
        t.perm[static_cast<size_t>(i)] = static_cast<int8_t>(i);
        t.sign[static_cast<size_t>(i)] = 1;
    }
    return t;
}

bool OrientationTransform::is_identity() const {
    for (int i = 0; i < d; ++i)
        if (perm[static_cast<size_t>(i)] != i || sign[static_cast<size_t>(i)] != 1) return false;
    return true;
}

OrientationTransform OrientationTransform::inverse() const {
    OrientationTransform inv;
    inv.d = d;
    for (int i = 0; i < d; ++i)
        inv.perm[static_cast<size_t>(perm[static_cast<size_t>(i)])] = static_cast<int8_t>(i);
    for (int i = 0; i < d; ++i) inv.sign[static_cast<size_t>(i)] = sign[static_cast<size_t>(perm[static_cast<size_t>(i)])];
    return inv;
}

Vec OrientationTransform::apply(const Vec& x) const {
    Vec y = Vec::zero(d);
    for (int i = 0; i < d; ++i) {
        int old_axis = perm[static_cast<size_t>(i)];
        y[i] = sign[static_cast<size_t>(old_axis)] * x[old_axis];
    }
    return y;
}

Vec OrientationTransform::apply_slope(const Vec& m) const {
    return apply(m);
}

QpHeight OrientationTransform::apply(const QpHeight& h) const {
    if (is_identity()) return h;
    OrientationTransform inv = inverse();
    QpHeight r{h.dims, apply_slope(h.slope), std::vector<int32_t>(h.base.size())};
    Grid g = Grid::torus_grid(h.dims);
    for (int64_t i = 0; i < g.cell_count(); ++i) r.base[static_cast<size_t>(i)] = h.eval(inv.apply(g.vertex(i)));
    return r;
}

OrientationTransform orient(const Vec& m) {
    if (m.is_zero()) throw ZeroSlope("orientation needs a nonzero slope");
    int best = 0;
    for (int i = 1; i < m.d; ++i)
        if (std::abs(m[i]) > std::abs(m[best])) best = i;
    OrientationTransform t = OrientationTransform::identity(m.d);
    t.sign[static_cast<size_t>(best)] = static_cast<int8_t>(m[best] > 0 ? 1 : -1);
    std::swap(t.perm[0], t.perm[static_cast<size_t>(best)]);
    return t;
}

namespace {

class ComponentTranslates final : public TranslationView {
  public:
    ComponentTranslates(const HeightField& f, const LevelComponent& c) : f_(f), c_(c) {}
    const CellSet& base() const override { return c_.carrier; }
    ClippedTranslate translate(const Vec& z) const override {
        try {
            LevelComponent t = translate_component(c_, z, f_);
            return {t.carrier, Bits(f_.grid.cell_count(), true)};
        } catch (const WindowOverflow&) {
        } catch (const LevelMismatch&) {
        }
        return {CellSet::empty(f_.grid), Bits(f_.grid.cell_count())};
    }

  private:
    const HeightField& f_;
    const LevelComponent& c_;
};

TypeClassification classify_component_at(const HeightField& field, const LevelComponent& lc) {
    ComponentTranslates view(field, lc);
    return classify_type_at(view, field.grid.window_k + 1);
}

int component_order_at(const HeightField& field, const LevelComponent& lc, const TypeClassification& cls,
                       const Vec& z) {
    ComponentTranslates view(field, lc);
    return order_index_at(view, cls, z);
}

bool strict_subset(const Bits& a, const Bits& b) {
    return a.subset_of(b) && !(a == b);
}

// W0, Delta and the order of n e_1, at one window radius. Shared between the
// forward construction (driven by h) and the inverse recovery (driven by t).
struct CoreBuild {
    HeightField field;
    LevelComponent w0;
    CellSet w_minus1;
    Vec delta;
    int32_t delta_h = 0;  // h(Delta); zero for slope-0 drivers
    int ell = 0;
};

CoreBuild find_w0(const QpHeight& h, int K) {
    HeightField field = HeightField::lattice(h, K);
    const Vec origin = Vec::zero(h.dims.d);
    const Vec ne1 = Vec::axis(h.dims.d, 0, h.dims.n);

    std::vector<LevelComponent> fam = separating_family(field, origin, ne1);
    const LevelComponent* w0 = nullptr;
    TypeClassification cls;
    for (const LevelComponent& a : fam) {  // ascending by inclusion: minimal first
        TypeClassification c = classify_component_at(field, a);
        if (c.type == SetType::zero) {
            w0 = &a;
            cls = c;
            break;
        }
    }
    if (!w0) throw WindowUnstable("no type-0 sublevel component separating the origin from n e_1");

    CoreBuild core{std::move(field), *w0, CellSet{}, cls.delta, 0, 0};
    core.delta_h = h.eval(cls.delta);
    core.w_minus1 = translate_component(core.w0, -cls.delta, core.field).carrier;
    core.ell = component_order_at(core.field, core.w0, cls, ne1);
    return core;
}

// Sublevel components of the negated field containing the origin and
// avoiding -n e_1: the complements of the superlevel U' candidates.
struct SuperSearch {
    HeightField negfield;
    std::vector<LevelComponent> fam;
};

SuperSearch super_candidates(const HeightField& field) {
    SuperSearch s{field.negated(), {}};
    const Vec origin = Vec::zero(field.grid.dims.d);
    const Vec mne1 = Vec::axis(field.grid.dims.d, 0, -field.grid.dims.n);
    s.fam = separating_family(s.negfield, origin, mne1);
    return s;
}

CellSet find_u0(const SuperSearch& ss, const LevelComponent& w0, const CellSet& w_minus1, int32_t delta,
                LevelComponent* out_complement) {
    // h(intb U') = h(extb W0) - delta/2 pins the negated level of the
    // complement A through h(extb A) = -(level(A) + 1).
    const int32_t target_level = delta / 2 - w0.outer_height - 1;
    const Bits w0_comp = w0.carrier.bits.complement();
    for (const LevelComponent& a : ss.fam) {  // ascending: minimal A = maximal U'
        if (a.level != target_level) continue;
        if (a.carrier.bits.intersects(w_minus1.bits)) continue;  // W0 - Delta inside U'
        if (!w0_comp.subset_of(a.carrier.bits)) continue;        // U' inside W0
        if (classify_component_at(ss.negfield, a).type != SetType::zero) continue;
        if (out_complement) *out_complement = a;
        return a.carrier.complement();
    }
    throw WindowUnstable("no type-0 superlevel component matches the mid-height condition");
}

Scaffold build_scaffold_at(const QpHeight& h, int K, bool steep) {
    Scaffold sc;
    sc.h = h;
    sc.tf = OrientationTransform::identity(h.dims.d);
    sc.K = K;
    const int d = h.dims.d;
    const int n = h.dims.n;
    const int32_t m1 = h.slope[0];
    if (m1 <= 0) throw PreconditionFailed("scaffold requires a positive first slope coordinate");

    CoreBuild core = find_w0(h, K);
    sc.w0 = core.w0;
    sc.w_minus1 = core.w_minus1;
    sc.delta = core.delta;
    sc.delta_h = core.delta_h;
    sc.ell = core.ell;
    HeightField& field = core.field;

    if (sc.delta_h < 6 || sc.delta_h % 6 != 0)
        throw ScaffoldInvariantViolated("delta = " + std::to_string(sc.delta_h) + " is not a positive multiple of 6");
    if (m1 != sc.ell * sc.delta_h) throw ScaffoldInvariantViolated("m_1 != ell * delta");
    sc.p = sc.delta_h / 6;
    sc.sigma = m1 / 6;
    if (sc.sigma != sc.ell * sc.p) throw ScaffoldInvariantViolated("sigma != ell * p");
    if (!sc.w_minus1.contains(Vec::axis(d, 0, -n)))
        throw ScaffoldInvariantViolated("-n e_1 not in W0 - Delta");

    // V candidates: sublevel components containing -n e_1 and avoiding the
    // origin, between a lower bound and W0, at a prescribed inner height.
    const Vec origin = Vec::zero(d);
    const Vec mne1 = Vec::axis(d, 0, -n);
    std::vector<LevelComponent> famV = separating_family(field, mne1, origin);
    std::vector<LevelComponent> famWide = separating_family(field, mne1, Vec::axis(d, 0, n));
    auto pick_v = [&](const std::vector<LevelComponent>& fam, int32_t level, const Bits& lower,
                      bool maximal) -> const LevelComponent* {
        const LevelComponent* found = nullptr;
        for (const LevelComponent& a : fam) {
            if (a.level != level) continue;
            if (!lower.subset_of(a.carrier.bits)) continue;
            if (!a.carrier.bits.subset_of(sc.w0.carrier.bits)) continue;
            if (classify_component_at(field, a).type != SetType::zero) continue;
            found = &a;
            if (!maximal) break;
        }
        return found;
    };
    const LevelComponent* v0 = pick_v(famV, sc.w0.inner_height - 1, sc.w_minus1.bits, /*maximal=*/true);
    if (!v0) throw WindowUnstable("no admissible V0 within the window");
    sc.v0 = *v0;

    SuperSearch ss = super_candidates(field);
    sc.u0 = find_u0(ss, sc.w0, sc.w_minus1, sc.delta_h, &sc.u0_complement);

    if (!(strict_subset(sc.w_minus1.bits, sc.u0.bits) && strict_subset(sc.u0.bits, sc.v0.carrier.bits) &&
          strict_subset(sc.v0.carrier.bits, sc.w0.carrier.bits)))
        throw ScaffoldInvariantViolated("containment chain W0-Delta < U0 < V0 < W0 fails");
    {
        CellSet ib = intb(sc.u0);
        for (int64_t i = 0; i < field.grid.cell_count(); ++i)
            if (ib.bits.get(i) && field.at(i) != sc.w0.outer_height - sc.delta_h / 2)
                throw ScaffoldInvariantViolated("h(intb U0) != h(extb W0) - delta/2");
    }

    if (steep) {
        sc.steep.assign(static_cast<size_t>(sc.p), LevelComponent{});
        const LevelComponent* vp =
            pick_v(famV, sc.w0.inner_height - 3 * sc.p + 2, sc.w_minus1.bits, /*maximal=*/true);
        if (!vp) throw WindowUnstable("no admissible V^{p-1} within the window");
        sc.steep[static_cast<size_t>(sc.p - 1)] = *vp;
        for (int i = sc.p - 2; i >= 0; --i) {
            const LevelComponent* vi = pick_v(famWide, sc.w0.inner_height - 3 * i - 1,
                                              sc.steep[static_cast<size_t>(i + 1)].carrier.bits, /*maximal=*/false);
            if (!vi) throw WindowUnstable("no admissible V^i within the window");
            sc.steep[static_cast<size_t>(i)] = *vi;
        }
        const Bits* prev = &sc.u0.bits;
        for (int i = sc.p - 1; i >= 0; --i) {
            if (!strict_subset(*prev, sc.steep[static_cast<size_t>(i)].carrier.bits))
                throw ScaffoldInvariantViolated("steep chain containment fails");
            prev = &sc.steep[static_cast<size_t>(i)].carrier.bits;
        }
        if (!strict_subset(*prev, sc.w0.carrier.bits))
            throw ScaffoldInvariantViolated("steep chain does not end strictly below W0");
    }
    return sc;
}

bool restriction_equal(const CellSet& small_set, const CellSet& big_set) {
    const Grid& sg = small_set.grid;
    for (int64_t i = 0; i < sg.cell_count(); ++i)
        if (small_set.bits.get(i) != big_set.contains(sg.vertex(i))) return false;
    return true;
}

bool scaffolds_agree(const Scaffold& a, const Scaffold& b) {
    if (!(a.delta == b.delta) || a.delta_h != b.delta_h || a.ell != b.ell || a.p != b.p) return false;
    if (!restriction_equal(a.w0.carrier, b.w0.carrier)) return false;
    // v0 is only present in forward builds
    if (a.v0.carrier.bits.size() > 0 && b.v0.carrier.bits.size() > 0 &&
        !restriction_equal(a.v0.carrier, b.v0.carrier))
        return false;
    if (!restriction_equal(a.u0, b.u0)) return false;
    if (a.steep.size() != b.steep.size()) return false;
    for (size_t i = 0; i < a.steep.size(); ++i)
        if (!restriction_equal(a.steep[i].carrier, b.steep[i].carrier)) return false;
    return true;
}

// The W_i / U_i chain materialized on the window for all indices whose
// anchors stayed inside.
struct Chain {
    std::map<int, Bits> w, u;
};

Chain build_chain(const Scaffold& sc, const HeightField& field) {
    // A translate whose anchor sits against the window frame can come out
    // fragmented (its true carrier routes around the outside), so only chain
    // layers whose anchors keep a full period of margin are trusted. Cells
    // beyond the trusted layers stay unresolved rather than wrong.
    const Grid& g = field.grid;
    const int32_t margin = g.dims.n;
    auto well_inside = [&](const Vec& v) {
        for (int i = 0; i < g.dims.d; ++i)
            if (v[i] < g.lo() + margin || v[i] >= g.hi() - margin) return false;
        return true;
    };
    Chain ch;
    ch.w[0] = sc.w0.carrier.bits;
    ch.u[0] = sc.u0.bits;
    for (int dir : {+1, -1}) {
        for (int i = dir;; i += dir) {
            Vec off = sc.delta * i;
            if (!well_inside(sc.w0.u + off) || !well_inside(sc.w0.v + off)) break;
            try {
                ch.w[i] = translate_component(sc.w0, off, field).carrier.bits;
            } catch (const Error&) {
                break;
            }
        }
    }
    HeightField neg = field.negated();
    for (int dir : {+1, -1}) {
        for (int i = dir;; i += dir) {
            Vec off = sc.delta * i;
            if (!well_inside(sc.u0_complement.u + off) || !well_inside(sc.u0_complement.v + off)) break;
            try {
                ch.u[i] = translate_component(sc.u0_complement, off, neg).carrier.bits.complement();
            } catch (const Error&) {
                break;
            }
        }
    }
    return ch;
}

// Piecewise gradient reversal. Forward flattens h to slope 0; backward
// undoes it (the driving scaffold then lives on t). Produces a value for
// every window cell whose chain position is certain and demands that the
// fundamental domain is fully covered and the assembled function reproduces
// all of them.
QpHeight apply_reversal(const Scaffold& sc, const HeightField& field, bool forward, const Vec& result_slope) {
    const Dims dims = sc.h.dims;
    const Grid& g = field.grid;
    Chain ch = build_chain(sc, field);
    const int32_t reflect = 2 * sc.w0.outer_height;

    const int i_lo = ch.w.begin()->first;
    const int i_hi = ch.w.rbegin()->first;

    std::vector<int32_t> out(static_cast<size_t>(g.cell_count()));
    Bits resolved(g.cell_count());
    for (int64_t cell = 0; cell < g.cell_count(); ++cell) {
        int found = i_hi + 1;
        for (int i = i_lo; i <= i_hi; ++i) {
            if (ch.w.at(i).get(cell)) {
                found = i;
                break;
            }
        }
        if (found > i_hi || found == i_lo || !ch.u.count(found)) continue;  // minimality not certified
        const int32_t hv = field.at(cell);
        int32_t val;
        if (ch.u.at(found).get(cell)) {
            // cell in U_i \ W_{i-1}: reflected branch with index i - 1
            val = reflect - hv + (found - 1) * sc.delta_h;
        } else {
            // cell in W_i \ U_i
            val = forward ? hv - found * sc.delta_h : hv + found * sc.delta_h;
        }
        out[static_cast<size_t>(cell)] = val;
        resolved.set(cell);
    }

    QpHeight result{dims, result_slope, std::vector<int32_t>(static_cast<size_t>(dims.cells()))};
    Grid fd = Grid::torus_grid(dims);
    for (int64_t i = 0; i < fd.cell_count(); ++i) {
        int64_t cell = g.index(fd.vertex(i));
        if (!resolved.get(cell)) throw WindowUnstable("gradient reversal could not resolve the fundamental domain");
        result.base[static_cast<size_t>(i)] = out[static_cast<size_t>(cell)];
    }

    // the assembled quasi-periodic function must reproduce every resolved cell
    for (int64_t cell = 0; cell < g.cell_count(); ++cell) {
        if (!resolved.get(cell)) continue;
        if (result.eval(g.vertex(cell)) != out[static_cast<size_t>(cell)])
            throw ScaffoldInvariantViolated(forward ? "image is not periodic between chain layers"
                                                    : "preimage is not quasi-periodic with slope m");
    }
    auto bad = validate(result);
    if (!bad.empty())
        throw ScaffoldInvariantViolated(std::string(forward ? "image" : "preimage") +
                                        " is not a valid HHF: " + bad.front().message);
    return result;
}

}  // namespace

Scaffold build_scaffold(const QpHeight& h, bool steep, int K0) {
    if (h.slope.is_zero()) throw ZeroSlope("scaffold requires a nonzero slope");
    auto bad = validate(h);
    if (!bad.empty()) throw PreconditionFailed("invalid quasi-periodic input: " + bad.front().message);
    OrientationTransform tf = orient(h.slope);
    QpHeight oh = tf.apply(h);

    int K = K0;
    std::string last = "scaffold build failed";
    while (2 * K <= kMaxWindowK) {
        try {
            Scaffold a = build_scaffold_at(oh, K, steep);
            Scaffold b = build_scaffold_at(oh, 2 * K, steep);
            if (scaffolds_agree(a, b)) {
                b.tf = tf;
                return b;
            }
            last = "scaffold differs between K and 2K";
        } catch (const WindowUnstable& e) {
            last = e.what();
        } catch (const WindowOverflow& e) {
            last = e.what();
        }
        K *= 2;
    }
    throw WindowUnstable("scaffold did not stabilize under window doubling: " + last);
}

QpHeight psi_from_scaffold(const Scaffold& sc) {
    HeightField field = HeightField::lattice(sc.h, sc.K);
    QpHeight t = apply_reversal(sc, field, /*forward=*/true, Vec::zero(sc.h.dims.d));

    // seam arithmetic: the image coincides with h on W0^+ \ U0^-
    Bits band = op_plus(sc.w0.carrier).bits.and_not(op_minus(sc.u0).bits);
    for (int64_t i = 0; i < field.grid.cell_count(); ++i) {
        if (!band.get(i)) continue;
        if (t.eval(field.grid.vertex(i)) != field.at(i))
            throw ScaffoldInvariantViolated("image does not agree with h on W0^+ \\ U0^-");
    }
    return t;
}

QpHeight psi(const QpHeight& h, int K0) {
    Scaffold sc = build_scaffold(h, /*steep=*/false, K0);
    QpHeight t = psi_from_scaffold(sc);
    return sc.tf.inverse().apply(t);
}

QpHeight psi_inverse(const QpHeight& t, const Vec& m, int K0) {
    if (m.is_zero()) throw ZeroSlope("inverse requires the original nonzero slope");
    {
        auto bad = validate(t);
        if (!bad.empty()) throw NotInImage("not a valid slope-0 quasi-periodic HHF: " + bad.front().message);
        if (!t.slope.is_zero()) throw NotInImage("input slope is not zero");
    }
    OrientationTransform tf = orient(m);
    const Vec om = tf.apply_slope(m);
    const QpHeight ot = tf.apply(t);
    const int32_t m1 = om[0];

    auto recover = [&](int radius) -> Scaffold {
        Scaffold sc;
        sc.h = ot;  // heights of t drive the recovery
        sc.tf = OrientationTransform::identity(ot.dims.d);
        sc.K = radius;
        CoreBuild core = find_w0(ot, radius);
        sc.w0 = core.w0;
        sc.w_minus1 = core.w_minus1;
        sc.delta = core.delta;
        sc.ell = core.ell;
        if (sc.ell <= 0 || m1 % sc.ell != 0 || (m1 / sc.ell) % 6 != 0 || m1 / sc.ell < 6)
            throw NotInImage("order of W0 + n e_1 does not yield an admissible delta");
        sc.delta_h = m1 / sc.ell;
        sc.p = sc.delta_h / 6;
        sc.sigma = m1 / 6;
        SuperSearch ss = super_candidates(core.field);
        sc.u0 = find_u0(ss, sc.w0, sc.w_minus1, sc.delta_h, &sc.u0_complement);
        return sc;
    };

    int K = K0;
    std::string last = "recovery failed";
    while (2 * K <= kMaxWindowK) {
        try {
            Scaffold a = recover(K);
            Scaffold b = recover(2 * K);
            if (scaffolds_agree(a, b)) {
                HeightField field = HeightField::lattice(ot, b.K);
                QpHeight oh = apply_reversal(b, field, /*forward=*/false, om);
                auto bad = validate(oh, /*coloring_lift=*/true);
                if (!bad.empty()) throw NotInImage("reversed function is invalid: " + bad.front().message);
                return tf.inverse().apply(oh);
            }
            last = "recovered scaffold differs between K and 2K";
        } catch (const WindowUnstable& e) {
            last = e.what();
        } catch (const WindowOverflow& e) {
            last = e.what();
        } catch (const ScaffoldInvariantViolated& e) {
            throw NotInImage(std::string("recovery failed: ") + e.what());
        }
        K *= 2;
    }
    throw NotInImage("recovery did not stabilize under window doubling: " + last);
}

QpHeight psi_d1(const QpHeight& h) {
    if (h.dims.d != 1) throw PreconditionFailed("one-dimensional construction needs d = 1");
    if (h.slope.is_zero()) throw ZeroSlope("one-dimensional construction needs a nonzero slope");
    OrientationTransform tf = orient(h.slope);
    QpHeight oh = tf.apply(h);
    const int n = oh.dims.n;
    const int32_t ell = oh.slope[0] / 6;
    if (oh.slope[0] % 6 != 0) throw PreconditionFailed("slope must be a multiple of 6");

    auto value = [&](int32_t x) { return oh.eval(Vec::axis(1, 0, x)); };
    // first height-2 vertex to the right, last height-(2 - 3 ell) to the left
    int32_t w = 0;
    while (w <= n && value(w) != 2) ++w;
    int32_t u = 0;
    while (u >= -n && value(u) != 2 - 3 * ell) --u;
    if (w > n || u < -n || w - u >= n)
        throw ScaffoldInvariantViolated("reversal anchors not found within one period");

    QpHeight t{oh.dims, Vec::zero(1), std::vector<int32_t>(static_cast<size_t>(n))};
    for (int32_t v = 0; v < n; ++v) {
        int32_t q = v - u;  // q >= 0
        int32_t i = q / n;
        int32_t rem = q - i * n;
        t.base[static_cast<size_t>(v)] = (rem <= w - u) ? value(v) - 6 * i * ell : 4 - value(v) + 6 * i * ell;
    }
    auto bad = validate(t);
    if (!bad.empty()) throw ScaffoldInvariantViolated("one-dimensional image invalid: " + bad.front().message);
    return tf.inverse().apply(t);
}

SteepWitness steep_witness(const Scaffold& sc) {
    if (sc.steep.empty()) throw PreconditionFailed("steep family not built for this scaffold");
    QpHeight t = psi_from_scaffold(sc);
    TorusHHF r = to_torus_hhf(t);
    HeightField tor = HeightField::torus(r);

    CellSet ib = intb(sc.steep.back().carrier);   // V^{p-1}
    CellSet eb = extb(sc.steep.front().carrier);  // V^0
    int64_t iu = ib.bits.find_first();
    int64_t iv = eb.bits.find_first();
    if (iu < 0 || iv < 0) throw ScaffoldInvariantViolated("steep family has empty boundary sets");

    SteepWitness wit;
    wit.u = project_vertex(sc.h.dims, ib.grid.vertex(iu));
    wit.v = project_vertex(sc.h.dims, eb.grid.vertex(iv));
    const int32_t ru = tor.at(wit.u);
    const int32_t rv = tor.at(wit.v);
    if (!(rv > ru + 3 * sc.p - 3)) throw ScaffoldInvariantViolated("witness heights violate r(v) > r(u) + 3p - 3");
    for (int j = 0; j < sc.p; ++j) {
        LevelComponent comp = sublevel_component(tor, wit.u, wit.v, ru + 3 * j);
        wit.boundary_sum += static_cast<int64_t>(boundary_edges(comp.carrier).size());
    }
    return wit;
}

Json to_json(const Scaffold& sc) {
    Json j;
    j["window_k"] = sc.K;
    std::vector<int32_t> dv(sc.delta.c.begin(), sc.delta.c.begin() + sc.delta.d);
    j["delta"] = dv;
    j["delta_h"] = sc.delta_h;
    j["ell"] = sc.ell;
    j["p"] = sc.p;
    j["sigma"] = sc.sigma;
    j["w0"] = to_json(sc.w0);
    j["v0"] = to_json(sc.v0);
    Json u0 = Json::array();
    for (int64_t i = 0; i < sc.u0.grid.cell_count(); ++i)
        if (sc.u0.bits.get(i)) {
            Vec v = sc.u0.grid.vertex(i);
            std::vector<int32_t> c(v.c.begin(), v.c.begin() + v.d);
            u0.push_back(c);
        }
    j["u0"] = u0;
    Json levels = Json::array();
    for (const auto& s : sc.steep) levels.push_back(s.level);
    j["steep_levels"] = levels;
    return j;
}

}  // namespace tricolor
