#include "tricolor/trichotomy.hpp"

#include <algorithm>

namespace tricolor {

bool is_bicon(const CellSet& u) {
    if (u.bits.none()) return false;
    CellSet comp = u.complement();
    if (comp.bits.none()) return false;
    return is_connected(u) && is_connected(comp);
}

namespace {

// Membership pattern of the forbidden transversal crossing, read around the
// 4-cycle: (notA notB), (notA B), (A B), (A notB).
bool forbidden_pattern(const bool a[4], const bool b[4]) {
    for (int rot = 0; rot < 4; ++rot) {
        for (int dir : {+1, -1}) {
            auto at = [&](int k) { return (rot + dir * k + 8) % 4; };
            if (!a[at(0)] && !b[at(0)] && !a[at(1)] && b[at(1)] && a[at(2)] && b[at(2)] && a[at(3)] && !b[at(3)])
                return true;
        }
    }
    return false;
}

// Edge-boundary disjointness restricted to edges whose b-membership is known
// on both endpoints; 4-cycle scan restricted to fully known plaquettes.
bool boundary_disjoint_masked(const CellSet& a, const CellSet& b, const Bits* b_known) {
    const Grid& g = a.grid;
    const int d = g.dims.d;
    const int64_t cells = g.cell_count();
    auto known = [&](int64_t i) { return !b_known || b_known->get(i); };
    for (int64_t i = 0; i < cells; ++i) {
        for (int ax = 0; ax < d; ++ax) {
            int64_t j = g.neighbor(i, ax, +1);
            if (j < 0 || !known(i) || !known(j)) continue;
            if (a.bits.get(i) != a.bits.get(j) && b.bits.get(i) != b.bits.get(j)) return false;
        }
    }
    // 4-cycles (v, v+ei, v+ei+ej, v+ej)
    for (int64_t i = 0; i < cells; ++i) {
        for (int ax1 = 0; ax1 < d; ++ax1) {
            int64_t p1 = g.neighbor(i, ax1, +1);
            if (p1 < 0) continue;
            for (int ax2 = ax1 + 1; ax2 < d; ++ax2) {
                int64_t p3 = g.neighbor(i, ax2, +1);
                if (p3 < 0) continue;
                int64_t p2 = g.neighbor(p1, ax2, +1);
                if (p2 < 0) continue;
                if (!known(i) || !known(p1) || !known(p2) || !known(p3)) continue;
                const bool am[4] = {a.bits.get(i), a.bits.get(p1), a.bits.get(p2), a.bits.get(p3)};
                const bool bm[4] = {b.bits.get(i), b.bits.get(p1), b.bits.get(p2), b.bits.get(p3)};
                if (forbidden_pattern(am, bm)) return false;
            }
        }
    }
    return true;
}

}  // namespace

bool is_boundary_disjoint(const CellSet& a, const CellSet& b) {
    if (!(a.grid == b.grid)) throw PreconditionFailed("boundary disjointness needs a common grid");
    return boundary_disjoint_masked(a, b, nullptr);
}

TrichotomyVerdict pair_trichotomy(const CellSet& a, const CellSet& b) {
    if (!is_bicon(a)) throw PreconditionFailed("pair trichotomy: first set is not biconnected");
    if (!is_bicon(b)) throw PreconditionFailed("pair trichotomy: second set is not biconnected");
    if (a.bits == b.bits) throw PreconditionFailed("pair trichotomy: sets are equal");
    if (!is_boundary_disjoint(a, b)) throw PreconditionFailed("pair trichotomy: sets are not boundary disjoint");

    const bool disjoint = !a.bits.intersects(b.bits);
    const bool codisjoint = !a.bits.complement().intersects(b.bits.complement());
    const bool a_in_b = a.bits.subset_of(b.bits);
    const bool b_in_a = b.bits.subset_of(a.bits);
    const int hits = int(disjoint) + int(codisjoint) + int(a_in_b || b_in_a);
    if (hits != 1) {
        if (!a.grid.torus)
            throw WindowUnstable("pair trichotomy inconclusive within the window");
        throw PreconditionFailed("pair trichotomy does not hold for this torus pair");
    }
    if (disjoint) return {Pairing::Disjoint};
    if (codisjoint) return {Pairing::CoDisjoint};
    return {a_in_b ? Pairing::FirstInSecond : Pairing::SecondInFirst};
}

SetType complement_type(SetType t) {
    switch (t) {
        case SetType::plus: return SetType::minus;
        case SetType::minus: return SetType::plus;
        default: return t;
    }
}

namespace {

class ShiftView final : public TranslationView {
  public:
    explicit ShiftView(CellSet u) : u_(std::move(u)) {}
    const CellSet& base() const override { return u_; }
    ClippedTranslate translate(const Vec& z) const override { return translate_clipped(u_, z); }

  private:
    CellSet u_;
};

class ComponentView final : public TranslationView {
  public:
    ComponentView(HeightField field, LevelComponent lc, bool complemented = false)
        : field_(std::move(field)), lc_(std::move(lc)), complemented_(complemented) {
        base_ = complemented_ ? lc_.carrier.complement() : lc_.carrier;
    }
    const CellSet& base() const override { return base_; }
    ClippedTranslate translate(const Vec& z) const override {
        try {
            LevelComponent t = translate_component(lc_, z, field_);
            CellSet set = complemented_ ? t.carrier.complement() : t.carrier;
            return {std::move(set), Bits(field_.grid.cell_count(), true)};
        } catch (const WindowOverflow&) {
        } catch (const LevelMismatch&) {
        }
        // translate not representable here; report it as fully unknown
        return {CellSet::empty(field_.grid), Bits(field_.grid.cell_count())};
    }

  private:
    HeightField field_;
    LevelComponent lc_;
    bool complemented_;
    CellSet base_;
};

std::vector<Vec> translate_candidates(const Dims& dims, int zrange) {
    std::vector<Vec> out;
    std::function<void(Vec&, int)> rec = [&](Vec& w, int ax) {
        if (ax == dims.d) {
            if (!w.is_zero()) out.push_back(w * dims.n);
            return;
        }
        for (int32_t k = -zrange; k <= zrange; ++k) {
            w[ax] = k;
            rec(w, ax + 1);
        }
        w[ax] = 0;
    };
    Vec w = Vec::zero(dims.d);
    rec(w, 0);
    std::sort(out.begin(), out.end(), [](const Vec& a, const Vec& b) {
        if (a.l1() != b.l1()) return a.l1() < b.l1();
        return a.lex_less(b);
    });
    return out;
}

enum class PairKind { same, disjoint, codisjoint, base_in_t, t_in_base, inconclusive };

// Relation of U to U+z judged on the cells where U+z is known.
PairKind relate(const CellSet& u, const ClippedTranslate& t) {
    const Bits& known = t.known;
    if (known.none()) return PairKind::inconclusive;
    Bits u_known = u.bits & known;
    const bool differs = !(u_known == t.set.bits);
    if (!differs) return PairKind::same;
    const bool meets = u.bits.intersects(t.set.bits);
    const bool cod_meets = known.and_not(u.bits).and_not(t.set.bits).any();
    const bool u_in_t = u_known.subset_of(t.set.bits);
    const bool t_in_u = t.set.bits.subset_of(u.bits);
    const int hits = int(!meets) + int(!cod_meets) + int(u_in_t || t_in_u);
    if (hits != 1) return PairKind::inconclusive;
    if (!meets) return PairKind::disjoint;
    if (!cod_meets) return PairKind::codisjoint;
    return u_in_t ? PairKind::base_in_t : PairKind::t_in_base;
}

}  // namespace

ViewFactory shift_view(Dims dims, std::function<bool(const Vec&)> member) {
    return [dims, member = std::move(member)](int K) -> std::unique_ptr<TranslationView> {
        Grid g = Grid::window_grid(dims, K);
        CellSet u = CellSet::empty(g);
        for (int64_t i = 0; i < g.cell_count(); ++i)
            if (member(g.vertex(i))) u.bits.set(i);
        return std::make_unique<ShiftView>(std::move(u));
    };
}

ViewFactory component_view(QpHeight h, LcKind kind, Vec u, Vec v, int32_t level) {
    return [=](int K) -> std::unique_ptr<TranslationView> {
        HeightField f = HeightField::lattice(h, K);
        LevelComponent lc =
            kind == LcKind::sub ? sublevel_component(f, u, v, level) : superlevel_component(f, u, v, level);
        return std::make_unique<ComponentView>(std::move(f), std::move(lc));
    };
}

ViewFactory complement_component_view(QpHeight h, LcKind kind, Vec u, Vec v, int32_t level) {
    return [=](int K) -> std::unique_ptr<TranslationView> {
        HeightField f = HeightField::lattice(h, K);
        LevelComponent lc =
            kind == LcKind::sub ? sublevel_component(f, u, v, level) : superlevel_component(f, u, v, level);
        return std::make_unique<ComponentView>(std::move(f), std::move(lc), /*complemented=*/true);
    };
}

bool is_translation_respecting_at(const TranslationView& view, int zrange) {
    const CellSet& u = view.base();
    if (!is_bicon(u)) return false;
    for (const Vec& z : translate_candidates(u.grid.dims, zrange)) {
        ClippedTranslate t = view.translate(z);
        if (relate(u, t) == PairKind::same) continue;
        if (!boundary_disjoint_masked(u, t.set, &t.known)) return false;
    }
    return true;
}

TypeClassification classify_type_at(const TranslationView& view, int zrange) {
    const CellSet& u = view.base();
    const Dims& dims = u.grid.dims;
    int n_disjoint = 0, n_codisjoint = 0, n_nested = 0;
    std::vector<std::pair<Vec, ClippedTranslate>> supersets;
    bool any_distinct = false;

    for (const Vec& z : translate_candidates(dims, zrange)) {
        ClippedTranslate t = view.translate(z);
        PairKind k = relate(u, t);
        switch (k) {
            case PairKind::same:
            case PairKind::inconclusive: break;
            case PairKind::disjoint: ++n_disjoint; any_distinct = true; break;
            case PairKind::codisjoint: ++n_codisjoint; any_distinct = true; break;
            case PairKind::base_in_t:
                supersets.emplace_back(z, std::move(t));
                ++n_nested;
                any_distinct = true;
                break;
            case PairKind::t_in_base: ++n_nested; any_distinct = true; break;
        }
    }

    TypeClassification cls;
    if (!any_distinct) {
        cls.type = SetType::degenerate;
        return cls;
    }
    const bool mixed = (n_disjoint > 0) + (n_codisjoint > 0) + (n_nested > 0) > 1;
    if (mixed) throw WindowUnstable("translate relations are mixed; set is not classifiable in this window");
    if (n_disjoint) {
        cls.type = SetType::plus;
        return cls;
    }
    if (n_codisjoint) {
        cls.type = SetType::minus;
        return cls;
    }

    cls.type = SetType::zero;
    // Minimal translation: the strict superset translate minimal by
    // inclusion; among translations producing it, smallest l1 norm first,
    // lexicographic order second (candidates are pre-sorted that way).
    if (supersets.empty()) throw WindowUnstable("type-0 set has no visible successor translate");
    size_t best = 0;
    for (size_t i = 1; i < supersets.size(); ++i) {
        const Bits joint = supersets[i].second.known & supersets[best].second.known;
        const Bits a = supersets[i].second.set.bits & joint;
        const Bits b = supersets[best].second.set.bits & joint;
        if (a == b) continue;  // same set; earlier candidate wins the tie-break
        if (a.subset_of(b)) best = i;
    }
    cls.delta = supersets[best].first;
    return cls;
}

int order_index_at(const TranslationView& view, const TypeClassification& cls, const Vec& z) {
    if (cls.type != SetType::zero) throw PreconditionFailed("order index requires a type-0 classification");
    ClippedTranslate target = view.translate(z);
    for (int mag = 0; mag <= 64; ++mag) {
        for (int sign : {+1, -1}) {
            if (mag == 0 && sign < 0) continue;
            ClippedTranslate probe = view.translate(cls.delta * (sign * mag));
            Bits joint = target.known & probe.known;
            if (joint.none()) continue;
            if ((target.set.bits & joint) == (probe.set.bits & joint)) return sign * mag;
        }
    }
    throw WindowUnstable("order index not found within the window");
}

namespace {

template <typename T>
T stabilized(int K0, const std::function<T(int)>& eval) {
    // Accept once two consecutive radii agree; a radius that cannot answer
    // (window too small) counts as disagreement, never as an answer.
    std::optional<T> prev;
    std::string last;
    for (int K = K0; K <= kMaxWindowK; K *= 2) {
        std::optional<T> cur;
        try {
            cur = eval(K);
        } catch (const WindowUnstable& e) {
            last = e.what();
        } catch (const WindowOverflow& e) {
            last = e.what();
        }
        if (cur && prev && *cur == *prev) return *cur;
        prev = std::move(cur);
    }
    throw WindowUnstable("verdict did not stabilize under window doubling up to K=" +
                         std::to_string(kMaxWindowK) + (last.empty() ? "" : ": " + last));
}

}  // namespace

bool is_translation_respecting(const ViewFactory& make, int K0) {
    return stabilized<bool>(K0, [&](int K) {
        auto view = make(K);
        return is_translation_respecting_at(*view, K + 1);
    });
}

TypeClassification classify_type(const ViewFactory& make, int K0) {
    struct Key {
        SetType type;
        Vec delta;
        bool operator==(const Key&) const = default;
    };
    Key key = stabilized<Key>(K0, [&](int K) {
        auto view = make(K);
        TypeClassification c = classify_type_at(*view, K + 1);
        return Key{c.type, c.type == SetType::zero ? c.delta : Vec::zero(view->base().grid.dims.d)};
    });
    TypeClassification out;
    out.type = key.type;
    out.delta = key.delta;
    out.window_k = K0;
    return out;
}

int order_index(const ViewFactory& make, const TypeClassification& cls, const Vec& z) {
    return stabilized<int>(kDefaultWindowK, [&](int K) {
        auto view = make(K);
        return order_index_at(*view, cls, z);
    });
}

int64_t directed_boundary_count(const CellSet& v_lattice, int axis) {
    if (v_lattice.grid.torus) throw PreconditionFailed("directed boundary count expects a lattice set");
    const int d = v_lattice.grid.dims.d;
    std::vector<int64_t> along_axis;
    for (int64_t e : boundary_edges(v_lattice))
        if (static_cast<int>(e % d) == axis) along_axis.push_back(e);
    return static_cast<int64_t>(project_edges(v_lattice.grid, along_axis).size());
}

}  // namespace tricolor
