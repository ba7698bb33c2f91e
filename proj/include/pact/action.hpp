#pragma once

#include <pact/errors.hpp>
#include <pact/group.hpp>
#include <pact/space.hpp>

#include <algorithm>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace pact {

/// A group descriptor, cone flag, state space, and a finite support of group
/// elements each carrying a PartialMap.  The element 0 always acts as the
/// identity on `universe` (= X = D_0) and is never stored in `support`;
/// undeclared elements implicitly carry the empty map.
struct ActionSystem {
    GroupDescriptor group;
    bool cone_only = true;
    SpaceDescriptor space;
    Region universe;
    std::vector<std::pair<GroupElement, PartialMap>> support;  // sorted by element

    friend bool operator==(const ActionSystem& a, const ActionSystem& b) {
        return a.group == b.group && a.cone_only == b.cone_only && a.space == b.space &&
               a.universe == b.universe && a.support == b.support;
    }
};

inline ActionSystem make_action_system(GroupDescriptor group, bool cone_only, SpaceDescriptor space,
                                       Region universe,
                                       std::vector<std::pair<GroupElement, PartialMap>> support) {
    ActionSystem sys;
    sys.group = std::move(group);
    sys.cone_only = cone_only;
    sys.space = std::move(space);
    if (universe.finite != sys.space.finite || universe.modulus != sys.space.modulus)
        throw validation_error("universe does not match the space backend");
    if (sys.space.finite)
        for (const auto& p : universe.points)
            if (std::find(sys.space.labels.begin(), sys.space.labels.end(), p) ==
                sys.space.labels.end())
                throw validation_error("universe point not a space label: " + p);
    sys.universe = std::move(universe);
    for (auto& [g, m] : support) {
        check_shape(sys.group, g);
        if (m.finite != sys.space.finite)
            throw validation_error("map backend does not match the space");
        if (!m.finite && m.dom.modulus != sys.space.modulus)
            throw validation_error("map modulus does not match the space");
        if (sys.cone_only && !cone_contains(sys.group, g))
            throw validation_error("cone-only system declares " + elem_to_string(g) +
                                   " outside the cone");
        if (g.is_zero()) {
            if (m != pm_identity_on(sys.universe))
                throw validation_error("the zero element must carry the identity on X");
            continue;  // implicit
        }
        if (!region_subset(pm_domain(m), sys.universe) ||
            !region_subset(pm_range(m), sys.universe))
            throw validation_error("map at " + elem_to_string(g) + " leaves the universe");
        sys.support.emplace_back(std::move(g), std::move(m));
    }
    std::sort(sys.support.begin(), sys.support.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (size_t i = 0; i + 1 < sys.support.size(); ++i)
        if (sys.support[i].first == sys.support[i + 1].first)
            throw validation_error("duplicate support element " +
                                   elem_to_string(sys.support[i].first));
    return sys;
}

inline PartialMap empty_map_like(const ActionSystem& sys) {
    if (sys.space.finite) return PartialMap{};
    Region dom;
    dom.finite = false;
    dom.modulus = sys.space.modulus;
    return make_pm_shift(std::move(dom), 0);
}

inline PartialMap map_at(const ActionSystem& sys, const GroupElement& g) {
    if (g.is_zero()) return pm_identity_on(sys.universe);
    auto it = std::lower_bound(sys.support.begin(), sys.support.end(), g,
                               [](const auto& p, const GroupElement& v) { return p.first < v; });
    if (it != sys.support.end() && it->first == g) return it->second;
    return empty_map_like(sys);
}

inline bool is_declared(const ActionSystem& sys, const GroupElement& g) {
    auto it = std::lower_bound(sys.support.begin(), sys.support.end(), g,
                               [](const auto& p, const GroupElement& v) { return p.first < v; });
    return it != sys.support.end() && it->first == g;
}

inline std::vector<GroupElement> declared_elements(const ActionSystem& sys) {
    std::vector<GroupElement> out;
    out.reserve(sys.support.size());
    for (const auto& [g, m] : sys.support) out.push_back(g);
    return out;
}

/// Forward image of a region under a partial map (region need not lie in dom).
inline Region pm_image(const PartialMap& f, const Region& r) {
    if (!f.finite) return region_translate(region_intersect(r, f.dom), f.shift);
    std::vector<std::string> pts;
    for (const auto& p : r.points)
        if (auto q = pm_apply(f, p)) pts.push_back(*q);
    return make_region_points(std::move(pts));
}

/// The set D_g: range of α_g when g is declared (or g = 0), else the domain
/// of α_{-g} when -g is declared, else empty.
inline Region region_d(const ActionSystem& sys, const GroupElement& g) {
    if (g.is_zero()) return sys.universe;
    if (is_declared(sys, g)) return pm_range(map_at(sys, g));
    GroupElement ng = -g;
    if (is_declared(sys, ng)) return pm_domain(map_at(sys, ng));
    Region r;
    r.finite = sys.space.finite;
    r.modulus = sys.space.modulus;
    return r;
}

/// A failing sample: condition, pair (s, t), and the point where it fails.
struct AxiomWitness {
    GroupElement s, t;
    std::string label;  // finite backend
    Rational point;     // interval backend (a decision-grid midpoint)
};

struct ConditionReport {
    bool holds = true;
    std::vector<AxiomWitness> failures;  // lexicographic (s, t, point) order
};

struct AxiomReport {
    ConditionReport c1a, c1b, c1prime, c2, c3;
    ConditionReport ta_i_ii_iii;   // I and II imply III
    ConditionReport ta_i_iii_ii;   // I and III imply II
    ConditionReport ta_ii_iii_i;   // II and III imply I

    bool definition_passes() const {
        return c1a.holds && c1b.holds && c2.holds && c3.holds;
    }
    bool third_arrow_passes() const {
        return ta_i_ii_iii.holds && ta_i_iii_ii.holds && ta_ii_iii_i.holds;
    }
};

namespace detail {

constexpr size_t kWitnessCap = 4096;

inline void add_witness(ConditionReport& rep, AxiomWitness w) {
    rep.holds = false;
    if (rep.failures.size() < kWitnessCap) rep.failures.push_back(std::move(w));
}

template <class Point>
AxiomWitness make_witness(const GroupElement& s, const GroupElement& t, const Point& x) {
    AxiomWitness w;
    w.s = s;
    w.t = t;
    if constexpr (std::is_same_v<Point, std::string>) w.label = x;
    else w.point = x;
    return w;
}

/// Pointwise third-arrow checks for one (s, t) over one sample point.
template <class Point>
void check_pointwise(const GroupElement& s, const GroupElement& t, const PartialMap& ms,
                     const PartialMap& ms_inv, const PartialMap& mt, const PartialMap& mst,
                     const Point& x, ConditionReport& i_ii_iii, ConditionReport& i_iii_ii,
                     ConditionReport& ii_iii_i) {
    auto y = pm_apply(mt, x);
    auto z = pm_apply(mst, x);
    if (y) {
        if (auto zy = pm_apply(ms, *y)) {
            // I and II hold with z' = α_s(α_t(x)); III must give the same z'
            if (!z || *z != *zy) add_witness(i_ii_iii, make_witness(s, t, x));
        }
        if (z) {
            auto zy = pm_apply(ms, *y);
            if (!zy || *zy != *z) add_witness(i_iii_ii, make_witness(s, t, x));
        }
    }
    if (z) {
        if (auto y2 = pm_apply(ms_inv, *z)) {
            // II and III hold with y' = α_s⁻¹(z); I must map x to y'
            if (!y || *y != *y2) add_witness(ii_iii_i, make_witness(s, t, x));
        }
    }
}

inline std::vector<Rational> region_witness_points(const Region& bad) {
    if (bad.empty()) return {};
    if (bad.full) return {Rational(0)};
    std::vector<Rational> pts;
    for (const auto& i : bad.ivs) pts.push_back((i.lo + i.hi) / 2);
    return pts;
}

}  // namespace detail

inline AxiomReport check_axioms(const ActionSystem& sys) {
    AxiomReport rep;
    std::vector<GroupElement> elems = declared_elements(sys);
    elems.push_back(group_zero(sys.group));
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());

    for (const auto& s : elems) {
        const PartialMap ms = map_at(sys, s);
        const PartialMap ms_inv = pm_invert(ms);
        for (const auto& t : elems) {
            // Pairs whose sum falls outside the declared support window are
            // skipped: a finite truncation of a valid infinite-support action
            // cannot carry the map at s+t, and treating it as empty would
            // flag every such truncation at its boundary.
            GroupElement u = s + t;
            if (!u.is_zero() && !is_declared(sys, u)) continue;
            const PartialMap mt = map_at(sys, t);
            const PartialMap mst = map_at(sys, u);

            // condition 1a: α_s(D_{-s} ∩ D_t) = D_s ∩ D_{s+t}
            Region lhs_a = pm_image(ms, region_d(sys, t));
            Region rhs_a = region_intersect(region_d(sys, s), region_d(sys, s + t));
            // condition 1b: α_t(D_{-t} ∩ D_{-s-t}) = D_t ∩ D_{-s}
            Region lhs_b = pm_image(mt, region_d(sys, -(s + t)));
            Region rhs_b = region_intersect(region_d(sys, t), region_d(sys, -s));

            auto report_region = [&](ConditionReport& cr, const Region& lhs, const Region& rhs,
                                     bool subset_only) {
                Region extra = region_difference(lhs, rhs);
                Region missing =
                    subset_only ? empty_region_like(lhs) : region_difference(rhs, lhs);
                if (extra.empty() && missing.empty()) return;
                Region bad = region_union(extra, missing);
                if (bad.finite) {
                    for (const auto& p : bad.points)
                        detail::add_witness(cr, detail::make_witness(s, t, p));
                } else {
                    for (const auto& p : detail::region_witness_points(bad))
                        detail::add_witness(cr, detail::make_witness(s, t, p));
                }
            };
            report_region(rep.c1a, lhs_a, rhs_a, false);
            report_region(rep.c1b, lhs_b, rhs_b, false);
            report_region(rep.c1prime, lhs_a, region_d(sys, s + t), true);

            // pointwise third-arrow checks
            if (sys.space.finite) {
                for (const auto& x : sys.universe.points)
                    detail::check_pointwise(s, t, ms, ms_inv, mt, mst, x, rep.ta_i_ii_iii,
                                            rep.ta_i_iii_ii, rep.ta_ii_iii_i);
            } else {
                std::vector<Region> cells = {sys.universe, pm_domain(mt), pm_domain(mst)};
                if (!mt.empty()) cells.push_back(region_translate(pm_domain(ms), -mt.shift));
                if (!mst.empty()) cells.push_back(region_translate(pm_range(ms), -mst.shift));
                for (const auto& x : decision_grid(cells)) {
                    if (!region_contains_point(sys.universe, x)) continue;
                    detail::check_pointwise(s, t, ms, ms_inv, mt, mst, x, rep.ta_i_ii_iii,
                                            rep.ta_i_iii_ii, rep.ta_ii_iii_i);
                }
            }
        }
    }
    // condition 2 is the statement "I and III imply II" quantified the same way
    rep.c2 = rep.ta_i_iii_ii;
    // condition 3 holds by construction: D_0 = X and α_0 = Id_X are implicit
    rep.c3.holds = true;
    return rep;
}

struct PropertyVerdict {
    bool holds = true;
    std::string witness;  // human-readable, empty when holds
};

struct PropertyReport {
    PropertyVerdict free, non_degenerate, composition, domain_ordering;
};

inline PropertyReport check_properties(const ActionSystem& sys) {
    PropertyReport rep;

    // freeness: α_t(x) = x implies t = 0
    for (const auto& [t, m] : sys.support) {
        if (m.empty()) continue;
        if (m.finite) {
            for (const auto& [a, b] : m.pairs)
                if (a == b) {
                    rep.free = {false, "alpha_" + elem_to_string(t) + " fixes " + a};
                    break;
                }
        } else if (m.shift == 0) {
            rep.free = {false, "alpha_" + elem_to_string(t) + " fixes " +
                                   rat_to_string((m.dom.full ? Rational(0)
                                                             : (m.dom.ivs[0].lo + m.dom.ivs[0].hi) / 2))};
        }
        if (!rep.free.holds) break;
    }

    // non-degeneracy: the subgroup generated by {s : D_s ≠ ∅} is the whole
    // group (Zd) / contains every declared element (rational line, where the
    // ambient group is not finitely generated).
    {
        std::vector<GroupElement> gens;
        for (const auto& [g, m] : sys.support)
            if (!m.empty()) gens.push_back(g);
        Subgroup h = subgroup_reduce(sys.group, gens);
        if (sys.group.kind == GroupKind::Zd) {
            if (!subgroup_is_full(h))
                rep.non_degenerate = {false, "nonempty supports generate a proper subgroup"};
        } else {
            for (const auto& [g, m] : sys.support)
                if (!subgroup_member(h, g)) {
                    rep.non_degenerate = {false, "declared element " + elem_to_string(g) +
                                                     " outside the generated subgroup"};
                    break;
                }
        }
    }

    // composition and domain ordering, quantified over declared cone pairs
    std::vector<GroupElement> cone;
    for (const auto& [g, m] : sys.support)
        if (cone_contains(sys.group, g)) cone.push_back(g);
    for (const auto& s : cone) {
        for (const auto& t : cone) {
            if (!(s + t).is_zero() && !is_declared(sys, s + t)) continue;  // truncation window
            PartialMap lhs = pm_compose(map_at(sys, s), map_at(sys, t));
            PartialMap rhs = map_at(sys, s + t);
            if (rep.composition.holds && lhs != rhs)
                rep.composition = {false, "alpha_" + elem_to_string(s) + " o alpha_" +
                                              elem_to_string(t) + " != alpha_" +
                                              elem_to_string(s + t)};
            if (rep.domain_ordering.holds &&
                !region_subset(pm_domain(rhs), pm_domain(map_at(sys, t))))
                rep.domain_ordering = {false, "D_{-" + elem_to_string(s + t) +
                                                  "} not contained in D_{-" + elem_to_string(t) +
                                                  "}"};
            if (!rep.composition.holds && !rep.domain_ordering.holds) break;
        }
        if (!rep.composition.holds && !rep.domain_ordering.holds) break;
    }
    return rep;
}

}  // namespace pact
