#pragma once

#include <pact/groupoid.hpp>

#include <map>
#include <string>
#include <vector>

namespace pact {

/// Coefficient function on the points of X; absent labels are zero.
using CoeffFn = std::map<std::string, GaussianRational>;

/// Formal polynomial Σ f_n Uⁿ with each f_n supported in X_n = range(α_n).
struct CrossedPoly {
    std::map<GroupElement, CoeffFn> terms;

    bool is_zero() const { return terms.empty(); }
    friend bool operator==(const CrossedPoly& a, const CrossedPoly& b) { return a.terms == b.terms; }
    friend bool operator!=(const CrossedPoly& a, const CrossedPoly& b) { return !(a == b); }
};

/// The map β_g even when only -g is declared (then the inverse is used).
inline PartialMap action_map(const ActionSystem& sys, const GroupElement& g) {
    if (g.is_zero() || is_declared(sys, g)) return map_at(sys, g);
    if (is_declared(sys, -g)) return pm_invert(map_at(sys, -g));
    return empty_map_like(sys);
}

namespace detail {
inline void poly_trim(CrossedPoly& p) {
    for (auto it = p.terms.begin(); it != p.terms.end();) {
        for (auto jt = it->second.begin(); jt != it->second.end();)
            jt = jt->second.is_zero() ? it->second.erase(jt) : std::next(jt);
        it = it->second.empty() ? p.terms.erase(it) : std::next(it);
    }
}
}  // namespace detail

inline CrossedPoly make_poly(const ActionSystem& sys, std::map<GroupElement, CoeffFn> terms) {
    if (!sys.space.finite)
        throw unsupported_backend_error("crossed polynomials need the finite backend");
    CrossedPoly p{std::move(terms)};
    detail::poly_trim(p);
    for (const auto& [n, f] : p.terms) {
        Region xn = region_d(sys, n);
        for (const auto& [label, v] : f)
            if (!region_contains_label(xn, label))
                throw validation_error("coefficient of U^" + elem_to_string(n) +
                                       " is supported outside X_n at point " + label);
    }
    return p;
}

inline CrossedPoly monomial(const ActionSystem& sys, const GroupElement& n, CoeffFn f) {
    return make_poly(sys, {{n, std::move(f)}});
}

/// χ_R Uⁿ for a set of point labels R.
inline CrossedPoly indicator_monomial(const ActionSystem& sys, const GroupElement& n,
                                      const std::vector<std::string>& labels) {
    CoeffFn f;
    for (const auto& l : labels) f[l] = Rational(1);
    return monomial(sys, n, std::move(f));
}

inline CrossedPoly poly_add(const CrossedPoly& p, const CrossedPoly& q) {
    CrossedPoly out = p;
    for (const auto& [n, f] : q.terms)
        for (const auto& [label, v] : f) out.terms[n][label] = out.terms[n][label] + v;
    detail::poly_trim(out);
    return out;
}

inline CrossedPoly poly_scale(const CrossedPoly& p, const GaussianRational& c) {
    CrossedPoly out = p;
    for (auto& [n, f] : out.terms)
        for (auto& [label, v] : f) v = v * c;
    detail::poly_trim(out);
    return out;
}

/// fUⁿ gUᵐ = hU^{n+m} with h(x) = f(x) g(α_{-n}(x)) for x ∈ X_n ∩ X_{n+m},
/// extended bilinearly.  Sums outside the declared window contribute nothing.
inline CrossedPoly poly_mul(const CrossedPoly& p, const CrossedPoly& q, const ActionSystem& sys) {
    CrossedPoly out;
    for (const auto& [n, f] : p.terms) {
        PartialMap back = action_map(sys, -n);  // α_{-n} on X_n
        for (const auto& [m, g] : q.terms) {
            GroupElement nm = n + m;
            Region xnm = region_d(sys, nm);  // empty outside the declared window
            for (const auto& [x, fx] : f) {
                if (!region_contains_label(xnm, x)) continue;
                auto y = pm_apply(back, x);
                if (!y) continue;
                auto gy = g.find(*y);
                if (gy == g.end()) continue;
                out.terms[nm][x] = out.terms[nm][x] + fx * gy->second;
            }
        }
    }
    detail::poly_trim(out);
    return out;
}

/// (fUⁿ)* = α_{-n}(conj f) U^{-n}; needs the -n map, i.e. a group-mode system.
inline CrossedPoly poly_adjoint(const CrossedPoly& p, const ActionSystem& sys) {
    CrossedPoly out;
    for (const auto& [n, f] : p.terms) {
        if (!n.is_zero() && sys.cone_only)
            throw requires_extension_error("adjoint needs the map at " + elem_to_string(-n) +
                                           "; extend the cone action first");
        PartialMap back = action_map(sys, -n);
        for (const auto& [x, v] : f) {
            auto y = pm_apply(back, x);
            if (!y) throw validation_error("coefficient support escapes X_n at " + x);
            out.terms[-n][*y] = v.conj();
        }
    }
    detail::poly_trim(out);
    return out;
}

/// ‖Σ f_n Uⁿ‖_L = Σ_n max_x |f_n(x)|; exact unless some modulus is irrational.
inline NormValue l_norm(const CrossedPoly& p) {
    Rational total = 0;
    bool exact = true;
    for (const auto& [n, f] : p.terms) {
        Rational sup = 0;
        for (const auto& [label, v] : f) {
            if (auto em = exact_modulus(v)) {
                sup = std::max(sup, *em);
            } else {
                sup = std::max(sup, modulus_upper_bound(v));
                exact = false;
            }
        }
        total += sup;
    }
    return {total, exact};
}

/// True iff every exponent with a nonzero coefficient lies in the cone.
inline bool is_analytic(const CrossedPoly& p, const GroupDescriptor& desc) {
    for (const auto& [n, f] : p.terms)
        if (!cone_contains(desc, n)) return false;
    return true;
}

/// Φ(fUⁿ) lives on the graph of α_{-n}: value f(x) at the arrow (x, α_{-n}(x)).
inline GroupoidFunction phi(const CrossedPoly& p, const ActionSystem& sys,
                            const FiniteGroupoid& gpd) {
    GroupoidFunction out;
    for (const auto& [n, f] : p.terms) {
        PartialMap back = action_map(sys, -n);
        for (const auto& [x, v] : f) {
            auto y = pm_apply(back, x);
            if (!y || !gpd.has_arrow(x, *y))
                throw validation_error("Φ image leaves the groupoid at point " + x);
            out[{x, *y}] = out[{x, *y}] + v;
        }
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

/// Restrict f to each graph: the arrow (x, y) with cocycle t carries f_{-t}(x).
inline CrossedPoly phi_inv(const GroupoidFunction& f, const ActionSystem& sys,
                           const FiniteGroupoid& gpd) {
    std::map<GroupElement, CoeffFn> terms;
    for (const auto& [arrow, v] : f) {
        auto it = gpd.cocycle.find(arrow);
        if (it == gpd.cocycle.end())
            throw validation_error("arrow (" + arrow.first + "," + arrow.second +
                                   ") is outside the groupoid");
        terms[-it->second][arrow.first] = v;
    }
    return make_poly(sys, std::move(terms));
}

/// Full-space matrix in label order; entry f_s(β_s(x)) at (β_s(x), x).
struct AnalyticMatrix {
    std::vector<std::string> labels;
    std::vector<std::vector<GaussianRational>> entries;

    friend bool operator==(const AnalyticMatrix& a, const AnalyticMatrix& b) {
        return a.labels == b.labels && a.entries == b.entries;
    }
};

/// Witnesses β_s(x) = β_t(x) for distinct declared s, t in the cone (0 counts
/// as declared), which would make the realization collapse cells.
inline void require_sigma_free(const ActionSystem& sys) {
    std::vector<GroupElement> elems = {group_zero(sys.group)};
    for (const auto& [g, m] : sys.support)
        if (cone_contains(sys.group, g)) elems.push_back(g);
    for (size_t i = 0; i < elems.size(); ++i)
        for (size_t j = i + 1; j < elems.size(); ++j) {
            const PartialMap &mi = map_at(sys, elems[i]), &mj = map_at(sys, elems[j]);
            for (const auto& [x, y] : mi.pairs)
                if (pm_apply(mj, x) == std::optional<std::string>(y))
                    throw freeness_error("Σ-freeness fails: (" + elem_to_string(elems[i]) + ", " +
                                         elem_to_string(elems[j]) + ", " + x + ")");
        }
}

inline AnalyticMatrix analytic_matrix_realize(const ActionSystem& sys, const CrossedPoly& p) {
    if (!is_analytic(p, sys.group))
        throw validation_error("analytic realization requires a cone-supported polynomial");
    require_sigma_free(sys);
    AnalyticMatrix m;
    m.labels = sys.universe.points;
    std::map<std::string, size_t> index;
    for (size_t i = 0; i < m.labels.size(); ++i) index[m.labels[i]] = i;
    m.entries.assign(m.labels.size(), std::vector<GaussianRational>(m.labels.size()));
    for (const auto& [s, f] : p.terms) {
        const PartialMap& beta = map_at(sys, s);
        for (const auto& [x, y] : beta.pairs) {
            auto fy = f.find(y);  // y = β_s(x)
            if (fy != f.end())
                m.entries[index.at(y)][index.at(x)] = m.entries[index.at(y)][index.at(x)] + fy->second;
        }
    }
    return m;
}

inline AnalyticMatrix matrix_mul(const AnalyticMatrix& a, const AnalyticMatrix& b) {
    if (a.labels != b.labels) throw validation_error("matrix label mismatch");
    const size_t n = a.labels.size();
    AnalyticMatrix out;
    out.labels = a.labels;
    out.entries.assign(n, std::vector<GaussianRational>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k) {
            if (a.entries[i][k].is_zero()) continue;
            for (size_t j = 0; j < n; ++j)
                out.entries[i][j] = out.entries[i][j] + a.entries[i][k] * b.entries[k][j];
        }
    return out;
}

}  // namespace pact
