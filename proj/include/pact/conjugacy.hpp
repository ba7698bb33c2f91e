#pragma once

#include <pact/action.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace pact {

/// Multiset of maximal α₁-chain lengths, sorted descending.  A chain of
/// length ℓ has ℓ points and ℓ−1 edges; isolated points count as length 1.
struct ChainProfile {
    std::vector<long> lengths;

    long total_points() const {
        long s = 0;
        for (long l : lengths) s += l;
        return s;
    }
    friend bool operator==(const ChainProfile& a, const ChainProfile& b) {
        return a.lengths == b.lengths;
    }
    friend bool operator!=(const ChainProfile& a, const ChainProfile& b) { return !(a == b); }
};

namespace detail_conj {

inline GroupElement z(long k) { return GroupElement::zd({Int(k)}); }

/// Preconditions shared by the conjugacy operations: finite backend, group Z
/// with cone Z⁺ (no negative declarations), freeness, and domain ordering.
inline void require_z_plus_free_ordered(const ActionSystem& sys) {
    if (!sys.space.finite)
        throw unsupported_backend_error("conjugacy decisions need the finite backend");
    if (sys.group != GroupDescriptor::zd(1))
        throw validation_error("conjugacy decisions need the group Z");
    for (const auto& [g, m] : sys.support)
        if (!cone_contains(sys.group, g))
            throw validation_error("conjugacy decisions need a Z+ action; " + elem_to_string(g) +
                                   " is declared");
    auto axioms = check_axioms(sys);
    if (!axioms.definition_passes())
        throw validation_error("conjugacy decisions need a valid partial action");
    auto props = check_properties(sys);
    if (!props.free.holds) throw freeness_error("conjugacy needs freeness: " + props.free.witness);
    if (!props.domain_ordering.holds)
        throw validation_error("conjugacy needs domain ordering: " + props.domain_ordering.witness);
    // Power reduction: every declared α_k must be the k-th power of α₁,
    // otherwise the chain profile cannot see the declared dynamics.
    for (const auto& [g, m] : sys.support) {
        PartialMap power = pm_identity_on(sys.universe);
        for (Int r = 0; r < g.coords[0]; ++r) power = pm_compose(map_at(sys, z(1)), power);
        if (m != power)
            throw validation_error("declared alpha_" + elem_to_string(g) +
                                   " is not the corresponding power of alpha_1");
    }
}

/// The maximal α₁-chains, each listed head→tail, sorted by (length desc,
/// head label) for determinism.  Throws on cycles, which the generated full
/// action would turn into freeness violations.
inline std::vector<std::vector<std::string>> chains(const ActionSystem& sys) {
    const PartialMap alpha1 = map_at(sys, z(1));
    std::map<std::string, std::string> succ;
    std::set<std::string> has_pred;
    for (const auto& [x, y] : alpha1.pairs) {
        succ[x] = y;
        has_pred.insert(y);
    }
    std::vector<std::vector<std::string>> out;
    std::set<std::string> visited;
    for (const auto& x : sys.universe.points) {
        if (has_pred.count(x)) continue;
        std::vector<std::string> chain = {x};
        visited.insert(x);
        for (auto it = succ.find(x); it != succ.end(); it = succ.find(chain.back())) {
            chain.push_back(it->second);
            visited.insert(it->second);
        }
        out.push_back(std::move(chain));
    }
    if (visited.size() != sys.universe.points.size())
        for (const auto& x : sys.universe.points)
            if (!visited.count(x))
                throw freeness_error("alpha_1 has a cycle through " + x);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return a.size() != b.size() ? a.size() > b.size() : a.front() < b.front();
    });
    return out;
}

}  // namespace detail_conj

inline ChainProfile chain_profile(const ActionSystem& sys) {
    detail_conj::require_z_plus_free_ordered(sys);
    ChainProfile p;
    for (const auto& chain : detail_conj::chains(sys)) p.lengths.push_back(long(chain.size()));
    return p;
}

/// True when τ is a bijection with τ(dom α_k) = dom β_k, τ(ran α_k) = ran β_k,
/// and τ∘α_k = β_k∘τ for every k declared in either system.
inline bool replay_conjugacy(const std::map<std::string, std::string>& tau, const ActionSystem& a,
                             const ActionSystem& b) {
    if (tau.size() != a.universe.points.size() || tau.size() != b.universe.points.size())
        return false;
    std::set<std::string> image;
    for (const auto& [x, y] : tau) {
        if (!region_contains_label(a.universe, x) || !region_contains_label(b.universe, y))
            return false;
        image.insert(y);
    }
    if (image.size() != tau.size()) return false;

    std::set<GroupElement> ks;
    for (const auto& g : declared_elements(a)) ks.insert(g);
    for (const auto& g : declared_elements(b)) ks.insert(g);
    for (const auto& k : ks) {
        const PartialMap alpha = map_at(a, k), beta = map_at(b, k);
        if (alpha.pairs.size() != beta.pairs.size()) return false;
        std::set<std::string> beta_dom, beta_ran;
        for (const auto& [x, y] : beta.pairs) {
            beta_dom.insert(x);
            beta_ran.insert(y);
        }
        for (const auto& [x, y] : alpha.pairs) {
            if (!beta_dom.count(tau.at(x)) || !beta_ran.count(tau.at(y))) return false;
            if (pm_apply(beta, tau.at(x)) != std::optional<std::string>(tau.at(y))) return false;
        }
    }
    return true;
}

/// Conjugacy decision: equality of chain profiles, with τ assembled
/// chain-by-chain and re-verified against every declared k of both systems.
inline std::optional<std::map<std::string, std::string>> decide_conjugacy(const ActionSystem& a,
                                                                          const ActionSystem& b) {
    detail_conj::require_z_plus_free_ordered(a);
    detail_conj::require_z_plus_free_ordered(b);
    auto ca = detail_conj::chains(a);
    auto cb = detail_conj::chains(b);
    if (ca.size() != cb.size()) return std::nullopt;
    std::map<std::string, std::string> tau;
    for (size_t i = 0; i < ca.size(); ++i) {
        if (ca[i].size() != cb[i].size()) return std::nullopt;  // profiles differ
        for (size_t j = 0; j < ca[i].size(); ++j) tau[ca[i][j]] = cb[i][j];
    }
    // the profiles match α₁ exactly; the replay rules out mismatched windows
    // (one side declaring a nonempty power the other truncates away)
    if (!replay_conjugacy(tau, a, b)) return std::nullopt;
    return tau;
}

/// Per-ideal data of the chain filtration: for k = 1..k_max the sizes of
/// X_k and X_{−k} and the α_k graph as (y, α_k(y)) pairs.
struct IdealLevel {
    long k = 0;
    size_t count = 0;    // |X_k|
    size_t cocount = 0;  // |X_{-k}|
    std::vector<std::pair<std::string, std::string>> pairing;

    friend bool operator==(const IdealLevel& a, const IdealLevel& b) {
        return a.k == b.k && a.count == b.count && a.cocount == b.cocount &&
               a.pairing == b.pairing;
    }
};

struct IdealInvariants {
    std::vector<IdealLevel> levels;
};

inline IdealInvariants ideal_invariants(const ActionSystem& sys, long k_max) {
    detail_conj::require_z_plus_free_ordered(sys);
    if (k_max < 1) throw malformed_input("ideal_invariants: k_max must be >= 1");
    IdealInvariants inv;
    for (long k = 1; k <= k_max; ++k) {
        IdealLevel lvl;
        lvl.k = k;
        lvl.count = region_d(sys, detail_conj::z(k)).points.size();
        lvl.cocount = region_d(sys, detail_conj::z(-k)).points.size();
        lvl.pairing = map_at(sys, detail_conj::z(k)).pairs;
        inv.levels.push_back(std::move(lvl));
    }
    return inv;
}

}  // namespace pact
