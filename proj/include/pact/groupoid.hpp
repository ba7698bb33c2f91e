#pragma once

#include <pact/action.hpp>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <map>
#include <utility>
#include <vector>

namespace pact {

/// Principal groupoid of a free finite partial action: arrows (x, y) with
/// y = α_t(x), carrying the cocycle c(x, y) = t.  Units are the (x, x, 0).
struct FiniteGroupoid {
    GroupDescriptor group;
    std::vector<std::string> points;                                   // label-sorted
    std::map<std::pair<std::string, std::string>, GroupElement> cocycle;
    std::vector<std::vector<std::string>> orbits;                      // label-sorted blocks
    std::map<std::string, size_t> orbit_of;

    bool has_arrow(const std::string& x, const std::string& y) const {
        return cocycle.count({x, y}) != 0;
    }
    size_t arrow_count() const { return cocycle.size(); }
};

inline FiniteGroupoid build_groupoid(const ActionSystem& sys) {
    if (!sys.space.finite)
        throw unsupported_backend_error("build_groupoid: interval backends are not supported");
    if (sys.cone_only)
        throw requires_extension_error("build_groupoid: extend the cone action to the group first");
    if (!check_axioms(sys).definition_passes())
        throw validation_error("build_groupoid: system fails the partial-action axioms");

    FiniteGroupoid g;
    g.group = sys.group;
    g.points = sys.universe.points;
    for (const auto& x : g.points) g.cocycle[{x, x}] = group_zero(sys.group);
    for (const auto& [t, m] : sys.support)
        for (const auto& [x, y] : m.pairs) {
            auto [it, fresh] = g.cocycle.try_emplace({x, y}, t);
            if (!fresh && it->second != t) {
                if (x == y)
                    throw freeness_error("fixed point: alpha_" + elem_to_string(t) + "(" + x +
                                         ") = " + x);
                throw freeness_error("arrow label collision: alpha_" + elem_to_string(t) + "(" + x +
                                     ") = alpha_" + elem_to_string(it->second) + "(" + x + ") = " + y);
            }
        }

    // orbits: connected components of the arrow relation, in label order
    std::map<std::string, std::string> root;
    for (const auto& x : g.points) root[x] = x;
    auto find = [&](std::string v) {
        while (root[v] != v) v = root[v] = root[root[v]];
        return v;
    };
    for (const auto& [arrow, t] : g.cocycle) root[find(arrow.first)] = find(arrow.second);
    std::map<std::string, std::vector<std::string>> grouped;
    for (const auto& x : g.points) grouped[find(x)].push_back(x);
    for (auto& [r, members] : grouped) {
        g.orbit_of.insert({members.front(), g.orbits.size()});
        for (const auto& m : members) g.orbit_of[m] = g.orbits.size();
        g.orbits.push_back(members);
    }

    // cocycle additivity on every composable pair whose composite is an arrow
    for (const auto& [ab, t1] : g.cocycle)
        for (const auto& c : g.orbits[g.orbit_of.at(ab.second)]) {
            auto bc = g.cocycle.find({ab.second, c});
            if (bc == g.cocycle.end()) continue;
            auto ac = g.cocycle.find({ab.first, c});
            if (ac != g.cocycle.end() && ac->second != t1 + bc->second)
                throw validation_error("cocycle identity fails at (" + ab.first + "," + ab.second +
                                       "," + c + ")");
        }
    return g;
}

/// Finitely supported function on the arrows, with Gaussian-rational values.
using GroupoidFunction = std::map<std::pair<std::string, std::string>, GaussianRational>;

inline GroupoidFunction make_groupoid_function(const FiniteGroupoid& gpd, GroupoidFunction values) {
    for (auto it = values.begin(); it != values.end();) {
        if (!gpd.has_arrow(it->first.first, it->first.second))
            throw validation_error("arrow (" + it->first.first + "," + it->first.second +
                                   ") is outside the groupoid");
        it = it->second.is_zero() ? values.erase(it) : std::next(it);
    }
    return values;
}

inline GroupoidFunction gpd_delta(const FiniteGroupoid& gpd, const std::string& x,
                                  const std::string& y, GaussianRational coef = Rational(1)) {
    return make_groupoid_function(gpd, {{{x, y}, std::move(coef)}});
}

inline GroupoidFunction gpd_units(const FiniteGroupoid& gpd) {
    GroupoidFunction f;
    for (const auto& x : gpd.points) f[{x, x}] = Rational(1);
    return f;
}

/// Convolution f·g(x, z) = Σ_y f(x, y) g(y, z); matrix product per orbit.
inline GroupoidFunction conv_mul(const FiniteGroupoid& gpd, const GroupoidFunction& f,
                                 const GroupoidFunction& g) {
    std::map<std::string, std::vector<std::pair<std::string, GaussianRational>>> by_source;
    for (const auto& [arrow, v] : g) by_source[arrow.first].emplace_back(arrow.second, v);
    GroupoidFunction out;
    for (const auto& [fa, fv] : f) {
        auto it = by_source.find(fa.second);
        if (it == by_source.end()) continue;
        for (const auto& [z, gv] : it->second) {
            if (!gpd.has_arrow(fa.first, z))
                throw validation_error("product leaves the arrow set at (" + fa.first + "," + z + ")");
            out[{fa.first, z}] = out[{fa.first, z}] + fv * gv;
        }
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

/// Involution f*(x, y) = conj(f(y, x)).
inline GroupoidFunction conv_adjoint(const FiniteGroupoid& gpd, const GroupoidFunction& f) {
    GroupoidFunction out;
    for (const auto& [arrow, v] : f) {
        if (!gpd.has_arrow(arrow.second, arrow.first))
            throw validation_error("adjoint leaves the arrow set at (" + arrow.second + "," +
                                   arrow.first + ")");
        out[{arrow.second, arrow.first}] = v.conj();
    }
    return out;
}

/// ‖f‖_I = max over rows and columns of the ℓ¹ sums of moduli.  Exact when
/// every modulus is rational; otherwise an upper bound rounded up at 2^-60.
inline NormValue i_norm(const GroupoidFunction& f) {
    std::map<std::string, Rational> row, col;
    bool exact = true;
    for (const auto& [arrow, v] : f) {
        Rational m;
        if (auto em = exact_modulus(v)) {
            m = *em;
        } else {
            m = modulus_upper_bound(v);
            exact = false;
        }
        row[arrow.first] += m;
        col[arrow.second] += m;
    }
    Rational best = 0;
    for (const auto& [_, s] : row) best = std::max(best, s);
    for (const auto& [_, s] : col) best = std::max(best, s);
    return {best, exact};
}

/// One orbit block of the matrix realization: rows/cols in label order.
struct OrbitBlock {
    std::vector<std::string> labels;
    std::vector<std::vector<GaussianRational>> entries;  // entries[x][y] = f(x, y)
};

inline std::vector<OrbitBlock> matrix_realize(const FiniteGroupoid& gpd, const GroupoidFunction& f) {
    std::vector<OrbitBlock> blocks;
    for (const auto& orbit : gpd.orbits) {
        OrbitBlock b;
        b.labels = orbit;
        b.entries.assign(orbit.size(), std::vector<GaussianRational>(orbit.size()));
        blocks.push_back(std::move(b));
    }
    std::map<std::string, size_t> index;
    for (const auto& orbit : gpd.orbits)
        for (size_t i = 0; i < orbit.size(); ++i) index[orbit[i]] = i;
    for (const auto& [arrow, v] : f) {
        if (!gpd.has_arrow(arrow.first, arrow.second))
            throw validation_error("arrow (" + arrow.first + "," + arrow.second +
                                   ") is outside the groupoid");
        blocks[gpd.orbit_of.at(arrow.first)].entries[index[arrow.first]][index[arrow.second]] = v;
    }
    return blocks;
}

/// Largest singular value over the orbit blocks (operator norm of the
/// multi-matrix realization); numeric, relative tolerance ~1e-10.
inline double cstar_norm(const FiniteGroupoid& gpd, const GroupoidFunction& f) {
    double best = 0.0;
    for (const auto& block : matrix_realize(gpd, f)) {
        const auto n = static_cast<Eigen::Index>(block.labels.size());
        Eigen::MatrixXcd m(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) {
                const auto& z = block.entries[static_cast<size_t>(i)][static_cast<size_t>(j)];
                m(i, j) = std::complex<double>(rat_to_double(z.re), rat_to_double(z.im));
            }
        if (n == 0) continue;
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
        best = std::max(best, svd.singularValues()(0));
    }
    return best;
}

}  // namespace pact
