#pragma once

#include <pact/action.hpp>

#include <map>
#include <optional>
#include <set>
#include <variant>
#include <vector>

namespace pact {

namespace detail {

/// Integer row vector for lattice work; RationalLine elements are scaled by a
/// common denominator into length-1 integer vectors.
struct LatticeView {
    GroupDescriptor desc;
    Int scale = 1;  // RationalLine only

    static LatticeView over(const GroupDescriptor& desc, const std::vector<GroupElement>& elems) {
        LatticeView v;
        v.desc = desc;
        if (desc.kind == GroupKind::RationalLine)
            for (const auto& e : elems) v.scale = boost::multiprecision::lcm(v.scale, rat_den(e.rat));
        return v;
    }
    std::vector<Int> to_row(const GroupElement& e) const {
        if (desc.kind == GroupKind::Zd) return e.coords;
        Rational scaled = e.rat * Rational(scale);
        return {rat_num(scaled)};
    }
};

/// Hermite-style reduction of [rows | I]; pivots live in the first `width`
/// columns, the identity tail records the row operations.
inline std::vector<std::vector<Int>> hnf_augmented(std::vector<std::vector<Int>> rows, size_t width) {
    const size_t n = rows.size();
    for (size_t i = 0; i < n; ++i) {
        rows[i].resize(width + n, 0);
        rows[i][width + i] = 1;
    }
    size_t r = 0;
    for (size_t col = 0; col < width && r < n; ++col) {
        while (true) {
            size_t best = n;
            for (size_t i = r; i < n; ++i)
                if (rows[i][col] != 0 && (best == n || abs(rows[i][col]) < abs(rows[best][col])))
                    best = i;
            if (best == n) break;
            std::swap(rows[r], rows[best]);
            if (rows[r][col] < 0)
                for (auto& v : rows[r]) v = -v;
            bool clean = true;
            for (size_t i = r + 1; i < n; ++i) {
                if (rows[i][col] == 0) continue;
                Int q = rows[i][col] / rows[r][col];
                if (rows[i][col] - q * rows[r][col] < 0) q -= 1;
                for (size_t j = 0; j < width + n; ++j) rows[i][j] -= q * rows[r][j];
                if (rows[i][col] != 0) clean = false;
            }
            if (clean) break;
        }
        if (rows[r][col] != 0) ++r;
    }
    return rows;
}

/// Coefficients c with Σ c_i gens_i = target, or nullopt when target is not
/// in the generated lattice.
inline std::optional<std::vector<Int>> integer_combination(const std::vector<std::vector<Int>>& gens,
                                                           std::vector<Int> target) {
    const size_t k = gens.size();
    if (k == 0) {
        for (const auto& v : target)
            if (v != 0) return std::nullopt;
        return std::vector<Int>{};
    }
    const size_t width = target.size();
    auto rows = hnf_augmented(gens, width);
    std::vector<Int> row_coeff(k, 0);
    for (size_t r = 0; r < k; ++r) {
        size_t pc = 0;
        while (pc < width && rows[r][pc] == 0) ++pc;
        if (pc == width) break;  // zero rows follow
        if (target[pc] % rows[r][pc] != 0) break;
        Int q = target[pc] / rows[r][pc];
        for (size_t j = 0; j < width; ++j) target[j] -= q * rows[r][j];
        row_coeff[r] = q;
    }
    for (const auto& v : target)
        if (v != 0) return std::nullopt;
    std::vector<Int> coeff(k, 0);
    for (size_t r = 0; r < k; ++r)
        for (size_t i = 0; i < k; ++i) coeff[i] += row_coeff[r] * rows[r][width + i];
    return coeff;
}

}  // namespace detail

/// One step of a walk: traversing the graph edge from -> to whose label is a
/// (possibly negated) declared element.
struct WalkStep {
    GroupElement label;
    std::string from, to;
};

/// A pair of distinct points in one component joined by a zero-label-sum walk.
struct ExtensionWitness {
    std::string x, y;
    std::vector<WalkStep> walk;
};

/// Vertices are points of X; edges x ->(s) α_s(x) traversable both ways with
/// negated labels; per-component BFS tree carries the potential φ and the
/// non-tree edges the cycle subgroup.
struct OrbitGraph {
    std::map<std::string, int> component;
    std::map<std::string, GroupElement> phi;
    std::map<std::string, std::pair<std::string, GroupElement>> parent;  // child -> (parent, label parent->child)
    int component_count = 0;
    std::vector<std::vector<GroupElement>> defects;  // raw cycle defects per component
    std::vector<Subgroup> cycle_subgroup;            // reduced, per component
};

inline OrbitGraph build_orbit_graph(const ActionSystem& sys) {
    if (!sys.space.finite) throw unsupported_backend_error("orbit graph needs the finite backend");
    OrbitGraph g;
    struct Edge {
        std::string to;
        GroupElement label;
    };
    std::map<std::string, std::vector<Edge>> adj;
    for (const auto& p : sys.universe.points) adj[p];
    for (const auto& [s, m] : sys.support)
        for (const auto& [x, y] : m.pairs) {
            adj[x].push_back({y, s});
            adj[y].push_back({x, -s});
        }
    for (const auto& root : sys.universe.points) {
        if (g.component.count(root)) continue;
        int comp = g.component_count++;
        g.defects.emplace_back();
        g.component[root] = comp;
        g.phi[root] = group_zero(sys.group);
        std::vector<std::string> queue = {root};
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            std::string v = queue[qi];
            for (const auto& e : adj[v]) {
                if (!g.component.count(e.to)) {
                    g.component[e.to] = comp;
                    g.phi[e.to] = g.phi[v] + e.label;
                    g.parent[e.to] = {v, e.label};
                    queue.push_back(e.to);
                } else {
                    GroupElement defect = g.phi[v] + e.label - g.phi[e.to];
                    if (!defect.is_zero()) g.defects[static_cast<size_t>(comp)].push_back(defect);
                }
            }
        }
    }
    for (const auto& d : g.defects) g.cycle_subgroup.push_back(subgroup_reduce(sys.group, d));
    return g;
}

/// Successful extension: the truncated group-mode system plus the lossless
/// coset data (φ, cycle subgroup) it was generated from.
struct ExtendedSystem {
    ActionSystem system;
    OrbitGraph graph;
    Subgroup h;  // join of the per-component cycle subgroups
};

/// Pairs {(x, y) : same component, g ∈ φ(y) − φ(x) + H_component}.
inline PartialMap extension_map_for(const OrbitGraph& g, const ActionSystem& base,
                                    const GroupElement& elem) {
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& [x, cx] : g.component)
        for (const auto& [y, cy] : g.component) {
            if (cx != cy) continue;
            GroupElement d = g.phi.at(y) - g.phi.at(x) - elem;
            if (subgroup_member(g.cycle_subgroup[static_cast<size_t>(cx)], d))
                pairs.emplace_back(x, y);
        }
    return make_pm_pairs(std::move(pairs));
}

namespace detail {

/// Tree path between two vertices of one component, as walk steps.
inline std::vector<WalkStep> tree_path(const OrbitGraph& g, const std::string& from,
                                       const std::string& to) {
    auto ancestry = [&](std::string v) {
        std::vector<std::string> chain = {v};
        while (g.parent.count(chain.back())) chain.push_back(g.parent.at(chain.back()).first);
        return chain;
    };
    std::vector<std::string> a = ancestry(from), b = ancestry(to);
    std::set<std::string> aset(a.begin(), a.end());
    size_t bi = 0;
    while (bi < b.size() && !aset.count(b[bi])) ++bi;
    std::vector<WalkStep> steps;
    for (size_t i = 0; a[i] != b[bi]; ++i) {
        const auto& [par, lab] = g.parent.at(a[i]);
        steps.push_back({-lab, a[i], par});  // climb: reverse the parent edge
    }
    std::vector<WalkStep> down;
    for (size_t i = 0; b[i] != b[bi]; ++i) {
        const auto& [par, lab] = g.parent.at(b[i]);
        down.push_back({lab, par, b[i]});  // descend along the parent edge
    }
    steps.insert(steps.end(), down.rbegin(), down.rend());
    return steps;
}

}  // namespace detail

/// Zero-sum walk from x to y: tree path plus spliced cycle traversals whose
/// defects cancel the path's label sum.
inline ExtensionWitness build_extension_witness(const ActionSystem& sys, const OrbitGraph& g,
                                                const std::string& x, const std::string& y) {
    ExtensionWitness w;
    w.x = x;
    w.y = y;
    w.walk = detail::tree_path(g, x, y);
    GroupElement d = g.phi.at(y) - g.phi.at(x);
    if (d.is_zero()) return w;

    // locate the non-tree edges realizing each defect of the component
    int comp = g.component.at(x);
    struct Cycle {
        std::string u, v;
        GroupElement label;   // edge u -> v
        GroupElement defect;  // φ(u) + label − φ(v)
    };
    std::vector<Cycle> cycles;
    for (const auto& [s, m] : sys.support)
        for (const auto& [a, b] : m.pairs) {
            if (g.component.at(a) != comp) continue;
            GroupElement defect = g.phi.at(a) + s - g.phi.at(b);
            if (!defect.is_zero()) cycles.push_back({a, b, s, defect});
        }
    auto view = detail::LatticeView::over(sys.group, [&] {
        std::vector<GroupElement> all = {d};
        for (const auto& c : cycles) all.push_back(c.defect);
        return all;
    }());
    std::vector<std::vector<Int>> gens;
    for (const auto& c : cycles) gens.push_back(view.to_row(c.defect));
    auto coeff = detail::integer_combination(gens, view.to_row(d));
    if (!coeff) throw pact_error("internal: witness defect not in the cycle subgroup");

    // from y, visit each needed cycle: walk to u, loop -coeff times, return
    std::string at = y;
    for (size_t j = 0; j < cycles.size(); ++j) {
        if ((*coeff)[j] == 0) continue;
        const Cycle& c = cycles[j];
        auto to_u = detail::tree_path(g, at, c.u);
        w.walk.insert(w.walk.end(), to_u.begin(), to_u.end());
        Int reps = -(*coeff)[j];
        bool forward = reps > 0;
        for (Int r = abs(reps); r > 0; --r) {
            if (forward) {
                w.walk.push_back({c.label, c.u, c.v});
                auto back = detail::tree_path(g, c.v, c.u);
                w.walk.insert(w.walk.end(), back.begin(), back.end());
            } else {
                auto out = detail::tree_path(g, c.u, c.v);
                w.walk.insert(w.walk.end(), out.begin(), out.end());
                w.walk.push_back({-c.label, c.v, c.u});
            }
        }
        at = c.u;
    }
    auto home = detail::tree_path(g, at, y);
    w.walk.insert(w.walk.end(), home.begin(), home.end());
    return w;
}

/// Replays a walk pointwise through the system's maps; returns the end point.
inline std::string replay_walk(const ActionSystem& sys, const std::string& start,
                               const std::vector<WalkStep>& walk) {
    std::string at = start;
    for (const auto& step : walk) {
        if (step.from != at) throw validation_error("walk step does not start at " + at);
        std::optional<std::string> next;
        if (is_declared(sys, step.label)) next = pm_apply(map_at(sys, step.label), at);
        else next = pm_apply(pm_invert(map_at(sys, -step.label)), at);
        if (!next) throw validation_error("walk step not applicable at " + at);
        at = *next;
        if (at != step.to) throw validation_error("walk step lands off-route at " + at);
    }
    return at;
}

/// The full extension is free exactly when every component's cycle subgroup
/// is trivial (β_g fixes x iff g lies in x's cycle subgroup).
inline bool extension_is_free(const OrbitGraph& g) {
    for (const auto& h : g.cycle_subgroup)
        if (!h.basis.empty() || h.line_gen != 0) return false;
    return true;
}

inline GroupElement walk_label_sum(const GroupDescriptor& desc,
                                   const std::vector<WalkStep>& walk) {
    GroupElement sum = group_zero(desc);
    for (const auto& step : walk) sum = sum + step.label;
    return sum;
}

/// Augment a totally ordered cone action with the inverses α_{-t} = α_t⁻¹.
inline ActionSystem extend_total_order(const ActionSystem& sys) {
    if (!is_totally_ordering(sys.group))
        throw validation_error("extend_total_order: group is not totally ordered by its cone");
    for (const auto& [g, m] : sys.support)
        if (!cone_contains(sys.group, g))
            throw validation_error("extend_total_order: support leaves the cone");
    auto rep = check_axioms(sys);
    if (!rep.definition_passes())
        throw validation_error(std::string("extend_total_order: input fails condition ") +
                               (!rep.c1a.holds ? "1a" : !rep.c1b.holds ? "1b" : !rep.c2.holds ? "2" : "3"));
    std::vector<std::pair<GroupElement, PartialMap>> maps = sys.support;
    for (const auto& [g, m] : sys.support)
        if (!g.is_zero()) maps.emplace_back(-g, pm_invert(m));
    return make_action_system(sys.group, false, sys.space, sys.universe, std::move(maps));
}

/// Orbit-graph extension of a finite cone action to the whole group.
/// `widen` enlarges the emitted support window (the coset data in the result
/// is lossless regardless).
inline std::variant<ExtendedSystem, ExtensionWitness> extend_group(const ActionSystem& sys,
                                                                   int widen = 0) {
    if (!sys.space.finite)
        throw unsupported_backend_error("extend_group: interval backends are not supported");
    for (const auto& [g, m] : sys.support)
        if (!cone_contains(sys.group, g))
            throw validation_error("extend_group: support leaves the cone");
    if (!check_axioms(sys).definition_passes())
        throw validation_error("extend_group: input fails the partial-action axioms");

    OrbitGraph graph = build_orbit_graph(sys);

    // extension exists iff no two distinct points of a component sit in the
    // same φ-coset of that component's cycle subgroup
    for (const auto& [x, cx] : graph.component)
        for (const auto& [y, cy] : graph.component) {
            if (x >= y || cx != cy) continue;
            GroupElement d = graph.phi.at(y) - graph.phi.at(x);
            if (subgroup_member(graph.cycle_subgroup[static_cast<size_t>(cx)], d))
                return build_extension_witness(sys, graph, x, y);
        }

    // support window: observed φ-differences, padded by H-generator multiples
    std::set<GroupElement> observed;
    for (const auto& [x, cx] : graph.component)
        for (const auto& [y, cy] : graph.component)
            if (cx == cy) observed.insert(graph.phi.at(y) - graph.phi.at(x));
    std::vector<GroupElement> hgens;
    {
        std::vector<GroupElement> all;
        for (const auto& d : graph.defects) all.insert(all.end(), d.begin(), d.end());
        Subgroup joined = subgroup_reduce(sys.group, all);
        if (sys.group.kind == GroupKind::Zd) {
            for (const auto& row : joined.basis) hgens.push_back(GroupElement::zd(row));
        } else if (joined.line_gen != 0) {
            hgens.push_back(GroupElement::line(joined.line_gen));
        }
    }
    std::set<GroupElement> window(observed.begin(), observed.end());
    for (const auto& [g, m] : sys.support) window.insert(g);  // keep the input covered
    for (const auto& h : hgens) {
        std::set<GroupElement> next = window;
        for (const auto& d : window) {
            GroupElement up = d, down = d;
            for (int m = 0; m < 1 + widen; ++m) {
                up = up + h;
                down = down - h;
                next.insert(up);
                next.insert(down);
            }
        }
        window = std::move(next);
    }

    ExtendedSystem ext;
    ext.graph = graph;
    {
        std::vector<GroupElement> all;
        for (const auto& d : graph.defects) all.insert(all.end(), d.begin(), d.end());
        ext.h = subgroup_reduce(sys.group, all);
    }
    std::vector<std::pair<GroupElement, PartialMap>> maps;
    for (const auto& g : window) {
        if (g.is_zero()) continue;
        PartialMap m = extension_map_for(graph, sys, g);
        if (!m.empty()) maps.emplace_back(g, std::move(m));
    }
    ext.system = make_action_system(sys.group, false, sys.space, sys.universe, std::move(maps));
    return ext;
}

}  // namespace pact
