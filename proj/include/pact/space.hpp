#pragma once

#include <pact/errors.hpp>
#include <pact/rational.hpp>

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace pact {

/// State space: a finite labeled point set, or open rational intervals on the
/// line (no modulus) or on a circle of rational circumference (modulus).
struct SpaceDescriptor {
    bool finite = true;
    std::vector<std::string> labels;        // finite backend
    std::optional<Rational> modulus;        // interval backend, circle only

    static SpaceDescriptor points(std::vector<std::string> ls) {
        SpaceDescriptor s;
        s.labels = std::move(ls);
        std::set<std::string> seen(s.labels.begin(), s.labels.end());
        if (seen.size() != s.labels.size()) throw malformed_input("duplicate point labels");
        return s;
    }
    static SpaceDescriptor intervals(std::optional<Rational> modulus = std::nullopt) {
        if (modulus && *modulus <= 0) throw malformed_input("modulus must be positive");
        SpaceDescriptor s;
        s.finite = false;
        s.modulus = std::move(modulus);
        return s;
    }

    friend bool operator==(const SpaceDescriptor& a, const SpaceDescriptor& b) {
        return a.finite == b.finite && a.labels == b.labels && a.modulus == b.modulus;
    }
    friend bool operator!=(const SpaceDescriptor& a, const SpaceDescriptor& b) { return !(a == b); }
};

struct Interval {
    Rational lo, hi;  // open (lo, hi)
    friend bool operator==(const Interval& a, const Interval& b) { return a.lo == b.lo && a.hi == b.hi; }
    friend bool operator<(const Interval& a, const Interval& b) {
        return a.lo != b.lo ? a.lo < b.lo : a.hi < b.hi;
    }
};

/// A subset of the state space in canonical form.
///
/// Finite backend: sorted distinct labels.  Interval backend: disjoint open
/// intervals sorted by left endpoint; with a modulus, each arc (lo, hi) has
/// lo in [0, c) and lo < hi <= lo + c, arcs pairwise disjoint on the circle,
/// and `full` flags the whole circle (with an empty arc list).
struct Region {
    bool finite = true;
    std::vector<std::string> points;
    std::vector<Interval> ivs;
    std::optional<Rational> modulus;
    bool full = false;

    bool empty() const { return finite ? points.empty() : (!full && ivs.empty()); }

    friend bool operator==(const Region& a, const Region& b) {
        return a.finite == b.finite && a.points == b.points && a.ivs == b.ivs &&
               a.modulus == b.modulus && a.full == b.full;
    }
    friend bool operator!=(const Region& a, const Region& b) { return !(a == b); }
    friend bool operator<(const Region& a, const Region& b) {
        if (a.points != b.points) return a.points < b.points;
        if (a.full != b.full) return b.full;
        return a.ivs < b.ivs;
    }
};

namespace detail {

inline void require_compatible(const Region& a, const Region& b) {
    if (a.finite != b.finite || a.modulus != b.modulus)
        throw malformed_input("region backend/modulus mismatch");
}

/// Merge a list of open line intervals into canonical disjoint sorted form.
/// Touching intervals (a,b),(b,c) stay separate: b is in neither.
inline std::vector<Interval> merge_line(std::vector<Interval> v) {
    std::erase_if(v, [](const Interval& i) { return i.lo >= i.hi; });
    std::sort(v.begin(), v.end());
    std::vector<Interval> out;
    for (auto& i : v) {
        if (!out.empty() && i.lo < out.back().hi) {
            if (i.hi > out.back().hi) out.back().hi = i.hi;
        } else {
            out.push_back(i);
        }
    }
    return out;
}

inline bool arc_contains(const Interval& arc, const Rational& c, const Rational& p) {
    Rational d = mod_reduce(p - arc.lo, c);
    return d > 0 && d < arc.hi - arc.lo;
}

}  // namespace detail

/// Build a canonical Region from raw open intervals (union semantics).
inline Region make_region(std::vector<Interval> ivs, std::optional<Rational> modulus = std::nullopt) {
    Region r;
    r.finite = false;
    r.modulus = modulus;
    if (!modulus) {
        r.ivs = detail::merge_line(std::move(ivs));
        return r;
    }
    const Rational c = *modulus;
    // normalize arcs: lo in [0,c), length in (0, c]
    std::vector<Interval> arcs;
    for (auto& i : ivs) {
        if (i.lo >= i.hi) continue;
        Rational len = i.hi - i.lo;
        if (len > c) {  // len == c is the circle minus one point, not the circle

            r.full = true;
            return r;
        }
        Rational lo = mod_reduce(i.lo, c);
        arcs.push_back({lo, lo + len});
    }
    if (arcs.empty()) return r;
    // find a cut point: some arc's left endpoint not interior to any arc
    std::optional<Rational> cut;
    for (const auto& a : arcs) {
        bool covered = false;
        for (const auto& b : arcs)
            if (detail::arc_contains(b, c, a.lo)) {
                covered = true;
                break;
            }
        if (!covered) {
            cut = a.lo;
            break;
        }
    }
    if (!cut) {
        r.full = true;  // every boundary point covered: union is the circle
        return r;
    }
    // unroll onto (cut, cut + c], merge as line intervals, re-reduce
    std::vector<Interval> line;
    line.reserve(arcs.size());
    for (const auto& a : arcs) {
        Rational lo = *cut + mod_reduce(a.lo - *cut, c);
        line.push_back({lo, lo + (a.hi - a.lo)});
    }
    line = detail::merge_line(std::move(line));
    for (auto& i : line) {
        Rational lo = mod_reduce(i.lo, c);
        r.ivs.push_back({lo, lo + (i.hi - i.lo)});
    }
    std::sort(r.ivs.begin(), r.ivs.end());
    return r;
}

inline Region make_region_points(std::vector<std::string> pts) {
    Region r;
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    r.points = std::move(pts);
    return r;
}

inline Region empty_region_like(const Region& a) {
    Region r;
    r.finite = a.finite;
    r.modulus = a.modulus;
    return r;
}

inline Region region_union(const Region& a, const Region& b) {
    detail::require_compatible(a, b);
    if (a.finite) {
        std::vector<std::string> pts = a.points;
        pts.insert(pts.end(), b.points.begin(), b.points.end());
        return make_region_points(std::move(pts));
    }
    if (a.full || b.full) {
        Region r = empty_region_like(a);
        r.full = true;
        return r;
    }
    std::vector<Interval> ivs = a.ivs;
    ivs.insert(ivs.end(), b.ivs.begin(), b.ivs.end());
    return make_region(std::move(ivs), a.modulus);
}

inline Region region_intersect(const Region& a, const Region& b) {
    detail::require_compatible(a, b);
    if (a.finite) {
        std::vector<std::string> pts;
        std::set_intersection(a.points.begin(), a.points.end(), b.points.begin(), b.points.end(),
                              std::back_inserter(pts));
        Region r;
        r.points = std::move(pts);
        return r;
    }
    if (a.full) return b;
    if (b.full) return a;
    std::vector<Interval> out;
    if (!a.modulus) {
        for (const auto& i : a.ivs)
            for (const auto& j : b.ivs) {
                Rational lo = std::max(i.lo, j.lo), hi = std::min(i.hi, j.hi);
                if (lo < hi) out.push_back({lo, hi});
            }
    } else {
        const Rational c = *a.modulus;
        for (const auto& i : a.ivs)
            for (const auto& j : b.ivs)
                for (int k = -1; k <= 1; ++k) {
                    Rational jlo = j.lo + Rational(k) * c, jhi = j.hi + Rational(k) * c;
                    Rational lo = std::max(i.lo, jlo), hi = std::min(i.hi, jhi);
                    if (lo < hi) out.push_back({lo, hi});
                }
    }
    return make_region(std::move(out), a.modulus);
}

/// Open set difference: A minus the closure of B (so the result is open).
inline Region region_difference(const Region& a, const Region& b) {
    detail::require_compatible(a, b);
    if (a.finite) {
        std::vector<std::string> pts;
        std::set_difference(a.points.begin(), a.points.end(), b.points.begin(), b.points.end(),
                            std::back_inserter(pts));
        Region r;
        r.points = std::move(pts);
        return r;
    }
    if (b.full) return empty_region_like(a);
    if (b.empty()) return a;
    // pieces of A after removing each closed interval of B
    std::vector<Interval> work;
    if (a.full) {
        // the circle minus closure(B): complement gaps between consecutive arcs
        const Rational c = *a.modulus;
        for (size_t i = 0; i < b.ivs.size(); ++i) {
            const auto& cur = b.ivs[i];
            const auto& nxt = b.ivs[(i + 1) % b.ivs.size()];
            Rational gap_lo = cur.hi;
            Rational gap_hi = nxt.lo + (i + 1 == b.ivs.size() ? c : Rational(0));
            while (gap_hi < gap_lo) gap_hi += c;  // wrap of a single arc's own gap
            if (gap_lo < gap_hi) work.push_back({gap_lo, gap_hi});
        }
        return make_region(std::move(work), a.modulus);
    }
    work = a.ivs;
    std::vector<Interval> subtract = b.ivs;
    if (a.modulus) {
        const Rational c = *a.modulus;
        std::vector<Interval> copies;
        for (const auto& j : b.ivs)
            for (int k = -1; k <= 1; ++k)
                copies.push_back({j.lo + Rational(k) * c, j.hi + Rational(k) * c});
        subtract = std::move(copies);
    }
    for (const auto& s : subtract) {
        std::vector<Interval> next;
        for (const auto& i : work) {
            // remove the closed interval [s.lo, s.hi] from (i.lo, i.hi)
            if (s.hi <= i.lo || s.lo >= i.hi) {
                next.push_back(i);
                continue;
            }
            if (i.lo < s.lo) next.push_back({i.lo, s.lo});
            if (s.hi < i.hi) next.push_back({s.hi, i.hi});
        }
        work = std::move(next);
    }
    return make_region(std::move(work), a.modulus);
}

inline Region region_translate(const Region& a, const Rational& s) {
    if (a.finite) throw unsupported_backend_error("cannot translate a finite labeled region");
    if (a.full) return a;
    std::vector<Interval> ivs;
    ivs.reserve(a.ivs.size());
    for (const auto& i : a.ivs) ivs.push_back({i.lo + s, i.hi + s});
    return make_region(std::move(ivs), a.modulus);
}

inline bool region_contains_point(const Region& a, const Rational& p) {
    if (a.finite) throw unsupported_backend_error("rational point in a finite labeled region");
    if (a.full) return true;
    if (a.modulus) {
        for (const auto& i : a.ivs)
            if (detail::arc_contains(i, *a.modulus, p)) return true;
        return false;
    }
    for (const auto& i : a.ivs)
        if (i.lo < p && p < i.hi) return true;
    return false;
}

inline bool region_contains_label(const Region& a, const std::string& p) {
    return std::binary_search(a.points.begin(), a.points.end(), p);
}

inline bool region_subset(const Region& a, const Region& b) {
    return region_intersect(a, b) == a;
}

inline size_t region_size(const Region& a) {
    if (!a.finite) throw unsupported_backend_error("cardinality of an interval region");
    return a.points.size();
}

inline Rational region_length(const Region& a) {
    if (a.finite) throw unsupported_backend_error("length of a finite labeled region");
    if (a.full) return *a.modulus;
    Rational total = 0;
    for (const auto& i : a.ivs) total += i.hi - i.lo;
    return total;
}

/// Midpoints of every cell in the common endpoint arrangement of the listed
/// regions.  Every Boolean combination of the regions is constant on each
/// cell, so pointwise checks at these samples are exact.  Always nonempty.
inline std::vector<Rational> decision_grid(const std::vector<Region>& regions) {
    std::optional<Rational> modulus;
    std::set<Rational> endpoints;
    for (const auto& r : regions) {
        if (r.finite) throw unsupported_backend_error("decision grid over a finite backend");
        if (r.modulus) modulus = r.modulus;
        for (const auto& i : r.ivs) {
            if (r.modulus) {
                endpoints.insert(i.lo);
                endpoints.insert(mod_reduce(i.hi, *r.modulus));
            } else {
                endpoints.insert(i.lo);
                endpoints.insert(i.hi);
            }
        }
    }
    std::vector<Rational> pts(endpoints.begin(), endpoints.end());
    std::vector<Rational> mids;
    if (!modulus) {
        for (size_t i = 0; i + 1 < pts.size(); ++i) mids.push_back((pts[i] + pts[i + 1]) / 2);
        if (mids.empty()) mids.push_back(0);
        return mids;
    }
    if (pts.empty()) return {Rational(0)};
    for (size_t i = 0; i < pts.size(); ++i) {
        Rational next = (i + 1 < pts.size()) ? pts[i + 1] : pts[0] + *modulus;
        if (pts[i] < next) mids.push_back(mod_reduce((pts[i] + next) / 2, *modulus));
    }
    std::sort(mids.begin(), mids.end());
    return mids;
}

/// A partial bijection of the state space: explicit pairs (finite backend) or
/// a translation restricted to a Region (interval backend).
struct PartialMap {
    bool finite = true;
    std::vector<std::pair<std::string, std::string>> pairs;  // sorted by source
    Region dom;       // interval backend
    Rational shift;   // interval backend; reduced mod c when present

    friend bool operator==(const PartialMap& a, const PartialMap& b) {
        return a.finite == b.finite && a.pairs == b.pairs && a.dom == b.dom && a.shift == b.shift;
    }
    friend bool operator!=(const PartialMap& a, const PartialMap& b) { return !(a == b); }

    bool empty() const { return finite ? pairs.empty() : dom.empty(); }
};

inline PartialMap make_pm_pairs(std::vector<std::pair<std::string, std::string>> pairs) {
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    std::set<std::string> src, dst;
    for (const auto& [s, t] : pairs) {
        if (!src.insert(s).second) throw validation_error("partial map not single-valued at " + s);
        if (!dst.insert(t).second) throw validation_error("partial map not injective at " + t);
    }
    PartialMap f;
    f.pairs = std::move(pairs);
    return f;
}

inline PartialMap make_pm_shift(Region dom, Rational shift) {
    if (dom.finite) throw malformed_input("shift map needs an interval region");
    PartialMap f;
    f.finite = false;
    if (dom.empty()) shift = 0;  // canonical empty map
    else if (dom.modulus) shift = mod_reduce(shift, *dom.modulus);
    f.dom = std::move(dom);
    f.shift = std::move(shift);
    return f;
}

inline PartialMap pm_identity_on(const Region& r) {
    if (r.finite) {
        std::vector<std::pair<std::string, std::string>> pairs;
        for (const auto& p : r.points) pairs.emplace_back(p, p);
        return make_pm_pairs(std::move(pairs));
    }
    return make_pm_shift(r, 0);
}

inline Region pm_domain(const PartialMap& f) {
    if (!f.finite) return f.dom;
    std::vector<std::string> pts;
    for (const auto& [s, t] : f.pairs) pts.push_back(s);
    return make_region_points(std::move(pts));
}

inline Region pm_range(const PartialMap& f) {
    if (!f.finite) return region_translate(f.dom, f.shift);
    std::vector<std::string> pts;
    for (const auto& [s, t] : f.pairs) pts.push_back(t);
    return make_region_points(std::move(pts));
}

inline std::optional<std::string> pm_apply(const PartialMap& f, const std::string& x) {
    auto it = std::lower_bound(f.pairs.begin(), f.pairs.end(), x,
                               [](const auto& p, const std::string& v) { return p.first < v; });
    if (it != f.pairs.end() && it->first == x) return it->second;
    return std::nullopt;
}

inline std::optional<Rational> pm_apply(const PartialMap& f, const Rational& x) {
    if (!region_contains_point(f.dom, x)) return std::nullopt;
    Rational y = x + f.shift;
    if (f.dom.modulus) y = mod_reduce(y, *f.dom.modulus);
    return y;
}

inline PartialMap pm_invert(const PartialMap& f) {
    if (!f.finite) return make_pm_shift(pm_range(f), -f.shift);
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& [s, t] : f.pairs) pairs.emplace_back(t, s);
    return make_pm_pairs(std::move(pairs));
}

/// f after g: domain dom(g) ∩ g⁻¹(dom f).
inline PartialMap pm_compose(const PartialMap& f, const PartialMap& g) {
    if (f.finite != g.finite) throw malformed_input("partial map backend mismatch");
    if (!f.finite) {
        Region dom = region_intersect(g.dom, region_translate(f.dom, -g.shift));
        return make_pm_shift(std::move(dom), f.shift + g.shift);
    }
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& [a, b] : g.pairs)
        if (auto c = pm_apply(f, b)) pairs.emplace_back(a, *c);
    return make_pm_pairs(std::move(pairs));
}

inline bool pm_is_restriction(const PartialMap& f, const PartialMap& g) {
    if (f.finite != g.finite) throw malformed_input("partial map backend mismatch");
    if (f.empty()) return true;
    if (!f.finite) return f.shift == g.shift && region_subset(f.dom, g.dom);
    return std::includes(g.pairs.begin(), g.pairs.end(), f.pairs.begin(), f.pairs.end());
}

}  // namespace pact
