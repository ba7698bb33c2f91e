#pragma once

#include <pact/action.hpp>

#include <algorithm>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace pact {

/// Decimal label, zero-padded so that lexicographic order of labels for one
/// space agrees with numeric order.
inline std::string point_label(long v, long count) {
    std::string widest = std::to_string(count - 1);
    std::string s = std::to_string(v);
    return std::string(widest.size() - s.size(), '0') + s;
}

inline std::vector<std::string> point_labels(long count) {
    std::vector<std::string> ls;
    ls.reserve(static_cast<size_t>(count));
    for (long v = 0; v < count; ++v) ls.push_back(point_label(v, count));
    return ls;
}

namespace builders {

/// Truncated odometer on 2^i points: α_k shifts by k where that stays in X.
inline ActionSystem standard(int i) {
    if (i < 1) throw malformed_input("standard: level must be >= 1");
    const long n = 1L << i;
    auto labels = point_labels(n);
    std::vector<std::pair<GroupElement, PartialMap>> maps;
    for (long k = 1; k < n; ++k) {
        std::vector<std::pair<std::string, std::string>> pairs;
        for (long x = 0; x + k < n; ++x) pairs.emplace_back(labels[x], labels[x + k]);
        maps.emplace_back(GroupElement::zd({Int(k)}), make_pm_pairs(std::move(pairs)));
    }
    auto space = SpaceDescriptor::points(labels);
    return make_action_system(GroupDescriptor::zd(1), true, space, make_region_points(labels),
                              std::move(maps));
}

/// Level-i dyadic grid {j/2^i} with translations by k/2^i over the rational line.
inline ActionSystem refine(int i) {
    if (i < 1) throw malformed_input("refine: level must be >= 1");
    const long n = 1L << i;
    std::vector<std::string> labels;
    for (long j = 0; j < n; ++j) labels.push_back(rat_to_string(Rational(j, n)));
    std::vector<std::pair<GroupElement, PartialMap>> maps;
    for (long k = 1; k < n; ++k) {
        std::vector<std::pair<std::string, std::string>> pairs;
        for (long j = 0; j + k < n; ++j) pairs.emplace_back(labels[j], labels[j + k]);
        maps.emplace_back(GroupElement::line(Rational(k, n)), make_pm_pairs(std::move(pairs)));
    }
    auto space = SpaceDescriptor::points(labels);
    return make_action_system(GroupDescriptor::rational_line(), true, space,
                              make_region_points(labels), std::move(maps));
}

/// Arc (a, b) on a circle of circumference c, rotated by integers 1..nmax.
inline ActionSystem arc(const Rational& a, const Rational& b, const Rational& c, int nmax = 12) {
    if (c <= 0 || a >= b || b - a > c) throw malformed_input("arc: need a < b <= a + c, c > 0");
    auto space = SpaceDescriptor::intervals(c);
    Region x = make_region({{a, b}}, c);
    std::vector<std::pair<GroupElement, PartialMap>> maps;
    for (int k = 1; k <= nmax; ++k) {
        Region dom = region_intersect(x, region_translate(x, Rational(-k)));
        maps.emplace_back(GroupElement::zd({Int(k)}), make_pm_shift(std::move(dom), Rational(k)));
    }
    return make_action_system(GroupDescriptor::zd(1), true, space, x, std::move(maps));
}

/// The three modified translation systems on X = (0,1) with support {1/8..7/8}.
/// Variant 1 satisfies 1a but not 1b, variant 2 the mirror, variant 3 neither.
inline ActionSystem split1a1b(int variant) {
    if (variant < 1 || variant > 3) throw malformed_input("split1a1b: variant must be 1..3");
    auto space = SpaceDescriptor::intervals();
    Region x = make_region({{Rational(0), Rational(1)}});
    const Rational half(1, 2);
    std::vector<std::pair<GroupElement, PartialMap>> maps;
    for (int k = 1; k <= 7; ++k) {
        Rational t(k, 8);
        Interval dom;
        if (t > half) {
            dom = {Rational(0), 1 - t};
        } else if (variant == 1) {
            dom = {Rational(0), half};
        } else if (variant == 2) {
            dom = {half - t, 1 - t};
        } else {
            dom = {half - t, half};
        }
        maps.emplace_back(GroupElement::line(t), make_pm_shift(make_region({dom}), t));
    }
    return make_action_system(GroupDescriptor::rational_line(), true, space, x, std::move(maps));
}

/// Even/odd translation on a finite window (0, window): odd shifts act on
/// half-intervals, even shifts everywhere.
inline ActionSystem even_odd(int window = 8, int tmax = 6) {
    if (window < 2 || tmax < 1 || tmax >= window)
        throw malformed_input("even_odd: need window > tmax >= 1");
    auto space = SpaceDescriptor::intervals();
    Region x = make_region({{Rational(0), Rational(window)}});
    const Rational half(1, 2);
    std::vector<std::pair<GroupElement, PartialMap>> maps;
    for (int t = 1; t <= tmax; ++t) {
        Region dom;
        if (t % 2 == 0) {
            dom = make_region({{Rational(0), Rational(window - t)}});
        } else {
            std::vector<Interval> ivs;
            for (int a = 0; a <= window - t - 1; ++a)
                ivs.push_back({Rational(a), Rational(a) + half});
            dom = make_region(std::move(ivs));
        }
        maps.emplace_back(GroupElement::zd({Int(t)}), make_pm_shift(std::move(dom), Rational(t)));
    }
    return make_action_system(GroupDescriptor::zd(1), true, space, x, std::move(maps));
}

/// The non-extendable 7-point cone action of Z³.
inline ActionSystem no_ext() {
    std::vector<std::string> labels = {"1", "2", "3", "4", "5", "6", "7"};
    auto space = SpaceDescriptor::points(labels);
    std::vector<std::pair<GroupElement, PartialMap>> maps;
    maps.emplace_back(GroupElement::zd({1, 0, 0}), make_pm_pairs({{"1", "2"}, {"5", "4"}}));
    maps.emplace_back(GroupElement::zd({0, 1, 0}), make_pm_pairs({{"3", "2"}, {"5", "6"}}));
    maps.emplace_back(GroupElement::zd({0, 0, 1}), make_pm_pairs({{"3", "4"}, {"7", "6"}}));
    return make_action_system(GroupDescriptor::zd(3), true, space, make_region_points(labels),
                              std::move(maps));
}

namespace detail_toroidal {

inline PartialMap odometer_power(long n, long k, bool even_only, bool odd_only) {
    auto labels = point_labels(n);
    std::vector<std::pair<std::string, std::string>> pairs;
    for (long x = 0; x < n; ++x) {
        if (even_only && x % 2 != 0) continue;
        if (odd_only && x % 2 == 0) continue;
        pairs.emplace_back(labels[x], labels[((x + k) % n + n) % n]);
    }
    return make_pm_pairs(std::move(pairs));
}

}  // namespace detail_toroidal

/// Cone half of the toroidal action on 2^i points: β_{e₁} = ω on the evens,
/// β_{e₂} = ω⁻¹ on the evens, everything else empty.
inline ActionSystem toroidal_cone(int i) {
    if (i < 1) throw malformed_input("toroidal_cone: level must be >= 1");
    const long n = 1L << i;
    auto labels = point_labels(n);
    auto space = SpaceDescriptor::points(labels);
    std::vector<std::pair<GroupElement, PartialMap>> maps;
    maps.emplace_back(GroupElement::zd({1, 0}), detail_toroidal::odometer_power(n, 1, true, false));
    maps.emplace_back(GroupElement::zd({0, 1}), detail_toroidal::odometer_power(n, -1, true, false));
    return make_action_system(GroupDescriptor::zd(2), true, space, make_region_points(labels),
                              std::move(maps));
}

/// Extended toroidal action: β(a(e₁−e₂)) = ω^{2a} total, β((a+1)e₁−ae₂) =
/// ω^{2a+1} on the evens, β(ae₁−(a+1)e₂) = ω^{2a+1} on the odds, |a| ≤ 2^{i−1}.
inline ActionSystem toroidal_ext(int i) {
    if (i < 1) throw malformed_input("toroidal_ext: level must be >= 1");
    const long n = 1L << i;
    const long h = n / 2;
    auto labels = point_labels(n);
    auto space = SpaceDescriptor::points(labels);
    std::vector<std::pair<GroupElement, PartialMap>> maps;
    for (long a = -h; a <= h; ++a) {
        if (a != 0)
            maps.emplace_back(GroupElement::zd({Int(a), Int(-a)}),
                              detail_toroidal::odometer_power(n, 2 * a, false, false));
        maps.emplace_back(GroupElement::zd({Int(a + 1), Int(-a)}),
                          detail_toroidal::odometer_power(n, 2 * a + 1, true, false));
        maps.emplace_back(GroupElement::zd({Int(a), Int(-(a + 1))}),
                          detail_toroidal::odometer_power(n, 2 * a + 1, false, true));
    }
    return make_action_system(GroupDescriptor::zd(2), false, space, make_region_points(labels),
                              std::move(maps));
}

/// Full cyclic odometer on 2^i points, all powers ±1..±(2^i−1).  Not a partial
/// action under the truncated-support reading (sums wrap); used by the tower
/// module which only needs the per-element maps.
inline ActionSystem bd_odometer(int i) {
    if (i < 1) throw malformed_input("bd_odometer: level must be >= 1");
    const long n = 1L << i;
    auto labels = point_labels(n);
    auto space = SpaceDescriptor::points(labels);
    std::vector<std::pair<GroupElement, PartialMap>> maps;
    for (long k = 1; k < n; ++k) {
        maps.emplace_back(GroupElement::zd({Int(k)}),
                          detail_toroidal::odometer_power(n, k, false, false));
        maps.emplace_back(GroupElement::zd({Int(-k)}),
                          detail_toroidal::odometer_power(n, -k, false, false));
    }
    return make_action_system(GroupDescriptor::zd(1), false, space, make_region_points(labels),
                              std::move(maps));
}

}  // namespace builders

/// Named access used by the CLI; params are positional integers/rationals.
inline ActionSystem builtin_system(const std::string& name, const std::vector<Rational>& params) {
    auto p = [&](size_t i, Rational dflt) { return i < params.size() ? params[i] : dflt; };
    auto pi = [&](size_t i, long dflt) {
        Rational r = p(i, Rational(dflt));
        if (rat_den(r) != 1) throw malformed_input("builtin parameter must be an integer");
        return static_cast<long>(rat_num(r));
    };
    if (name == "standard") return builders::standard(static_cast<int>(pi(0, 2)));
    if (name == "refine") return builders::refine(static_cast<int>(pi(0, 2)));
    if (name == "arc")
        return builders::arc(p(0, Rational(0)), p(1, Rational(1)), p(2, Rational(157, 25)),
                             static_cast<int>(pi(3, 12)));
    if (name == "split1a1b") return builders::split1a1b(static_cast<int>(pi(0, 1)));
    if (name == "even_odd")
        return builders::even_odd(static_cast<int>(pi(0, 8)), static_cast<int>(pi(1, 6)));
    if (name == "no_ext") return builders::no_ext();
    if (name == "toroidal_cone") return builders::toroidal_cone(static_cast<int>(pi(0, 2)));
    if (name == "toroidal_ext") return builders::toroidal_ext(static_cast<int>(pi(0, 2)));
    if (name == "bd_odometer") return builders::bd_odometer(static_cast<int>(pi(0, 2)));
    throw malformed_input("unknown builtin system: " + name);
}

/// Random finite system over Z or Z² satisfying condition 3, for property
/// tests.  Roughly half the draws are "saturated" (support closed under
/// pairwise composition) to bias toward valid partial actions.
inline ActionSystem random_system(std::mt19937_64& rng, int max_points = 12) {
    std::uniform_int_distribution<int> npts(2, max_points);
    std::uniform_int_distribution<int> coin(0, 1);
    const long n = npts(rng);
    auto labels = point_labels(n);
    auto space = SpaceDescriptor::points(labels);
    const bool planar = coin(rng) == 1;
    GroupDescriptor group = planar ? GroupDescriptor::zd(2) : GroupDescriptor::zd(1);

    auto random_elem = [&]() {
        std::uniform_int_distribution<int> c(0, 2);
        if (!planar) return GroupElement::zd({Int(c(rng) + 1)});
        int a = c(rng), b = c(rng);
        if (a == 0 && b == 0) a = 1;
        return GroupElement::zd({Int(a), Int(b)});
    };
    auto random_injection = [&]() {
        std::vector<long> src(static_cast<size_t>(n)), dst;
        for (long v = 0; v < n; ++v) src[static_cast<size_t>(v)] = v;
        dst = src;
        std::shuffle(src.begin(), src.end(), rng);
        std::shuffle(dst.begin(), dst.end(), rng);
        std::uniform_int_distribution<long> sz(0, n);
        long k = sz(rng);
        std::vector<std::pair<std::string, std::string>> pairs;
        for (long j = 0; j < k; ++j)
            pairs.emplace_back(labels[static_cast<size_t>(src[static_cast<size_t>(j)])],
                               labels[static_cast<size_t>(dst[static_cast<size_t>(j)])]);
        return make_pm_pairs(std::move(pairs));
    };

    std::map<GroupElement, PartialMap> support;
    std::uniform_int_distribution<int> nmaps(1, 3);
    for (int j = nmaps(rng); j > 0; --j) {
        GroupElement g = random_elem();
        support.insert_or_assign(g, random_injection());
    }
    if (coin(rng) == 1) {
        // one saturation pass: define missing sums as compositions
        std::vector<std::pair<GroupElement, PartialMap>> snapshot(support.begin(), support.end());
        for (const auto& [s, ms] : snapshot)
            for (const auto& [t, mt] : snapshot) {
                GroupElement u = s + t;
                if (!support.count(u)) support.emplace(u, pm_compose(ms, mt));
            }
    }
    std::vector<std::pair<GroupElement, PartialMap>> maps(support.begin(), support.end());
    return make_action_system(group, true, space, make_region_points(labels), std::move(maps));
}

}  // namespace pact
