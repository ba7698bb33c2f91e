#include <pact/builtins.hpp>
#include <pact/conjugacy.hpp>
#include <pact/extension.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <random>

using namespace pact;

namespace {

GroupElement z(long k) { return GroupElement::zd({Int(k)}); }

/// Canonical system with the given chain lengths laid out consecutively on
/// 0..n-1 and every nonempty power α_k = α₁^k declared.
ActionSystem make_chain_system(const std::vector<long>& parts) {
    long n = std::accumulate(parts.begin(), parts.end(), 0L);
    auto labels = point_labels(n);
    long max_part = *std::max_element(parts.begin(), parts.end());
    std::vector<std::pair<GroupElement, PartialMap>> maps;
    for (long k = 1; k < max_part; ++k) {
        std::vector<std::pair<std::string, std::string>> pairs;
        long base = 0;
        for (long p : parts) {
            for (long x = 0; x + k < p; ++x)
                pairs.emplace_back(labels[base + x], labels[base + x + k]);
            base += p;
        }
        maps.emplace_back(z(k), make_pm_pairs(std::move(pairs)));
    }
    auto space = SpaceDescriptor::points(labels);
    return make_action_system(GroupDescriptor::zd(1), true, space, make_region_points(labels),
                              std::move(maps));
}

/// The same dynamics with points renamed through a bijection on the labels.
ActionSystem relabel(const ActionSystem& sys, const std::map<std::string, std::string>& sigma) {
    std::vector<std::pair<GroupElement, PartialMap>> maps;
    for (const auto& [g, m] : sys.support) {
        std::vector<std::pair<std::string, std::string>> pairs;
        for (const auto& [x, y] : m.pairs) pairs.emplace_back(sigma.at(x), sigma.at(y));
        maps.emplace_back(g, make_pm_pairs(std::move(pairs)));
    }
    return make_action_system(sys.group, sys.cone_only, sys.space, sys.universe, std::move(maps));
}

/// Oracle: search every bijection of the point sets for one that replays.
std::optional<std::map<std::string, std::string>> brute_force_conjugacy(const ActionSystem& a,
                                                                        const ActionSystem& b) {
    const auto& pa = a.universe.points;
    const auto& pb = b.universe.points;
    if (pa.size() != pb.size()) return std::nullopt;
    std::vector<size_t> perm(pb.size());
    std::iota(perm.begin(), perm.end(), size_t{0});
    do {
        std::map<std::string, std::string> tau;
        for (size_t i = 0; i < pa.size(); ++i) tau[pa[i]] = pb[perm[i]];
        if (replay_conjugacy(tau, a, b)) return tau;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::nullopt;
}

/// All partitions of n into non-increasing positive parts.
std::vector<std::vector<long>> partitions(long n) {
    std::vector<std::vector<long>> out;
    std::vector<long> cur;
    auto rec = [&](auto&& self, long rest, long max_part) -> void {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (long p = std::min(rest, max_part); p >= 1; --p) {
            cur.push_back(p);
            self(self, rest - p, p);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    return out;
}

}  // namespace

TEST_CASE("chain profile examples") {
    CHECK(chain_profile(builders::standard(2)) == ChainProfile{{4}});
    CHECK(chain_profile(builders::standard(3)) == ChainProfile{{8}});

    auto labels = std::vector<std::string>{"1", "2", "3", "4"};
    auto space = SpaceDescriptor::points(labels);
    auto one_edge = make_action_system(GroupDescriptor::zd(1), true, space,
                                       make_region_points(labels),
                                       {{z(1), make_pm_pairs({{"1", "2"}})}});
    CHECK(chain_profile(one_edge) == ChainProfile{{2, 1, 1}});

    auto identity_only = make_action_system(GroupDescriptor::zd(1), true, space,
                                            make_region_points(labels), {});
    CHECK(chain_profile(identity_only) == ChainProfile{{1, 1, 1, 1}});
    CHECK(chain_profile(identity_only).total_points() == 4);
}

TEST_CASE("conjugacy precondition rejections") {
    auto arc = builders::arc(Rational(0), Rational(1), Rational(157, 25), 12);
    CHECK_THROWS_AS(chain_profile(arc), unsupported_backend_error);
    CHECK_THROWS_AS(chain_profile(builders::toroidal_cone(2)), validation_error);
    // group-mode systems declare negative elements, outside Z+
    CHECK_THROWS_AS(chain_profile(extend_total_order(builders::standard(2))), validation_error);

    auto labels = std::vector<std::string>{"p", "q"};
    auto space = SpaceDescriptor::points(labels);
    auto fixed = make_action_system(GroupDescriptor::zd(1), true, space, make_region_points(labels),
                                    {{z(1), make_pm_pairs({{"p", "p"}})}});
    CHECK_THROWS_AS(chain_profile(fixed), freeness_error);

    auto cycle = make_action_system(GroupDescriptor::zd(1), true, space, make_region_points(labels),
                                    {{z(1), make_pm_pairs({{"p", "q"}, {"q", "p"}})}});
    CHECK_THROWS_AS(chain_profile(cycle), freeness_error);

    // declared alpha_3 that is not alpha_1 cubed, hidden behind a window gap
    auto five = point_labels(5);
    auto gap = make_action_system(
        GroupDescriptor::zd(1), true, SpaceDescriptor::points(five), make_region_points(five),
        {{z(1), make_pm_pairs({{"0", "1"}, {"1", "2"}, {"2", "3"}, {"3", "4"}})},
         {z(3), make_pm_pairs({{"0", "3"}})}});
    CHECK_THROWS_AS(chain_profile(gap), validation_error);
}

TEST_CASE("conjugacy decision examples") {
    auto std2 = builders::standard(2);

    // every relabeling of standard(2) is conjugate to it, with a verified tau
    std::vector<std::string> perm = std2.universe.points;
    std::sort(perm.begin(), perm.end());
    do {
        std::map<std::string, std::string> sigma;
        for (size_t i = 0; i < perm.size(); ++i) sigma[std2.universe.points[i]] = perm[i];
        auto other = relabel(std2, sigma);
        auto tau = decide_conjugacy(std2, other);
        REQUIRE(tau);
        REQUIRE(replay_conjugacy(*tau, std2, other));
    } while (std::next_permutation(perm.begin(), perm.end()));

    // {4} vs {2,2}: profiles differ, no conjugacy
    auto two_two = make_chain_system({2, 2});
    CHECK_FALSE(decide_conjugacy(std2, two_two));
    CHECK(chain_profile(two_two) == ChainProfile{{2, 2}});

    // a 4-chain on dyadic grid labels is conjugate to standard(2)
    std::vector<std::string> grid;
    for (long j = 0; j < 4; ++j) grid.push_back(rat_to_string(Rational(j, 4)));
    std::vector<std::pair<GroupElement, PartialMap>> maps;
    for (long k = 1; k < 4; ++k) {
        std::vector<std::pair<std::string, std::string>> pairs;
        for (long x = 0; x + k < 4; ++x) pairs.emplace_back(grid[x], grid[x + k]);
        maps.emplace_back(z(k), make_pm_pairs(std::move(pairs)));
    }
    auto grid_sys = make_action_system(GroupDescriptor::zd(1), true, SpaceDescriptor::points(grid),
                                       make_region_points(grid), std::move(maps));
    auto tau = decide_conjugacy(std2, grid_sys);
    REQUIRE(tau);
    CHECK(tau->at("0") == "0");
    CHECK(tau->at("1") == "1/4");
    CHECK(replay_conjugacy(*tau, std2, grid_sys));

    // equal profiles but mismatched declared windows are not conjugate:
    // standard(2) declares alpha_2 and alpha_3, the bare chain only alpha_1
    auto bare = make_action_system(
        GroupDescriptor::zd(1), true, std2.space, std2.universe,
        {{z(1), make_pm_pairs({{"0", "1"}, {"1", "2"}, {"2", "3"}})}});
    CHECK(chain_profile(bare) == chain_profile(std2));
    CHECK_FALSE(decide_conjugacy(std2, bare));
    CHECK_FALSE(brute_force_conjugacy(std2, bare));
}

TEST_CASE("ideal invariants") {
    auto inv = ideal_invariants(builders::standard(2), 3);
    REQUIRE(inv.levels.size() == 3);
    for (long k = 1; k <= 3; ++k) {
        CHECK(inv.levels[k - 1].count == size_t(4 - k));
        CHECK(inv.levels[k - 1].cocount == size_t(4 - k));
        CHECK(inv.levels[k - 1].pairing.size() == size_t(4 - k));
    }
    CHECK(inv.levels[2].pairing == std::vector<std::pair<std::string, std::string>>{{"0", "3"}});

    auto labels = point_labels(3);
    auto identity_only =
        make_action_system(GroupDescriptor::zd(1), true, SpaceDescriptor::points(labels),
                           make_region_points(labels), {});
    for (const auto& lvl : ideal_invariants(identity_only, 4).levels) {
        CHECK(lvl.count == 0);
        CHECK(lvl.cocount == 0);
        CHECK(lvl.pairing.empty());
    }

    // counts differ for a non-conjugate pair with the same point count
    auto a = ideal_invariants(make_chain_system({4}), 3);
    auto b = ideal_invariants(make_chain_system({2, 2}), 3);
    CHECK(a.levels[0].count == 3);
    CHECK(b.levels[0].count == 2);
    CHECK(a.levels[1].count == 2);
    CHECK(b.levels[1].count == 0);
}

TEST_CASE("exhaustive small-scale suite against brute force") {
    std::mt19937_64 rng(53);
    // canonical system per chain profile on <= 7 points, plus a random
    // relabeling of each; decide_conjugacy must agree with exhaustive search
    std::vector<ActionSystem> suite;
    for (long n = 1; n <= 7; ++n)
        for (const auto& parts : partitions(n)) {
            auto sys = make_chain_system(parts);
            suite.push_back(sys);
            auto shuffled = sys.universe.points;
            std::shuffle(shuffled.begin(), shuffled.end(), rng);
            std::map<std::string, std::string> sigma;
            for (size_t i = 0; i < shuffled.size(); ++i) sigma[sys.universe.points[i]] = shuffled[i];
            suite.push_back(relabel(sys, sigma));
        }
    REQUIRE(suite.size() == 2 * (1 + 2 + 3 + 5 + 7 + 11 + 15));

    size_t conjugate_pairs = 0, distinct_pairs = 0;
    for (size_t i = 0; i < suite.size(); ++i)
        for (size_t j = i; j < suite.size(); ++j) {
            INFO("pair (" << i << ", " << j << ")");
            auto fast = decide_conjugacy(suite[i], suite[j]);
            auto slow = brute_force_conjugacy(suite[i], suite[j]);
            REQUIRE(fast.has_value() == slow.has_value());
            const long kmax =
                std::max<long>(1, long(std::max(suite[i].support.size(), suite[j].support.size())));
            auto inv_a = ideal_invariants(suite[i], kmax);
            auto inv_b = ideal_invariants(suite[j], kmax);
            if (fast) {
                ++conjugate_pairs;
                REQUIRE(replay_conjugacy(*fast, suite[i], suite[j]));
                for (long k = 0; k < kmax; ++k) {
                    // counts agree and the pairings correspond under tau
                    REQUIRE(inv_a.levels[k].count == inv_b.levels[k].count);
                    REQUIRE(inv_a.levels[k].cocount == inv_b.levels[k].cocount);
                    std::set<std::pair<std::string, std::string>> mapped, theirs(
                        inv_b.levels[k].pairing.begin(), inv_b.levels[k].pairing.end());
                    for (const auto& [x, y] : inv_a.levels[k].pairing)
                        mapped.insert({fast->at(x), fast->at(y)});
                    REQUIRE(mapped == theirs);
                }
            } else {
                ++distinct_pairs;
                // counts recover the profile, so some level must disagree
                // whenever the two systems have equally many points
                if (suite[i].universe.points.size() == suite[j].universe.points.size()) {
                    bool counts_differ = false;
                    for (long k = 0; k < kmax; ++k)
                        counts_differ = counts_differ ||
                                        inv_a.levels[k].count != inv_b.levels[k].count;
                    REQUIRE(counts_differ);
                }
            }
        }
    CHECK(conjugate_pairs >= suite.size());  // at least every (canonical, relabeled) pair
    CHECK(distinct_pairs > conjugate_pairs);
}

TEST_CASE("profile is recoverable from the ideal counts") {
    for (long n = 1; n <= 7; ++n)
        for (const auto& parts : partitions(n)) {
            auto sys = make_chain_system(parts);
            auto profile = chain_profile(sys);
            long kmax = *std::max_element(parts.begin(), parts.end());
            auto inv = ideal_invariants(sys, kmax);
            size_t prev = sys.universe.points.size();  // count_0 = |X|
            for (long k = 1; k <= kmax; ++k) {
                size_t count = inv.levels[k - 1].count;
                REQUIRE(count <= prev);  // non-increasing
                long expected = long(std::count_if(profile.lengths.begin(), profile.lengths.end(),
                                                   [&](long l) { return l >= k; }));
                REQUIRE(long(prev) - long(count) == expected);
                prev = count;
            }
            // chains of length >= k+1 are counted by count_k - count_{k+1}
            for (long k = 1; k + 1 <= kmax; ++k) {
                long lhs = long(inv.levels[k - 1].count) - long(inv.levels[k].count);
                long rhs = long(std::count_if(profile.lengths.begin(), profile.lengths.end(),
                                              [&](long l) { return l >= k + 1; }));
                REQUIRE(lhs == rhs);
            }
        }
}
