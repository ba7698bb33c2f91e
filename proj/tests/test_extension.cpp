#include <pact/builtins.hpp>
#include <pact/extension.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace pact;

namespace {

GroupElement E(std::vector<Int> c) { return GroupElement::zd(std::move(c)); }

/// Every zero-label-sum word of maps β_{±s} up to `depth` must restrict the
/// identity; returns a violating (word, x, y) description or empty string.
std::string zero_word_violation(const ActionSystem& sys, int depth) {
    std::vector<std::pair<GroupElement, PartialMap>> letters;
    for (const auto& [g, m] : sys.support) {
        letters.emplace_back(g, m);
        letters.emplace_back(-g, pm_invert(m));
    }
    std::string bad;
    auto recurse = [&](auto&& self, const PartialMap& acc, const GroupElement& sum,
                       int left, const std::string& word) -> void {
        if (!bad.empty()) return;
        if (sum.is_zero() && !word.empty())
            for (const auto& [x, y] : acc.pairs)
                if (x != y) {
                    bad = word + " moves " + x + " to " + y;
                    return;
                }
        if (left == 0) return;
        for (const auto& [g, m] : letters) {
            PartialMap next = pm_compose(m, acc);
            if (next.empty()) continue;
            self(self, next, sum + g, left - 1, word + " " + elem_to_string(g));
        }
    };
    recurse(recurse, pm_identity_on(sys.universe), group_zero(sys.group), depth, "");
    return bad;
}

}  // namespace

TEST_CASE("seven-point system admits no extension, with a replayable witness") {
    auto sys = builders::no_ext();
    auto result = extend_group(sys);
    REQUIRE(std::holds_alternative<ExtensionWitness>(result));
    const auto& w = std::get<ExtensionWitness>(result);
    CHECK(w.x == "1");
    CHECK(w.y == "7");
    REQUIRE(w.walk.size() == 6);
    std::vector<GroupElement> labels;
    for (const auto& step : w.walk) labels.push_back(step.label);
    CHECK(labels == std::vector<GroupElement>{E({1, 0, 0}), E({0, -1, 0}), E({0, 0, 1}),
                                              E({-1, 0, 0}), E({0, 1, 0}), E({0, 0, -1})});
    CHECK(walk_label_sum(sys.group, w.walk).is_zero());
    CHECK(replay_walk(sys, w.x, w.walk) == w.y);
}

TEST_CASE("total-order extension inverts each cone map") {
    auto sys = builders::standard(2);
    auto ext = extend_total_order(sys);
    CHECK_FALSE(ext.cone_only);
    CHECK(map_at(ext, E({-1})) == pm_invert(map_at(sys, E({1}))));
    CHECK(map_at(ext, E({2})) == map_at(sys, E({2})));
    auto rep = check_axioms(ext);
    CHECK(rep.definition_passes());
    CHECK(rep.third_arrow_passes());

    auto arc = builders::arc(Rational(0), Rational(1), Rational(157, 25), 12);
    auto arc_ext = extend_total_order(arc);
    CHECK(pm_domain(map_at(arc_ext, E({-6}))) == pm_range(map_at(arc, E({6}))));
    CHECK(map_at(arc_ext, E({-3})).empty());
    CHECK(check_axioms(arc_ext).definition_passes());

    CHECK_THROWS_AS(extend_total_order(builders::toroidal_cone(2)), validation_error);
    CHECK_THROWS_AS(extend_total_order(builders::split1a1b(3)), validation_error);
}

TEST_CASE("group extension of the truncated shift matches the total-order extension") {
    for (int i : {1, 2, 3}) {
        auto sys = builders::standard(i);
        auto result = extend_group(sys);
        REQUIRE(std::holds_alternative<ExtendedSystem>(result));
        const auto& ext = std::get<ExtendedSystem>(result);
        CHECK(extension_is_free(ext.graph));
        auto by_order = extend_total_order(sys);
        auto lhs = declared_elements(ext.system);
        auto rhs = declared_elements(by_order);
        REQUIRE(lhs == rhs);
        for (const auto& g : lhs) CHECK(map_at(ext.system, g) == map_at(by_order, g));
    }
}

TEST_CASE("toroidal cone extension reproduces the two-sided builtin") {
    for (int i : {2, 3}) {
        auto sys = builders::toroidal_cone(i);
        auto result = extend_group(sys);
        REQUIRE(std::holds_alternative<ExtendedSystem>(result));
        const auto& ext = std::get<ExtendedSystem>(result);

        // cycle subgroup is generated by 2^{i-1}(e1 - e2)
        Int half = Int(1) << (i - 1);
        CHECK(subgroup_member(ext.h, E({half, -half})));
        CHECK_FALSE(subgroup_member(ext.h, E({half - 1, -(half - 1)})));
        CHECK_FALSE(subgroup_member(ext.h, E({1, 0})));
        CHECK_FALSE(extension_is_free(ext.graph));

        auto builtin = builders::toroidal_ext(i);
        for (const auto& [g, m] : builtin.support) {
            INFO("i = " << i << ", g = " << elem_to_string(g));
            REQUIRE(is_declared(ext.system, g));
            CHECK(map_at(ext.system, g) == m);
        }
        auto rep = check_axioms(ext.system);
        CHECK(rep.definition_passes());
        CHECK(rep.third_arrow_passes());
        CHECK_FALSE(check_properties(ext.system).free.holds);
    }
}

TEST_CASE("successful extensions restrict back to the input on the cone") {
    std::mt19937_64 rng(404);
    int successes = 0, failures = 0;
    for (int round = 0; round < 400; ++round) {
        auto sys = random_system(rng, 8);
        if (!check_axioms(sys).definition_passes()) continue;
        auto result = extend_group(sys);
        INFO("round " << round);
        if (std::holds_alternative<ExtensionWitness>(result)) {
            ++failures;
            const auto& w = std::get<ExtensionWitness>(result);
            REQUIRE(w.x != w.y);
            REQUIRE(walk_label_sum(sys.group, w.walk).is_zero());
            REQUIRE(replay_walk(sys, w.x, w.walk) == w.y);
            continue;
        }
        ++successes;
        const auto& ext = std::get<ExtendedSystem>(result);
        REQUIRE(check_axioms(ext.system).definition_passes());
        for (const auto& [g, m] : sys.support)
            REQUIRE(pm_is_restriction(m, map_at(ext.system, g)));
        // freeness of the truncation follows from trivial cycle subgroups
        if (extension_is_free(ext.graph))
            REQUIRE(check_properties(ext.system).free.holds);
    }
    CHECK(successes > 20);
    CHECK(failures > 5);
}

TEST_CASE("zero-sum words restrict the identity exactly on extendable systems") {
    std::mt19937_64 rng(505);
    int successes = 0, failures = 0;
    for (int round = 0; round < 250 && (successes < 25 || failures < 8); ++round) {
        auto sys = random_system(rng, 7);
        if (!check_axioms(sys).definition_passes()) continue;
        auto result = extend_group(sys);
        std::string violation = zero_word_violation(sys, 4);
        INFO("round " << round << " " << violation);
        if (std::holds_alternative<ExtendedSystem>(result)) {
            ++successes;
            REQUIRE(violation.empty());
        } else {
            ++failures;
        }
    }
    CHECK(successes >= 25);
    CHECK(failures >= 8);
    // the witness itself is a moving zero-sum word
    CHECK_FALSE(zero_word_violation(builders::no_ext(), 6).empty());
}

TEST_CASE("interval backends are rejected by the group extension") {
    auto arc = builders::arc(Rational(0), Rational(1), Rational(157, 25), 12);
    CHECK_THROWS_AS(extend_group(arc), unsupported_backend_error);
}

TEST_CASE("widening enlarges the emitted window consistently") {
    auto sys = builders::toroidal_cone(2);
    auto narrow = std::get<ExtendedSystem>(extend_group(sys));
    auto wide = std::get<ExtendedSystem>(extend_group(sys, 1));
    auto base = declared_elements(narrow.system);
    auto more = declared_elements(wide.system);
    CHECK(more.size() > base.size());
    for (const auto& g : base) {
        REQUIRE(is_declared(wide.system, g));
        CHECK(map_at(wide.system, g) == map_at(narrow.system, g));
    }
}
