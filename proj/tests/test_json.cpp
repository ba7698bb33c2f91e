#include <pact/builtins.hpp>
#include <pact/extension.hpp>
#include <pact/json_io.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace pact;

TEST_CASE("every builtin system round-trips") {
    std::vector<ActionSystem> systems = {
        builders::standard(1),      builders::standard(3),
        builders::refine(2),        builders::arc(Rational(0), Rational(1), Rational(157, 25), 12),
        builders::split1a1b(1),     builders::split1a1b(2),
        builders::split1a1b(3),     builders::even_odd(),
        builders::no_ext(),         builders::toroidal_cone(2),
        builders::toroidal_ext(3),  builders::bd_odometer(2),
        extend_total_order(builders::standard(2)),
    };
    for (const auto& sys : systems) {
        Json j = system_to_json(sys);
        CHECK(system_from_json(j) == sys);
        // byte stability: serialize, parse, serialize again
        std::string once = j.dump();
        CHECK(system_to_json(system_from_json(Json::parse(once))).dump() == once);
    }
}

TEST_CASE("group elements and descriptors") {
    auto zd = GroupDescriptor::zd(3);
    auto g = GroupElement::zd({1, -2, 0});
    CHECK(elem_to_json(g).dump() == "[1,-2,0]");
    CHECK(elem_from_json(zd, elem_to_json(g)) == g);
    CHECK(group_from_json(group_to_json(zd)) == zd);

    auto line = GroupDescriptor::rational_line();
    auto q = GroupElement::line(Rational(-3, 4));
    CHECK(elem_to_json(q).dump() == "\"-3/4\"");
    CHECK(elem_from_json(line, elem_to_json(q)) == q);

    CHECK_THROWS_AS(elem_from_json(zd, Json::parse("[1,2]")), malformed_input);
    CHECK_THROWS_AS(elem_from_json(zd, Json::parse("[1,2,\"x\"]")), malformed_input);
    CHECK_THROWS_AS(group_from_json(Json::parse("{\"kind\":\"free\"}")), malformed_input);
}

TEST_CASE("regions and partial maps") {
    auto circle = SpaceDescriptor::intervals(Rational(157, 25));
    Region arcs = make_region({{Rational(0), Rational(1)}, {Rational(2), Rational(3)}},
                              circle.modulus);
    CHECK(region_from_json(circle, region_to_json(arcs)) == arcs);
    Region full = make_region({{Rational(0), Rational(157, 25)}}, circle.modulus);
    full.full = true;
    full.ivs.clear();
    CHECK(region_to_json(full).dump() == "\"full\"");
    CHECK(region_from_json(circle, Json("full")) == full);

    auto shift = make_pm_shift(arcs, Rational(1, 2));
    CHECK(pm_from_json(circle, pm_to_json(shift)) == shift);

    auto finite = SpaceDescriptor::points({"a", "b", "c"});
    auto pm = make_pm_pairs({{"a", "b"}, {"b", "c"}});
    CHECK(pm_from_json(finite, pm_to_json(pm)) == pm);
    CHECK_THROWS_AS(pm_from_json(finite, Json::parse("{\"pairs\":[[\"a\",\"b\"],[\"c\",\"b\"]]}")),
                    malformed_input);  // not injective
    CHECK_THROWS_AS(pm_from_json(finite, Json::parse("{\"shift\":\"1\"}")), malformed_input);
}

TEST_CASE("polynomials round-trip with complex coefficients") {
    auto sys = extend_total_order(builders::standard(2));
    std::mt19937_64 rng(61);
    std::uniform_int_distribution<int> num(-5, 5), den(1, 3);
    std::vector<GroupElement> elems = declared_elements(sys);
    std::uniform_int_distribution<size_t> pick(0, elems.size() - 1);
    for (int round = 0; round < 100; ++round) {
        std::map<GroupElement, CoeffFn> terms;
        for (int t = 0; t < 3; ++t) {
            GroupElement n = elems[pick(rng)];
            for (const auto& label : region_d(sys, n).points)
                terms[n][label] =
                    GaussianRational(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
        }
        auto p = make_poly(sys, std::move(terms));
        Json j = poly_to_json(p);
        CHECK(poly_from_json(sys, j) == p);
        CHECK(poly_to_json(poly_from_json(sys, Json::parse(j.dump()))).dump() == j.dump());
    }

    // support violations surface as malformed input at the JSON boundary
    CHECK_THROWS_AS(
        poly_from_json(builders::standard(1),
                       Json::parse("[{\"g\":[1],\"coeffs\":{\"0\":\"1\"}}]")),
        malformed_input);  // X_1 = {1}, not {0}
    CHECK_THROWS_AS(poly_from_json(sys, Json::parse("{\"g\":[1]}")), malformed_input);
    CHECK_THROWS_AS(
        poly_from_json(sys, Json::parse("[{\"g\":[0],\"coeffs\":{\"0\":\"1+2xi\"}}]")),
        malformed_input);
}

TEST_CASE("malformed systems are rejected") {
    Json good = system_to_json(builders::standard(1));
    CHECK(system_from_json(good) == builders::standard(1));

    Json missing = good;
    missing.erase("space");
    CHECK_THROWS_AS(system_from_json(missing), malformed_input);

    Json bad_label = good;
    bad_label["universe"].push_back("9");  // not a space label
    CHECK_THROWS_AS(system_from_json(bad_label), malformed_input);

    Json bad_cone = good;
    bad_cone["maps"][0]["g"] = Json::parse("[-1]");  // cone-only system, negative element
    CHECK_THROWS_AS(system_from_json(bad_cone), malformed_input);

    CHECK_THROWS_AS(system_from_json(Json::parse("[]")), malformed_input);
}
