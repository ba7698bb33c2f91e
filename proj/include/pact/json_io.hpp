#pragma once

#include <pact/action.hpp>
#include <pact/crossed.hpp>

#include <json.hpp>

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace pact {

using Json = nlohmann::ordered_json;

namespace detail_json {

[[noreturn]] inline void bad(const std::string& what) {
    throw malformed_input("json: " + what);
}

inline const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

}  // namespace detail_json

// ---- group ----

inline Json group_to_json(const GroupDescriptor& d) {
    if (d.kind == GroupKind::RationalLine) return Json{{"kind", "rational_line"}};
    return Json{{"kind", "Zd"}, {"rank", d.rank}};
}

inline GroupDescriptor group_from_json(const Json& j) {
    std::string kind = detail_json::field(j, "kind").get<std::string>();
    if (kind == "rational_line") return GroupDescriptor::rational_line();
    if (kind == "Zd") {
        const Json& r = detail_json::field(j, "rank");
        if (!r.is_number_integer() || r.get<long long>() < 1) detail_json::bad("bad Zd rank");
        return GroupDescriptor::zd(static_cast<int>(r.get<long long>()));
    }
    detail_json::bad("unknown group kind " + kind);
}

inline Json elem_to_json(const GroupElement& g) {
    if (g.is_line()) return Json(rat_to_string(g.rat));
    Json a = Json::array();
    for (const auto& c : g.coords) a.push_back(c.convert_to<long long>());
    return a;
}

inline GroupElement elem_from_json(const GroupDescriptor& desc, const Json& j) {
    if (desc.kind == GroupKind::RationalLine) {
        if (!j.is_string()) detail_json::bad("rational-line element must be a string");
        try {
            return GroupElement::line(rat_from_string(j.get<std::string>()));
        } catch (const std::invalid_argument& e) {
            detail_json::bad(e.what());
        }
    }
    if (!j.is_array() || j.size() != static_cast<size_t>(desc.rank))
        detail_json::bad("Zd element must be an integer array of length rank");
    std::vector<Int> coords;
    for (const auto& v : j) {
        if (!v.is_number_integer()) detail_json::bad("Zd coordinate must be an integer");
        coords.emplace_back(v.get<long long>());
    }
    return GroupElement::zd(std::move(coords));
}

// ---- space and regions ----

inline Json space_to_json(const SpaceDescriptor& s) {
    Json j;
    j["finite"] = s.finite;
    if (s.finite) {
        j["labels"] = s.labels;
    } else {
        j["modulus"] = s.modulus ? Json(rat_to_string(*s.modulus)) : Json(nullptr);
    }
    return j;
}

inline SpaceDescriptor space_from_json(const Json& j) {
    if (!detail_json::field(j, "finite").is_boolean()) detail_json::bad("\"finite\" must be a bool");
    if (j.at("finite").get<bool>()) {
        const Json& ls = detail_json::field(j, "labels");
        if (!ls.is_array()) detail_json::bad("\"labels\" must be an array");
        return SpaceDescriptor::points(ls.get<std::vector<std::string>>());
    }
    const Json& m = detail_json::field(j, "modulus");
    if (m.is_null()) return SpaceDescriptor::intervals();
    try {
        return SpaceDescriptor::intervals(rat_from_string(m.get<std::string>()));
    } catch (const std::invalid_argument& e) {
        detail_json::bad(e.what());
    }
}

/// Finite regions serialize as a label array, interval regions as an array of
/// ["lo","hi"] endpoint pairs; the full circle is the string "full".
inline Json region_to_json(const Region& r) {
    if (r.finite) return Json(r.points);
    if (r.full) return Json("full");
    Json a = Json::array();
    for (const auto& iv : r.ivs) a.push_back({rat_to_string(iv.lo), rat_to_string(iv.hi)});
    return a;
}

inline Region region_from_json(const SpaceDescriptor& space, const Json& j) {
    if (space.finite) {
        if (!j.is_array()) detail_json::bad("finite region must be a label array");
        return make_region_points(j.get<std::vector<std::string>>());
    }
    if (j.is_string() && j.get<std::string>() == "full") {
        if (!space.modulus) detail_json::bad("\"full\" needs a circle space");
        Region r = make_region({{Rational(0), *space.modulus}}, space.modulus);
        r.full = true;
        r.ivs.clear();
        return r;
    }
    if (!j.is_array()) detail_json::bad("interval region must be an array of endpoint pairs");
    std::vector<Interval> ivs;
    for (const auto& p : j) {
        if (!p.is_array() || p.size() != 2) detail_json::bad("interval must be [\"lo\",\"hi\"]");
        try {
            ivs.push_back({rat_from_string(p.at(0).get<std::string>()),
                           rat_from_string(p.at(1).get<std::string>())});
        } catch (const std::invalid_argument& e) {
            detail_json::bad(e.what());
        }
    }
    return make_region(std::move(ivs), space.modulus);
}

// ---- partial maps ----

inline Json pm_to_json(const PartialMap& m) {
    if (m.finite) {
        Json pairs = Json::array();
        for (const auto& [s, t] : m.pairs) pairs.push_back({s, t});
        return Json{{"pairs", std::move(pairs)}};
    }
    return Json{{"domain", region_to_json(m.dom)}, {"shift", rat_to_string(m.shift)}};
}

inline PartialMap pm_from_json(const SpaceDescriptor& space, const Json& j) {
    if (!j.is_object()) detail_json::bad("partial map must be an object");
    if (j.contains("pairs")) {
        if (!space.finite) detail_json::bad("\"pairs\" maps need a finite space");
        std::vector<std::pair<std::string, std::string>> pairs;
        for (const auto& p : j.at("pairs")) {
            if (!p.is_array() || p.size() != 2) detail_json::bad("pair must be [from, to]");
            pairs.emplace_back(p.at(0).get<std::string>(), p.at(1).get<std::string>());
        }
        try {
            return make_pm_pairs(std::move(pairs));
        } catch (const pact_error& e) {
            detail_json::bad(e.what());
        }
    }
    if (space.finite) detail_json::bad("finite-space maps need \"pairs\"");
    try {
        return make_pm_shift(region_from_json(space, detail_json::field(j, "domain")),
                             rat_from_string(detail_json::field(j, "shift").get<std::string>()));
    } catch (const std::invalid_argument& e) {
        detail_json::bad(e.what());
    }
}

// ---- action systems ----

inline Json system_to_json(const ActionSystem& sys) {
    Json j;
    j["group"] = group_to_json(sys.group);
    j["cone_only"] = sys.cone_only;
    j["space"] = space_to_json(sys.space);
    j["universe"] = region_to_json(sys.universe);
    Json maps = Json::array();
    for (const auto& [g, m] : sys.support)
        maps.push_back(Json{{"g", elem_to_json(g)}, {"map", pm_to_json(m)}});
    j["maps"] = std::move(maps);
    return j;
}

inline ActionSystem system_from_json(const Json& j) {
    GroupDescriptor group = group_from_json(detail_json::field(j, "group"));
    const Json& co = detail_json::field(j, "cone_only");
    if (!co.is_boolean()) detail_json::bad("\"cone_only\" must be a bool");
    SpaceDescriptor space = space_from_json(detail_json::field(j, "space"));
    Region universe = region_from_json(space, detail_json::field(j, "universe"));
    const Json& maps = detail_json::field(j, "maps");
    if (!maps.is_array()) detail_json::bad("\"maps\" must be an array");
    std::vector<std::pair<GroupElement, PartialMap>> support;
    for (const auto& entry : maps)
        support.emplace_back(elem_from_json(group, detail_json::field(entry, "g")),
                             pm_from_json(space, detail_json::field(entry, "map")));
    try {
        return make_action_system(std::move(group), co.get<bool>(), std::move(space),
                                  std::move(universe), std::move(support));
    } catch (const pact_error& e) {
        detail_json::bad(e.what());
    }
}

// ---- crossed polynomials ----

inline Json poly_to_json(const CrossedPoly& p) {
    Json a = Json::array();
    for (const auto& [n, f] : p.terms) {
        Json coeffs = Json::object();
        for (const auto& [label, v] : f) coeffs[label] = gaussian_to_string(v);
        a.push_back(Json{{"g", elem_to_json(n)}, {"coeffs", std::move(coeffs)}});
    }
    return a;
}

inline CrossedPoly poly_from_json(const ActionSystem& sys, const Json& j) {
    if (!j.is_array()) detail_json::bad("polynomial must be an array of terms");
    std::map<GroupElement, CoeffFn> terms;
    for (const auto& term : j) {
        GroupElement g = elem_from_json(sys.group, detail_json::field(term, "g"));
        const Json& coeffs = detail_json::field(term, "coeffs");
        if (!coeffs.is_object()) detail_json::bad("\"coeffs\" must be an object");
        for (const auto& [label, v] : coeffs.items()) {
            try {
                terms[g][label] = terms[g][label] + gaussian_from_string(v.get<std::string>());
            } catch (const std::invalid_argument& e) {
                detail_json::bad(e.what());
            }
        }
    }
    try {
        return make_poly(sys, std::move(terms));
    } catch (const unsupported_backend_error&) {
        throw;
    } catch (const pact_error& e) {
        detail_json::bad(e.what());
    }
}

}  // namespace pact
