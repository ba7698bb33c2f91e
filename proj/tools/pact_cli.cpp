// Command-line front end: JSON in, verdicts and witnesses out.
//
// Exit codes: 0 success / positive decision, 1 malformed input,
// 2 criterion failure with witness, 3 negative decision,
// 4 precondition unsupported.

#include <pact/builtins.hpp>
#include <pact/conjugacy.hpp>
#include <pact/crossed.hpp>
#include <pact/extension.hpp>
#include <pact/groupoid.hpp>
#include <pact/json_io.hpp>
#include <pact/tower.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <variant>
#include <vector>

namespace {

constexpr const char* kVersion = "pact 1.0.0";

constexpr int kExitOk = 0;
constexpr int kExitMalformed = 1;
constexpr int kExitWitness = 2;
constexpr int kExitNegative = 3;
constexpr int kExitUnsupported = 4;

using pact::Json;

bool g_json = false;

void emit(const Json& j) {
    std::cout << (g_json ? j.dump() : j.dump(2)) << "\n";
}

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw pact::malformed_input("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw pact::malformed_input(path + ": " + e.what());
    }
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw pact::malformed_input("cannot write " + path);
    out << text << "\n";
}

pact::ActionSystem load_system(const std::string& path) {
    return pact::system_from_json(load_json(path));
}

Json witness_to_json(const pact::AxiomWitness& w, bool finite) {
    Json j;
    j["s"] = pact::elem_to_json(w.s);
    j["t"] = pact::elem_to_json(w.t);
    if (finite) j["point"] = w.label;
    else j["point"] = pact::rat_to_string(w.point);
    return j;
}

Json condition_to_json(const pact::ConditionReport& c, bool finite) {
    Json j;
    j["holds"] = c.holds;
    Json fails = Json::array();
    for (size_t i = 0; i < c.failures.size() && i < 5; ++i)
        fails.push_back(witness_to_json(c.failures[i], finite));
    j["failures"] = std::move(fails);
    return j;
}

Json verdict_to_json(const pact::PropertyVerdict& v) {
    return Json{{"holds", v.holds}, {"witness", v.witness}};
}

Json walk_to_json(const std::vector<pact::WalkStep>& walk) {
    Json a = Json::array();
    for (const auto& step : walk)
        a.push_back(Json{{"label", pact::elem_to_json(step.label)},
                         {"from", step.from},
                         {"to", step.to}});
    return a;
}

Json extension_witness_to_json(const pact::ExtensionWitness& w, const pact::ActionSystem& sys) {
    pact::GroupElement sum = pact::group_zero(sys.group);
    for (const auto& step : w.walk) sum = sum + step.label;
    return Json{{"x", w.x},
                {"y", w.y},
                {"walk", walk_to_json(w.walk)},
                {"label_sum", pact::elem_to_json(sum)}};
}

std::vector<pact::GroupElement> subgroup_generators(const pact::Subgroup& h) {
    std::vector<pact::GroupElement> gens;
    if (h.desc.kind == pact::GroupKind::Zd) {
        for (const auto& row : h.basis) gens.push_back(pact::GroupElement::zd(row));
    } else if (h.line_gen != 0) {
        gens.push_back(pact::GroupElement::line(h.line_gen));
    }
    return gens;
}

/// Group mode on demand: cone-only systems are extended first; a
/// non-extendable input is itself the witness (exit 2).
pact::ActionSystem ensure_group_mode(const pact::ActionSystem& sys, int widen) {
    if (!sys.cone_only) return sys;
    auto result = pact::extend_group(sys, widen);
    if (auto* w = std::get_if<pact::ExtensionWitness>(&result)) {
        emit(Json{{"command", "extend"}, {"witness", extension_witness_to_json(*w, sys)}});
        std::exit(kExitWitness);
    }
    return std::get<pact::ExtendedSystem>(result).system;
}

Json norm_value_to_json(const pact::NormValue& nv) {
    return Json(pact::rat_to_string(nv.value));
}

// ---- subcommands ----

int cmd_validate(const std::string& file) {
    auto sys = load_system(file);
    auto rep = pact::check_axioms(sys);
    bool finite = sys.space.finite;
    Json j;
    j["command"] = "validate";
    j["conditions"] = Json{{"1a", condition_to_json(rep.c1a, finite)},
                           {"1b", condition_to_json(rep.c1b, finite)},
                           {"1prime", condition_to_json(rep.c1prime, finite)},
                           {"2", condition_to_json(rep.c2, finite)},
                           {"3", condition_to_json(rep.c3, finite)}};
    j["third_arrow"] = Json{{"I_II_III", condition_to_json(rep.ta_i_ii_iii, finite)},
                            {"I_III_II", condition_to_json(rep.ta_i_iii_ii, finite)},
                            {"II_III_I", condition_to_json(rep.ta_ii_iii_i, finite)}};
    j["passes"] = rep.definition_passes();
    emit(j);
    return rep.definition_passes() ? kExitOk : kExitWitness;
}

int cmd_properties(const std::string& file) {
    auto sys = load_system(file);
    auto rep = pact::check_properties(sys);
    emit(Json{{"command", "properties"},
              {"free", verdict_to_json(rep.free)},
              {"non_degenerate", verdict_to_json(rep.non_degenerate)},
              {"composition", verdict_to_json(rep.composition)},
              {"domain_ordering", verdict_to_json(rep.domain_ordering)}});
    return kExitOk;
}

int cmd_extend(const std::string& file, int widen) {
    auto sys = load_system(file);
    auto result = pact::extend_group(sys, widen);
    if (auto* w = std::get_if<pact::ExtensionWitness>(&result)) {
        emit(Json{{"command", "extend"}, {"witness", extension_witness_to_json(*w, sys)}});
        return kExitWitness;
    }
    const auto& ext = std::get<pact::ExtendedSystem>(result);
    Json h = Json::array();
    for (const auto& g : subgroup_generators(ext.h)) h.push_back(pact::elem_to_json(g));
    Json phi = Json::object();
    for (const auto& [x, v] : ext.graph.phi) phi[x] = pact::elem_to_json(v);
    emit(Json{{"command", "extend"},
              {"system", pact::system_to_json(ext.system)},
              {"H", std::move(h)},
              {"phi", std::move(phi)},
              {"free", pact::extension_is_free(ext.graph)}});
    return kExitOk;
}

int cmd_groupoid(const std::string& file, int widen) {
    auto sys = ensure_group_mode(load_system(file), widen);
    auto gpd = pact::build_groupoid(sys);
    Json arrows = Json::array();
    for (const auto& [a, t] : gpd.cocycle)
        arrows.push_back(Json{{"from", a.first}, {"to", a.second}, {"c", pact::elem_to_json(t)}});
    emit(Json{{"command", "groupoid"},
              {"points", gpd.points},
              {"orbits", gpd.orbits},
              {"arrows", std::move(arrows)}});
    return kExitOk;
}

int cmd_norms(const std::string& system_file, const std::string& poly_file, int widen) {
    auto sys = ensure_group_mode(load_system(system_file), widen);
    auto p = pact::poly_from_json(sys, load_json(poly_file));
    auto gpd = pact::build_groupoid(sys);
    auto f = pact::phi(p, sys, gpd);
    pact::NormValue l = pact::l_norm(p), i = pact::i_norm(f);
    Json j;
    j["L"] = norm_value_to_json(l);
    j["I"] = norm_value_to_json(i);
    j["Cstar"] = pact::cstar_norm(gpd, f);
    if (!l.exact) j["L_exact"] = false;
    if (!i.exact) j["I_exact"] = false;
    emit(j);
    return kExitOk;
}

int cmd_phi(const std::string& system_file, const std::string& poly_file, int widen) {
    auto sys = ensure_group_mode(load_system(system_file), widen);
    auto p = pact::poly_from_json(sys, load_json(poly_file));
    auto gpd = pact::build_groupoid(sys);
    auto f = pact::phi(p, sys, gpd);
    bool round_trip = pact::phi_inv(f, sys, gpd) == p;
    Json fn = Json::array();
    for (const auto& [a, v] : f)
        fn.push_back(Json{{"from", a.first}, {"to", a.second},
                          {"value", pact::gaussian_to_string(v)}});
    emit(Json{{"command", "phi"}, {"function", std::move(fn)}, {"round_trip", round_trip}});
    return round_trip ? kExitOk : kExitWitness;
}

int cmd_analytic(const std::string& system_file, const std::string& poly_file) {
    auto sys = load_system(system_file);
    auto p = pact::poly_from_json(sys, load_json(poly_file));
    if (!pact::is_analytic(p, sys.group)) {
        emit(Json{{"command", "analytic"}, {"analytic", false}});
        return kExitNegative;
    }
    auto m = pact::analytic_matrix_realize(sys, p);
    Json rows = Json::array();
    for (const auto& row : m.entries) {
        Json r = Json::array();
        for (const auto& v : row) r.push_back(pact::gaussian_to_string(v));
        rows.push_back(std::move(r));
    }
    emit(Json{{"command", "analytic"},
              {"analytic", true},
              {"labels", m.labels},
              {"matrix", std::move(rows)}});
    return kExitOk;
}

int cmd_tower(const std::string& kind, int levels, bool verify) {
    auto t = pact::build_tower(kind, levels);
    Json stages = Json::array();
    for (size_t i = 0; i + 1 < t.levels.size(); ++i) {
        auto rep = pact::check_intertwine(t.maps[i], t.levels[i + 1], t.levels[i]);
        stages.push_back(Json{{"stage", i},
                              {"upper_points", t.levels[i + 1].universe.points.size()},
                              {"lower_points", t.levels[i].universe.points.size()},
                              {"intertwines", rep.holds}});
    }
    Json j;
    j["command"] = "tower";
    j["kind"] = kind;
    j["stages"] = std::move(stages);
    bool all_green = true;
    if (verify && kind == "toroidal") {
        Json verdicts = Json::array();
        for (int i = 2; i <= levels; ++i) {
            auto rep = pact::toroidal_verify(i);
            verdicts.push_back(Json{{"level", i},
                                    {"unitary", rep.unitary},
                                    {"odometer_conjugation", rep.odometer_conjugation},
                                    {"generation_span", rep.generation_span},
                                    {"cycle_pattern", rep.cycle_pattern}});
            all_green = all_green && rep.all();
        }
        j["verify"] = std::move(verdicts);
    }
    emit(j);
    return all_green ? kExitOk : kExitWitness;
}

int cmd_conjugacy(const std::string& file_a, const std::string& file_b,
                  const std::string& tau_out) {
    auto a = load_system(file_a);
    auto b = load_system(file_b);
    auto tau = pact::decide_conjugacy(a, b);
    Json j;
    j["command"] = "conjugacy";
    j["profile_a"] = pact::chain_profile(a).lengths;
    j["profile_b"] = pact::chain_profile(b).lengths;
    j["conjugate"] = tau.has_value();
    if (tau) {
        Json tj = Json::object();
        for (const auto& [x, y] : *tau) tj[x] = y;
        j["tau"] = tj;
        if (!tau_out.empty()) write_file(tau_out, tj.dump(2));
    }
    emit(j);
    return tau ? kExitOk : kExitNegative;
}

int cmd_invariants(const std::string& file, long kmax) {
    auto sys = load_system(file);
    auto inv = pact::ideal_invariants(sys, kmax);
    Json levels = Json::array();
    for (const auto& lvl : inv.levels) {
        Json pairing = Json::array();
        for (const auto& [y, ay] : lvl.pairing) pairing.push_back({y, ay});
        levels.push_back(Json{{"k", lvl.k},
                              {"count", lvl.count},
                              {"cocount", lvl.cocount},
                              {"pairing", std::move(pairing)}});
    }
    emit(Json{{"command", "invariants"}, {"levels", std::move(levels)}});
    return kExitOk;
}

int cmd_builtin(const std::string& name, const std::vector<std::string>& params,
                std::string out_file) {
    std::vector<pact::Rational> rats;
    for (const auto& s : params) {
        try {
            rats.push_back(pact::rat_from_string(s));
        } catch (const std::invalid_argument& e) {
            throw pact::malformed_input(e.what());
        }
    }
    auto sys = pact::builtin_system(name, rats);
    if (out_file.empty()) out_file = name + ".json";
    write_file(out_file, pact::system_to_json(sys).dump(2));
    emit(Json{{"command", "builtin"}, {"name", name}, {"written", out_file}});
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"partial actions, extensions, crossed products, and conjugacy"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.add_flag("--json", g_json, "single-line machine-readable output");
    unsigned long long seed = 0;
    app.add_option("--seed", seed, "seed reserved for randomized subcommands");

    std::string file, file_b, poly_file, tau_out, out_file, kind, name;
    std::vector<std::string> params;
    int widen = 0, levels = 4;
    long kmax = 3;
    bool verify = false;

    auto* validate = app.add_subcommand("validate", "check the partial-action axioms");
    validate->add_option("system", file)->required();

    auto* properties = app.add_subcommand("properties", "freeness and ordering properties");
    properties->add_option("system", file)->required();

    auto* extend = app.add_subcommand("extend", "extend a cone action to a group action");
    extend->add_option("system", file)->required();
    extend->add_option("--widen", widen, "extra support window padding");

    auto* groupoid = app.add_subcommand("groupoid", "transformation-groupoid dump");
    groupoid->add_option("system", file)->required();
    groupoid->add_option("--widen", widen);

    auto* norms = app.add_subcommand("norms", "L-, I-, and C*-norms of a polynomial");
    norms->add_option("--system", file)->required();
    norms->add_option("--poly", poly_file)->required();
    norms->add_option("--widen", widen);

    auto* phi = app.add_subcommand("phi", "groupoid image and round trip");
    phi->add_option("--system", file)->required();
    phi->add_option("--poly", poly_file)->required();
    phi->add_option("--widen", widen);

    auto* analytic = app.add_subcommand("analytic", "analytic membership and realization");
    analytic->add_option("--system", file)->required();
    analytic->add_option("--poly", poly_file)->required();

    auto* tower = app.add_subcommand("tower", "build and verify an embedding tower");
    tower->add_option("kind", kind)->required();
    tower->add_option("--levels", levels);
    tower->add_flag("--verify", verify);

    auto* conjugacy = app.add_subcommand("conjugacy", "decide conjugacy of Z+ actions");
    conjugacy->add_option("system_a", file)->required();
    conjugacy->add_option("system_b", file_b)->required();
    conjugacy->add_option("--tau-out", tau_out);

    auto* invariants = app.add_subcommand("invariants", "ideal-chain invariants");
    invariants->add_option("system", file)->required();
    invariants->add_option("--kmax", kmax);

    auto* builtin = app.add_subcommand("builtin", "write a named example system");
    builtin->add_option("name", name)->required();
    builtin->add_option("params", params);
    builtin->add_option("--out", out_file);

    for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitMalformed;
    }

    try {
        if (*validate) return cmd_validate(file);
        if (*properties) return cmd_properties(file);
        if (*extend) return cmd_extend(file, widen);
        if (*groupoid) return cmd_groupoid(file, widen);
        if (*norms) return cmd_norms(file, poly_file, widen);
        if (*phi) return cmd_phi(file, poly_file, widen);
        if (*analytic) return cmd_analytic(file, poly_file);
        if (*tower) return cmd_tower(kind, levels, verify);
        if (*conjugacy) return cmd_conjugacy(file, file_b, tau_out);
        if (*invariants) return cmd_invariants(file, kmax);
        if (*builtin) return cmd_builtin(name, params, out_file);
    } catch (const pact::malformed_input& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMalformed;
    } catch (const pact::unsupported_backend_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUnsupported;
    } catch (const pact::freeness_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUnsupported;
    } catch (const pact::requires_extension_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUnsupported;
    } catch (const pact::pact_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMalformed;
    }
    return kExitMalformed;
}
