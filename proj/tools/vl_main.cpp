// ============================================================================
// vl — command line front end
// ============================================================================
//
// Every subcommand prints a single JSON document on stdout; diagnostics go
// to stderr.  Exit codes: 0 success/valid/ok, 1 usage or input error,
// 2 falsified/countermodel-found/validation-failed, 3 unknown verdict.
//
// ============================================================================

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "vl/axioms.hpp"
#include "vl/checker.hpp"
#include "vl/decision.hpp"
#include "vl/parser.hpp"
#include "vl/scenarios.hpp"
#include "vl/structure.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kFalsified = 2;
constexpr int kUnknown = 3;

bool g_quiet = false;

void emit(const nlohmann::json& j) {
    if (!g_quiet) std::cout << j.dump(2) << "\n";
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

vl::Formula formula_arg(const std::string& inline_text,
                        const std::string& file) {
    if (!inline_text.empty() && !file.empty())
        throw std::runtime_error("give the formula inline or via --file, not both");
    if (!inline_text.empty()) return vl::parse(inline_text);
    if (!file.empty()) return vl::parse(slurp(file));
    throw std::runtime_error("missing formula (inline argument or --file)");
}

nlohmann::json parse_json_file(const std::string& path) {
    try {
        return nlohmann::json::parse(slurp(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error("malformed JSON in '" + path +
                                 "': " + e.what());
    }
}

// Loads and validates; prints violations and exits 2 when invalid.
vl::VagueStructure load_model(const std::string& path) {
    auto m = vl::structure_from_json(parse_json_file(path));
    auto violations = vl::validate(m);
    if (!violations.empty()) {
        nlohmann::json j;
        j["model"] = path;
        j["violations"] = nlohmann::json::array();
        for (const auto& v : violations)
            j["violations"].push_back({{"rule", v.rule}, {"message", v.message}});
        emit(j);
        std::exit(kFalsified);
    }
    return m;
}

int verdict_exit(const vl::Verdict& v, bool satisfiability_query) {
    switch (v.kind) {
        case vl::Verdict::Kind::Valid: return kOk;
        case vl::Verdict::Kind::Satisfiable:
            return satisfiability_query ? kOk : kFalsified;
        case vl::Verdict::Kind::Unsatisfiable: return kFalsified;
        case vl::Verdict::Kind::Unknown: return kUnknown;
    }
    return kUnknown;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"vaguelogic: parse, model-check, prove and decide formulas "
                 "of a two-family modal logic over vagueness structures"};
    app.require_subcommand(1);
    bool stable = false;
    app.add_flag("--quiet", g_quiet, "suppress stdout (exit code only)");
    app.add_flag("--stable", stable,
                 "bit-reproducible output (elapsed_ms pinned to 0)");

    // parse
    std::string p_formula, p_file;
    auto* cmd_parse =
        app.add_subcommand("parse", "parse a formula and report metadata");
    cmd_parse->add_option("formula", p_formula, "formula text");
    cmd_parse->add_option("--file", p_file, "read the formula from a file");

    // check
    std::string c_formula, c_file, c_model;
    int c_world = 0, c_agent = 1;
    auto* cmd_check =
        app.add_subcommand("check", "evaluate a formula at (world, agent)");
    cmd_check->add_option("formula", c_formula);
    cmd_check->add_option("--file", c_file);
    cmd_check->add_option("--model", c_model)->required();
    cmd_check->add_option("--world", c_world)->required();
    cmd_check->add_option("--agent", c_agent)->required();

    // validmodel
    std::string v_formula, v_file, v_model;
    auto* cmd_validmodel = app.add_subcommand(
        "validmodel", "check truth at every (world, agent) of a model");
    cmd_validmodel->add_option("formula", v_formula);
    cmd_validmodel->add_option("--file", v_file);
    cmd_validmodel->add_option("--model", v_model)->required();

    // degree
    std::string d_formula, d_file, d_model;
    int d_world = 0;
    auto* cmd_degree =
        app.add_subcommand("degree", "fraction of agents satisfying a formula");
    cmd_degree->add_option("formula", d_formula);
    cmd_degree->add_option("--file", d_file);
    cmd_degree->add_option("--model", d_model)->required();
    cmd_degree->add_option("--world", d_world)->required();

    // classify
    std::string k_formula, k_file, k_bounds, k_query = "valid";
    int k_agents = 1;
    std::uint64_t k_budget = vl::kDefaultTableauBudget;
    std::uint64_t k_candidates = vl::SearchBounds{}.max_candidates;
    std::vector<std::string> k_objective;
    bool k_plausible_all = false;
    auto* cmd_classify = app.add_subcommand(
        "classify", "decide validity or satisfiability of a formula");
    cmd_classify->add_option("formula", k_formula);
    cmd_classify->add_option("--file", k_file);
    cmd_classify->add_option("--agents", k_agents, "agent count n")->required();
    cmd_classify->add_option("--bounds", k_bounds,
                             "search bounds as |O|,|S_i|,|W| (default 3,3,6)");
    cmd_classify->add_option("--budget", k_budget, "tableau node budget");
    cmd_classify->add_option("--max-candidates", k_candidates,
                             "search candidate budget");
    cmd_classify->add_option("--query", k_query, "valid (default) or sat");
    cmd_classify->add_option("--objective", k_objective,
                             "treat a proposition as objective (repeatable)");
    cmd_classify->add_flag("--plausible-all", k_plausible_all,
                           "restrict the search to structures with P_i = W");

    // prove
    std::string pr_proof;
    auto* cmd_prove = app.add_subcommand("prove", "check a Hilbert-style proof");
    cmd_prove->add_option("--proof", pr_proof)->required();

    // fuzz
    int f_trials = 1000, f_max_agents = 3, f_max_o = 3, f_max_s = 3;
    std::uint64_t f_seed = 1;
    auto* cmd_fuzz =
        app.add_subcommand("fuzz", "axiom soundness fuzzing over random models");
    cmd_fuzz->add_option("--trials", f_trials)->required();
    cmd_fuzz->add_option("--seed", f_seed)->required();
    cmd_fuzz->add_option("--max-agents", f_max_agents);
    cmd_fuzz->add_option("--max-objective", f_max_o);
    cmd_fuzz->add_option("--max-subjective", f_max_s);

    // scenario
    auto* cmd_scenario = app.add_subcommand("scenario", "built-in analyses");
    cmd_scenario->require_subcommand(1);

    int sg = 10, sdelta = 4, scap = 200;
    bool s_noclamp = false;
    std::string s_mode = "possibilistic";
    auto* cmd_sensor = cmd_scenario->add_subcommand(
        "sensor", "coarse-sensor reading and report-equivalence analysis");
    cmd_sensor->add_option("--granularity", sg);
    cmd_sensor->add_option("--indeterminacy", sdelta);
    cmd_sensor->add_option("--cap", scap);
    cmd_sensor->add_option("--mode", s_mode, "possibilistic or midpoint");
    cmd_sensor->add_flag("--no-clamp", s_noclamp);

    int so_grains = 60, so_ask = 3, so_threshold = 3, so_relax = 1;
    std::string so_policy = "threshold", so_sensor = "midpoint";
    auto* cmd_sorites = cmd_scenario->add_subcommand(
        "sorites", "heap reports under grain removal");
    cmd_sorites->add_option("--grains", so_grains);
    cmd_sorites->add_option("--ask-cap", so_ask);
    cmd_sorites->add_option("--policy", so_policy, "threshold or hysteresis");
    cmd_sorites->add_option("--threshold", so_threshold, "minimal Heap reading");
    cmd_sorites->add_option("--relax", so_relax, "hysteresis relaxation");
    cmd_sorites->add_option("--sensor", so_sensor, "midpoint or possibilistic");

    double w_threshold = 170, w_alpha = 2, w_step = 0.5, w_lo = 160, w_hi = 180;
    bool w_clip = false;
    auto* cmd_williamson = cmd_scenario->add_subcommand(
        "williamson", "height estimates and the clarity operator");
    cmd_williamson->add_option("--threshold", w_threshold);
    cmd_williamson->add_option("--alpha", w_alpha);
    cmd_williamson->add_option("--step", w_step);
    cmd_williamson->add_option("--lo", w_lo);
    cmd_williamson->add_option("--hi", w_hi);
    cmd_williamson->add_flag("--clip-estimates", w_clip);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cmd_parse) {
            vl::Formula f = formula_arg(p_formula, p_file);
            emit({{"formula", vl::render(f)},
                  {"depth", vl::modal_depth(f)},
                  {"agents", vl::max_agent(f)},
                  {"necAgentIndependent", vl::is_nec_agent_independent(f)}});
            return kOk;
        }

        if (*cmd_check) {
            auto m = load_model(c_model);
            vl::Formula f = formula_arg(c_formula, c_file);
            const bool value = vl::eval(m, c_world, c_agent, f);
            emit({{"value", value},
                  {"world", c_world},
                  {"agent", c_agent}});
            return value ? kOk : kFalsified;
        }

        if (*cmd_validmodel) {
            auto m = load_model(v_model);
            vl::Formula f = formula_arg(v_formula, v_file);
            auto cx = vl::counterexample_in_model(m, f);
            if (cx) {
                emit({{"valid", false},
                      {"world", cx->world},
                      {"agent", cx->agent}});
                return kFalsified;
            }
            emit({{"valid", true}});
            return kOk;
        }

        if (*cmd_degree) {
            auto m = load_model(d_model);
            vl::Formula f = formula_arg(d_formula, d_file);
            auto d = vl::degree(m, d_world, f);
            emit({{"degree", d.str()},
                  {"satisfied", d.satisfied},
                  {"agents", d.agents}});
            return kOk;
        }

        if (*cmd_classify) {
            vl::Formula f = formula_arg(k_formula, k_file);
            vl::SearchBounds bounds;
            bounds.agents = k_agents;
            bounds.max_candidates = k_candidates;
            if (!k_bounds.empty()) {
                int o = 0, s = 0, w = 0;
                if (std::sscanf(k_bounds.c_str(), "%d,%d,%d", &o, &s, &w) != 3)
                    throw std::runtime_error("--bounds expects |O|,|S_i|,|W|");
                bounds.max_objective = o;
                bounds.max_subjective = s;
                bounds.max_worlds = w;
            }
            vl::SearchOptions options;
            options.objective_props.insert(k_objective.begin(), k_objective.end());
            options.plausible_all = k_plausible_all;
            const bool sat_query = k_query == "sat";
            if (!sat_query && k_query != "valid")
                throw std::runtime_error("--query must be 'valid' or 'sat'");
            vl::Verdict v = sat_query
                                ? vl::classify_satisfiable(f, bounds, k_budget,
                                                           options)
                                : vl::classify(f, bounds, k_budget, options);
            emit(vl::verdict_to_json(v, !stable));
            return verdict_exit(v, sat_query);
        }

        if (*cmd_prove) {
            auto proof = vl::proof_from_json(parse_json_file(pr_proof));
            auto result = vl::check_proof(proof);
            if (result.ok) {
                emit({{"ok", true}, {"lines", proof.lines.size()}});
                return kOk;
            }
            emit({{"ok", false}, {"line", result.line},
                  {"reason", result.reason}});
            return kFalsified;
        }

        if (*cmd_fuzz) {
            vl::FuzzParams params;
            params.trials = f_trials;
            params.seed = f_seed;
            params.max_agents = f_max_agents;
            params.structure.max_objective = f_max_o;
            params.structure.max_subjective = f_max_s;
            auto report = vl::soundness_fuzz(params);
            emit(vl::fuzz_report_to_json(report));
            return report.ok() ? kOk : kFalsified;
        }

        if (*cmd_sensor) {
            vl::SensorModel model;
            model.granularity = sg;
            model.indeterminacy = sdelta;
            model.clamp_at_zero = !s_noclamp;
            if (s_mode == "midpoint")
                model.mode = vl::SensorMode::Midpoint;
            else if (s_mode != "possibilistic")
                throw std::runtime_error("--mode must be possibilistic or midpoint");
            auto j = vl::sensor_report(model, 21, scap);
            emit(j);
            return j["singleGrainStable"] == true ? kOk : kFalsified;
        }

        if (*cmd_sorites) {
            vl::SoritesConfig config;
            config.max_grains = so_grains;
            config.ask_cap = so_ask;
            if (so_policy == "threshold")
                config.policy = vl::threshold_policy(so_threshold);
            else if (so_policy == "hysteresis")
                config.policy = vl::hysteresis_policy(so_threshold, so_relax);
            else
                throw std::runtime_error("--policy must be threshold or hysteresis");
            config.sensor.mode = so_sensor == "possibilistic"
                                     ? vl::SensorMode::Possibilistic
                                     : vl::SensorMode::Midpoint;
            auto j = vl::sorites_report(config);
            emit(j);
            const bool ok = j["extremesOk"] == true &&
                            j["vacuousInstanceOk"] == true &&
                            j["inductiveConjunctionValid"] == false &&
                            !j["failurePairs"].empty();
            return ok ? kOk : kFalsified;
        }

        if (*cmd_williamson) {
            vl::WilliamsonConfig config;
            config.threshold = w_threshold;
            config.alpha = w_alpha;
            config.step = w_step;
            config.lo = w_lo;
            config.hi = w_hi;
            config.clip_estimates = w_clip;
            auto j = vl::williamson_report(config);
            emit(j);
            const bool ok =
                j["equivalenceOk"] == true && j["drThresholdExact"] == true;
            return ok ? kOk : kFalsified;
        }
    } catch (const vl::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
