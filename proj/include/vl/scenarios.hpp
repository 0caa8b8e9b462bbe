// ============================================================================
// vl/scenarios.hpp — Executable scenario models
// ============================================================================
//
// Three concrete analyses built on top of the structure/checker modules:
//
//   * A coarse sensor reading grain counts at some granularity g with
//     bounded indeterminacy, plus the report rule "readings within one of
//     each other count as equivalent".  Reading equality is an equivalence
//     relation, yet reported equivalence has intransitive triples; the
//     module also computes the minimal grain gap that guarantees an
//     inequivalent report.
//
//   * A single-agent heap model whose objective states are grain counts
//     0..N and whose subjective states are (sensor reading, times asked)
//     pairs, together with the remove-one-grain transition relation.  The
//     inductive step of the heap argument fails at concrete transition
//     points, which are computed exactly.
//
//   * A height model with worlds (t, t') — true height and estimate,
//     |t - t'| <= alpha/2 — a metric d((t,t'),(u,u')) = |t - u| and the
//     clarity operator C (truth throughout the alpha-ball).  For objective
//     formulas C agrees with the composition D1 R1; the check is exhaustive
//     with boundary worlds flagged separately.
//
// ============================================================================

#ifndef VL_SCENARIOS_HPP
#define VL_SCENARIOS_HPP

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "vl/checker.hpp"
#include "vl/formula.hpp"
#include "vl/structure.hpp"

namespace vl {

// ── Sensor model ────────────────────────────────────────────────────────

enum class SensorMode { Possibilistic, Midpoint };

struct SensorModel {
    int granularity = 10;   // grains per sensor step (g >= 1)
    int indeterminacy = 4;  // +/- grains of slack (0 <= delta < g)
    bool clamp_at_zero = true;
    SensorMode mode = SensorMode::Possibilistic;
};

struct ReadingInterval {
    int lo = 0;
    int hi = 0;
    bool contains(int r) const { return lo <= r && r <= hi; }
    std::vector<int> values() const {
        std::vector<int> v;
        for (int r = lo; r <= hi; ++r) v.push_back(r);
        return v;
    }
    friend bool operator==(const ReadingInterval&,
                           const ReadingInterval&) = default;
};

// Possibilistic: floor((n - delta)/g) .. floor((n + delta)/g), clamped at 0
// when configured.  Midpoint: the single reading floor(n/g).
ReadingInterval sensor_readings(const SensorModel& model, int grains);

// Readings within one step are reported as equivalent.
bool report_equivalent(int r1, int r2);

// Smallest lexicographic (a, b, c) with a~b and b~c reported equivalent but
// not a~c, under the midpoint reading; the underlying reading-equality
// relation is asserted transitive as a side check.  report_slack overrides
// the "within one" rule (slack 0 turns reports into reading equality).
std::optional<std::array<int, 3>> intransitivity_witness(
    const SensorModel& model, int cap = 200, int report_slack = 1);

struct PossibilisticTriples {
    std::optional<std::array<int, 3>> may;   // under possibly-equivalent
    std::optional<std::array<int, 3>> must;  // under always-equivalent
};
PossibilisticTriples intransitivity_witness_possibilistic(
    const SensorModel& model, int cap = 200);

// Minimal k such that grain counts differing by at least k are always
// reported inequivalent (every reading pair at least two apart).  Brute
// force over 0..cap with a one-period stability margin; throws
// std::invalid_argument when cap is too small to establish stability.
int inequivalence_threshold(const SensorModel& model, int cap = 200);

// ── Heap / grain-removal model ──────────────────────────────────────────

struct ReportPolicy {
    std::string description;
    std::function<bool(int reading, int asked)> heap;  // total
};

// Heap iff reading >= min_reading, independent of ask count.
ReportPolicy threshold_policy(int min_reading);
// First ask uses min_reading; once engaged the agent relaxes the bar by
// `relax` readings on later asks and will not flip on a one-step drop.
ReportPolicy hysteresis_policy(int min_reading, int relax = 1);

struct SoritesConfig {
    int max_grains = 60;  // N
    int ask_cap = 3;      // subjective ask counter saturates here
    SensorModel sensor{10, 4, true, SensorMode::Midpoint};
    ReportPolicy policy = threshold_policy(3);
};

struct SoritesWorldInfo {
    int grains = 0;
    int reading = 0;
    int asked = 1;
};

struct SoritesModel {
    VagueStructure structure;  // single agent, P = W
    std::vector<SoritesWorldInfo> info;             // per world index
    std::vector<std::vector<int>> remove_grain;     // per world index
    std::string policy_description;
    int max_reading = 0;

    static std::string heap_prop() { return "Heap"; }
    static std::string pile_prop(int grains) {
        return "Pile" + std::to_string(grains);
    }
    // S(k): Pile(k) -> R1 Heap.
    Formula heap_report_step(int grains) const;
};

// Throws std::invalid_argument for configs violating the endpoint contract
// (policy must report Heap at the maximal reading and not-Heap at the
// readings of a single grain).
SoritesModel build_sorites_structure(const SoritesConfig& config);

// All (w, w') with w' reachable by removing one grain where R1 Heap holds
// at w but fails at w'.
std::vector<std::pair<int, int>> induction_failure_points(
    const SoritesModel& model);

// ── Height / clarity model ──────────────────────────────────────────────

struct WilliamsonConfig {
    double threshold = 170.0;  // t*
    double alpha = 2.0;
    double step = 0.5;  // must divide alpha/2 exactly
    double lo = 160.0;
    double hi = 180.0;
    // When true, estimates are clipped to [lo, hi] instead of extending by
    // alpha/2, truncating the estimate sets of boundary worlds.
    bool clip_estimates = false;
};

struct WilliamsonModel {
    VagueStructure structure;  // single agent, P = W
    WilliamsonConfig config;
    std::vector<std::pair<double, double>> coords;  // (t, t') per world

    static std::string tall_prop() { return "Tall"; }

    double metric(int w, int v) const;  // |t_w - t_v|
    // Worlds whose alpha-ball lies inside the height range.
    bool interior(int w) const;
};

WilliamsonModel build_williamson_model(const WilliamsonConfig& config);

// (M,w) |= C f under radius: f holds at every world within metric distance
// radius of w.  Requires f agent-independent in the model (EvalError).
bool c_eval(const WilliamsonModel& model, int world, const Formula& f,
            double radius);

struct CDrEquivalenceReport {
    std::vector<int> interior_mismatches;
    std::vector<int> boundary_mismatches;
    int boundary_worlds = 0;
    bool ok() const { return interior_mismatches.empty(); }
};

// Exhaustively compares C f with D1 R1 f at every world (f must be
// objective in the model).  Boundary worlds are reported separately.
CDrEquivalenceReport check_c_dr_equivalence(const WilliamsonModel& model,
                                            const Formula& f);

struct MetricReport {
    bool symmetric = true;
    bool triangle_ok = true;
    bool zero_on_diagonal = true;
    // d(w,v) = 0 for distinct worlds sharing t: present by construction.
    std::optional<std::pair<int, int>> degenerate_pair;
};
MetricReport metric_report(const WilliamsonModel& model);

// ── Scenario reports (CLI surface) ──────────────────────────────────────

nlohmann::json sensor_report(const SensorModel& model, int table_rows = 21,
                             int cap = 200);
nlohmann::json sorites_report(const SoritesConfig& config);
nlohmann::json williamson_report(const WilliamsonConfig& config);

}  // namespace vl

#endif  // VL_SCENARIOS_HPP
