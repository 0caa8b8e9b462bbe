#include "vl/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace vl {

namespace {

// Floor division for possibly negative numerators (b > 0).
int floordiv(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

void check_sensor(const SensorModel& m) {
    if (m.granularity < 1)
        throw std::invalid_argument("sensor granularity must be >= 1");
    if (m.indeterminacy < 0 || m.indeterminacy >= m.granularity)
        throw std::invalid_argument(
            "sensor indeterminacy must satisfy 0 <= delta < g");
}

// Minimal |r - r'| over reading pairs drawn from two intervals.
int interval_gap(const ReadingInterval& a, const ReadingInterval& b) {
    return std::max({0, b.lo - a.hi, a.lo - b.hi});
}

// Maximal |r - r'| over reading pairs drawn from two intervals.
int interval_spread(const ReadingInterval& a, const ReadingInterval& b) {
    return std::max(b.hi - a.lo, a.hi - b.lo);
}

std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

}  // namespace

ReadingInterval sensor_readings(const SensorModel& model, int grains) {
    check_sensor(model);
    if (grains < 0)
        throw std::invalid_argument("grain count must be nonnegative");
    const int g = model.granularity;
    if (model.mode == SensorMode::Midpoint) {
        const int r = floordiv(grains, g);
        return {r, r};
    }
    int lo = floordiv(grains - model.indeterminacy, g);
    int hi = floordiv(grains + model.indeterminacy, g);
    if (model.clamp_at_zero) lo = std::max(0, lo);
    return {lo, hi};
}

bool report_equivalent(int r1, int r2) { return std::abs(r1 - r2) <= 1; }

std::optional<std::array<int, 3>> intransitivity_witness(
    const SensorModel& model, int cap, int report_slack) {
    check_sensor(model);
    if (model.mode != SensorMode::Midpoint)
        throw std::invalid_argument(
            "intransitivity_witness requires midpoint mode; use the "
            "possibilistic variant instead");
    const int g = model.granularity;
    auto reading = [g](int n) { return floordiv(n, g); };
    auto equivalent = [&](int a, int b) {
        return std::abs(reading(a) - reading(b)) <= report_slack;
    };
    // Side assertion: reading equality is transitive (it is equality).
    for (int a = 0; a <= cap; ++a)
        for (int b = 0; b <= cap; ++b)
            for (int c = 0; c <= cap; ++c)
                if (reading(a) == reading(b) && reading(b) == reading(c) &&
                    reading(a) != reading(c))
                    throw std::logic_error("reading equality not transitive");
    for (int a = 0; a <= cap; ++a)
        for (int b = 0; b <= cap; ++b) {
            if (!equivalent(a, b)) continue;
            for (int c = 0; c <= cap; ++c)
                if (equivalent(b, c) && !equivalent(a, c))
                    return std::array<int, 3>{a, b, c};
        }
    return std::nullopt;
}

PossibilisticTriples intransitivity_witness_possibilistic(
    const SensorModel& model, int cap) {
    check_sensor(model);
    std::vector<ReadingInterval> r(cap + 1);
    for (int n = 0; n <= cap; ++n) r[n] = sensor_readings(model, n);
    auto may_eq = [&r](int a, int b) { return interval_gap(r[a], r[b]) <= 1; };
    auto must_eq = [&r](int a, int b) {
        return interval_spread(r[a], r[b]) <= 1;
    };
    auto search = [cap](auto&& eq) -> std::optional<std::array<int, 3>> {
        for (int a = 0; a <= cap; ++a)
            for (int b = 0; b <= cap; ++b) {
                if (!eq(a, b)) continue;
                for (int c = 0; c <= cap; ++c)
                    if (eq(b, c) && !eq(a, c)) return std::array<int, 3>{a, b, c};
            }
        return std::nullopt;
    };
    return {search(may_eq), search(must_eq)};
}

int inequivalence_threshold(const SensorModel& model, int cap) {
    check_sensor(model);
    std::vector<ReadingInterval> r(cap + 1);
    for (int n = 0; n <= cap; ++n) r[n] = sensor_readings(model, n);
    // bad(d): some pair d apart could still be reported equivalent.
    auto bad = [&](int d) {
        for (int n = 0; n + d <= cap; ++n)
            if (interval_gap(r[n], r[n + d]) <= 1) return true;
        return false;
    };
    int max_bad = 0;
    for (int d = 0; d <= cap; ++d)
        if (bad(d)) max_bad = d;
    // Stability: demand one clean period beyond the last bad gap, plus room
    // for the clamped region near zero.
    if (max_bad + 2 * model.granularity + 2 > cap)
        throw std::invalid_argument(
            "inequivalence_threshold: cap too small to establish stability");
    return max_bad + 1;
}

// ── Heap / grain-removal model ──────────────────────────────────────────

ReportPolicy threshold_policy(int min_reading) {
    return {"heap iff reading >= " + std::to_string(min_reading),
            [min_reading](int reading, int) { return reading >= min_reading; }};
}

ReportPolicy hysteresis_policy(int min_reading, int relax) {
    return {"heap iff reading >= " + std::to_string(min_reading) +
                " on the first ask, >= " + std::to_string(min_reading - relax) +
                " afterwards",
            [min_reading, relax](int reading, int asked) {
                return reading >= (asked <= 1 ? min_reading : min_reading - relax);
            }};
}

Formula SoritesModel::heap_report_step(int grains) const {
    return implies(prop(pile_prop(grains)), report(1, prop(heap_prop())));
}

SoritesModel build_sorites_structure(const SoritesConfig& config) {
    check_sensor(config.sensor);
    if (config.max_grains < 2)
        throw std::invalid_argument("sorites needs at least 2 grains");
    if (config.ask_cap < 1)
        throw std::invalid_argument("ask cap must be >= 1");
    if (!config.policy.heap)
        throw std::invalid_argument("report policy must be total");

    const int N = config.max_grains;
    std::vector<ReadingInterval> readings(N + 1);
    int max_reading = 0;
    for (int n = 0; n <= N; ++n) {
        readings[n] = sensor_readings(config.sensor, n);
        max_reading = std::max(max_reading, readings[n].hi);
    }

    // Endpoint contract: Heap at the maximal reading, not-Heap at the
    // readings of a single grain, whatever the ask count.
    for (int a = 1; a <= config.ask_cap; ++a) {
        if (!config.policy.heap(max_reading, a))
            throw std::invalid_argument(
                "policy must report Heap at the maximal reading");
        for (int r = readings[1].lo; r <= readings[1].hi; ++r)
            if (config.policy.heap(r, a))
                throw std::invalid_argument(
                    "policy must report not-Heap at one grain");
    }

    SoritesModel model;
    model.policy_description = config.policy.description;
    model.max_reading = max_reading;
    VagueStructure& m = model.structure;
    m.agents = 1;
    for (int n = 0; n <= N; ++n)
        m.objective_labels.push_back(std::to_string(n));

    // Subjective states: every (reading, asked) pair the sensor can reach.
    std::set<int> reachable;
    for (int n = 0; n <= N; ++n)
        for (int r = readings[n].lo; r <= readings[n].hi; ++r)
            reachable.insert(r);
    std::map<std::pair<int, int>, int> sindex;
    std::vector<std::string> slabels;
    for (int r : reachable)
        for (int a = 1; a <= config.ask_cap; ++a) {
            sindex[{r, a}] = static_cast<int>(slabels.size());
            slabels.push_back("r" + std::to_string(r) + "a" + std::to_string(a));
        }
    m.subjective_labels.push_back(std::move(slabels));

    for (int n = 0; n <= N; ++n)
        for (int r = readings[n].lo; r <= readings[n].hi; ++r)
            for (int a = 1; a <= config.ask_cap; ++a) {
                m.worlds.push_back(World{n, {sindex.at({r, a})}});
                model.info.push_back({n, r, a});
            }
    const int wc = m.world_count();
    m.plausible.push_back(std::vector<bool>(wc, true));  // P = W

    std::vector<bool> heap_mask(wc, false);
    for (int w = 0; w < wc; ++w)
        heap_mask[w] = config.policy.heap(model.info[w].reading,
                                          model.info[w].asked);
    m.valuation.emplace(SoritesModel::heap_prop(),
                        std::vector<std::vector<bool>>{heap_mask});
    for (int k = 0; k <= N; ++k) {
        std::vector<bool> mask(wc, false);
        for (int w = 0; w < wc; ++w) mask[w] = model.info[w].grains == k;
        m.valuation.emplace(SoritesModel::pile_prop(k),
                            std::vector<std::vector<bool>>{mask});
        m.objective_props.insert(SoritesModel::pile_prop(k));
    }

    // remove_grain: one less grain, ask counter bumped (saturating), any
    // reading the sensor allows for the smaller pile.
    model.remove_grain.assign(wc, {});
    for (int w = 0; w < wc; ++w) {
        const SoritesWorldInfo& src = model.info[w];
        if (src.grains == 0) continue;
        const int next_ask = std::min(src.asked + 1, config.ask_cap);
        for (int v = 0; v < wc; ++v) {
            const SoritesWorldInfo& dst = model.info[v];
            if (dst.grains == src.grains - 1 && dst.asked == next_ask)
                model.remove_grain[w].push_back(v);
        }
    }

    if (!validate(m).empty())
        throw std::logic_error("sorites structure failed validation");
    return model;
}

std::vector<std::pair<int, int>> induction_failure_points(
    const SoritesModel& model) {
    const VagueStructure& m = model.structure;
    const Formula reports_heap = report(1, prop(SoritesModel::heap_prop()));
    std::vector<char> holds(m.world_count());
    for (int w = 0; w < m.world_count(); ++w)
        holds[w] = eval(m, w, 1, reports_heap);
    std::vector<std::pair<int, int>> out;
    for (int w = 0; w < m.world_count(); ++w) {
        if (!holds[w]) continue;
        for (int v : model.remove_grain[w])
            if (!holds[v]) out.emplace_back(w, v);
    }
    return out;
}

// ── Height / clarity model ──────────────────────────────────────────────

namespace {

long long grid_index(double x, double base, double step, const char* what) {
    const double raw = (x - base) / step;
    const long long idx = std::llround(raw);
    if (std::abs(raw - static_cast<double>(idx)) > 1e-9)
        throw std::invalid_argument(std::string(what) +
                                    " does not lie on the grid");
    return idx;
}

}  // namespace

WilliamsonModel build_williamson_model(const WilliamsonConfig& config) {
    if (config.step <= 0)
        throw std::invalid_argument("grid step must be positive");
    if (config.alpha < 0)
        throw std::invalid_argument("alpha must be nonnegative");
    if (config.hi < config.lo)
        throw std::invalid_argument("empty height range");
    const double half = config.alpha / 2;
    const long long half_steps =
        grid_index(half, 0.0, config.step, "alpha/2");
    const long long t_steps =
        grid_index(config.hi, config.lo, config.step, "hi");
    grid_index(config.threshold, config.lo, config.step, "threshold");

    const long long est_lo = config.clip_estimates ? 0 : -half_steps;
    const long long est_hi =
        config.clip_estimates ? t_steps : t_steps + half_steps;

    WilliamsonModel model;
    model.config = config;
    VagueStructure& m = model.structure;
    m.agents = 1;
    for (long long ti = 0; ti <= t_steps; ++ti)
        m.objective_labels.push_back(
            "t" + fmt_double(config.lo + static_cast<double>(ti) * config.step));
    std::vector<std::string> slabels;
    for (long long ei = est_lo; ei <= est_hi; ++ei)
        slabels.push_back(
            "e" + fmt_double(config.lo + static_cast<double>(ei) * config.step));
    m.subjective_labels.push_back(std::move(slabels));

    for (long long ti = 0; ti <= t_steps; ++ti) {
        const long long from = std::max(est_lo, ti - half_steps);
        const long long to = std::min(est_hi, ti + half_steps);
        for (long long ei = from; ei <= to; ++ei) {
            m.worlds.push_back(
                World{static_cast<int>(ti), {static_cast<int>(ei - est_lo)}});
            model.coords.emplace_back(
                config.lo + static_cast<double>(ti) * config.step,
                config.lo + static_cast<double>(ei) * config.step);
        }
    }
    const int wc = m.world_count();
    m.plausible.push_back(std::vector<bool>(wc, true));  // all plausible

    std::vector<bool> tall(wc, false);
    for (int w = 0; w < wc; ++w)
        tall[w] = model.coords[w].first >= config.threshold - 1e-9;
    m.valuation.emplace(WilliamsonModel::tall_prop(),
                        std::vector<std::vector<bool>>{tall});
    m.objective_props.insert(WilliamsonModel::tall_prop());

    if (!validate(m).empty())
        throw std::logic_error("height structure failed validation");
    return model;
}

double WilliamsonModel::metric(int w, int v) const {
    structure.check_world(w);
    structure.check_world(v);
    return std::abs(coords[w].first - coords[v].first);
}

bool WilliamsonModel::interior(int w) const {
    structure.check_world(w);
    const double t = coords[w].first;
    return t >= config.lo + config.alpha - 1e-9 &&
           t <= config.hi - config.alpha + 1e-9;
}

bool c_eval(const WilliamsonModel& model, int world, const Formula& f,
            double radius) {
    model.structure.check_world(world);
    if (!agent_independent_in_model(model.structure, f))
        throw EvalError("clarity operator requires an agent-independent formula");
    for (int v = 0; v < model.structure.world_count(); ++v)
        if (model.metric(world, v) <= radius + 1e-9 &&
            !eval(model.structure, v, 1, f))
            return false;
    return true;
}

CDrEquivalenceReport check_c_dr_equivalence(const WilliamsonModel& model,
                                            const Formula& f) {
    if (!objective_in_model(model.structure, f))
        throw EvalError("clarity/definitely comparison requires an objective "
                        "formula");
    const Formula dr = definitely(1, report(1, f));
    CDrEquivalenceReport report;
    for (int w = 0; w < model.structure.world_count(); ++w) {
        const bool interior = model.interior(w);
        if (!interior) ++report.boundary_worlds;
        const bool c = c_eval(model, w, f, model.config.alpha);
        const bool d = eval(model.structure, w, 1, dr);
        if (c != d)
            (interior ? report.interior_mismatches : report.boundary_mismatches)
                .push_back(w);
    }
    return report;
}

MetricReport metric_report(const WilliamsonModel& model) {
    MetricReport out;
    const int wc = model.structure.world_count();
    for (int w = 0; w < wc; ++w) {
        if (model.metric(w, w) != 0.0) out.zero_on_diagonal = false;
        for (int v = 0; v < wc; ++v) {
            if (model.metric(w, v) != model.metric(v, w)) out.symmetric = false;
            if (w != v && model.metric(w, v) == 0.0 && !out.degenerate_pair)
                out.degenerate_pair = std::make_pair(w, v);
        }
    }
    for (int a = 0; a < wc && out.triangle_ok; ++a)
        for (int b = 0; b < wc && out.triangle_ok; ++b)
            for (int c = 0; c < wc; ++c)
                if (model.metric(a, c) >
                    model.metric(a, b) + model.metric(b, c) + 1e-9) {
                    out.triangle_ok = false;
                    break;
                }
    return out;
}

// ── Scenario reports ────────────────────────────────────────────────────

nlohmann::json sensor_report(const SensorModel& model, int table_rows,
                             int cap) {
    check_sensor(model);
    nlohmann::json j;
    j["granularity"] = model.granularity;
    j["indeterminacy"] = model.indeterminacy;
    j["mode"] =
        model.mode == SensorMode::Midpoint ? "midpoint" : "possibilistic";

    nlohmann::json table = nlohmann::json::array();
    for (int n = 0; n < table_rows; ++n) {
        auto r = sensor_readings(model, n);
        table.push_back({{"grains", n}, {"lo", r.lo}, {"hi", r.hi}});
    }
    j["readingsTable"] = std::move(table);

    SensorModel midpoint = model;
    midpoint.mode = SensorMode::Midpoint;
    if (auto triple = intransitivity_witness(midpoint, cap))
        j["intransitivityTriple"] = {(*triple)[0], (*triple)[1], (*triple)[2]};
    else
        j["intransitivityTriple"] = nullptr;
    if (model.mode == SensorMode::Possibilistic) {
        auto triples = intransitivity_witness_possibilistic(model, cap);
        j["possibilisticTriples"] = {
            {"may", triples.may
                        ? nlohmann::json{(*triples.may)[0], (*triples.may)[1],
                                         (*triples.may)[2]}
                        : nlohmann::json()},
            {"must", triples.must
                         ? nlohmann::json{(*triples.must)[0], (*triples.must)[1],
                                          (*triples.must)[2]}
                         : nlohmann::json()}};
    }
    j["inequivalenceThreshold"] = inequivalence_threshold(model, cap);

    bool stable = true;
    for (int n = 1; n <= cap && stable; ++n)
        stable = interval_spread(sensor_readings(model, n),
                                 sensor_readings(model, n - 1)) <= 1;
    j["singleGrainStable"] = stable;
    j["readingEqualityTransitive"] = true;  // asserted by the witness search
    return j;
}

nlohmann::json sorites_report(const SoritesConfig& config) {
    SoritesModel model = build_sorites_structure(config);
    const VagueStructure& m = model.structure;
    const int N = config.max_grains;

    nlohmann::json j;
    j["thresholdPolicy"] = model.policy_description;
    j["grains"] = N;
    j["worlds"] = m.world_count();

    auto pairs = induction_failure_points(model);
    nlohmann::json fp = nlohmann::json::array();
    for (auto [w, v] : pairs)
        fp.push_back({{"from",
                       {{"grains", model.info[w].grains},
                        {"reading", model.info[w].reading},
                        {"asked", model.info[w].asked}}},
                      {"to",
                       {{"grains", model.info[v].grains},
                        {"reading", model.info[v].reading},
                        {"asked", model.info[v].asked}}}});
    j["failurePairs"] = std::move(fp);

    bool top_ok = valid_in_model(m, model.heap_report_step(N));
    bool bottom_ok = true;
    bool vacuous_ok = false;
    const Formula reports_heap = report(1, prop(SoritesModel::heap_prop()));
    for (int w = 0; w < m.world_count(); ++w) {
        if (model.info[w].grains != 1) continue;
        if (eval(m, w, 1, reports_heap)) bottom_ok = false;
        if (eval(m, w, 1, model.heap_report_step(2)) &&
            !eval(m, w, 1, model.heap_report_step(1)))
            vacuous_ok = true;
    }
    j["extremesOk"] = top_ok && bottom_ok;
    j["vacuousInstanceOk"] = vacuous_ok;

    Formula conjunction;
    for (int k = 2; k <= N; ++k) {
        Formula step = implies(model.heap_report_step(k),
                               model.heap_report_step(k - 1));
        conjunction = conjunction.valid() ? (conjunction && step) : step;
    }
    j["inductiveConjunctionValid"] = valid_in_model(m, conjunction);
    return j;
}

nlohmann::json williamson_report(const WilliamsonConfig& config) {
    WilliamsonModel model = build_williamson_model(config);
    const VagueStructure& m = model.structure;
    const Formula tall = prop(WilliamsonModel::tall_prop());
    const Formula dr = definitely(1, report(1, tall));

    nlohmann::json j;
    j["threshold"] = config.threshold;
    j["alpha"] = config.alpha;
    j["step"] = config.step;
    j["range"] = {config.lo, config.hi};
    j["worlds"] = m.world_count();
    j["truncatedGrid"] = config.clip_estimates;

    auto rep = check_c_dr_equivalence(model, tall);
    j["equivalenceOk"] = rep.ok();
    nlohmann::json boundary = nlohmann::json::array();
    for (int w : rep.boundary_mismatches)
        boundary.push_back({model.coords[w].first, model.coords[w].second});
    j["boundaryExceptions"] = std::move(boundary);

    // Smallest true height at which the agent definitely reports tallness,
    // and whether it matches threshold + alpha exactly on the grid.
    double dr_min = 0;
    bool any = false, exact = true;
    for (int w = 0; w < m.world_count(); ++w) {
        const bool holds = eval(m, w, 1, dr);
        const bool expected =
            model.coords[w].first >= config.threshold + config.alpha - 1e-9;
        if (holds != expected) exact = false;
        if (holds && (!any || model.coords[w].first < dr_min)) {
            dr_min = model.coords[w].first;
            any = true;
        }
    }
    j["drThreshold"] = any ? nlohmann::json(dr_min) : nlohmann::json();
    j["drThresholdExact"] = exact;

    auto metric = metric_report(model);
    j["metricDegenerate"] = metric.degenerate_pair.has_value();
    return j;
}

}  // namespace vl
