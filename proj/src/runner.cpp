#include "runner.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>

#include "cache.hpp"
#include "checks.hpp"
#include "errors.hpp"
#include "version.hpp"

namespace naifs {

namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

const char* mode_name(EvalMode m) { return m == EvalMode::Exact ? "exact" : "lower-bound"; }
const char* direction_name(BoundDirection d) {
    switch (d) {
        case BoundDirection::UpperBound: return "upper-bound";
        case BoundDirection::LowerBound: return "lower-bound";
        case BoundDirection::TwoSided: return "two-sided";
    }
    return "?";
}

SampleSet target_sample(const BuiltExperiment& built) {
    SampleSet s;
    s.density = built.pool.density;
    for (std::size_t t : built.target) s.points.push_back(built.pool.points[t]);
    return s;
}

ordered_json entropy_json(const EntropyEstimate& est) {
    ordered_json j;
    j["value"] = est.value;
    j["mode"] = mode_name(est.mode);
    j["slopes_per_eps"] = est.slopes;
    j["eps_grid"] = est.eps_range;
    j["n_range"] = est.n_range;
    return j;
}

Table entropy_table(const EntropyEstimate& est) {
    Table t;
    t.name = "entropy_counts";
    t.columns = {"n", "eps", "log_count"};
    for (std::size_t e = 0; e < est.eps_range.size(); ++e)
        for (std::size_t ni = 0; ni < est.n_range.size(); ++ni)
            t.rows.push_back({static_cast<double>(est.n_range[ni]), est.eps_range[e],
                              est.log_counts[e][ni]});
    return t;
}

ordered_json pressure_json(const PressureEstimate& est) {
    ordered_json j;
    j["value"] = est.value;
    j["raw_crossing"] = est.raw_crossing;
    j["bracket"] = {est.alpha_lo, est.alpha_hi};
    j["direction"] = direction_name(est.direction);
    j["mode"] = mode_name(est.mode);
    j["empty_target"] = est.empty_target;
    j["per_delta_value"] = est.per_delta_value;
    j["fit_rmse"] = est.fit_rmse;
    j["pool_size"] = est.pool_size;
    return j;
}

Table pressure_table(const PressureEstimate& est, const std::string& name) {
    Table t;
    t.name = name;
    t.columns = {"delta", "N", "N_max", "alpha_star", "alpha_lo", "alpha_hi", "cover_size"};
    for (const PressureCell& c : est.cells)
        t.rows.push_back({c.delta, static_cast<double>(c.N), static_cast<double>(c.N_max),
                          c.alpha_star, c.alpha_lo, c.alpha_hi,
                          static_cast<double>(c.cover_size)});
    return t;
}

PressureGrids grids_of(const ExperimentConfig& cfg) {
    PressureGrids g;
    g.delta_grid = cfg.delta_grid;
    g.N_grid = cfg.N_grid;
    g.window = cfg.N_window;
    g.alpha.bracket_lo = cfg.bracket_lo;
    g.alpha.bracket_hi = cfg.bracket_hi;
    g.alpha.tol = cfg.bisect_tol;
    return g;
}

MeasureGrids measure_grids_of(const ExperimentConfig& cfg) {
    MeasureGrids mg;
    mg.r_grid = cfg.r_grid;
    mg.n_lo = cfg.n_window_lo;
    mg.n_hi = cfg.n_window_hi;
    mg.mc_count = cfg.mc_count;
    mg.mc_seed = cfg.mc_seed;
    return mg;
}

void exec_task(const BuiltExperiment& built, ordered_json& results, std::vector<Table>& tables) {
    const ExperimentConfig& cfg = built.config;
    const DynMetrics& dm = *built.metrics;
    switch (cfg.task) {
        case TaskKind::SupEntropy: {
            SampleSet sample = target_sample(built);
            EntropyEstimate est =
                sup_entropy(dm, sample, cfg.n_range, cfg.eps_grid, cfg.entropy_metric);
            results["sup_entropy"] = entropy_json(est);
            tables.push_back(entropy_table(est));
            break;
        }
        case TaskKind::PpPressure: {
            PressureEstimate est =
                pp_pressure(dm, built.potential, built.pool, built.target, grids_of(cfg));
            results["pp_pressure"] = pressure_json(est);
            tables.push_back(pressure_table(est, "pp_cells"));
            if (cfg.with_prime) {
                PressureEstimate primed = pp_pressure(dm, built.potential, built.pool,
                                                      built.target, grids_of(cfg),
                                                      SumFlavor::BallSup);
                results["pp_pressure_ball_sup"] = pressure_json(primed);
                tables.push_back(pressure_table(primed, "pp_ball_sup_cells"));
                std::vector<double> diffs;
                for (std::size_t i = 0; i < est.per_delta_value.size(); ++i)
                    diffs.push_back(primed.per_delta_value[i] - est.per_delta_value[i]);
                results["ball_sup_minus_plain_per_delta"] = diffs;
            }
            break;
        }
        case TaskKind::Capacity: {
            CapacityEstimate est =
                capacity_pressures(dm, built.potential, built.pool, built.target, grids_of(cfg));
            results["capacity_lower"] = pressure_json(est.lower);
            results["capacity_upper"] = pressure_json(est.upper);
            tables.push_back(pressure_table(est.lower, "capacity_cells"));
            break;
        }
        case TaskKind::Weighted: {
            PressureEstimate est =
                weighted_pressure(dm, built.potential, built.pool, built.target, grids_of(cfg));
            results["weighted_pressure"] = pressure_json(est);
            tables.push_back(pressure_table(est, "weighted_cells"));
            SandwichReport rep = sandwich_check_wm(dm, built.potential, built.pool, built.target,
                                                   cfg.alpha, cfg.sandwich_eps,
                                                   cfg.delta_grid.back(), cfg.N_grid,
                                                   cfg.N_window, 6);
            ordered_json sj;
            sj["alpha"] = cfg.alpha;
            sj["eps"] = cfg.sandwich_eps;
            sj["delta"] = cfg.delta_grid.back();
            sj["violations"] = rep.violations;
            sj["mode"] = mode_name(rep.mode);
            Table st;
            st.name = "sandwich";
            st.columns = {"N", "weighted", "plain", "enlarged", "left_ok", "right_ok"};
            for (const SandwichRow& r : rep.rows)
                st.rows.push_back({static_cast<double>(r.N), r.weighted, r.plain, r.enlarged,
                                   r.left_ok ? 1.0 : 0.0, r.right_ok ? 1.0 : 0.0});
            tables.push_back(st);
            results["sandwich"] = sj;
            break;
        }
        case TaskKind::MeasurePressure: {
            ordered_json rows = ordered_json::array();
            Table t;
            t.name = "measure_pressure";
            t.columns = {"index", "value", "std_error", "points"};
            for (std::size_t i = 0; i < built.measures.size(); ++i) {
                const BorelMeasure& mu = built.measures[i];
                MeasurePressureResult r =
                    mu.kind == MeasureKind::Atomic
                        ? measure_pressure(dm, mu, built.potential, cfg.r_grid, cfg.n_window_lo,
                                           cfg.n_window_hi, IntegrationKind::ExactAtomic)
                        : measure_pressure(dm, mu, built.potential, cfg.r_grid, cfg.n_window_lo,
                                           cfg.n_window_hi, IntegrationKind::MonteCarlo,
                                           cfg.mc_count, cfg.mc_seed + i);
                ordered_json row;
                row["label"] = mu.label;
                row["value"] = r.value;
                row["std_error"] = r.std_error;
                row["points"] = r.points;
                row["undersampled"] = r.undersampled;
                row["mode"] = mode_name(r.mode);
                rows.push_back(row);
                t.rows.push_back({static_cast<double>(i), r.value, r.std_error,
                                  static_cast<double>(r.points)});
            }
            results["measure_pressure"] = rows;
            tables.push_back(t);
            break;
        }
        case TaskKind::Variational: {
            VariationalReport rep =
                variational_gap(dm, built.measures, built.potential, built.pool, built.target,
                                grids_of(cfg), measure_grids_of(cfg), cfg.combined_tol);
            ordered_json j;
            j["sup_measure_pressure"] = rep.sup_measure_pressure;
            j["pressure"] = rep.pressure;
            j["gap"] = rep.gap;
            j["argmax_index"] = rep.argmax;
            j["argmax_label"] = built.measures[rep.argmax].label;
            j["contract_ok"] = rep.contract_ok;
            j["mode"] = mode_name(rep.mode);
            results["variational"] = j;
            Table t;
            t.name = "variational_members";
            t.columns = {"index", "value", "std_error"};
            for (std::size_t i = 0; i < rep.member_values.size(); ++i)
                t.rows.push_back({static_cast<double>(i), rep.member_values[i],
                                  rep.member_errors[i]});
            tables.push_back(t);
            break;
        }
        case TaskKind::CheckSuite: {
            std::vector<CheckOutcome> outcomes = run_check_suite(built);
            ordered_json rows = ordered_json::array();
            bool all_pass = true;
            for (const CheckOutcome& c : outcomes) {
                ordered_json row;
                row["name"] = c.name;
                row["pass"] = c.pass;
                row["details"] = c.details;
                rows.push_back(row);
                all_pass &= c.pass;
            }
            results["checks"] = rows;
            results["all_pass"] = all_pass;
            break;
        }
    }
}

} // namespace

RunReport run_experiment(const ExperimentConfig& cfg, const RunOptions& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    RunReport report;
    report.body["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
    report.body["config"] = {{"name", cfg.name}, {"hash", cfg.hash()}};
    report.body["task"] = task_name(cfg.task);

    const std::string cache_dir =
        opt.cache_dir.empty() ? ResultCache::default_dir()
                              : (opt.cache_dir == "none" ? std::string{} : opt.cache_dir);
    ResultCache cache(cache_dir);
    const std::string key =
        hex64(fnv1a64(std::string(kToolVersion) + "|" + task_name(cfg.task) + "|" + cfg.canonical()));

    const std::string out_dir = opt.output_dir.empty() ? cfg.output_dir : opt.output_dir;

    try {
        ordered_json results;
        std::vector<Table> tables;
        if (auto hit = cache.lookup(key)) {
            results = (*hit)["results"];
            for (const auto& tj : (*hit)["tables"]) {
                Table t;
                t.name = tj["name"].get<std::string>();
                t.columns = tj["columns"].get<std::vector<std::string>>();
                for (const auto& row : tj["rows"]) t.rows.push_back(row.get<std::vector<double>>());
                tables.push_back(std::move(t));
            }
            report.cache_hits = 1;
        } else {
            BuiltExperiment built = build_experiment(cfg);
            exec_task(built, results, tables);
            report.cache_misses = 1;
            ordered_json payload;
            payload["results"] = results;
            payload["tables"] = ordered_json::array();
            for (const Table& t : tables) {
                ordered_json tj;
                tj["name"] = t.name;
                tj["columns"] = t.columns;
                tj["rows"] = t.rows;
                payload["tables"].push_back(tj);
            }
            cache.store(key, payload);
        }
        report.body["results"] = results;
        report.body["cache_key"] = key;
        report.tables = std::move(tables);
        if (!cache.warning().empty()) report.body["cache_warning"] = cache.warning();
    } catch (...) {
        report.body["failed"] = true;
        const auto t1 = std::chrono::steady_clock::now();
        report.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
        if (opt.write_files) {
            try {
                write_report_files(report, out_dir, cfg.formats);
            } catch (...) {
                // persisting the failure marker is best effort
            }
        }
        throw;
    }

    const auto t1 = std::chrono::steady_clock::now();
    report.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
    if (opt.write_files) write_report_files(report, out_dir, cfg.formats);
    return report;
}

std::vector<RunReport> run_sweep(const std::string& config_text, const std::string& name,
                                 const RunOptions& opt) {
    ExperimentConfig base = parse_config_text(config_text, name);
    if (base.sweep.empty())
        throw ValidationError("sweep: the config has no [sweep] section");

    // cartesian product over the sweep axes
    std::vector<std::size_t> idx(base.sweep.size(), 0);
    std::vector<RunReport> reports;
    const std::string base_dir = opt.output_dir.empty() ? base.output_dir : opt.output_dir;
    while (true) {
        std::string text = config_text;
        std::string cell_tag;
        for (std::size_t a = 0; a < base.sweep.size(); ++a) {
            const auto& [key, values] = base.sweep[a];
            text = apply_override(text, key, values[idx[a]]);
            if (!cell_tag.empty()) cell_tag += "_";
            cell_tag += key + "=" + values[idx[a]];
        }
        for (char& c : cell_tag)
            if (c == '/' || c == ' ') c = '_';
        ExperimentConfig cell = parse_config_text(text, name + ":" + cell_tag);
        cell.sweep.clear();
        RunOptions cell_opt = opt;
        cell_opt.output_dir = (fs::path(base_dir) / ("cell-" + cell_tag)).string();
        reports.push_back(run_experiment(cell, cell_opt));

        std::size_t a = 0;
        for (; a < idx.size(); ++a) {
            if (++idx[a] < base.sweep[a].second.size()) break;
            idx[a] = 0;
        }
        if (a == idx.size()) break;
    }
    return reports;
}

} // namespace naifs
