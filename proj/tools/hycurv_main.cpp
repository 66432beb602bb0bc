// Command-line experiment runner: builds a catalog surface from a JSON
// config, runs the requested verification suites, and writes CSV series,
// SVG plots and a JSON report into the output directory.
//
// Exit codes: 0 all requested suites passed; 1 at least one verdict
// failed; 2 configuration error; 3 numerical non-convergence or runtime
// failure.  Partial results are still written for 1 and 3.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hycurv/config.hpp"
#include "hycurv/report.hpp"
#include "hycurv/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace hycurv;

namespace {

constexpr const char* kVersion = "1.0.0";

struct SuiteOutcome {
    std::string name;
    bool ran = false;
    bool passed = false;
    bool converged = true;
    json detail;
};

struct RunResult {
    int exit_code = 0;
    json report;
};

json verdict_json(const Verdict& v) {
    json out;
    out["passed"] = v.passed;
    out["worst_violation"] = v.worst_violation;
    out["location"] = v.location;
    out["residuals"] = v.residuals;
    return out;
}

// Uniform sample points inside the chart domain clipped to a working
// radius, for the pointwise identity suite.
std::vector<Vec> sample_points(const ImmersedHypersurface& surface,
                               double radius, int count, std::uint64_t seed) {
    const Chart& ch = surface.charts.at(0);
    auto clipped = ch.clip(origin(surface.space).coords, radius);
    Box box = clipped ? *clipped : ch.domain;
    for (int d = 0; d < box.dim(); ++d) {
        box.lo[d] = std::max(box.lo[d], ch.domain.lo[d]);
        box.hi[d] = std::min(box.hi[d], ch.domain.hi[d]);
        const double w = box.hi[d] - box.lo[d];
        box.lo[d] += 1e-3 * w;
        box.hi[d] -= 1e-3 * w;
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Vec> points(count);
    for (int i = 0; i < count; ++i) {
        Vec u(box.dim());
        for (int d = 0; d < box.dim(); ++d)
            u[d] = box.lo[d] + unit(rng) * (box.hi[d] - box.lo[d]);
        points[i] = u;
    }
    return points;
}

SuiteOutcome run_identities(const ExperimentConfig& cfg,
                            const ImmersedHypersurface& surface,
                            const std::vector<AmbientPoint>& centers,
                            const QuadratureOptions& quad) {
    SuiteOutcome out;
    out.name = suite_name(Suite::identities);
    out.ran = true;

    const double tol = 1e-4;
    double worst = 0.0;
    int points_checked = 0;
    auto points = sample_points(surface, cfg.r_grid.max, 25, cfg.seed);
    for (const AmbientPoint& p : centers) {
        TestFunction bump_f;
        for (const Vec& u : points) {
            double rho = 0.0;
            try {
                rho = distance_raw(surface.space, p.coords,
                                   surface.charts[0].jet(u, 0).x);
            } catch (const std::exception&) {
                continue;
            }
            if (rho < 1e-3) continue;  // identity residuals blow up at p
            if (bump_f.one()) bump_f = TestFunction::bump(u, 0.7);
            double scale = 0.0;
            const double lres =
                lemma_trace_residual(surface, p, 0, u, cfg.fd_step, &scale);
            worst = std::max(worst, std::abs(lres) / scale);
            const double pres1 = prop_divergence_residual(
                surface, p, TestFunction::constant_one(), 0, u, cfg.fd_step,
                &scale);
            worst = std::max(worst, std::abs(pres1) / scale);
            const double pres2 = prop_divergence_residual(
                surface, p, bump_f, 0, u, cfg.fd_step, &scale);
            worst = std::max(worst, std::abs(pres2) / scale);
            ++points_checked;
        }
    }

    // Integrated divergence theorem with the cutoff-weighted field.
    QuadratureOptions cheap = quad;
    cheap.budget = std::min<std::int64_t>(quad.budget, 20'000);
    cheap.rel_tol = std::max(quad.rel_tol, 1e-4);
    CutoffFamily hm{cfg.cutoff_m};
    IntegralEstimate magnitude;
    IntegralEstimate div_est = divergence_theorem_check(
        surface, centers.front(), TestFunction::constant_one(), hm,
        cfg.r_grid.min, cheap, &magnitude);
    const double div_rel =
        std::abs(div_est.value) / std::max(magnitude.value, 1e-12);
    const bool div_ok =
        std::abs(div_est.value) <= 1e-3 * magnitude.value + div_est.abs_error;

    out.passed = (worst < tol) && div_ok && points_checked > 0;
    out.detail["max_relative_residual"] = worst;
    out.detail["points_checked"] = points_checked;
    out.detail["divergence_integral"] = div_est.value;
    out.detail["divergence_magnitude"] = magnitude.value;
    out.detail["divergence_relative"] = div_rel;
    return out;
}

void append_series_outputs(const ExperimentConfig& cfg, const fs::path& outdir,
                           int center_index, const PhiSeries& series,
                           const CorollaryResult* corollary, json& center_json) {
    std::vector<SeriesRow> rows = make_series_rows(series, corollary);
    const std::string csv_name =
        "series_center" + std::to_string(center_index) + ".csv";
    const std::string svg_name =
        "phi_center" + std::to_string(center_index) + ".svg";
    emit_csv_file(rows, (outdir / csv_name).string());
    emit_phi_plot(series, (outdir / svg_name).string());
    center_json["csv"] = csv_name;
    center_json["plot"] = svg_name;
    (void)cfg;
}

RunResult run_experiment(const ExperimentConfig& cfg, const fs::path& outdir,
                         const std::string& config_text) {
    RunResult result;
    json& report = result.report;
    report["version"] = kVersion;
    report["provenance"] = {
        {"config_digest", config_digest(config_text)},
        {"seed", cfg.seed},
        {"budget", cfg.budget},
        {"threads", thread_count()},
    };

    SpaceForm space = cfg.space();
    ImmersedHypersurface surface = catalog_build(cfg.surface, space);
    report["surface"] = {
        {"family", family_name(cfg.surface.family)},
        {"param", cfg.surface.param},
        {"orientation_sign", surface.orientation_sign},
    };

    std::vector<AmbientPoint> centers;
    for (const CenterSpec& c : cfg.centers) centers.push_back(c.resolve(surface));

    SamplingSpec sampling;
    sampling.seed = cfg.seed;
    sampling.radius = cfg.r_grid.max;
    HypothesisReport hyp = hypothesis_report(surface, sampling);
    report["hypothesis"] = {
        {"admissible", hyp.admissible},   {"gamma_min", hyp.gamma_min},
        {"H_min", hyp.H_min},             {"H_max", hyp.H_max},
        {"R_minus_kappa_min", hyp.R_minus_kappa_min},
        {"sample_count", hyp.sample_count},
        {"note", hyp.note},
    };

    const double gamma = cfg.gamma_auto ? hyp.gamma_min : cfg.gamma;
    report["gamma"] = gamma;
    report["gamma_mode"] = cfg.gamma_auto ? "auto" : "explicit";

    bool any_failed = false;
    bool any_diverged = false;
    if (!hyp.admissible) {
        any_failed = true;
        report["note"] = "curvature hypothesis not satisfied; see 'hypothesis'";
    }

    QuadratureOptions quad;
    quad.rel_tol = cfg.quad_rel_tol;
    quad.budget = cfg.budget;

    const Vec radii = cfg.r_grid.radii();
    auto has = [&](Suite s) {
        return std::find(cfg.suites.begin(), cfg.suites.end(), s) !=
               cfg.suites.end();
    };

    std::vector<SuiteOutcome> outcomes;

    if (has(Suite::identities)) {
        SuiteOutcome out = run_identities(cfg, surface, centers, quad);
        any_failed = any_failed || !out.passed;
        outcomes.push_back(std::move(out));
    }

    const bool need_series = has(Suite::monotonicity) || has(Suite::corollary);
    json centers_json = json::array();
    if (need_series) {
        SuiteOutcome mono, cor;
        mono.name = suite_name(Suite::monotonicity);
        cor.name = suite_name(Suite::corollary);
        mono.ran = has(Suite::monotonicity);
        cor.ran = has(Suite::corollary);
        mono.passed = cor.passed = true;
        mono.detail["centers"] = json::array();
        cor.detail["centers"] = json::array();

        for (std::size_t ci = 0; ci < centers.size(); ++ci) {
            json center_json;
            center_json["index"] = ci;

            PhiSeries series =
                phi_series(surface, centers[ci], gamma, radii, quad, true);
            if (!series.complete) any_diverged = true;

            CorollaryResult corollary;
            bool have_corollary = false;
            if (cor.ran) {
                corollary = corollary_lower_bound(surface, centers[ci], gamma,
                                                  cfg.r0, radii, quad);
                have_corollary = true;
                cor.passed = cor.passed && corollary.verdict.passed;
                json cj = verdict_json(corollary.verdict);
                cj["phi0"] = corollary.phi0;
                cj["phi0_err"] = corollary.phi0_err;
                cj["descriptive_C"] = corollary.descriptive_C;
                cj["center"] = ci;
                cor.detail["centers"].push_back(cj);
            }

            if (mono.ran) {
                Verdict v = verify_monotonicity(series);
                // verdict_tol relaxes the one-sided test
                const bool ok = v.worst_violation <= cfg.verdict_tol;
                mono.passed = mono.passed && ok;
                json mj = verdict_json(v);
                mj["center"] = ci;
                mono.detail["centers"].push_back(mj);
            }

            append_series_outputs(cfg, outdir, static_cast<int>(ci), series,
                                  have_corollary ? &corollary : nullptr,
                                  center_json);
            centers_json.push_back(center_json);
        }
        if (mono.ran) {
            any_failed = any_failed || !mono.passed;
            outcomes.push_back(std::move(mono));
        }
        if (cor.ran) {
            any_failed = any_failed || !cor.passed;
            outcomes.push_back(std::move(cor));
        }
    }
    report["centers"] = centers_json;

    if (has(Suite::cutoff_inequality)) {
        SuiteOutcome out;
        out.name = suite_name(Suite::cutoff_inequality);
        out.ran = true;
        out.passed = true;
        QuadratureOptions cheap = quad;
        cheap.budget = std::min<std::int64_t>(quad.budget, 15'000);
        cheap.rel_tol = std::max(quad.rel_tol, 1e-4);
        out.detail["centers"] = json::array();
        for (std::size_t ci = 0; ci < centers.size(); ++ci) {
            Verdict v = cutoff_inequality_check(
                surface, centers[ci], TestFunction::constant_one(), gamma,
                cfg.r_grid.min, cfg.r_grid.max, cfg.cutoff_m, cheap);
            out.passed = out.passed && (v.worst_violation <= cfg.verdict_tol);
            json cj = verdict_json(v);
            cj["center"] = ci;
            out.detail["centers"].push_back(cj);
        }
        any_failed = any_failed || !out.passed;
        outcomes.push_back(std::move(out));
    }

    if (has(Suite::divergence_criterion)) {
        SuiteOutcome out;
        out.name = suite_name(Suite::divergence_criterion);
        out.ran = true;
        out.passed = true;  // informational: reports whether it applies
        DivergenceCriterion crit = divergence_criterion(space, gamma);
        out.detail["applies"] = crit.applies;
        out.detail["rate"] = crit.rate;
        out.detail["threshold"] = (space.n - 3) * space.b();
        outcomes.push_back(std::move(out));
    }

    json suites_json = json::array();
    for (const SuiteOutcome& out : outcomes) {
        json sj;
        sj["suite"] = out.name;
        sj["passed"] = out.passed;
        sj["detail"] = out.detail;
        suites_json.push_back(sj);
    }
    report["suites"] = suites_json;
    report["converged"] = !any_diverged;

    if (any_failed)
        result.exit_code = 1;
    else if (any_diverged)
        result.exit_code = 3;
    report["exit_code"] = result.exit_code;
    return result;
}

void write_report(const json& report, const fs::path& outdir) {
    std::ofstream out(outdir / "report.json", std::ios::binary);
    out << report.dump(2) << "\n";
}

int cmd_run(const ExperimentConfig& cfg, const fs::path& outdir,
            const std::string& config_text) {
    fs::create_directories(outdir);
    try {
        RunResult res = run_experiment(cfg, outdir, config_text);
        write_report(res.report, outdir);
        return res.exit_code;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        // bad surface/center parameters surface as invalid_argument
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "run failed: " << e.what() << "\n";
        json report;
        report["error"] = e.what();
        report["exit_code"] = 3;
        write_report(report, outdir);
        return 3;
    }
}

int cmd_sweep(const ExperimentConfig& cfg, const fs::path& outdir,
              const std::string& config_text) {
    if (cfg.sweep_params.empty()) {
        std::cerr << "config error: sweep requires a non-empty 'sweep.param' "
                     "array\n";
        return 2;
    }
    fs::create_directories(outdir);
    int worst = 0;
    std::ostringstream index;
    index << "cell, param, exit_code\n";
    for (std::size_t i = 0; i < cfg.sweep_params.size(); ++i) {
        ExperimentConfig cell = cfg;
        cell.surface.param = cfg.sweep_params[i];
        cell.sweep_params.clear();
        const fs::path cell_dir = outdir / ("cell" + std::to_string(i));
        const int code = cmd_run(cell, cell_dir, config_text);
        worst = std::max(worst, code);
        index << i << ", " << format_full(cfg.sweep_params[i]) << ", " << code
              << "\n";
    }
    std::ofstream idx(outdir / "index.csv", std::ios::binary);
    idx << index.str();
    return worst;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Extrinsic-curvature integral experiments on hypersurfaces "
                 "of hyperbolic space"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "out";
    std::int64_t budget_override = -1;
    std::uint64_t seed_override = 0;
    bool seed_given = false;

    auto add_common = [&](CLI::App* sub, bool need_config) {
        auto* opt = sub->add_option("--config", config_path, "config JSON path");
        if (need_config) opt->required();
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--budget", budget_override,
                        "override quadrature evaluation budget");
        sub->add_option("--seed", seed_override, "override sampling seed")
            ->each([&](const std::string&) { seed_given = true; });
    };

    CLI::App* run = app.add_subcommand("run", "run the configured suites");
    add_common(run, true);
    CLI::App* sweep =
        app.add_subcommand("sweep", "run once per swept family parameter");
    add_common(sweep, true);
    CLI::App* identities =
        app.add_subcommand("identities", "run only the identity checks");
    add_common(identities, true);
    CLI::App* version = app.add_subcommand("version", "print version");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (version->parsed()) {
        std::cout << "hycurv " << kVersion << "\n";
        return 0;
    }

    std::string config_text;
    ExperimentConfig cfg;
    try {
        std::ifstream in(config_path);
        if (!in) throw ConfigError("cannot read config file: " + config_path);
        std::stringstream ss;
        ss << in.rdbuf();
        config_text = ss.str();
        cfg = parse_config(config_text);
        if (budget_override >= 0) {
            if (budget_override < 1000)
                throw ConfigError("--budget must be >= 1000");
            cfg.budget = budget_override;
        }
        if (seed_given) cfg.seed = seed_override;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    if (identities->parsed()) cfg.suites = {Suite::identities};
    if (sweep->parsed()) return cmd_sweep(cfg, out_dir, config_text);
    return cmd_run(cfg, out_dir, config_text);
}
