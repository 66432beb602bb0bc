// Acceptance harness: one pass/fail line per criterion, exit code equal
// to the number of failed criteria.  Exercises the full pipeline from
// pointwise curvature through the integral verdicts and the CLI.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hycurv/quadrature.hpp"
#include "hycurv/surface.hpp"
#include "hycurv/verify.hpp"

namespace fs = std::filesystem;
using namespace hycurv;

namespace {

constexpr double kPi = 3.14159265358979323846;

int failures = 0;
std::chrono::steady_clock::time_point t_start;

void begin() { t_start = std::chrono::steady_clock::now(); }

void criterion(int num, const std::string& desc, bool ok) {
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      t_start)
            .count();
    std::printf("[%s] criterion %2d: %s (%.1fs)\n", ok ? "PASS" : "FAIL", num,
                desc.c_str(), secs);
    std::fflush(stdout);
    if (!ok) ++failures;
}

struct FamilyCase {
    Family family;
    double param;
};

const std::vector<FamilyCase> kCases = {
    {Family::geodesic_sphere, 1.0},
    {Family::horosphere, 0.0},
    {Family::equidistant, 0.3},
    {Family::geodesic_tube, 1.0},
};

Box clipped_domain(const ImmersedHypersurface& surface, double radius) {
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
    return box;
}

std::vector<Vec> sample_points(const ImmersedHypersurface& surface, int count,
                               std::uint64_t seed, double radius = 2.0) {
    Box box = clipped_domain(surface, radius);
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

int run_cli(const std::string& args) {
    const std::string cmd =
        std::string(HYCURV_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return status == -1 ? -1 : WEXITSTATUS(status);
}

fs::path tmp_dir() {
    fs::create_directories(HYCURV_TEST_TMP);
    return HYCURV_TEST_TMP;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// --- criterion 1: principal curvatures match the catalog oracles -----------

bool check_curvature_oracles() {
    bool ok = true;
    for (int n : {3, 4}) {
        SpaceForm space(-1.0, n);
        for (const FamilyCase& fc : kCases) {
            for (DerivativeMode mode :
                 {DerivativeMode::analytic, DerivativeMode::finite_difference}) {
                CatalogSpec spec;
                spec.family = fc.family;
                spec.param = fc.param;
                spec.mode = mode;
                // large enough to stay out of the roundoff-dominated regime
                spec.fd_step = 1e-3;
                ImmersedHypersurface surf = catalog_build(spec, space);
                const std::vector<double>& oracle = *surf.principal_oracle;
                const double tol =
                    mode == DerivativeMode::analytic ? 1e-9 : 1e-5;
                auto points = sample_points(surf, 25, 12345 + n);
                for (const Vec& u : points) {
                    CurvaturePoint cp = curvature_point(surf, 0, u);
                    for (int i = 0; i < space.n; ++i)
                        if (std::abs(cp.principal[i] - oracle[i]) >
                            tol * (1.0 + std::abs(oracle[i])))
                            ok = false;
                }
            }
        }
    }
    return ok;
}

// --- criterion 2: algebraic identities of the curvature pipeline -----------

bool check_algebraic_identities() {
    bool ok = true;
    for (int n : {3, 4}) {
        SpaceForm space(-1.0, n);
        for (const FamilyCase& fc : kCases) {
            CatalogSpec spec;
            spec.family = fc.family;
            spec.param = fc.param;
            ImmersedHypersurface surf = catalog_build(spec, space);
            for (const Vec& u : sample_points(surf, 25, 999 + n)) {
                CurvaturePoint cp = curvature_point(surf, 0, u);
                const double nn = space.n;
                // trace and norm consistency of the eigen decomposition
                if (std::abs(cp.principal.sum() - nn * cp.H) > 1e-9) ok = false;
                if (std::abs(cp.principal.squaredNorm() - cp.A_norm_sq) >
                    1e-9 * (1.0 + cp.A_norm_sq))
                    ok = false;
                // Gauss relation recovered from the principal curvatures
                const double R_gauss =
                    space.kappa + (nn * nn * cp.H * cp.H - cp.A_norm_sq) /
                                      (nn * (nn - 1.0));
                if (std::abs(R_gauss - cp.R) > 1e-9 * (1.0 + std::abs(cp.R)))
                    ok = false;
                // Newton-operator trace identity
                Vec p1_eigs;
                Mat P1 = newton_p1(cp.shape, cp.H, space.n, &p1_eigs);
                const double lhs = (cp.shape * P1).trace();
                const double rhs = nn * (nn - 1.0) * (cp.R - space.kappa);
                if (std::abs(lhs - rhs) > 1e-9 * (1.0 + std::abs(rhs)))
                    ok = false;
                for (int i = 0; i < space.n; ++i) {
                    const double expect =
                        nn * cp.H - cp.principal[space.n - 1 - i];
                    if (std::abs(cp.p1_eigs[i] - expect) > 1e-9) ok = false;
                }
            }
        }
    }
    return ok;
}

// --- criteria 3 and 4: pointwise differential identities --------------------

bool check_pointwise_identities(bool with_test_function) {
    bool ok = true;
    SpaceForm space(-1.0, 3);
    const std::vector<double> offsets = {0.0, 0.45, 0.9};
    for (const FamilyCase& fc : kCases) {
        CatalogSpec spec;
        spec.family = fc.family;
        spec.param = fc.param;
        ImmersedHypersurface surf = catalog_build(spec, space);
        auto points = sample_points(surf, 100, 777);
        for (double offset : offsets) {
            AmbientPoint p = canonical_center(surf, offset);
            TestFunction bump;
            for (const Vec& u : points) {
                const Vec x = surf.charts[0].jet(u, 0).x;
                if (geodesic_distance(space, p, make_point(space, x)) < 1e-2)
                    continue;
                double scale = 0.0;
                if (!with_test_function) {
                    const double res =
                        lemma_trace_residual(surf, p, 0, u, 1e-4, &scale);
                    if (std::abs(res) > 1e-4 * scale) ok = false;
                } else {
                    if (bump.one()) bump = TestFunction::bump(u, 0.7);
                    const double r1 = prop_divergence_residual(
                        surf, p, TestFunction::constant_one(), 0, u, 1e-4,
                        &scale);
                    if (std::abs(r1) > 1e-4 * scale) ok = false;
                    const double r2 = prop_divergence_residual(
                        surf, p, bump, 0, u, 1e-4, &scale);
                    if (std::abs(r2) > 1e-4 * scale) ok = false;
                }
            }
        }
    }
    return ok;
}

// --- criterion 5: integrated divergence theorem -----------------------------

bool check_divergence_theorem() {
    bool ok = true;
    SpaceForm space(-1.0, 3);
    CutoffFamily cutoff{20};
    QuadratureOptions opts;
    opts.rel_tol = 1e-4;
    opts.budget = 30'000;
    for (Family family :
         {Family::geodesic_sphere, Family::horosphere, Family::geodesic_tube}) {
        CatalogSpec spec;
        spec.family = family;
        spec.param = family == Family::horosphere ? 0.0 : 1.0;
        ImmersedHypersurface surf = catalog_build(spec, space);
        AmbientPoint p = canonical_center(surf, 0.0);
        IntegralEstimate magnitude;
        IntegralEstimate est = divergence_theorem_check(
            surf, p, TestFunction::constant_one(), cutoff, 2.0, opts,
            &magnitude);
        if (!(magnitude.value > 0.0)) ok = false;
        if (std::abs(est.value) >
            1e-3 * magnitude.value + est.abs_error + magnitude.abs_error)
            ok = false;
    }
    return ok;
}

// --- criteria 6 and 8: monotone series and the exponential lower bound ------

struct SeriesCase {
    std::string name;
    PhiSeries series;
    CorollaryResult corollary;
    double gamma = 0.0;
    SpaceForm space{-1.0, 3};
};

std::vector<SeriesCase> g_series_cases;

bool compute_series_cases() {
    bool ok = true;
    SpaceForm space(-1.0, 3);
    for (const FamilyCase& fc : kCases) {
        CatalogSpec spec;
        spec.family = fc.family;
        spec.param = fc.param;
        ImmersedHypersurface surf = catalog_build(spec, space);
        AmbientPoint p = canonical_center(surf, 0.0);

        HypothesisReport hyp = hypothesis_report(surf);
        if (!hyp.admissible) ok = false;

        const bool sphere = fc.family == Family::geodesic_sphere;
        const bool tube = fc.family == Family::geodesic_tube;
        const double rmin = sphere ? 1.5 : (tube ? 1.3 : 0.8);
        const double r0 = sphere ? 1.2 : (tube ? 1.1 : 0.4);
        Vec radii(12);
        for (int i = 0; i < 12; ++i)
            radii[i] = rmin + (3.0 - rmin) * i / 11.0;

        QuadratureOptions opts;
        opts.rel_tol = sphere ? 1e-7 : 1e-5;
        opts.budget = sphere ? 800'000 : 250'000;

        SeriesCase sc;
        sc.name = family_name(fc.family);
        sc.gamma = hyp.gamma_min;
        sc.space = space;
        sc.series = phi_series(surf, p, hyp.gamma_min, radii, opts, true);
        sc.corollary =
            corollary_lower_bound(surf, p, hyp.gamma_min, r0, radii, opts);
        if (!sc.series.complete) ok = false;
        g_series_cases.push_back(std::move(sc));
    }
    return ok;
}

bool check_monotonicity() {
    bool ok = compute_series_cases();
    for (const SeriesCase& sc : g_series_cases) {
        Verdict v = verify_monotonicity(sc.series);
        if (!v.passed) {
            std::printf("    monotonicity failed for %s (worst %.3g)\n",
                        sc.name.c_str(), v.worst_violation);
            ok = false;
        }
    }
    // sphere series against the closed form
    const SeriesCase& sphere = g_series_cases.front();
    const double area = 2.0 * kPi * kPi * std::pow(std::sinh(1.0), 3);
    const double I = std::cosh(1.0) * area;  // integral of sinh(rho) H
    for (int i = 0; i < sphere.series.r_grid.size(); ++i) {
        const double r = sphere.series.r_grid[i];
        const double exact =
            std::exp(sphere.gamma * r / 2.0) / std::sinh(r) * I;
        if (std::abs(sphere.series.phi[i] - exact) > 1e-6 * exact) ok = false;
    }
    return ok;
}

bool check_corollary() {
    bool ok = true;
    for (const SeriesCase& sc : g_series_cases) {
        if (!sc.corollary.verdict.passed) {
            std::printf("    lower bound failed for %s (worst %.3g)\n",
                        sc.name.c_str(), sc.corollary.verdict.worst_violation);
            ok = false;
        }
    }
    // sphere phi(r0) against the closed form
    const SeriesCase& sphere = g_series_cases.front();
    const double r0 = 1.2;
    const double area = 2.0 * kPi * kPi * std::pow(std::sinh(1.0), 3);
    const double exact = std::exp(sphere.gamma * r0 / 2.0) / std::sinh(r0) *
                         std::cosh(1.0) * area;
    if (std::abs(sphere.corollary.phi0 - exact) > 1e-6 * exact) ok = false;
    return ok;
}

// --- criterion 7: negative control through the CLI --------------------------

bool check_negative_control() {
    const fs::path cfg = tmp_dir() / "negative.json";
    std::ofstream(cfg) << R"({
  "space": {"kappa": -1.0, "n": 3},
  "surface": {"family": "geodesic_sphere", "param": 1.0},
  "gamma": 1.0,
  "r_grid": {"min": 1.5, "max": 3.0, "count": 8},
  "r0": 1.2,
  "budget": 40000,
  "tolerances": {"quad_rel_tol": 1e-4},
  "suites": ["monotonicity"]
})";
    return run_cli("run --config " + cfg.string() + " --out " +
                   (tmp_dir() / "negative_out").string()) == 1;
}

// --- criterion 9: divergence criterion in dimension four ---------------------

bool check_divergence_criterion() {
    SpaceForm space(-1.0, 4);
    CatalogSpec spec;
    spec.family = Family::equidistant;
    spec.param = 0.3;
    ImmersedHypersurface surf = catalog_build(spec, space);
    HypothesisReport hyp = hypothesis_report(surf);
    if (!hyp.admissible) return false;

    DivergenceCriterion crit = divergence_criterion(space, hyp.gamma_min);
    if (!crit.applies) return false;
    if (std::abs(crit.rate - 0.0630311) > 1e-5) return false;

    // growth rate of the lower bound over two units of radius
    const double ratio =
        corollary_bound_value(space, hyp.gamma_min, 1.0, 10.0) /
        corollary_bound_value(space, hyp.gamma_min, 1.0, 8.0);
    const double expect = std::exp(2.0 * 0.0630311);
    return std::abs(ratio - expect) < 0.05 * expect;
}

// --- criterion 10: cross-checks and determinism ------------------------------

bool check_cross_checks() {
    bool ok = true;
    SpaceForm space(-1.0, 3);
    std::mt19937_64 rng(4242);
    std::normal_distribution<double> gauss(0.0, 1.0);

    auto random_point = [&]() {
        Vec v(space.coord_dim() - 1);
        for (int i = 0; i < v.size(); ++i) v[i] = gauss(rng);
        v *= 0.8;
        Vec x(space.coord_dim());
        x[0] = std::sqrt(1.0 + v.squaredNorm());
        x.tail(v.size()) = v;
        return make_point(space, x);
    };
    auto random_tangent = [&](const AmbientPoint& base) {
        Vec w(space.coord_dim());
        for (int i = 0; i < w.size(); ++i) w[i] = gauss(rng);
        Vec t = project_tangent(space, base.coords, w);
        // Minkowski norm: tangents to the hyperboloid are spacelike
        const double norm = std::sqrt(t.dot(t) - 2.0 * t[0] * t[0]);
        return make_tangent(space, base, t / std::max(norm, 1e-12));
    };

    for (int trial = 0; trial < 50; ++trial) {
        AmbientPoint p = random_point();
        AmbientPoint q = random_point();
        if (geodesic_distance(space, p, q) < 0.2) continue;
        AmbientVector u = random_tangent(q);

        // gradient versus a finite difference along the geodesic from q
        const double h = 1e-5;
        auto rho_at = [&](double s) {
            return geodesic_distance(space, p, geodesic_point(space, q, u, s));
        };
        const double fd1 = (rho_at(h) - rho_at(-h)) / (2.0 * h);
        AmbientVector grad = grad_distance(space, p, q);
        double inner = -grad.coords[0] * u.coords[0];
        for (int i = 1; i < grad.coords.size(); ++i)
            inner += grad.coords[i] * u.coords[i];
        if (std::abs(fd1 - inner) > 1e-6 * (1.0 + std::abs(inner))) ok = false;

        // Hessian versus the second difference
        const double h2 = 1e-4;
        const double fd2 =
            (rho_at(h2) - 2.0 * rho_at(0.0) + rho_at(-h2)) / (h2 * h2);
        const double hess = distance_hessian_apply(space, p, q, u, u);
        if (std::abs(fd2 - hess) > 1e-5 * (1.0 + std::abs(hess))) ok = false;
    }

    // isometry invariance of the ball integral
    {
        CatalogSpec spec;
        spec.family = Family::geodesic_sphere;
        spec.param = 1.0;
        ImmersedHypersurface surf = catalog_build(spec, space);
        AmbientPoint center = canonical_center(surf, 0.3);
        QuadratureOptions opts;
        opts.rel_tol = 1e-9;
        opts.budget = 400'000;
        IntegralEstimate base =
            curvature_integral(surf, BallRegion{center, 1.7}, opts);

        Mat L = lorentz_boost(space, 1, 0.6) * spatial_rotation(space, 1, 2, 0.9);
        ImmersedHypersurface moved = apply_isometry(surf, L);
        Vec c2 = L * center.coords;
        IntegralEstimate moved_est = curvature_integral(
            moved, BallRegion{make_point(space, c2), 1.7}, opts);
        if (std::abs(base.value - moved_est.value) >
            1e-8 * (1.0 + std::abs(base.value)))
            ok = false;
    }

    // repeated CLI runs emit byte-identical CSV
    {
        const fs::path cfg = tmp_dir() / "determinism.json";
        std::ofstream(cfg) << R"({
  "space": {"kappa": -1.0, "n": 3},
  "surface": {"family": "geodesic_sphere", "param": 1.0},
  "r_grid": {"min": 1.5, "max": 3.0, "count": 6},
  "r0": 1.2,
  "budget": 40000,
  "tolerances": {"quad_rel_tol": 1e-4},
  "suites": ["monotonicity", "corollary"]
})";
        const fs::path out1 = tmp_dir() / "det1";
        const fs::path out2 = tmp_dir() / "det2";
        if (run_cli("run --config " + cfg.string() + " --out " +
                    out1.string()) != 0)
            ok = false;
        if (run_cli("run --config " + cfg.string() + " --out " +
                    out2.string()) != 0)
            ok = false;
        const std::string csv1 = slurp(out1 / "series_center0.csv");
        if (csv1.empty() || csv1 != slurp(out2 / "series_center0.csv"))
            ok = false;
    }
    return ok;
}

}  // namespace

int main() {
    begin();
    criterion(1, "catalog principal curvatures match closed forms",
              check_curvature_oracles());
    begin();
    criterion(2, "pointwise algebraic identities hold to 1e-9",
              check_algebraic_identities());
    begin();
    criterion(3, "trace identity residual below 1e-4 relative",
              check_pointwise_identities(false));
    begin();
    criterion(4, "divergence identity residual below 1e-4 relative",
              check_pointwise_identities(true));
    begin();
    criterion(5, "cutoff vector field integrates to zero",
              check_divergence_theorem());
    begin();
    criterion(6, "weighted series is nondecreasing at the minimal threshold",
              check_monotonicity());
    begin();
    criterion(7, "below-threshold negative control fails via the CLI",
              check_negative_control());
    begin();
    criterion(8, "exponential lower bound holds within error bars",
              check_corollary());
    begin();
    criterion(9, "dimension-four growth criterion applies with the expected rate",
              check_divergence_criterion());
    begin();
    criterion(10, "finite-difference, isometry and determinism cross-checks",
              check_cross_checks());

    std::printf("%d of 10 criteria passed\n", 10 - failures);
    return failures;
}
