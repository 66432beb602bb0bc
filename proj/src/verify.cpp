#include "hycurv/verify.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <future>
#include <random>
#include <thread>

namespace hycurv {

int thread_count() {
    if (const char* env = std::getenv("HYCURV_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

double CutoffFamily::operator()(double t) const {
    const double q = t * m;
    if (q <= 0.0) return 0.0;
    if (q >= 1.0) return 1.0;
    return q * q * q * (10.0 - 15.0 * q + 6.0 * q * q);
}

double CutoffFamily::deriv(double t) const {
    const double q = t * m;
    if (q <= 0.0 || q >= 1.0) return 0.0;
    return m * 30.0 * q * q * (1.0 - q) * (1.0 - q);
}

TestFunction TestFunction::bump(const Vec& center, double width) {
    TestFunction f;
    f.value = [center, width](const Vec& u) {
        const double d2 = (u - center).squaredNorm() / (width * width);
        if (d2 >= 1.0) return 0.0;
        const double c = 1.0 - d2;
        return c * c * c;
    };
    return f;
}

namespace {

// Box used for pointwise sampling of a possibly unbounded chart.
Box sampling_box(const ImmersedHypersurface& surface, int chart, double radius,
                 double inset) {
    const Chart& ch = surface.charts.at(chart);
    auto clipped = ch.clip(origin(surface.space).coords, radius);
    Box box = clipped ? *clipped : ch.domain;
    for (int d = 0; d < box.dim(); ++d) {
        box.lo[d] = std::max(box.lo[d], ch.domain.lo[d]);
        box.hi[d] = std::min(box.hi[d], ch.domain.hi[d]);
        if (!std::isfinite(box.lo[d]) || !std::isfinite(box.hi[d]))
            throw std::runtime_error("sampling_box: unbounded chart");
        const double w = box.hi[d] - box.lo[d];
        box.lo[d] += inset * w;
        box.hi[d] -= inset * w;
    }
    return box;
}

Vec sample_in_box(const Box& box, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Vec u(box.dim());
    for (int d = 0; d < box.dim(); ++d)
        u[d] = box.lo[d] + unit(rng) * (box.hi[d] - box.lo[d]);
    return u;
}

// g-orthonormal frame coefficients: columns of F satisfy F^T g F = I.
Mat frame_coefficients(const Mat& g) {
    Eigen::LLT<Mat> llt(g);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("frame_coefficients: metric not SPD");
    Mat L = llt.matrixL();
    return L.transpose().inverse();
}

struct ChartPointData {
    CurvaturePoint pt;
    double rho = 0.0;
    Vec grad_rho;       // ambient
    Vec xbar;           // ambient position field
    Vec xt_chart;       // chart components of the tangential part of xbar
    double xbar_eta = 0.0;
};

ChartPointData chart_point_data(const ImmersedHypersurface& surface, int chart,
                                const Vec& u, const Vec& p) {
    ChartPointData d;
    d.pt = curvature_point(surface, chart, u);
    d.rho = distance_raw(surface.space, p, d.pt.x);
    d.xbar = position_vector_raw(surface.space, p, d.pt.x);
    d.xbar_eta = minkowski_inner(d.xbar, d.pt.eta);
    Vec xt = d.xbar - d.xbar_eta * d.pt.eta;
    // chart components through g
    ChartJet jet = surface.charts.at(chart).jet(u, 1);
    const int n = surface.space.n;
    Vec rhs(n);
    for (int j = 0; j < n; ++j) rhs[j] = minkowski_inner(xt, jet.jac.col(j));
    d.xt_chart = d.pt.g.ldlt().solve(rhs);
    if (d.rho > 0.0) d.grad_rho = grad_distance_raw(surface.space, p, d.pt.x);
    return d;
}

double gauss16(const std::function<double(double)>& f, double a, double b) {
    static const double x[8] = {0.0950125098376374, 0.2816035507792589,
                                0.4580167776572274, 0.6178762444026438,
                                0.7554044083550030, 0.8656312023878318,
                                0.9445750230732326, 0.9894009349916499};
    static const double w[8] = {0.1894506104550685, 0.1826034150449236,
                                0.1691565193950025, 0.1495959888165767,
                                0.1246289712555339, 0.0951585116824928,
                                0.0622535239386479, 0.0271524594117541};
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < 8; ++i)
        s += w[i] * (f(mid + half * x[i]) + f(mid - half * x[i]));
    return s * half;
}

double gauss8(const std::function<double(double)>& f, double a, double b) {
    static const double x[4] = {0.1834346424956498, 0.5255324099163290,
                                0.7966664774136267, 0.9602898564975363};
    static const double w[4] = {0.3626837833783620, 0.3137066458778873,
                                0.2223810344533745, 0.1012285362903763};
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < 4; ++i)
        s += w[i] * (f(mid + half * x[i]) + f(mid - half * x[i]));
    return s * half;
}

}  // namespace

HypothesisReport hypothesis_report(const ImmersedHypersurface& surface,
                                   const SamplingSpec& sampling) {
    HypothesisReport rep;
    rep.orientation_sign = surface.orientation_sign;
    const SpaceForm& space = surface.space;
    std::mt19937_64 rng(sampling.seed);
    Box box = sampling_box(surface, 0, sampling.radius, sampling.inset);

    rep.H_min = 1e300;
    rep.H_max = -1e300;
    rep.R_minus_kappa_min = 1e300;
    rep.gamma_min = 0.0;
    rep.admissible = true;
    for (int i = 0; i < sampling.count; ++i) {
        Vec u = sample_in_box(box, rng);
        CurvaturePoint pt = curvature_point(surface, 0, u);
        ++rep.sample_count;
        rep.H_min = std::min(rep.H_min, pt.H);
        rep.H_max = std::max(rep.H_max, pt.H);
        const double rk = pt.R - space.kappa;
        rep.R_minus_kappa_min = std::min(rep.R_minus_kappa_min, rk);
        if (!(pt.H > 0.0)) {
            rep.admissible = false;
            rep.worst_u = u;
            rep.note = "H <= 0 at a sampled point";
            continue;
        }
        PsdBoundReport psd = psd_bound_check(pt, space);
        if (psd.applicable && (!psd.psd || !psd.upper_ok)) {
            rep.admissible = false;
            rep.worst_u = u;
            rep.note = "Newton-transformation eigenvalue bound violated";
        }
        const double gamma = (space.n - 1) * rk / pt.H;
        if (gamma > rep.gamma_min) {
            rep.gamma_min = gamma;
            if (rep.admissible) rep.worst_u = u;
        }
    }
    if (rep.R_minus_kappa_min < -1e-9) {
        rep.admissible = false;
        if (rep.note.empty()) rep.note = "R < kappa at a sampled point";
    }
    return rep;
}

PhiSeries phi_series(const ImmersedHypersurface& surface, const AmbientPoint& p,
                     double gamma, const Vec& r_grid, const QuadratureOptions& opts,
                     bool with_mean_integral) {
    if (gamma < 0.0)
        throw std::invalid_argument("phi_series: gamma must be >= 0");
    const int nr = static_cast<int>(r_grid.size());
    for (int i = 0; i < nr; ++i) {
        if (!(r_grid[i] > 0.0))
            throw std::invalid_argument("phi_series: radii must be positive");
        if (i > 0 && !(r_grid[i] > r_grid[i - 1]))
            throw std::invalid_argument("phi_series: radii must be increasing");
    }

    PhiSeries series;
    series.r_grid = r_grid;
    series.gamma = gamma;
    series.integral_sinh_H.setZero(nr);
    series.integral_sinh_H_err.setZero(nr);
    series.integral_H.setZero(nr);
    series.integral_H_err.setZero(nr);
    series.g_values.setZero(nr);
    series.phi.setZero(nr);
    series.phi_err.setZero(nr);
    series.converged.assign(nr, false);

    struct Job {
        IntegralEstimate sinh_h, mean_h;
    };
    std::vector<Job> jobs(nr);
    const int workers = std::min(thread_count(), nr);
    std::atomic<int> next{0};
    auto work = [&] {
        for (int i = next.fetch_add(1); i < nr; i = next.fetch_add(1)) {
            BallRegion region{p, r_grid[i]};
            jobs[i].sinh_h = curvature_integral(surface, region, opts);
            if (with_mean_integral)
                jobs[i].mean_h = mean_curvature_integral(surface, region, opts);
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < workers; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    const double b = surface.space.b();
    const double expo = 0.5 * (surface.space.n - 1);
    series.complete = true;
    for (int i = 0; i < nr; ++i) {
        const double r = r_grid[i];
        series.integral_sinh_H[i] = jobs[i].sinh_h.value;
        series.integral_sinh_H_err[i] = jobs[i].sinh_h.abs_error;
        series.integral_H[i] = jobs[i].mean_h.value;
        series.integral_H_err[i] = jobs[i].mean_h.abs_error;
        const double weight = std::pow(std::sinh(b * r), -expo);
        series.g_values[i] = weight * jobs[i].sinh_h.value;
        const double amp = std::exp(0.5 * gamma * r);
        series.phi[i] = amp * series.g_values[i];
        series.phi_err[i] = amp * weight * jobs[i].sinh_h.abs_error;
        series.converged[i] = jobs[i].sinh_h.converged &&
                              (!with_mean_integral || jobs[i].mean_h.converged);
        series.complete = series.complete && series.converged[i];
    }
    return series;
}

Verdict verify_monotonicity(const PhiSeries& series) {
    Verdict v;
    const int nr = static_cast<int>(series.r_grid.size());
    v.passed = true;
    v.worst_violation = -1e300;
    for (int i = 0; i + 1 < nr; ++i) {
        const double deficit = series.phi[i] - series.phi[i + 1] -
                               (series.phi_err[i] + series.phi_err[i + 1]);
        v.residuals.push_back(deficit);
        if (deficit > v.worst_violation) {
            v.worst_violation = deficit;
            v.location = i;
        }
    }
    if (nr < 2) v.worst_violation = 0.0;
    v.passed = (v.worst_violation <= 0.0);
    return v;
}

double lemma_trace_residual(const ImmersedHypersurface& surface,
                            const AmbientPoint& p, int chart, const Vec& u,
                            double fd_step, double* scale) {
    const SpaceForm& space = surface.space;
    const int n = space.n;
    const double b = space.b();
    CurvaturePoint pt = curvature_point(surface, chart, u);
    const double rho = distance_raw(space, p.coords, pt.x);
    if (rho <= 1e-10)
        throw std::domain_error("lemma_trace_residual: p lies on the surface point");

    // Frame e_i = J F.col(i), F^T g F = I.
    ChartJet jet = surface.charts.at(chart).jet(u, 1);
    Mat F = frame_coefficients(pt.g);
    Mat h_frame = F.transpose() * pt.second_form * F;
    Mat P1f = n * pt.H * Mat::Identity(n, n) - h_frame;

    // d_j of the ambient field X(x(u)) = cosh(b rho(u)) x(u) - p by
    // central differences with one Richardson step.
    const Chart& ch = surface.charts.at(chart);
    auto xbar_at = [&](const Vec& w) {
        Vec x = ch.jet(w, 0).x;
        return position_vector_raw(space, p.coords, x);
    };
    const int d = space.coord_dim();
    Mat dxbar(d, n);
    for (int j = 0; j < n; ++j) {
        auto central = [&](double hh) -> Vec {
            Vec up = u, um = u;
            up[j] += hh;
            um[j] -= hh;
            return (xbar_at(up) - xbar_at(um)) / (2.0 * hh);
        };
        Vec c1 = central(fd_step), c2 = central(fd_step / 2.0);
        dxbar.col(j) = (4.0 * c2 - c1) / 3.0;
    }

    // lhs = sum_i <D_{e_i} X, P1 e_i> = sum_{i,a} P1f(a,i) <D_{e_i} X, e_a>
    Mat frame = jet.jac * F;  // ambient frame vectors
    Mat dX_frame = dxbar * F;  // D_{e_i} X in column i
    double lhs = 0.0;
    for (int i = 0; i < n; ++i)
        for (int a = 0; a < n; ++a)
            lhs += P1f(a, i) * minkowski_inner(dX_frame.col(i), frame.col(a));

    const double rhs = n * (n - 1) * pt.H * std::cosh(b * rho);
    if (scale) *scale = std::abs(rhs);
    return lhs - rhs;
}

double prop_divergence_residual(const ImmersedHypersurface& surface,
                                const AmbientPoint& p, const TestFunction& f,
                                int chart, const Vec& u, double fd_step,
                                double* scale) {
    const SpaceForm& space = surface.space;
    const int n = space.n;
    const double b = space.b();

    auto field = [&](const Vec& w) -> Vec {
        ChartPointData d = chart_point_data(surface, chart, w, p.coords);
        Vec c = d.xt_chart;
        Vec w_chart = n * d.pt.H * c - d.pt.shape * c;
        return f(w) * w_chart;
    };
    const double lhs = divergence_on_M(surface, chart, field, u, fd_step);

    ChartPointData d = chart_point_data(surface, chart, u, p.coords);
    const double fval = f(u);

    // <X, P1(grad f)> via chart components.
    double x_p1_gradf = 0.0;
    if (!f.one()) {
        Vec df(n);
        for (int j = 0; j < n; ++j) {
            Vec up = u, um = u;
            up[j] += fd_step;
            um[j] -= fd_step;
            const double c1 = (f(up) - f(um)) / (2.0 * fd_step);
            up[j] = u[j] + fd_step / 2;
            um[j] = u[j] - fd_step / 2;
            const double c2 = (f(up) - f(um)) / fd_step;
            df[j] = (4.0 * c2 - c1) / 3.0;
        }
        Vec gf = d.pt.g.ldlt().solve(df);
        Vec p1gf = n * d.pt.H * gf - d.pt.shape * gf;
        x_p1_gradf = d.xt_chart.dot(d.pt.g * p1gf);
    }

    const double term_h = n * (n - 1) * fval * d.pt.H * std::cosh(b * d.rho);
    const double term_rk =
        n * (n - 1) * (d.pt.R - space.kappa) * fval * d.xbar_eta;
    const double rhs = x_p1_gradf + term_h + term_rk;
    if (scale)
        *scale = std::abs(term_h) + std::abs(term_rk) + std::abs(x_p1_gradf) +
                 1e-30;
    return lhs - rhs;
}

IntegralEstimate divergence_theorem_check(const ImmersedHypersurface& surface,
                                          const AmbientPoint& p,
                                          const TestFunction& f,
                                          const CutoffFamily& cutoff, double r,
                                          const QuadratureOptions& opts,
                                          IntegralEstimate* magnitude) {
    if (surface.charts.size() != 1)
        throw std::runtime_error("divergence_theorem_check: single-chart only");

    auto field = [&](const Vec& w) -> Vec {
        ChartPointData d = chart_point_data(surface, 0, w, p.coords);
        const double weight = cutoff(r - d.rho) * f(w);
        Vec c = d.xt_chart;
        const int n = surface.space.n;
        Vec w_chart = n * d.pt.H * c - d.pt.shape * c;
        return weight * w_chart;
    };
    auto div_at = [&](const CurvaturePoint& pt) {
        return divergence_on_M(surface, 0, field, pt.u, 1e-4);
    };

    BallRegion region{p, r};
    IntegralEstimate est = integrate_over_ball(
        surface,
        [&](const CurvaturePoint& pt, double) { return div_at(pt); }, region,
        opts);
    if (magnitude)
        *magnitude = integrate_over_ball(
            surface,
            [&](const CurvaturePoint& pt, double) { return std::abs(div_at(pt)); },
            region, opts);
    return est;
}

Verdict cutoff_inequality_check(const ImmersedHypersurface& surface,
                                const AmbientPoint& p, const TestFunction& f,
                                double gamma, double s, double t, int m,
                                const QuadratureOptions& opts) {
    if (gamma < 0.0)
        throw std::invalid_argument("cutoff_inequality_check: gamma must be >= 0");
    if (!(t >= s) || !(s >= 0.0))
        throw std::invalid_argument("cutoff_inequality_check: need t >= s > 0");
    Verdict v;
    if (t == s) {
        v.passed = true;
        v.worst_violation = 0.0;
        return v;
    }

    const SpaceForm& space = surface.space;
    const int n = space.n;
    const double b = space.b();
    const double expo = 0.5 * (n - 1);
    CutoffFamily hm{m};

    auto weighted = [&](double tau) -> IntegralEstimate {
        BallRegion region{p, tau};
        return integrate_over_ball(
            surface,
            [&](const CurvaturePoint& pt, double rho) {
                return hm(tau - rho) * std::sinh(b * rho) * f(pt.u) * pt.H;
            },
            region, opts);
    };

    IntegralEstimate at_t = weighted(t), at_s = weighted(s);
    const double wt = std::pow(std::sinh(b * t), -expo);
    const double ws = std::pow(std::sinh(b * s), -expo);
    const double left = wt * at_t.value - ws * at_s.value;
    const double left_err = wt * at_t.abs_error + ws * at_s.abs_error;

    double inner_err_sum = 0.0;
    auto integrand = [&](double r) -> double {
        BallRegion region{p, r};
        IntegralEstimate inner = integrate_over_ball(
            surface,
            [&](const CurvaturePoint& pt, double rho) {
                ChartPointData d =
                    chart_point_data(surface, 0, pt.u, p.coords);
                if (d.rho <= 1e-12) return 0.0;
                double bracket = 0.0;
                if (!f.one()) {
                    // (1/n) <grad rho, P1(grad f)> needs grad f by FD.
                    const double h = 1e-4;
                    Vec df(n);
                    for (int j = 0; j < n; ++j) {
                        Vec up = pt.u, um = pt.u;
                        up[j] += h;
                        um[j] -= h;
                        df[j] = (f(up) - f(um)) / (2.0 * h);
                    }
                    Vec gf = d.pt.g.ldlt().solve(df);
                    Vec p1gf = n * d.pt.H * gf - d.pt.shape * gf;
                    ChartJet jet = surface.charts[0].jet(pt.u, 1);
                    Vec ambient = jet.jac * p1gf;
                    bracket += minkowski_inner(d.grad_rho, ambient) / n;
                }
                bracket += (n - 1) * (d.pt.R - space.kappa) * f(pt.u) *
                           minkowski_inner(d.grad_rho, d.pt.eta);
                return hm(r - rho) * std::sinh(b * rho) * bracket;
            },
            region, opts);
        inner_err_sum = std::max(inner_err_sum, inner.abs_error);
        return std::pow(std::sinh(b * r), -expo) * inner.value;
    };

    const double q16 = gauss16(integrand, s, t);
    const double q8 = gauss8(integrand, s, t);
    const double right = 0.5 * q16;
    const double right_err =
        0.5 * (std::abs(q16 - q8) +
               (t - s) * std::pow(std::sinh(b * s), -expo) * inner_err_sum);

    v.worst_violation = right - left - (left_err + right_err);
    v.passed = (v.worst_violation <= 0.0);
    v.residuals = {left, right, left_err, right_err};
    return v;
}

double corollary_bound_value(const SpaceForm& space, double gamma, double phi0,
                             double r) {
    const double b = space.b();
    const double expo = 0.5 * (space.n - 3);
    return std::pow(std::sinh(b * r), expo) * std::exp(-0.5 * gamma * r) * phi0;
}

CorollaryResult corollary_lower_bound(const ImmersedHypersurface& surface,
                                      const AmbientPoint& p, double gamma,
                                      double r0, const Vec& r_grid,
                                      const QuadratureOptions& opts) {
    if (!(r0 > 0.0))
        throw std::invalid_argument("corollary_lower_bound: r0 must be > 0");
    for (Eigen::Index i = 0; i < r_grid.size(); ++i)
        if (!(r_grid[i] > r0))
            throw std::invalid_argument(
                "corollary_lower_bound: grid radii must exceed r0");

    const SpaceForm& space = surface.space;
    const double b = space.b();
    const int nr = static_cast<int>(r_grid.size());

    CorollaryResult res;
    res.r_grid = r_grid;
    res.bound_B.setZero(nr);
    res.integral_H.setZero(nr);
    res.integral_H_err.setZero(nr);

    IntegralEstimate I0 = curvature_integral(surface, BallRegion{p, r0}, opts);
    const double w0 = std::exp(0.5 * gamma * r0) *
                      std::pow(std::sinh(b * r0), -0.5 * (space.n - 1));
    res.phi0 = w0 * I0.value;
    res.phi0_err = w0 * I0.abs_error;

    std::vector<IntegralEstimate> jh(nr);
    const int workers = std::min(thread_count(), nr);
    std::atomic<int> next{0};
    auto work = [&] {
        for (int i = next.fetch_add(1); i < nr; i = next.fetch_add(1))
            jh[i] = mean_curvature_integral(surface, BallRegion{p, r_grid[i]}, opts);
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < workers; ++t) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();

    Verdict v;
    v.passed = true;
    v.worst_violation = -1e300;
    for (int i = 0; i < nr; ++i) {
        res.integral_H[i] = jh[i].value;
        res.integral_H_err[i] = jh[i].abs_error;
        res.bound_B[i] = corollary_bound_value(space, gamma, res.phi0, r_grid[i]);
        const double bound_err =
            corollary_bound_value(space, gamma, res.phi0_err, r_grid[i]);
        const double deficit =
            res.bound_B[i] - res.integral_H[i] - (bound_err + jh[i].abs_error);
        v.residuals.push_back(deficit);
        if (deficit > v.worst_violation) {
            v.worst_violation = deficit;
            v.location = i;
        }
    }
    v.passed = (v.worst_violation <= 0.0);
    res.verdict = v;

    // Integrated corollary form, reporting only: C chosen so that
    // int_{r0}^{rmax} C e^{-Gamma tau/2} dtau matches B at the last radius.
    const double rmax = r_grid[nr - 1];
    const double denom = (gamma > 0.0)
                             ? (2.0 / gamma) * (std::exp(-0.5 * gamma * r0) -
                                                std::exp(-0.5 * gamma * rmax))
                             : (rmax - r0);
    res.descriptive_C =
        denom > 0.0
            ? res.bound_B[nr - 1] / std::pow(std::sinh(b * rmax), 0.5 * (space.n - 3)) /
                  denom
            : 0.0;
    return res;
}

DivergenceCriterion divergence_criterion(const SpaceForm& space, double gamma) {
    if (gamma < 0.0)
        throw std::invalid_argument("divergence_criterion: gamma must be >= 0");
    DivergenceCriterion c;
    const double threshold = (space.n - 3) * space.b();
    c.applies = gamma < threshold;
    c.rate = 0.5 * (threshold - gamma);
    return c;
}

}  // namespace hycurv
