#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hycurv/quadrature.hpp"

namespace hycurv {

struct SamplingSpec {
    int count = 200;
    std::uint64_t seed = 1;
    double radius = 5.0;    // truncation radius for unbounded charts
    double inset = 1e-3;    // relative inset from chart-domain edges
};

struct HypothesisReport {
    double H_min = 0.0, H_max = 0.0;
    double R_minus_kappa_min = 0.0;
    double gamma_min = 0.0;  // sup over samples of (n-1)(R-kappa)/H
    int sample_count = 0;
    bool admissible = false;  // H > 0, R >= kappa - tol, P1 bounds at all samples
    int orientation_sign = +1;
    Vec worst_u;  // sample attaining gamma_min (or the first violation)
    std::string note;

    bool admits(double gamma, double tol = 1e-9) const {
        return admissible && gamma >= gamma_min - tol;
    }
};

struct PhiSeries {
    Vec r_grid;
    Vec integral_sinh_H, integral_sinh_H_err;
    Vec integral_H, integral_H_err;  // filled when requested
    Vec g_values;
    Vec phi, phi_err;
    std::vector<bool> converged;
    bool complete = false;
    double gamma = 0.0;
};

struct Verdict {
    bool passed = false;
    double worst_violation = 0.0;  // > 0 means violation beyond error bars
    int location = -1;
    std::vector<double> residuals;
};

// Smooth monotone ramp: 0 for t <= 0, 1 for t >= 1/m, C^2 quintic
// smoothstep in between.
struct CutoffFamily {
    int m = 20;
    double operator()(double t) const;
    double deriv(double t) const;
};

// Chart-wise scalar test function; empty value means f == 1.
struct TestFunction {
    std::function<double(const Vec& u)> value;
    bool one() const { return !value; }
    double operator()(const Vec& u) const { return one() ? 1.0 : value(u); }

    static TestFunction constant_one() { return {}; }
    static TestFunction bump(const Vec& center, double width);
};

HypothesisReport hypothesis_report(const ImmersedHypersurface& surface,
                                   const SamplingSpec& sampling = {});

// phi(r) = e^{Gamma r/2} (sinh b r)^{-(n-1)/2} int_{M cap B_r} sinh(b rho) H dM.
PhiSeries phi_series(const ImmersedHypersurface& surface, const AmbientPoint& p,
                     double gamma, const Vec& r_grid,
                     const QuadratureOptions& opts = {},
                     bool with_mean_integral = false);

Verdict verify_monotonicity(const PhiSeries& series);

// Residual of tr(E -> P1((D_E X)^T)) = n(n-1) H cosh(b rho); optional
// out-param receives the magnitude of the right side.
double lemma_trace_residual(const ImmersedHypersurface& surface,
                            const AmbientPoint& p, int chart, const Vec& u,
                            double fd_step = 1e-4, double* scale = nullptr);

// Residual of div(P1(f X^T)) = <X, P1(grad f)> + n(n-1) f H cosh(b rho)
//                              + n(n-1)(R - kappa) f <X, eta>.
double prop_divergence_residual(const ImmersedHypersurface& surface,
                                const AmbientPoint& p, const TestFunction& f,
                                int chart, const Vec& u, double fd_step = 1e-4,
                                double* scale = nullptr);

// Integral of div(P1(h_m(r - rho) f X^T)) over M cap B_r; should vanish.
// When magnitude is non-null it receives the integral of |div|.
IntegralEstimate divergence_theorem_check(const ImmersedHypersurface& surface,
                                          const AmbientPoint& p,
                                          const TestFunction& f,
                                          const CutoffFamily& cutoff, double r,
                                          const QuadratureOptions& opts = {},
                                          IntegralEstimate* magnitude = nullptr);

// Both sides of the smoothed monotonicity inequality between radii s < t.
Verdict cutoff_inequality_check(const ImmersedHypersurface& surface,
                                const AmbientPoint& p, const TestFunction& f,
                                double gamma, double s, double t, int m,
                                const QuadratureOptions& opts = {});

// Exponential lower bound derived from phi(r0).
double corollary_bound_value(const SpaceForm& space, double gamma, double phi0,
                             double r);

struct CorollaryResult {
    Verdict verdict;
    Vec r_grid;
    Vec bound_B;
    Vec integral_H, integral_H_err;
    double phi0 = 0.0, phi0_err = 0.0;
    double descriptive_C = 0.0;  // constant of the integrated form, reporting only
};

CorollaryResult corollary_lower_bound(const ImmersedHypersurface& surface,
                                      const AmbientPoint& p, double gamma,
                                      double r0, const Vec& r_grid,
                                      const QuadratureOptions& opts = {});

struct DivergenceCriterion {
    bool applies = false;
    double rate = 0.0;  // ((n-3) b - Gamma)/2
};

DivergenceCriterion divergence_criterion(const SpaceForm& space, double gamma);

// Worker threads for independent integral jobs; HYCURV_THREADS overrides.
int thread_count();

}  // namespace hycurv
