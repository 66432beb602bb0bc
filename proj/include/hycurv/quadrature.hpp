#pragma once

#include <cstdint>
#include <functional>

#include "hycurv/surface.hpp"

namespace hycurv {

struct BallRegion {
    AmbientPoint center;
    double radius = 0.0;
};

struct IntegralEstimate {
    double value = 0.0;
    double abs_error = 0.0;
    std::int64_t evaluations = 0;
    bool converged = false;
};

struct QuadratureOptions {
    double rel_tol = 1e-6;
    double abs_floor = 1e-12;
    std::int64_t budget = 10'000'000;  // density evaluations
    int max_boundary_depth = -1;  // cap on straddle refinements (-1 = none)
};

// Pointwise density evaluated during integration.
using Density = std::function<double(const CurvaturePoint& pt, double rho)>;

// Integrates density * sqrt(det g) over {u in chart : rho(p, x(u)) < r}.
// Smooth panels use a product Gauss rule (order 5/3 embedded error);
// cells straddling {rho = r} are refined dyadically and contribute a
// sup|f| * measure bound to abs_error.
IntegralEstimate integrate_over_ball(const ImmersedHypersurface& surface,
                                     const Density& density,
                                     const BallRegion& region,
                                     const QuadratureOptions& opts = {});

// density = sinh(b rho) * H
IntegralEstimate curvature_integral(const ImmersedHypersurface& surface,
                                    const BallRegion& region,
                                    const QuadratureOptions& opts = {});

// density = H
IntegralEstimate mean_curvature_integral(const ImmersedHypersurface& surface,
                                         const BallRegion& region,
                                         const QuadratureOptions& opts = {});

// Chart divergence (1/sqrt(det g)) d_i (sqrt(det g) field^i) by central
// differences with one Richardson step.
double divergence_on_M(const ImmersedHypersurface& surface, int chart,
                       const std::function<Vec(const Vec&)>& field, const Vec& u,
                       double h = 1e-4);

}  // namespace hycurv
