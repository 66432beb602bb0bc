#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hycurv/chart.hpp"
#include "hycurv/space.hpp"

namespace hycurv {

enum class Family { geodesic_sphere, horosphere, equidistant, geodesic_tube };
enum class DerivativeMode { analytic, finite_difference };
enum class ChartStyle { polar, cartesian };

std::string family_name(Family f);
Family family_from_name(const std::string& name);

struct CatalogSpec {
    Family family;
    double param = 0.0;  // sphere radius a / equidistant offset t / tube radius s
    ChartStyle chart_style = ChartStyle::polar;  // horosphere & equidistant only
    DerivativeMode mode = DerivativeMode::analytic;
    double fd_step = 1e-4;
    int orientation = 0;  // 0 = auto (tr A >= 0 at base point), else +-1
};

struct ImmersedHypersurface {
    SpaceForm space;
    std::vector<Chart> charts;
    int orientation_sign = +1;  // multiplies the cross-product normal
    bool proper = true;
    bool compact = false;
    std::optional<Family> family;
    // Constant principal curvatures for catalog members (test oracle);
    // sorted ascending.
    std::optional<std::vector<double>> principal_oracle;
};

// All pointwise extrinsic data at one chart parameter.
struct CurvaturePoint {
    Vec u;
    Vec x;
    Vec eta;
    Mat g;            // first fundamental form
    Mat second_form;  // symmetrized h_ij = <d_i d_j x, eta>
    Mat shape;        // A = g^{-1} h (mixed indices)
    Vec principal;    // eigenvalues of A, ascending
    double H = 0.0;
    double A_norm_sq = 0.0;
    double R = 0.0;
    Vec p1_eigs;      // nH - k_i, ascending
    double sqrt_det_g = 0.0;
};

struct PsdBoundReport {
    bool applicable = false;  // H > 0 and R >= kappa at the point
    bool psd = false;
    bool upper_ok = false;
    double margin = 0.0;  // min(min lambda, 2nH - max lambda)
};

// Pointwise pipeline.
Mat first_fundamental(const ImmersedHypersurface& surface, int chart, const Vec& u);
AmbientVector unit_normal(const ImmersedHypersurface& surface, int chart, const Vec& u);
Mat shape_operator(const ImmersedHypersurface& surface, int chart, const Vec& u);
double mean_curvature(const Mat& A, int n);
double scalar_curvature_gauss(double H, double A_norm_sq, const SpaceForm& space);
// Returns the matrix nH I - A; eigenvalues (ascending) written to eigs.
Mat newton_p1(const Mat& A, double H, int n, Vec* eigs = nullptr);
PsdBoundReport psd_bound_check(const CurvaturePoint& point, const SpaceForm& space,
                               double tol = 1e-9);

CurvaturePoint curvature_point(const ImmersedHypersurface& surface, int chart,
                               const Vec& u);

ImmersedHypersurface catalog_build(const CatalogSpec& spec, const SpaceForm& space);

// Post-compose every chart with a hyperbolic isometry L.
ImmersedHypersurface apply_isometry(const ImmersedHypersurface& surface, const Mat& L);

// Canonical experiment centers for a family: a point at parameter
// `offset` along the family's transversal symmetry direction.  Up to
// isometry these exhaust the possible centers for horosphere,
// equidistant and tube; for the sphere offset = 0 is the center.
AmbientPoint canonical_center(const ImmersedHypersurface& surface, double offset);

}  // namespace hycurv
