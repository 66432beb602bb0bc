#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

// Hyperboloid model of H^{n+1}(kappa), kappa < 0, embedded in Minkowski
// space R^{1,n+1} with signature <x,y> = -x0*y0 + sum_{i>=1} xi*yi.
// Points live on the upper sheet of <x,x> = 1/kappa.

namespace hycurv {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

struct CoreTolerances {
    double on_surface = 1e-12;   // hyperboloid membership
    double tangency = 1e-10;     // <base, v> = 0
    double coincident = 1e-12;   // p == q cutoff for gradient/Hessian
    double acosh_clamp = 1e-12;  // arccosh argument clamp window below 1
};

struct SpaceForm {
    double kappa;  // sectional curvature, < 0
    int n;         // hypersurface dimension, >= 3

    SpaceForm(double kappa_, int n_) : kappa(kappa_), n(n_) {
        if (!(kappa < 0.0))
            throw std::invalid_argument("SpaceForm: kappa must be negative");
        if (n < 3)
            throw std::invalid_argument("SpaceForm: n must be >= 3");
    }

    double b() const { return std::sqrt(-kappa); }  // sqrt(-kappa)
    int ambient_dim() const { return n + 1; }
    int coord_dim() const { return n + 2; }
};

double minkowski_inner(const Vec& u, const Vec& v);

struct AmbientPoint {
    Vec coords;
};

struct AmbientVector {
    Vec base;    // coordinates of the base point
    Vec coords;  // tangent components
};

// Checked constructors.
AmbientPoint make_point(const SpaceForm& space, const Vec& coords,
                        const CoreTolerances& tol = {});
AmbientVector make_tangent(const SpaceForm& space, const AmbientPoint& base,
                           const Vec& coords, const CoreTolerances& tol = {});

// The canonical base point (1/b, 0, ..., 0).
AmbientPoint origin(const SpaceForm& space);

bool on_hyperboloid(const SpaceForm& space, const Vec& x, double tol);

// rho = arccosh(kappa <p,q>) / b.  Arguments within acosh_clamp below 1
// clamp to 1; anything lower is a model-consistency error.
double geodesic_distance(const SpaceForm& space, const AmbientPoint& p,
                         const AmbientPoint& q, const CoreTolerances& tol = {});

// Gradient of rho(p, .) at q: unit tangent at q pointing away from p.
AmbientVector grad_distance(const SpaceForm& space, const AmbientPoint& p,
                            const AmbientPoint& q, const CoreTolerances& tol = {});

// X = (sinh(b rho)/b) grad rho = cosh(b rho) q - p; zero at q = p.
AmbientVector position_vector(const SpaceForm& space, const AmbientPoint& p,
                              const AmbientPoint& q, const CoreTolerances& tol = {});

// <Hess rho (U), V> = b coth(b rho) (<U,V> - <grad rho,U><grad rho,V>).
double distance_hessian_apply(const SpaceForm& space, const AmbientPoint& p,
                              const AmbientPoint& q, const AmbientVector& U,
                              const AmbientVector& V,
                              const CoreTolerances& tol = {});

// Unit-speed geodesic: gamma(s) = cosh(b s) p + sinh(b s) v / b,
// v a unit tangent at p.
AmbientPoint geodesic_point(const SpaceForm& space, const AmbientPoint& p,
                            const AmbientVector& v, double s);

// Orthogonal projection of an ambient Minkowski vector onto the tangent
// space of the hyperboloid at x.
Vec project_tangent(const SpaceForm& space, const Vec& x, const Vec& w);

// Isometries (linear maps preserving the Minkowski form and the upper
// sheet): boost in the (0, axis) plane and rotation in (i, j), i,j >= 1.
Mat lorentz_boost(const SpaceForm& space, int axis, double rapidity);
Mat spatial_rotation(const SpaceForm& space, int i, int j, double angle);

// Raw-vector variants used in hot paths; inputs assumed valid.
double distance_raw(const SpaceForm& space, const Vec& p, const Vec& q,
                    const CoreTolerances& tol = {});
Vec grad_distance_raw(const SpaceForm& space, const Vec& p, const Vec& q);
Vec position_vector_raw(const SpaceForm& space, const Vec& p, const Vec& q);

}  // namespace hycurv
