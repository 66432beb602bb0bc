#include "hycurv/space.hpp"

namespace hycurv {

double minkowski_inner(const Vec& u, const Vec& v) {
    if (u.size() != v.size() || u.size() < 2)
        throw std::invalid_argument("minkowski_inner: dimension mismatch");
    double s = -u[0] * v[0];
    for (Eigen::Index i = 1; i < u.size(); ++i) s += u[i] * v[i];
    return s;
}

bool on_hyperboloid(const SpaceForm& space, const Vec& x, double tol) {
    if (x.size() != space.coord_dim()) return false;
    if (x[0] <= 0.0) return false;
    const double q = minkowski_inner(x, x) - 1.0 / space.kappa;
    return std::abs(q) <= tol * std::max(1.0, std::abs(1.0 / space.kappa));
}

AmbientPoint make_point(const SpaceForm& space, const Vec& coords,
                        const CoreTolerances& tol) {
    if (coords.size() != space.coord_dim())
        throw std::invalid_argument("make_point: wrong coordinate dimension");
    if (coords[0] <= 0.0)
        throw std::invalid_argument("make_point: not on the upper sheet");
    if (!on_hyperboloid(space, coords, tol.on_surface))
        throw std::invalid_argument("make_point: point not on the hyperboloid");
    return AmbientPoint{coords};
}

AmbientVector make_tangent(const SpaceForm& space, const AmbientPoint& base,
                           const Vec& coords, const CoreTolerances& tol) {
    if (coords.size() != space.coord_dim())
        throw std::invalid_argument("make_tangent: wrong coordinate dimension");
    const double t = minkowski_inner(base.coords, coords);
    const double scale = std::max(1.0, coords.norm() * base.coords.norm());
    if (std::abs(t) > tol.tangency * scale)
        throw std::invalid_argument("make_tangent: vector not tangent at base");
    return AmbientVector{base.coords, coords};
}

AmbientPoint origin(const SpaceForm& space) {
    Vec x = Vec::Zero(space.coord_dim());
    x[0] = 1.0 / space.b();
    return AmbientPoint{x};
}

double distance_raw(const SpaceForm& space, const Vec& p, const Vec& q,
                    const CoreTolerances& tol) {
    double c = space.kappa * minkowski_inner(p, q);
    if (c < 1.0) {
        if (c < 1.0 - tol.acosh_clamp)
            throw std::domain_error(
                "geodesic_distance: kappa<p,q> below 1 beyond tolerance");
        c = 1.0;
    }
    return std::acosh(c) / space.b();
}

double geodesic_distance(const SpaceForm& space, const AmbientPoint& p,
                         const AmbientPoint& q, const CoreTolerances& tol) {
    return distance_raw(space, p.coords, q.coords, tol);
}

Vec grad_distance_raw(const SpaceForm& space, const Vec& p, const Vec& q) {
    const double b = space.b();
    const double c = std::max(1.0, space.kappa * minkowski_inner(p, q));
    const double sh = std::sqrt(c * c - 1.0);  // sinh(b rho)
    return (b / sh) * (c * q - p);
}

AmbientVector grad_distance(const SpaceForm& space, const AmbientPoint& p,
                            const AmbientPoint& q, const CoreTolerances& tol) {
    const double rho = geodesic_distance(space, p, q, tol);
    if (rho <= tol.coincident)
        throw std::domain_error("grad_distance: undefined at the pole p = q");
    return AmbientVector{q.coords, grad_distance_raw(space, p.coords, q.coords)};
}

Vec position_vector_raw(const SpaceForm& space, const Vec& p, const Vec& q) {
    const double c = std::max(1.0, space.kappa * minkowski_inner(p, q));
    return c * q - p;
}

AmbientVector position_vector(const SpaceForm& space, const AmbientPoint& p,
                              const AmbientPoint& q, const CoreTolerances&) {
    return AmbientVector{q.coords, position_vector_raw(space, p.coords, q.coords)};
}

double distance_hessian_apply(const SpaceForm& space, const AmbientPoint& p,
                              const AmbientPoint& q, const AmbientVector& U,
                              const AmbientVector& V,
                              const CoreTolerances& tol) {
    const double rho = geodesic_distance(space, p, q, tol);
    if (rho <= tol.coincident)
        throw std::domain_error("distance_hessian_apply: coth singular at rho = 0");
    const double b = space.b();
    const Vec g = grad_distance_raw(space, p.coords, q.coords);
    const double proj = minkowski_inner(U.coords, V.coords) -
                        minkowski_inner(g, U.coords) * minkowski_inner(g, V.coords);
    return b / std::tanh(b * rho) * proj;
}

AmbientPoint geodesic_point(const SpaceForm& space, const AmbientPoint& p,
                            const AmbientVector& v, double s) {
    const double b = space.b();
    Vec x = std::cosh(b * s) * p.coords + (std::sinh(b * s) / b) * v.coords;
    return AmbientPoint{x};
}

Vec project_tangent(const SpaceForm& space, const Vec& x, const Vec& w) {
    // Unit timelike normal of the hyperboloid at x is b*x.
    const double b2 = -space.kappa;
    return w + b2 * minkowski_inner(w, x) * x;
}

Mat lorentz_boost(const SpaceForm& space, int axis, double rapidity) {
    const int d = space.coord_dim();
    if (axis < 1 || axis >= d)
        throw std::invalid_argument("lorentz_boost: axis out of range");
    Mat L = Mat::Identity(d, d);
    L(0, 0) = std::cosh(rapidity);
    L(axis, axis) = std::cosh(rapidity);
    L(0, axis) = std::sinh(rapidity);
    L(axis, 0) = std::sinh(rapidity);
    return L;
}

Mat spatial_rotation(const SpaceForm& space, int i, int j, double angle) {
    const int d = space.coord_dim();
    if (i < 1 || j < 1 || i >= d || j >= d || i == j)
        throw std::invalid_argument("spatial_rotation: bad plane");
    Mat L = Mat::Identity(d, d);
    L(i, i) = std::cos(angle);
    L(j, j) = std::cos(angle);
    L(i, j) = -std::sin(angle);
    L(j, i) = std::sin(angle);
    return L;
}

}  // namespace hycurv
