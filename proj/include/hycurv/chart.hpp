#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "hycurv/space.hpp"

namespace hycurv {

struct Box {
    Vec lo, hi;
    int dim() const { return static_cast<int>(lo.size()); }
    double volume() const { return (hi - lo).prod(); }
};

// Second-partial storage: entry for each pair i <= j.
inline int sym_index(int i, int j, int n) {
    if (i > j) std::swap(i, j);
    return i * n - i * (i - 1) / 2 + (j - i);
}

// Value, Jacobian and (optionally) ambient second partials of a chart
// evaluator at one parameter.
struct ChartJet {
    Vec x;                  // coord_dim
    Mat jac;                // coord_dim x n, columns d_i x
    std::vector<Vec> hess;  // n(n+1)/2 vectors d_i d_j x, i <= j
};

struct Chart {
    Box domain;  // entries may be +-inf for unbounded directions
    // order: 0 = value only, 1 = + Jacobian, 2 = + second partials.
    std::function<ChartJet(const Vec& u, int order)> jet;
    // Box guaranteed to contain {u in domain : rho(p, x(u)) < r}, or
    // nullopt when no such compact box can be produced.
    std::function<std::optional<Box>(const Vec& p, double r)> clip;
};

// Hyperspherical unit vector in R^{m+1} from m angles
// (theta_0..theta_{m-2} in [0,pi], theta_{m-1} in [0,2pi)):
//   v_j = prod_{k<j} sin(theta_k) * (cos(theta_j) if j < m else 1).
// Exact derivatives by differentiating the sin/cos factors.
struct SphereMap {
    int m;
    explicit SphereMap(int m_) : m(m_) {}
    Vec value(const Vec& theta) const;
    Vec d1(const Vec& theta, int a) const;
    Vec d2(const Vec& theta, int a, int c) const;
};

// Finite-difference jet (central differences + one Richardson step) for
// charts supplied without analytic derivatives.
ChartJet fd_jet(const std::function<Vec(const Vec&)>& eval, const Vec& u,
                int order, double h);

}  // namespace hycurv
