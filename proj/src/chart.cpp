#include "hycurv/chart.hpp"

namespace hycurv {

namespace {

// k-th sin/cos factor of component j, differentiated `order` times.
// Returns false if component j has no factor in theta_k (derivative is 0).
inline bool factor(int k, int j, int m, double theta, int order, double& out) {
    const bool is_sin = (k < j);
    const bool is_cos = (k == j && j < m);
    if (!is_sin && !is_cos) return false;
    if (is_sin) {
        switch (order) {
            case 0: out = std::sin(theta); break;
            case 1: out = std::cos(theta); break;
            default: out = -std::sin(theta); break;
        }
    } else {
        switch (order) {
            case 0: out = std::cos(theta); break;
            case 1: out = -std::sin(theta); break;
            default: out = -std::cos(theta); break;
        }
    }
    return true;
}

// Product over factors of component j with derivative counts per angle.
double component(int j, int m, const Vec& theta, int da, int db) {
    // da, db: angle indices differentiated once each (-1 = none).
    double prod = 1.0;
    const int kmax = (j < m) ? j : m - 1;
    // Any differentiated angle outside the factor set kills the term.
    if (da >= 0 && da > kmax) return 0.0;
    if (db >= 0 && db > kmax) return 0.0;
    for (int k = 0; k <= kmax; ++k) {
        int order = (da == k ? 1 : 0) + (db == k ? 1 : 0);
        double f;
        if (!factor(k, j, m, theta[k], order, f)) return 0.0;
        prod *= f;
    }
    return prod;
}

}  // namespace

Vec SphereMap::value(const Vec& theta) const {
    Vec v(m + 1);
    for (int j = 0; j <= m; ++j) v[j] = component(j, m, theta, -1, -1);
    return v;
}

Vec SphereMap::d1(const Vec& theta, int a) const {
    Vec v(m + 1);
    for (int j = 0; j <= m; ++j) v[j] = component(j, m, theta, a, -1);
    return v;
}

Vec SphereMap::d2(const Vec& theta, int a, int c) const {
    Vec v(m + 1);
    for (int j = 0; j <= m; ++j) v[j] = component(j, m, theta, a, c);
    return v;
}

ChartJet fd_jet(const std::function<Vec(const Vec&)>& eval, const Vec& u,
                int order, double h) {
    const int n = static_cast<int>(u.size());
    ChartJet jet;
    jet.x = eval(u);
    const int d = static_cast<int>(jet.x.size());
    if (order < 1) return jet;

    auto shift = [&](int i, double s) {
        Vec w = u;
        w[i] += s;
        return eval(w);
    };
    auto shift2 = [&](int i, double si, int j, double sj) {
        Vec w = u;
        w[i] += si;
        w[j] += sj;
        return eval(w);
    };

    jet.jac.resize(d, n);
    for (int i = 0; i < n; ++i) {
        Vec c1 = (shift(i, h) - shift(i, -h)) / (2.0 * h);
        Vec c2 = (shift(i, h / 2) - shift(i, -h / 2)) / h;
        jet.jac.col(i) = (4.0 * c2 - c1) / 3.0;
    }
    if (order < 2) return jet;

    jet.hess.resize(n * (n + 1) / 2);
    for (int i = 0; i < n; ++i) {
        Vec s1 = (shift(i, h) - 2.0 * jet.x + shift(i, -h)) / (h * h);
        Vec s2 = (shift(i, h / 2) - 2.0 * jet.x + shift(i, -h / 2)) / (h * h / 4.0);
        jet.hess[sym_index(i, i, n)] = (4.0 * s2 - s1) / 3.0;
        for (int j = i + 1; j < n; ++j) {
            auto mixed = [&](double hh) -> Vec {
                return (shift2(i, hh, j, hh) + shift2(i, -hh, j, -hh) -
                        shift2(i, hh, j, -hh) - shift2(i, -hh, j, hh)) /
                       (4.0 * hh * hh);
            };
            Vec m1 = mixed(h), m2 = mixed(h / 2);
            jet.hess[sym_index(i, j, n)] = (4.0 * m2 - m1) / 3.0;
        }
    }
    return jet;
}

}  // namespace hycurv
