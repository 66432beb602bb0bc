#include <cmath>
#include <limits>

#include "hycurv/surface.hpp"

namespace hycurv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = 3.14159265358979323846;

Vec angles_lo(int m) {
    return Vec::Zero(m);
}
Vec angles_hi(int m) {
    Vec hi = Vec::Constant(m, kPi);
    hi[m - 1] = 2.0 * kPi;
    return hi;
}

// ---- geodesic sphere of radius a about the canonical origin ----------
Chart sphere_chart(const SpaceForm& space, double a) {
    const int n = space.n, d = space.coord_dim();
    const double b = space.b();
    const double C = std::cosh(b * a) / b;
    const double S = std::sinh(b * a) / b;
    SphereMap sm(n);  // unit vector in R^{n+1}, occupies coords 1..n+1

    Chart chart;
    chart.domain = Box{angles_lo(n), angles_hi(n)};
    chart.jet = [n, d, C, S, sm](const Vec& u, int order) {
        ChartJet jet;
        jet.x = Vec::Zero(d);
        jet.x[0] = C;
        jet.x.tail(d - 1) = S * sm.value(u);
        if (order >= 1) {
            jet.jac = Mat::Zero(d, n);
            for (int a2 = 0; a2 < n; ++a2)
                jet.jac.col(a2).tail(d - 1) = S * sm.d1(u, a2);
        }
        if (order >= 2) {
            jet.hess.resize(n * (n + 1) / 2);
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) {
                    Vec hv = Vec::Zero(d);
                    hv.tail(d - 1) = S * sm.d2(u, i, j);
                    jet.hess[sym_index(i, j, n)] = hv;
                }
        }
        return jet;
    };
    Box dom = chart.domain;
    chart.clip = [dom](const Vec&, double) { return std::optional<Box>(dom); };
    return chart;
}

// ---- horosphere through the origin, ideal point along +e1 ------------
// Polar chart: u = (s, omega), flat intrinsic metric ds^2 + s^2 dOmega^2.
Chart horosphere_chart_polar(const SpaceForm& space) {
    const int n = space.n, d = space.coord_dim();
    const double b = space.b();
    SphereMap sm(n - 1);  // unit vector in R^n, occupies coords 2..n+1

    Chart chart;
    chart.domain = Box{Vec::Zero(n), Vec::Constant(n, kInf)};
    chart.domain.lo.tail(n - 1) = angles_lo(n - 1);
    chart.domain.hi.tail(n - 1) = angles_hi(n - 1);
    chart.jet = [n, d, b, sm](const Vec& u, int order) {
        const double s = u[0];
        const Vec w = u.tail(n - 1);
        ChartJet jet;
        jet.x = Vec::Zero(d);
        jet.x[0] = (1.0 + b * b * s * s / 2.0) / b;
        jet.x[1] = b * s * s / 2.0;
        jet.x.tail(n) = s * sm.value(w);
        if (order >= 1) {
            jet.jac = Mat::Zero(d, n);
            jet.jac(0, 0) = b * s;
            jet.jac(1, 0) = b * s;
            jet.jac.col(0).tail(n) = sm.value(w);
            for (int a = 0; a < n - 1; ++a)
                jet.jac.col(1 + a).tail(n) = s * sm.d1(w, a);
        }
        if (order >= 2) {
            jet.hess.resize(n * (n + 1) / 2);
            Vec ss = Vec::Zero(d);
            ss[0] = b;
            ss[1] = b;
            jet.hess[sym_index(0, 0, n)] = ss;
            for (int a = 0; a < n - 1; ++a) {
                Vec sv = Vec::Zero(d);
                sv.tail(n) = sm.d1(w, a);
                jet.hess[sym_index(0, 1 + a, n)] = sv;
                for (int c = a; c < n - 1; ++c) {
                    Vec vv = Vec::Zero(d);
                    vv.tail(n) = s * sm.d2(w, a, c);
                    jet.hess[sym_index(1 + a, 1 + c, n)] = vv;
                }
            }
        }
        return jet;
    };
    SpaceForm sp = space;
    Box dom = chart.domain;
    chart.clip = [sp, dom, b](const Vec& p, double r) -> std::optional<Box> {
        const Vec base = origin(sp).coords;
        const double d0 = distance_raw(sp, p, base);
        Box box = dom;
        box.hi[0] = (2.0 / b) * std::sinh(b * (r + d0) / 2.0);
        return box;
    };
    return chart;
}

// Cartesian chart of the same horosphere: u in R^n, induced metric is
// the identity.
Chart horosphere_chart_cartesian(const SpaceForm& space) {
    const int n = space.n, d = space.coord_dim();
    const double b = space.b();

    Chart chart;
    chart.domain = Box{Vec::Constant(n, -kInf), Vec::Constant(n, kInf)};
    chart.jet = [n, d, b](const Vec& u, int order) {
        const double q = u.squaredNorm();
        ChartJet jet;
        jet.x = Vec::Zero(d);
        jet.x[0] = (1.0 + b * b * q / 2.0) / b;
        jet.x[1] = b * q / 2.0;
        jet.x.tail(n) = u;
        if (order >= 1) {
            jet.jac = Mat::Zero(d, n);
            for (int i = 0; i < n; ++i) {
                jet.jac(0, i) = b * u[i];
                jet.jac(1, i) = b * u[i];
                jet.jac(2 + i, i) = 1.0;
            }
        }
        if (order >= 2) {
            jet.hess.resize(n * (n + 1) / 2);
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) {
                    Vec hv = Vec::Zero(d);
                    if (i == j) {
                        hv[0] = b;
                        hv[1] = b;
                    }
                    jet.hess[sym_index(i, j, n)] = hv;
                }
        }
        return jet;
    };
    SpaceForm sp = space;
    chart.clip = [sp, n, b](const Vec& p, double r) -> std::optional<Box> {
        const Vec base = origin(sp).coords;
        const double d0 = distance_raw(sp, p, base);
        const double smax = (2.0 / b) * std::sinh(b * (r + d0) / 2.0);
        return Box{Vec::Constant(n, -smax), Vec::Constant(n, smax)};
    };
    return chart;
}

// ---- equidistant hypersurface at distance t from the totally geodesic
// hyperplane x_{n+1} = 0 -----------------------------------------------
Chart equidistant_chart_polar(const SpaceForm& space, double t) {
    const int n = space.n, d = space.coord_dim();
    const double b = space.b();
    const double C = std::cosh(b * t) / b;
    const double Z = std::sinh(b * t) / b;
    SphereMap sm(n - 1);  // unit vector in R^n, occupies coords 1..n

    Chart chart;
    chart.domain = Box{Vec::Zero(n), Vec::Constant(n, kInf)};
    chart.domain.lo.tail(n - 1) = angles_lo(n - 1);
    chart.domain.hi.tail(n - 1) = angles_hi(n - 1);
    chart.jet = [n, d, C, Z, sm](const Vec& u, int order) {
        const double w = u[0];
        const Vec th = u.tail(n - 1);
        const double f = std::sqrt(1.0 + w * w);
        ChartJet jet;
        jet.x = Vec::Zero(d);
        jet.x[0] = C * f;
        jet.x.segment(1, n) = C * w * sm.value(th);
        jet.x[n + 1] = Z;
        if (order >= 1) {
            jet.jac = Mat::Zero(d, n);
            jet.jac(0, 0) = C * w / f;
            jet.jac.col(0).segment(1, n) = C * sm.value(th);
            for (int a = 0; a < n - 1; ++a)
                jet.jac.col(1 + a).segment(1, n) = C * w * sm.d1(th, a);
        }
        if (order >= 2) {
            jet.hess.resize(n * (n + 1) / 2);
            Vec ww = Vec::Zero(d);
            ww[0] = C / (f * f * f);
            jet.hess[sym_index(0, 0, n)] = ww;
            for (int a = 0; a < n - 1; ++a) {
                Vec wv = Vec::Zero(d);
                wv.segment(1, n) = C * sm.d1(th, a);
                jet.hess[sym_index(0, 1 + a, n)] = wv;
                for (int c = a; c < n - 1; ++c) {
                    Vec vv = Vec::Zero(d);
                    vv.segment(1, n) = C * w * sm.d2(th, a, c);
                    jet.hess[sym_index(1 + a, 1 + c, n)] = vv;
                }
            }
        }
        return jet;
    };
    SpaceForm sp = space;
    Box dom = chart.domain;
    const double cbt = std::cosh(b * t), sbt = std::sinh(b * t);
    chart.clip = [sp, dom, b, cbt, sbt, C, Z, d](const Vec& p,
                                                 double r) -> std::optional<Box> {
        Vec base = Vec::Zero(d);
        base[0] = C;
        base[d - 1] = Z;
        const double d0 = distance_raw(sp, p, base);
        const double Q = (std::cosh(b * (r + d0)) + sbt * sbt) / (cbt * cbt);
        Box box = dom;
        box.hi[0] = std::sqrt(std::max(Q * Q - 1.0, 0.0));
        return box;
    };
    return chart;
}

Chart equidistant_chart_cartesian(const SpaceForm& space, double t) {
    const int n = space.n, d = space.coord_dim();
    const double b = space.b();
    const double C = std::cosh(b * t) / b;
    const double Z = std::sinh(b * t) / b;

    Chart chart;
    chart.domain = Box{Vec::Constant(n, -kInf), Vec::Constant(n, kInf)};
    chart.jet = [n, d, C, Z](const Vec& u, int order) {
        const double f = std::sqrt(1.0 + u.squaredNorm());
        ChartJet jet;
        jet.x = Vec::Zero(d);
        jet.x[0] = C * f;
        jet.x.segment(1, n) = C * u;
        jet.x[n + 1] = Z;
        if (order >= 1) {
            jet.jac = Mat::Zero(d, n);
            for (int i = 0; i < n; ++i) {
                jet.jac(0, i) = C * u[i] / f;
                jet.jac(1 + i, i) = C;
            }
        }
        if (order >= 2) {
            jet.hess.resize(n * (n + 1) / 2);
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) {
                    Vec hv = Vec::Zero(d);
                    hv[0] = C * ((i == j ? 1.0 : 0.0) / f -
                                 u[i] * u[j] / (f * f * f));
                    jet.hess[sym_index(i, j, n)] = hv;
                }
        }
        return jet;
    };
    SpaceForm sp = space;
    const double cbt = std::cosh(b * t), sbt = std::sinh(b * t);
    chart.clip = [sp, n, d, b, cbt, sbt, C, Z](const Vec& p,
                                               double r) -> std::optional<Box> {
        Vec base = Vec::Zero(d);
        base[0] = C;
        base[d - 1] = Z;
        const double d0 = distance_raw(sp, p, base);
        const double Q = (std::cosh(b * (r + d0)) + sbt * sbt) / (cbt * cbt);
        const double wmax = std::sqrt(std::max(Q * Q - 1.0, 0.0));
        return Box{Vec::Constant(n, -wmax), Vec::Constant(n, wmax)};
    };
    return chart;
}

// ---- tube of radius s about the geodesic through the origin in the
// e1 direction ---------------------------------------------------------
Chart tube_chart(const SpaceForm& space, double s) {
    const int n = space.n, d = space.coord_dim();
    const double b = space.b();
    const double C = std::cosh(b * s) / b;
    const double S = std::sinh(b * s) / b;
    SphereMap sm(n - 1);  // unit normal direction in R^n, coords 2..n+1

    Chart chart;
    chart.domain = Box{Vec::Constant(n, -kInf), Vec::Constant(n, kInf)};
    chart.domain.lo[0] = -kInf;
    chart.domain.lo.tail(n - 1) = angles_lo(n - 1);
    chart.domain.hi.tail(n - 1) = angles_hi(n - 1);
    chart.jet = [n, d, b, C, S, sm](const Vec& u, int order) {
        const double z = u[0];
        const Vec th = u.tail(n - 1);
        const double cz = std::cosh(b * z), sz = std::sinh(b * z);
        ChartJet jet;
        jet.x = Vec::Zero(d);
        jet.x[0] = C * cz;
        jet.x[1] = C * sz;
        jet.x.tail(n) = S * sm.value(th);
        if (order >= 1) {
            jet.jac = Mat::Zero(d, n);
            jet.jac(0, 0) = C * b * sz;
            jet.jac(1, 0) = C * b * cz;
            for (int a = 0; a < n - 1; ++a)
                jet.jac.col(1 + a).tail(n) = S * sm.d1(th, a);
        }
        if (order >= 2) {
            jet.hess.resize(n * (n + 1) / 2);
            Vec zz = Vec::Zero(d);
            zz[0] = C * b * b * cz;
            zz[1] = C * b * b * sz;
            jet.hess[sym_index(0, 0, n)] = zz;
            for (int a = 0; a < n - 1; ++a) {
                jet.hess[sym_index(0, 1 + a, n)] = Vec::Zero(d);
                for (int c = a; c < n - 1; ++c) {
                    Vec vv = Vec::Zero(d);
                    vv.tail(n) = S * sm.d2(th, a, c);
                    jet.hess[sym_index(1 + a, 1 + c, n)] = vv;
                }
            }
        }
        return jet;
    };
    SpaceForm sp = space;
    Box dom = chart.domain;
    const double cbs = std::cosh(b * s);
    chart.clip = [sp, dom, b, cbs](const Vec& p, double r) -> std::optional<Box> {
        const Vec base = origin(sp).coords;
        const double d0 = distance_raw(sp, p, base);
        const double arg = std::cosh(b * (r + d0)) / cbs;
        Box box = dom;
        if (arg < 1.0) {
            box.lo[0] = 0.0;
            box.hi[0] = 0.0;
            return box;
        }
        const double zmax = std::acosh(arg) / b;
        box.lo[0] = -zmax;
        box.hi[0] = zmax;
        return box;
    };
    return chart;
}

// Interior base point for orientation fixing.
Vec base_parameter(Family family, int n) {
    Vec u = Vec::Constant(n, kPi / 2.0);
    switch (family) {
        case Family::geodesic_sphere:
            break;
        case Family::horosphere:
        case Family::equidistant:
        case Family::geodesic_tube:
            u[0] = 0.7;  // radial / axial coordinate
            break;
    }
    return u;
}

Chart with_fd_derivatives(const Chart& analytic, double h) {
    Chart chart = analytic;
    auto base = analytic.jet;
    chart.jet = [base, h](const Vec& u, int order) {
        if (order == 0) return base(u, 0);
        auto eval = [base](const Vec& w) { return base(w, 0).x; };
        return fd_jet(eval, u, order, h);
    };
    return chart;
}

}  // namespace

ImmersedHypersurface catalog_build(const CatalogSpec& spec, const SpaceForm& space) {
    const double b = space.b();
    ImmersedHypersurface surf{space, {}, +1, true, false, spec.family, {}};

    switch (spec.family) {
        case Family::geodesic_sphere: {
            if (!(spec.param > 0.0))
                throw std::invalid_argument("catalog_build: sphere radius must be > 0");
            surf.charts.push_back(sphere_chart(space, spec.param));
            surf.compact = true;
            surf.principal_oracle =
                std::vector<double>(space.n, b / std::tanh(b * spec.param));
            break;
        }
        case Family::horosphere: {
            surf.charts.push_back(spec.chart_style == ChartStyle::polar
                                      ? horosphere_chart_polar(space)
                                      : horosphere_chart_cartesian(space));
            surf.principal_oracle = std::vector<double>(space.n, b);
            break;
        }
        case Family::equidistant: {
            if (!(spec.param > 0.0))
                throw std::invalid_argument("catalog_build: equidistant offset must be > 0");
            surf.charts.push_back(spec.chart_style == ChartStyle::polar
                                      ? equidistant_chart_polar(space, spec.param)
                                      : equidistant_chart_cartesian(space, spec.param));
            surf.principal_oracle =
                std::vector<double>(space.n, b * std::tanh(b * spec.param));
            break;
        }
        case Family::geodesic_tube: {
            if (!(spec.param > 0.0))
                throw std::invalid_argument("catalog_build: tube radius must be > 0");
            surf.charts.push_back(tube_chart(space, spec.param));
            std::vector<double> k(space.n, b / std::tanh(b * spec.param));
            k[0] = b * std::tanh(b * spec.param);  // axial direction, ascending
            surf.principal_oracle = k;
            break;
        }
    }

    if (spec.mode == DerivativeMode::finite_difference)
        surf.charts[0] = with_fd_derivatives(surf.charts[0], spec.fd_step);

    if (spec.orientation != 0) {
        surf.orientation_sign = (spec.orientation > 0) ? +1 : -1;
    } else {
        const Vec u0 = base_parameter(spec.family, space.n);
        CurvaturePoint pt = curvature_point(surf, 0, u0);
        const double tr = space.n * pt.H;
        if (std::abs(tr) < 1e-12)
            throw std::runtime_error(
                "catalog_build: orientation ambiguous (tr A = 0); supply one");
        if (tr < 0.0) surf.orientation_sign = -1;
    }
    return surf;
}

AmbientPoint canonical_center(const ImmersedHypersurface& surface, double offset) {
    if (!surface.family)
        throw std::invalid_argument("canonical_center: not a catalog surface");
    const SpaceForm& sp = surface.space;
    const double b = sp.b();
    Vec x = Vec::Zero(sp.coord_dim());
    x[0] = std::cosh(b * offset) / b;
    switch (*surface.family) {
        case Family::geodesic_sphere:
        case Family::horosphere:
            // along the normal geodesic through the base point
            x[1] = std::sinh(b * offset) / b;
            break;
        case Family::equidistant:
            // perpendicular to the totally geodesic hyperplane
            x[sp.coord_dim() - 1] = std::sinh(b * offset) / b;
            break;
        case Family::geodesic_tube:
            // perpendicular to the axis
            x[2] = std::sinh(b * offset) / b;
            break;
    }
    return AmbientPoint{x};
}

}  // namespace hycurv
