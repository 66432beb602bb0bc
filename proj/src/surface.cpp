#include "hycurv/surface.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>

namespace hycurv {

std::string family_name(Family f) {
    switch (f) {
        case Family::geodesic_sphere: return "geodesic_sphere";
        case Family::horosphere: return "horosphere";
        case Family::equidistant: return "equidistant";
        case Family::geodesic_tube: return "geodesic_tube";
    }
    return "?";
}

Family family_from_name(const std::string& name) {
    if (name == "geodesic_sphere") return Family::geodesic_sphere;
    if (name == "horosphere") return Family::horosphere;
    if (name == "equidistant") return Family::equidistant;
    if (name == "geodesic_tube") return Family::geodesic_tube;
    throw std::invalid_argument("unknown catalog family: " + name);
}

namespace {

// Minkowski Gram matrix of the Jacobian columns.
Mat gram(const Mat& jac) {
    Mat ej = jac;
    ej.row(0) *= -1.0;
    return jac.transpose() * ej;
}

// Generalized cross product of x and the Jacobian columns: the unique
// (up to scale) vector Minkowski-orthogonal to all of them.  Smooth in
// the inputs, so its sign is continuous across a connected chart.
Vec cross_normal(const Vec& x, const Mat& jac) {
    const int d = static_cast<int>(x.size());
    Mat rows(d - 1, d);
    rows.row(0) = x;
    for (int i = 0; i < d - 2; ++i) rows.row(1 + i) = jac.col(i);
    Vec w(d);
    Mat minor(d - 1, d - 1);
    for (int mu = 0; mu < d; ++mu) {
        int c = 0;
        for (int nu = 0; nu < d; ++nu) {
            if (nu == mu) continue;
            minor.col(c++) = rows.col(nu);
        }
        w[mu] = ((mu % 2) ? -1.0 : 1.0) * minor.determinant();
    }
    w[0] = -w[0];  // raise the index
    return w;
}

}  // namespace

Mat first_fundamental(const ImmersedHypersurface& surface, int chart, const Vec& u) {
    ChartJet jet = surface.charts.at(chart).jet(u, 1);
    Mat g = gram(jet.jac);
    if (!(g.determinant() > 0.0))
        throw std::runtime_error("first_fundamental: rank-deficient Jacobian");
    return g;
}

AmbientVector unit_normal(const ImmersedHypersurface& surface, int chart, const Vec& u) {
    ChartJet jet = surface.charts.at(chart).jet(u, 1);
    Vec w = cross_normal(jet.x, jet.jac);
    const double s2 = minkowski_inner(w, w);
    if (!(s2 > 0.0))
        throw std::runtime_error("unit_normal: degenerate frame");
    return AmbientVector{jet.x, (surface.orientation_sign / std::sqrt(s2)) * w};
}

double mean_curvature(const Mat& A, int n) { return A.trace() / n; }

double scalar_curvature_gauss(double H, double A_norm_sq, const SpaceForm& space) {
    const int n = space.n;
    return space.kappa + (n * n * H * H - A_norm_sq) / (n * (n - 1));
}

Mat newton_p1(const Mat& A, double H, int n, Vec* eigs) {
    Mat P1 = n * H * Mat::Identity(A.rows(), A.cols()) - A;
    if (eigs) {
        Eigen::EigenSolver<Mat> es(A);
        Vec k = es.eigenvalues().real();
        std::sort(k.data(), k.data() + k.size());
        Vec lam(k.size());
        for (Eigen::Index i = 0; i < k.size(); ++i)
            lam[i] = n * H - k[k.size() - 1 - i];
        *eigs = lam;
    }
    return P1;
}

PsdBoundReport psd_bound_check(const CurvaturePoint& point, const SpaceForm& space,
                               double tol) {
    PsdBoundReport rep;
    rep.applicable = (point.H > 0.0) && (point.R >= space.kappa - tol);
    if (!rep.applicable) return rep;
    const double lo = point.p1_eigs.minCoeff();
    const double hi = point.p1_eigs.maxCoeff();
    const double cap = 2.0 * space.n * point.H;
    rep.psd = (lo >= -tol);
    rep.upper_ok = (hi <= cap + tol);
    rep.margin = std::min(lo, cap - hi);
    return rep;
}

CurvaturePoint curvature_point(const ImmersedHypersurface& surface, int chart,
                               const Vec& u) {
    const SpaceForm& space = surface.space;
    const int n = space.n;
    ChartJet jet = surface.charts.at(chart).jet(u, 2);

    CurvaturePoint pt;
    pt.u = u;
    pt.x = jet.x;
    pt.g = gram(jet.jac);
    const double det_g = pt.g.determinant();
    if (!(det_g > 0.0))
        throw std::runtime_error("curvature_point: rank-deficient Jacobian");
    pt.sqrt_det_g = std::sqrt(det_g);

    Vec w = cross_normal(jet.x, jet.jac);
    const double s2 = minkowski_inner(w, w);
    if (!(s2 > 0.0))
        throw std::runtime_error("curvature_point: degenerate normal");
    pt.eta = (surface.orientation_sign / std::sqrt(s2)) * w;

    // Second fundamental form from ambient second partials; the
    // hyperboloid correction is along x, Minkowski-orthogonal to eta.
    Mat h(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const double v = minkowski_inner(jet.hess[sym_index(i, j, n)], pt.eta);
            h(i, j) = v;
            h(j, i) = v;
        }
    pt.second_form = h;

    Eigen::GeneralizedSelfAdjointEigenSolver<Mat> es(h, pt.g);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("curvature_point: eigen solve failed");
    pt.principal = es.eigenvalues();  // ascending
    pt.H = pt.principal.mean();
    pt.A_norm_sq = pt.principal.squaredNorm();
    pt.R = scalar_curvature_gauss(pt.H, pt.A_norm_sq, space);
    pt.shape = pt.g.ldlt().solve(h);

    pt.p1_eigs.resize(n);
    for (int i = 0; i < n; ++i)
        pt.p1_eigs[i] = n * pt.H - pt.principal[n - 1 - i];
    return pt;
}

Mat shape_operator(const ImmersedHypersurface& surface, int chart, const Vec& u) {
    return curvature_point(surface, chart, u).shape;
}

ImmersedHypersurface apply_isometry(const ImmersedHypersurface& surface, const Mat& L) {
    ImmersedHypersurface out = surface;
    const int d = surface.space.coord_dim();
    if (L.rows() != d || L.cols() != d)
        throw std::invalid_argument("apply_isometry: wrong matrix size");
    // Minkowski inverse: E L^T E.
    Mat Linv = L.transpose();
    Linv.row(0) *= -1.0;
    Linv.col(0) *= -1.0;
    for (auto& chart : out.charts) {
        auto base_jet = chart.jet;
        auto base_clip = chart.clip;
        chart.jet = [L, base_jet](const Vec& u, int order) {
            ChartJet jet = base_jet(u, order);
            jet.x = L * jet.x;
            if (order >= 1) jet.jac = L * jet.jac;
            for (auto& hv : jet.hess) hv = L * hv;
            return jet;
        };
        chart.clip = [Linv, base_clip](const Vec& p, double r) {
            return base_clip(Linv * p, r);
        };
    }
    return out;
}

}  // namespace hycurv
