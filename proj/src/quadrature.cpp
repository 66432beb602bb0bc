#include "hycurv/quadrature.hpp"
#include <cstdio>
#include <cstdlib>

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace hycurv {

namespace {

// Gauss-Legendre nodes/weights on [-1, 1].
const double kNodes5[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                           0.5384693101056831, 0.9061798459386640};
const double kWeights5[5] = {0.2369268850561891, 0.4786286704993665,
                             0.5688888888888889, 0.4786286704993665,
                             0.2369268850561891};
const double kNodes3[3] = {-0.7745966692414834, 0.0, 0.7745966692414834};
const double kWeights3[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};

struct Cell {
    Box box;
    std::int64_t id = 0;
    int bdepth = 0;        // boundary-refinement rounds so far
    bool straddle = false;  // not certainly inside (Lipschitz margin)
    bool bracket = false;   // corner distances bracket the radius
    int margin_dim = 0;     // dimension dominating the Lipschitz margin
    double value = 0.0;
    double err = 0.0;
    std::vector<double> corner_rho;
    bool out = false;
    bool dead = false;
};

struct HeapEntry {
    double err;
    std::int64_t id;
    std::size_t slot;
    bool operator<(const HeapEntry& o) const {
        if (err != o.err) return err < o.err;
        return id > o.id;  // older cells first on ties
    }
};

class BallIntegrator {
  public:
    BallIntegrator(const ImmersedHypersurface& surface, int chart,
                   const Density& density, const BallRegion& region,
                   const QuadratureOptions& opts)
        : surface_(surface),
          chart_(chart),
          density_(density),
          region_(region),
          opts_(opts),
          n_(surface.space.n) {}

    IntegralEstimate run(const Box& root) {
        IntegralEstimate est;
        if (root.volume() <= 0.0) {
            est.converged = true;
            return est;
        }
        cells_.clear();
        std::priority_queue<HeapEntry> heap;
        auto push_cell = [&](const Box& box, int bdepth) {
            make_cell(box, bdepth);
            const Cell& c = cells_.back();
            run_val_ += c.value;
            run_err_ += c.err;
            if (!c.out && c.err > 0.0)
                heap.push({c.err, c.id, cells_.size() - 1});
        };
        push_cell(root, 0);

        while (!heap.empty()) {
            const double target =
                std::max(opts_.abs_floor, opts_.rel_tol * std::abs(run_val_));
            if (run_err_ <= target) break;
            if (evals_ >= opts_.budget) break;

            HeapEntry top = heap.top();
            heap.pop();
            Cell& cell = cells_[top.slot];
            if (cell.dead) continue;
            const bool capped = cell.bracket && opts_.max_boundary_depth >= 0 &&
                                cell.bdepth >= opts_.max_boundary_depth;

            const Box box = cell.box;
            const int bdepth = cell.bdepth;
            const bool bracket = cell.bracket;
            const bool uncertain = cell.straddle && !cell.bracket;
            const int margin_dim = cell.margin_dim;
            const std::vector<double> corner_rho = cell.corner_rho;
            cell.dead = true;
            run_val_ -= cell.value;
            run_err_ -= cell.err;

            const int cross = rho_variation_dim(box, corner_rho);
            if (bracket && !capped) {
                // Quarter along the direction of largest rho variation.
                const double w = (box.hi[cross] - box.lo[cross]) / 4.0;
                for (int k = 0; k < 4; ++k) {
                    Box child = box;
                    child.lo[cross] = box.lo[cross] + k * w;
                    child.hi[cross] = box.lo[cross] + (k + 1) * w;
                    push_cell(child, bdepth + 1);
                }
            } else {
                // Smooth, merely uncertain, or depth-capped boundary cell:
                // halve.  At the cap keep the transverse width fixed and
                // refine the widest lateral direction instead.
                int dim = 0;
                if (capped && n_ > 1) {
                    double best = -1.0;
                    for (int d = 0; d < n_; ++d) {
                        if (d == cross) continue;
                        const double w = box.hi[d] - box.lo[d];
                        if (w > best) {
                            best = w;
                            dim = d;
                        }
                    }
                } else if (uncertain) {
                    // Shrink the margin: split where slope * width is
                    // largest so the in/out classification can resolve.
                    dim = margin_dim;
                } else {
                    (box.hi - box.lo).maxCoeff(&dim);
                }
                for (int k = 0; k < 2; ++k) {
                    Box child = box;
                    const double mid = 0.5 * (box.lo[dim] + box.hi[dim]);
                    (k == 0 ? child.hi[dim] : child.lo[dim]) = mid;
                    push_cell(child, bdepth);
                }
            }
        }

        if (std::getenv("HYCURV_QUAD_DEBUG")) {
            double es = 0, eb = 0, eo = 0;
            int ns = 0, nb = 0, no = 0;
            double wmin = 1e300;
            for (const Cell& c : cells_)
                if (!c.dead && !c.out) {
                    if (c.bracket) { eb += c.err; ++nb;
                        wmin = std::min(wmin, (c.box.hi - c.box.lo).minCoeff()); }
                    else if (c.straddle) { es += c.err; ++ns; }
                    else { eo += c.err; ++no; }
                }
            std::fprintf(stderr,
                "[quad] bracket n=%d err=%g  uncertain n=%d err=%g  smooth n=%d err=%g  minw=%g\n",
                nb, eb, ns, es, no, eo, wmin);
        }
        // Deterministic accumulation over live cells in creation order.
        double total_err = 0.0, total_val = 0.0;
        for (const Cell& c : cells_)
            if (!c.dead) {
                total_val += c.value;
                total_err += c.err;
            }
        est.value = total_val;
        est.abs_error = total_err;
        est.evaluations = evals_;
        est.converged =
            total_err <= std::max(opts_.abs_floor, opts_.rel_tol * std::abs(total_val));
        return est;
    }

  private:
    int rho_variation_dim(const Box& box, const std::vector<double>& rho) const {
        // Corner index bit i flips dimension i.
        int best = 0;
        double best_var = -1.0;
        const int corners = 1 << n_;
        for (int d = 0; d < n_; ++d) {
            if (box.hi[d] - box.lo[d] <= 0.0) continue;
            double var = 0.0;
            for (int c = 0; c < corners; ++c)
                if (!(c & (1 << d)))
                    var = std::max(var, std::abs(rho[c] - rho[c | (1 << d)]));
            if (var > best_var) {
                best_var = var;
                best = d;
            }
        }
        return best;
    }

    void make_cell(const Box& box, int bdepth) {
        cells_.emplace_back();
        Cell& cell = cells_.back();
        cell.box = box;
        cell.id = next_id_++;
        cell.bdepth = bdepth;
        if (box.volume() <= 0.0) {
            cell.out = true;
            return;
        }

        const Chart& chart = surface_.charts[chart_];
        const int corners = 1 << n_;
        cell.corner_rho.resize(corners);
        double rho_min = 1e300, rho_max = -1e300;
        Vec slope = Vec::Zero(n_);  // per-dimension bound on |d_d (rho o x)|
        for (int c = 0; c < corners; ++c) {
            Vec u(n_);
            for (int d = 0; d < n_; ++d)
                u[d] = (c & (1 << d)) ? box.hi[d] : box.lo[d];
            ChartJet jet = chart.jet(u, 1);
            const double rho =
                distance_raw(surface_.space, region_.center.coords, jet.x);
            cell.corner_rho[c] = rho;
            rho_min = std::min(rho_min, rho);
            rho_max = std::max(rho_max, rho);
            // |d_d (rho o x)| = |<grad rho, d_d x>|; near the center fall
            // back to the Cauchy-Schwarz bound sqrt(g_dd) (grad rho is a
            // unit vector in the positive-definite tangent metric).
            const bool coincident = rho < 1e-8;
            Vec grad;
            if (!coincident)
                grad = grad_distance_raw(surface_.space, region_.center.coords,
                                         jet.x);
            for (int d = 0; d < n_; ++d) {
                const double gdd = std::max(
                    minkowski_inner(jet.jac.col(d), jet.jac.col(d)), 0.0);
                const double bound =
                    coincident ? std::sqrt(gdd)
                               : std::abs(minkowski_inner(grad, jet.jac.col(d)));
                slope[d] = std::max(slope[d], bound);
            }
        }
        const double margin = 1.5 * slope.dot(box.hi - box.lo);
        Vec contrib = slope.cwiseProduct(box.hi - box.lo);
        contrib.maxCoeff(&cell.margin_dim);
        if (rho_min - margin > region_.radius) {
            cell.out = true;
            return;
        }
        cell.straddle = !(rho_max + margin < region_.radius);
        cell.bracket = rho_min < region_.radius && rho_max >= region_.radius;
        evaluate(cell);
    }

    void evaluate(Cell& cell) {
        double sup = 0.0;
        const double q5 = product_rule(cell.box, kNodes5, kWeights5, 5, &sup);
        const double q3 = product_rule(cell.box, kNodes3, kWeights3, 3, &sup);
        cell.value = q5;
        if (cell.straddle)
            cell.err = sup * cell.box.volume();
        else
            cell.err = std::abs(q5 - q3);
    }

    double product_rule(const Box& box, const double* nodes, const double* weights,
                        int order, double* sup) {
        std::vector<int> idx(n_, 0);
        Vec u(n_);
        double sum = 0.0;
        const double jac_scale = box.volume() / std::pow(2.0, n_);
        while (true) {
            double w = 1.0;
            for (int d = 0; d < n_; ++d) {
                const double mid = 0.5 * (box.lo[d] + box.hi[d]);
                const double half = 0.5 * (box.hi[d] - box.lo[d]);
                u[d] = mid + half * nodes[idx[d]];
                w *= weights[idx[d]];
            }
            CurvaturePoint pt = curvature_point(surface_, chart_, u);
            const double rho =
                distance_raw(surface_.space, region_.center.coords, pt.x);
            ++evals_;
            const double f = density_(pt, rho) * pt.sqrt_det_g;
            *sup = std::max(*sup, std::abs(f));
            if (rho < region_.radius) sum += w * f;
            int d = 0;
            while (d < n_ && ++idx[d] == order) {
                idx[d] = 0;
                ++d;
            }
            if (d == n_) break;
        }
        return sum * jac_scale;
    }

    const ImmersedHypersurface& surface_;
    int chart_;
    const Density& density_;
    const BallRegion& region_;
    QuadratureOptions opts_;
    int n_;
    std::vector<Cell> cells_;
    std::int64_t next_id_ = 0;
    std::int64_t evals_ = 0;
    double run_val_ = 0.0;
    double run_err_ = 0.0;
};

}  // namespace

IntegralEstimate integrate_over_ball(const ImmersedHypersurface& surface,
                                     const Density& density,
                                     const BallRegion& region,
                                     const QuadratureOptions& opts) {
    if (!(region.radius > 0.0))
        throw std::invalid_argument("integrate_over_ball: radius must be > 0");
    IntegralEstimate total;
    total.converged = true;
    for (std::size_t ci = 0; ci < surface.charts.size(); ++ci) {
        const Chart& chart = surface.charts[ci];
        auto clipped = chart.clip(region.center.coords, region.radius);
        if (!clipped)
            throw std::runtime_error(
                "integrate_over_ball: chart cannot bound M within the ball");
        Box box = *clipped;
        for (int d = 0; d < box.dim(); ++d) {
            box.lo[d] = std::max(box.lo[d], chart.domain.lo[d]);
            box.hi[d] = std::min(box.hi[d], chart.domain.hi[d]);
            if (!std::isfinite(box.lo[d]) || !std::isfinite(box.hi[d]))
                throw std::runtime_error(
                    "integrate_over_ball: unbounded chart after clipping");
            if (box.hi[d] < box.lo[d]) box.hi[d] = box.lo[d];
        }
        BallIntegrator integrator(surface, static_cast<int>(ci), density, region,
                                  opts);
        IntegralEstimate est = integrator.run(box);
        total.value += est.value;
        total.abs_error += est.abs_error;
        total.evaluations += est.evaluations;
        total.converged = total.converged && est.converged;
    }
    return total;
}

IntegralEstimate curvature_integral(const ImmersedHypersurface& surface,
                                    const BallRegion& region,
                                    const QuadratureOptions& opts) {
    const double b = surface.space.b();
    return integrate_over_ball(
        surface,
        [b](const CurvaturePoint& pt, double rho) {
            return std::sinh(b * rho) * pt.H;
        },
        region, opts);
}

IntegralEstimate mean_curvature_integral(const ImmersedHypersurface& surface,
                                         const BallRegion& region,
                                         const QuadratureOptions& opts) {
    return integrate_over_ball(
        surface, [](const CurvaturePoint& pt, double) { return pt.H; }, region,
        opts);
}

double divergence_on_M(const ImmersedHypersurface& surface, int chart,
                       const std::function<Vec(const Vec&)>& field, const Vec& u,
                       double h) {
    const Chart& ch = surface.charts.at(chart);
    const int n = surface.space.n;
    for (int d = 0; d < n; ++d)
        if (u[d] - h < ch.domain.lo[d] || u[d] + h > ch.domain.hi[d])
            throw std::runtime_error("divergence_on_M: stencil exits chart domain");

    auto weighted = [&](const Vec& w) -> Vec {
        ChartJet jet = ch.jet(w, 1);
        Mat ej = jet.jac;
        ej.row(0) *= -1.0;
        const double det = (jet.jac.transpose() * ej).determinant();
        if (!(det > 0.0))
            throw std::runtime_error("divergence_on_M: degenerate metric");
        return std::sqrt(det) * field(w);
    };

    const double s0 = [&] {
        ChartJet jet = ch.jet(u, 1);
        Mat ej = jet.jac;
        ej.row(0) *= -1.0;
        return std::sqrt((jet.jac.transpose() * ej).determinant());
    }();

    double div = 0.0;
    for (int i = 0; i < n; ++i) {
        auto central = [&](double hh) {
            Vec up = u, um = u;
            up[i] += hh;
            um[i] -= hh;
            return (weighted(up)[i] - weighted(um)[i]) / (2.0 * hh);
        };
        const double d1 = central(h), d2 = central(h / 2);
        div += (4.0 * d2 - d1) / 3.0;
    }
    return div / s0;
}

}  // namespace hycurv
