// Python bindings for the main operations: catalog surfaces, pointwise
// curvature data, ball-restricted integrals, the radial phi series and
// the associated verdicts.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hycurv/config.hpp"
#include "hycurv/verify.hpp"

namespace py = pybind11;
using namespace hycurv;

namespace {

QuadratureOptions make_options(double rel_tol, std::int64_t budget) {
    QuadratureOptions opts;
    opts.rel_tol = rel_tol;
    opts.budget = budget;
    return opts;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Extrinsic curvature integrals on hypersurfaces of "
              "hyperbolic space";

    py::class_<SpaceForm>(m, "SpaceForm")
        .def(py::init<double, int>(), py::arg("kappa"), py::arg("n"))
        .def_readonly("kappa", &SpaceForm::kappa)
        .def_readonly("n", &SpaceForm::n)
        .def("b", &SpaceForm::b)
        .def("ambient_dim", &SpaceForm::ambient_dim);

    py::class_<AmbientPoint>(m, "AmbientPoint")
        .def_readonly("coords", &AmbientPoint::coords);

    m.def(
        "make_point",
        [](const SpaceForm& space, const Vec& coords) {
            return make_point(space, coords);
        },
        py::arg("space"), py::arg("coords"));
    m.def("origin", &origin, py::arg("space"));
    m.def(
        "geodesic_distance",
        [](const SpaceForm& space, const AmbientPoint& p,
           const AmbientPoint& q) { return geodesic_distance(space, p, q); },
        py::arg("space"), py::arg("p"), py::arg("q"));

    py::enum_<Family>(m, "Family")
        .value("geodesic_sphere", Family::geodesic_sphere)
        .value("horosphere", Family::horosphere)
        .value("equidistant", Family::equidistant)
        .value("geodesic_tube", Family::geodesic_tube);

    py::class_<CatalogSpec>(m, "CatalogSpec")
        .def(py::init([](Family family, double param) {
                 CatalogSpec spec;
                 spec.family = family;
                 spec.param = param;
                 return spec;
             }),
             py::arg("family"), py::arg("param"))
        .def_readwrite("family", &CatalogSpec::family)
        .def_readwrite("param", &CatalogSpec::param);

    py::class_<CurvaturePoint>(m, "CurvaturePoint")
        .def_readonly("x", &CurvaturePoint::x)
        .def_readonly("normal", &CurvaturePoint::eta)
        .def_readonly("metric", &CurvaturePoint::g)
        .def_readonly("second_form", &CurvaturePoint::second_form)
        .def_readonly("principal", &CurvaturePoint::principal)
        .def_readonly("H", &CurvaturePoint::H)
        .def_readonly("scalar_curvature", &CurvaturePoint::R)
        .def_readonly("p1_eigenvalues", &CurvaturePoint::p1_eigs);

    py::class_<ImmersedHypersurface>(m, "Hypersurface")
        .def_readonly("space", &ImmersedHypersurface::space)
        .def_readonly("orientation_sign",
                      &ImmersedHypersurface::orientation_sign)
        .def("curvature",
             [](const ImmersedHypersurface& surf, const Vec& u) {
                 return curvature_point(surf, 0, u);
             },
             py::arg("u"));

    m.def("catalog_build", &catalog_build, py::arg("spec"), py::arg("space"));
    m.def("canonical_center", &canonical_center, py::arg("surface"),
          py::arg("offset") = 0.0);

    py::class_<IntegralEstimate>(m, "IntegralEstimate")
        .def_readonly("value", &IntegralEstimate::value)
        .def_readonly("abs_error", &IntegralEstimate::abs_error)
        .def_readonly("evaluations", &IntegralEstimate::evaluations)
        .def_readonly("converged", &IntegralEstimate::converged);

    m.def(
        "curvature_integral",
        [](const ImmersedHypersurface& surf, const AmbientPoint& center,
           double radius, double rel_tol, std::int64_t budget) {
            return curvature_integral(surf, BallRegion{center, radius},
                                      make_options(rel_tol, budget));
        },
        py::arg("surface"), py::arg("center"), py::arg("radius"),
        py::arg("rel_tol") = 1e-6, py::arg("budget") = 1'000'000);
    m.def(
        "mean_curvature_integral",
        [](const ImmersedHypersurface& surf, const AmbientPoint& center,
           double radius, double rel_tol, std::int64_t budget) {
            return mean_curvature_integral(surf, BallRegion{center, radius},
                                           make_options(rel_tol, budget));
        },
        py::arg("surface"), py::arg("center"), py::arg("radius"),
        py::arg("rel_tol") = 1e-6, py::arg("budget") = 1'000'000);

    py::class_<HypothesisReport>(m, "HypothesisReport")
        .def_readonly("admissible", &HypothesisReport::admissible)
        .def_readonly("gamma_min", &HypothesisReport::gamma_min)
        .def_readonly("H_min", &HypothesisReport::H_min)
        .def_readonly("H_max", &HypothesisReport::H_max)
        .def_readonly("R_minus_kappa_min",
                      &HypothesisReport::R_minus_kappa_min)
        .def_readonly("note", &HypothesisReport::note);

    m.def(
        "hypothesis_report",
        [](const ImmersedHypersurface& surf, double radius, int samples,
           std::uint64_t seed) {
            SamplingSpec sampling;
            sampling.radius = radius;
            sampling.count = samples;
            sampling.seed = seed;
            return hypothesis_report(surf, sampling);
        },
        py::arg("surface"), py::arg("radius") = 3.0, py::arg("samples") = 200,
        py::arg("seed") = 1);

    py::class_<PhiSeries>(m, "PhiSeries")
        .def_readonly("r_grid", &PhiSeries::r_grid)
        .def_readonly("phi", &PhiSeries::phi)
        .def_readonly("phi_err", &PhiSeries::phi_err)
        .def_readonly("integral_sinh_H", &PhiSeries::integral_sinh_H)
        .def_readonly("integral_H", &PhiSeries::integral_H)
        .def_readonly("g_values", &PhiSeries::g_values)
        .def_readonly("complete", &PhiSeries::complete);

    py::class_<Verdict>(m, "Verdict")
        .def_readonly("passed", &Verdict::passed)
        .def_readonly("worst_violation", &Verdict::worst_violation)
        .def_readonly("location", &Verdict::location)
        .def_readonly("residuals", &Verdict::residuals);

    m.def(
        "phi_series",
        [](const ImmersedHypersurface& surf, const AmbientPoint& center,
           double gamma, const Vec& radii, double rel_tol,
           std::int64_t budget) {
            return phi_series(surf, center, gamma, radii,
                              make_options(rel_tol, budget), true);
        },
        py::arg("surface"), py::arg("center"), py::arg("gamma"),
        py::arg("radii"), py::arg("rel_tol") = 1e-6,
        py::arg("budget") = 1'000'000);
    m.def("verify_monotonicity", &verify_monotonicity, py::arg("series"));

    py::class_<CorollaryResult>(m, "CorollaryResult")
        .def_readonly("verdict", &CorollaryResult::verdict)
        .def_readonly("r_grid", &CorollaryResult::r_grid)
        .def_readonly("bound_B", &CorollaryResult::bound_B)
        .def_readonly("integral_H", &CorollaryResult::integral_H)
        .def_readonly("phi0", &CorollaryResult::phi0)
        .def_readonly("descriptive_C", &CorollaryResult::descriptive_C);

    m.def(
        "corollary_lower_bound",
        [](const ImmersedHypersurface& surf, const AmbientPoint& center,
           double gamma, double r0, const Vec& radii, double rel_tol,
           std::int64_t budget) {
            return corollary_lower_bound(surf, center, gamma, r0, radii,
                                         make_options(rel_tol, budget));
        },
        py::arg("surface"), py::arg("center"), py::arg("gamma"), py::arg("r0"),
        py::arg("radii"), py::arg("rel_tol") = 1e-6,
        py::arg("budget") = 1'000'000);

    py::class_<DivergenceCriterion>(m, "DivergenceCriterion")
        .def_readonly("applies", &DivergenceCriterion::applies)
        .def_readonly("rate", &DivergenceCriterion::rate);

    m.def("divergence_criterion", &divergence_criterion, py::arg("space"),
          py::arg("gamma"));

    m.attr("__version__") = "1.0.0";
}
