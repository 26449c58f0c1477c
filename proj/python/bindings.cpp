#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "yamabe/constants.hpp"
#include "yamabe/error.hpp"
#include "yamabe/experiments.hpp"
#include "yamabe/ground_state.hpp"
#include "yamabe/periodic.hpp"
#include "yamabe/serialization.hpp"
#include "yamabe/spectra.hpp"

namespace py = pybind11;
using namespace yamabe;

namespace {

// Structured results cross the boundary as JSON text; the package decodes them.
std::string dump(const Json& j) { return j.dump(); }

SearchOptions options(int j_max, bool with_profile, int points) {
  SearchOptions o;
  o.j_max = j_max;
  o.with_profile = with_profile;
  o.profile_points = points;
  return o;
}

InvariantCase invariant_case(const std::string& name) {
  if (name == "product-mn") return InvariantCase::ProductMN;
  if (name == "surface-times-S2") return InvariantCase::SurfaceTimesS2;
  if (name == "ricci-times-S1") return InvariantCase::RicciTimesS1;
  if (name == "dim3-times-S2") return InvariantCase::Dim3TimesS2;
  if (name == "dim2-times-S3") return InvariantCase::Dim2TimesS3;
  throw ValidationError("unknown invariant case: " + name);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Yamabe constants of Riemannian products";

  py::class_<DimData>(m, "DimData")
      .def_readonly("k", &DimData::k)
      .def_readonly("a", &DimData::a)
      .def_readonly("p", &DimData::p);
  m.def("dim_data", &dim_data, py::arg("k"));
  m.def("sphere_volume", &sphere_volume, py::arg("d"));
  m.def("sphere_yamabe", &sphere_yamabe, py::arg("d"));
  m.def(
      "ah_sandwich",
      [](int k, double y) {
        const Sandwich s = ah_sandwich(k, y);
        return py::make_tuple(s.lower, s.upper);
      },
      py::arg("k"), py::arg("yamabe"));
  m.def("_product_constants", [](int a, int b) { return dump(to_json(product_constants(a, b))); });
  m.def("y_rn_formula", &y_rn_formula, py::arg("m"), py::arg("n"), py::arg("scalar"), py::arg("volume"),
        py::arg("alpha"));
  m.def(
      "_invariant_lower_bound",
      [](const std::string& name, int mm, int nn, double yamabe_M, double volume_M) {
        return dump(to_json(invariant_lower_bound({invariant_case(name), mm, nn, yamabe_M, volume_M})));
      },
      py::arg("case"), py::arg("m") = 0, py::arg("n") = 0, py::arg("yamabe_M") = 0.0, py::arg("volume_M") = 0.0);

  py::class_<ModelManifold>(m, "ModelManifold")
      .def_static("round_sphere", &ModelManifold::round_sphere, py::arg("d"))
      .def_static("circle", &ModelManifold::circle, py::arg("circumference"))
      .def_static("abstract", &ModelManifold::abstract, py::arg("dim"), py::arg("scalar"), py::arg("volume"))
      .def_property_readonly("dim", &ModelManifold::dim)
      .def_property_readonly("scalar", &ModelManifold::scalar)
      .def_property_readonly("volume", &ModelManifold::volume)
      .def("laplace_eigenvalue", &ModelManifold::laplace_eigenvalue)
      .def("multiplicity", &ModelManifold::multiplicity)
      .def("__repr__", &ModelManifold::label);

  m.def(
      "conformal_laplacian_spectrum",
      [](const ModelManifold& M, const ModelManifold& N, double t, int count) {
        std::vector<std::tuple<double, long long, int, int>> out;
        for (const auto& e : conformal_laplacian_spectrum(ProductSpace(M, N, t), count))
          out.emplace_back(e.value, e.multiplicity, e.i, e.j);
        return out;
      },
      py::arg("M"), py::arg("N"), py::arg("t"), py::arg("count"));
  m.def(
      "conformal_laplacian_eigenvalue",
      [](const ModelManifold& M, const ModelManifold& N, double t, int l) {
        return conformal_laplacian_eigenvalue(ProductSpace(M, N, t), l);
      },
      py::arg("M"), py::arg("N"), py::arg("t"), py::arg("l"));
  m.def(
      "generalized_eigenvalue",
      [](double scalar, double a, double length, const std::vector<double>& u, double p, int l, double vol) {
        const CircleOperator op = fd_circle_operator(scalar, a, length, int(u.size()));
        const WeightedEigenvalue w = generalized_eigenvalue(op, u, p, l, vol);
        return py::make_tuple(w.lambda, w.normalized);
      },
      py::arg("scalar"), py::arg("a"), py::arg("length"), py::arg("weight"), py::arg("p"), py::arg("l"),
      py::arg("volume_M") = 1.0);

  m.def(
      "_shoot_ground_state",
      [](int mm, int nn, bool profile) {
        ShootingConfig c;
        c.keep_profile = profile;
        return dump(to_json(shoot_ground_state(mm, nn, c), profile));
      },
      py::arg("m"), py::arg("n"), py::arg("profile") = false);
  m.def("closed_form_alpha_n1", &closed_form_alpha_n1, py::arg("m"));

  py::class_<OdeProblem>(m, "OdeProblem")
      .def(py::init([](double length, double scalar, double a, double p, double lambda, double volume_M) {
             return OdeProblem{length, scalar, a, p, lambda, volume_M};
           }),
           py::arg("length"), py::arg("scalar"), py::arg("a"), py::arg("p"), py::arg("lam") = 1.0,
           py::arg("volume_M") = 1.0)
      .def_readwrite("length", &OdeProblem::length)
      .def_readwrite("scalar", &OdeProblem::scalar)
      .def_readwrite("a", &OdeProblem::a)
      .def_readwrite("p", &OdeProblem::p)
      .def_readwrite("lam", &OdeProblem::lambda)
      .def_readwrite("volume_M", &OdeProblem::volume_M);
  m.def("circle_product_problem", &circle_product_problem, py::arg("M"), py::arg("t"));

  m.def(
      "_positive_solutions",
      [](const OdeProblem& pr, int j_max, bool profile, int points) {
        Json list = Json::array();
        for (const auto& s : positive_solutions(pr, options(j_max, profile, points))) list.push_back(to_json(s, profile));
        return dump(list);
      },
      py::arg("problem"), py::arg("j_max") = 8, py::arg("profile") = false, py::arg("points") = 4096);
  m.def(
      "_nodal_solutions",
      [](const OdeProblem& pr, int j_max, bool profile, int points) {
        return dump(to_json(nodal_solutions(pr, options(j_max, profile, points)), profile));
      },
      py::arg("problem"), py::arg("j_max") = 8, py::arg("profile") = false, py::arg("points") = 4096);
  m.def(
      "_first_N_yamabe",
      [](const OdeProblem& pr, int j_max) { return dump(to_json(first_N_yamabe(pr, options(j_max, false, 4096)))); },
      py::arg("problem"), py::arg("j_max") = 8);
  m.def(
      "_second_N_yamabe",
      [](const OdeProblem& pr, int j_max) { return dump(to_json(second_N_yamabe(pr, options(j_max, false, 4096)))); },
      py::arg("problem"), py::arg("j_max") = 8);

  m.def("geometric_grid", &geometric_grid, py::arg("t_min"), py::arg("t_max"), py::arg("points"));
  m.def(
      "_sandwich_sweep", [](int mm, const std::vector<double>& grid) { return dump(to_json(sandwich_sweep(mm, grid))); },
      py::arg("m"), py::arg("t_grid"));
  m.def(
      "_y2n_limit_sweep",
      [](const ModelManifold& M, const std::vector<double>& grid) { return dump(to_json(y2n_limit_sweep(M, grid))); },
      py::arg("M"), py::arg("t_grid"));
  m.def(
      "_strict_upper_check",
      [](int mm, const std::vector<double>& grid) { return dump(to_json(strict_upper_check(mm, grid))); },
      py::arg("m"), py::arg("t_grid"));
  m.def(
      "_bound_tables",
      [](bool use_printed_alpha) {
        TableOptions o;
        o.use_printed_alpha = use_printed_alpha;
        o.shooting.keep_profile = false;
        Json list = Json::array();
        for (const auto& b : bound_tables(o)) list.push_back(to_json(b));
        return dump(list);
      },
      py::arg("use_printed_alpha") = true);
  m.def(
      "_run_check_suite",
      [](unsigned long long seed) {
        Json list = Json::array();
        for (const auto& c : run_check_suite(seed)) list.push_back(to_json(c));
        return dump(list);
      },
      py::arg("seed") = 20240607ULL);
}
