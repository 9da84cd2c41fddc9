// Copyright 2026 The gausscx Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "gausscx/coherent.hpp"
#include "gausscx/complexity.hpp"
#include "gausscx/errors.hpp"
#include "gausscx/nonreversible.hpp"
#include "gausscx/state_io.hpp"
#include "gausscx/variational_oracle.hpp"
#include "gausscx/weyl.hpp"

namespace py = pybind11;
using namespace gausscx;

namespace {

StateKind parse_kind(const std::string& kind) {
  if (kind == "boson") return StateKind::kBoson;
  if (kind == "fermion") return StateKind::kFermion;
  throw Error(ErrorCode::kInvalidArgument, "kind must be 'boson' or 'fermion'");
}

GaussianState make_boson(const Matrix& sigma, std::optional<Vector> z, double tol) {
  const CovarianceMatrix cov(sigma, tol);
  const int n = cov.dimension() / 2;
  auto j = complex_structure_from_covariance(cov, standard_symplectic_form(n), StateKind::kBoson,
                                             tol);
  return GaussianState(std::move(j), z.value_or(Vector()), tol);
}

GaussianState make_fermion(const Matrix& omega, double tol) {
  const SymplecticForm form(omega, tol);
  const int n = form.n_modes();
  return GaussianState(complex_structure_from_covariance(CovarianceMatrix::identity(n), form,
                                                         StateKind::kFermion, tol),
                       Vector(), tol);
}

DiscretizedPath chart_path(const Matrix& points) {
  if (points.cols() != 2) {
    throw Error(ErrorCode::kDimensionMismatch, "points must have shape (n, 2)");
  }
  std::vector<ChartPoint> pts;
  for (Eigen::Index i = 0; i < points.rows(); ++i) pts.push_back({points(i, 0), points(i, 1)});
  return DiscretizedPath::from_points(std::move(pts));
}

Matrix path_points(const DiscretizedPath& path) {
  Matrix out(static_cast<Eigen::Index>(path.size()), 2);
  for (std::size_t i = 0; i < path.size(); ++i) {
    out(static_cast<Eigen::Index>(i), 0) = path.points[i].r;
    out(static_cast<Eigen::Index>(i), 1) = path.points[i].phi;
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Circuit complexity of pure Gaussian states";

  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error_type;
  error_type.call_once_and_store_result([&]() {
    return py::object(py::reinterpret_borrow<py::object>(
        PyErr_NewException("gausscx._core.GausscxError", PyExc_RuntimeError, nullptr)));
  });
  m.attr("GausscxError") = error_type.get_stored();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object err = error_type.get_stored()(e.what());
      err.attr("code") = std::string(e.name());
      PyErr_SetObject(error_type.get_stored().ptr(), err.ptr());
    }
  });

  py::class_<GaussianState>(m, "GaussianState")
      .def_static("boson", &make_boson, py::arg("sigma"), py::arg("z") = py::none(),
                  py::arg("tol") = kDefaultTolerance)
      .def_static("fermion", &make_fermion, py::arg("omega"), py::arg("tol") = kDefaultTolerance)
      .def_static(
          "reference",
          [](const std::string& kind, int n_modes) {
            return reference_state(parse_kind(kind), n_modes);
          },
          py::arg("kind"), py::arg("n_modes"))
      .def_static("from_json", &parse_state, py::arg("text"), py::arg("tol") = kDefaultTolerance)
      .def_static(
          "load", [](const std::string& path, double tol) { return load_state(path, tol); },
          py::arg("path"), py::arg("tol") = kDefaultTolerance)
      .def("to_json", &state_to_json)
      .def_property_readonly("kind", [](const GaussianState& s) { return std::string(kind_name(s.kind())); })
      .def_property_readonly("n_modes", &GaussianState::n_modes)
      .def_property_readonly("j", &GaussianState::j)
      .def_property_readonly("z", [](const GaussianState& s) {
        return s.z().size() > 0 ? s.z() : Vector(Vector::Zero(2 * s.n_modes()));
      })
      .def_property_readonly("covariance",
                             [](const GaussianState& s) { return s.covariance().matrix(); })
      .def("__repr__", [](const GaussianState& s) {
        return "<GaussianState " + std::string(kind_name(s.kind())) + " n_modes=" +
               std::to_string(s.n_modes()) + ">";
      });

  m.def(
      "squeezed_state",
      [](double r, double phi) {
        return apply_transformation(reference_state(StateKind::kBoson, 1),
                                    single_mode_squeezing(r, phi));
      },
      py::arg("r"), py::arg("phi") = 0.0);

  m.def(
      "state_complexity",
      [](const GaussianState& ref, const GaussianState& target, double tol) {
        return state_complexity(ref, target, tol);
      },
      py::arg("reference"), py::arg("target"), py::arg("tol") = kDefaultTolerance);
  m.def(
      "complexity_generator",
      [](const GaussianState& ref, const GaussianState& target, double tol) {
        return relative_complex_structure(ref, target, tol).generator();
      },
      py::arg("reference"), py::arg("target"), py::arg("tol") = kDefaultTolerance);
  m.def(
      "coherent_complexity",
      [](const GaussianState& ref, const GaussianState& target, double tol) {
        return coherent_complexity(coherent_geodesic(ref, target, tol));
      },
      py::arg("reference"), py::arg("target"), py::arg("tol") = kDefaultTolerance);

  py::class_<WeylFactor>(m, "WeylFactor")
      .def_static("constant", &WeylFactor::constant, py::arg("c"))
      .def_static("linear", &WeylFactor::linear, py::arg("beta"))
      .def_static("tabulated", &WeylFactor::tabulated, py::arg("r"), py::arg("omega"))
      .def_static("custom", &WeylFactor::custom, py::arg("f"), py::arg("name") = "custom")
      .def("__call__", &WeylFactor::operator(), py::arg("r"))
      .def_property_readonly("name", &WeylFactor::name);
  m.def("weyl_complexity", &weyl_complexity, py::arg("base_complexity"), py::arg("omega"),
        py::arg("quad_steps") = 128);

  py::class_<VectorPotential>(m, "VectorPotential")
      .def_static("none", &VectorPotential::none)
      .def_static("constant", &VectorPotential::constant, py::arg("c"))
      .def_static(
          "gradient", [](const std::string& h) { return VectorPotential::gradient(Polynomial::parse(h)); },
          py::arg("h"))
      .def_static(
          "modulated",
          [](const std::string& f0, double eps) {
            return VectorPotential::modulated(Polynomial::parse(f0), eps);
          },
          py::arg("f0"), py::arg("eps"))
      .def("norm", &VectorPotential::norm, py::arg("r"), py::arg("phi"))
      .def("field_strength", &VectorPotential::field_strength, py::arg("r"), py::arg("phi"));

  m.def(
      "nonreversible_cost",
      [](const Matrix& points, const VectorPotential& a) {
        return nonreversible_cost(chart_path(points), a);
      },
      py::arg("points"), py::arg("potential"));
  m.def(
      "lorentz_geodesic",
      [](std::pair<double, double> start, std::pair<double, double> velocity,
         const VectorPotential& a, double length, int rk_steps) {
        const auto path = lorentz_geodesic({start.first, start.second},
                                           {velocity.first, velocity.second}, a, length,
                                           {rk_steps, 1e-6});
        py::dict out;
        out["tau"] = path.tau;
        out["points"] = path_points(path);
        out["cost"] = nonreversible_cost(path, a);
        out["reverse_cost"] = nonreversible_cost(reversed(path), a);
        out["reached_chart_boundary"] = path.reached_chart_boundary;
        return out;
      },
      py::arg("start"), py::arg("velocity"), py::arg("potential"), py::arg("length"),
      py::arg("rk_steps") = 256);

  m.def(
      "minimize_to_target",
      [](const GaussianState& ref, const GaussianState& target, int segments, int restarts,
         std::uint64_t seed) {
        OracleOptions options;
        options.segments = segments;
        options.restarts = restarts;
        options.seed = seed;
        const auto result = minimize_to_target(ref, target, options);
        py::dict out;
        out["length"] = result.length;
        out["constraint_residual"] = result.constraint_residual;
        out["converged"] = result.converged;
        out["best_restart"] = result.best_restart;
        out["restart_lengths"] = result.restart_lengths;
        return out;
      },
      py::arg("reference"), py::arg("target"), py::arg("segments") = 16, py::arg("restarts") = 5,
      py::arg("seed") = 0);
}
