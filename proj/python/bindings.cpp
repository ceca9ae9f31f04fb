#include <pybind11/numpy.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wavepressure/fields.hpp"
#include "wavepressure/io.hpp"
#include "wavepressure/solver.hpp"
#include "wavepressure/verify.hpp"

namespace py = pybind11;
using namespace wavepressure;

namespace {

WaveParameters make_parameters(double wavelength, std::optional<double> depth, double current, double height,
                               int modes, double density, double gravity, double atmospheric_pressure,
                               int surface_nodes, std::optional<double> speed) {
  ParameterSet raw;
  raw.wavelength = wavelength;
  raw.depth = depth;
  raw.current = current;
  raw.height = height;
  raw.modes = modes;
  raw.density = density;
  raw.gravity = gravity;
  raw.atmospheric_pressure = atmospheric_pressure;
  raw.surface_nodes = surface_nodes;
  raw.flat_speed = speed;
  return WaveParameters::validate(raw);
}

SolverSettings make_settings(double newton_tol, int max_iters, int continuation_steps, double damping,
                             const std::string& branch) {
  SolverSettings s;
  s.newton_tol = newton_tol;
  s.max_newton_iters = max_iters;
  s.continuation_steps = continuation_steps;
  s.damping = damping;
  if (branch == "following") {
    s.branch = Branch::Following;
  } else if (branch == "opposing") {
    s.branch = Branch::Opposing;
  } else {
    throw Error(ErrorKind::InvalidSettings, "branch must be 'following' or 'opposing'");
  }
  s.validate();
  return s;
}

Region region_from(const std::string& name) {
  if (name == "full") return Region::FullPeriod;
  if (name == "half") return Region::HalfPeriod;
  if (name == "surface") return Region::Surface;
  if (name == "bed") return Region::Bed;
  if (name == "crest") return Region::CrestLine;
  if (name == "trough") return Region::TroughLine;
  throw Error(ErrorKind::InvalidSettings, "region must be full, half, surface, bed, crest or trough");
}

py::dict grid_arrays(const FieldGrid& grid) {
  const std::vector<py::ssize_t> shape{grid.nx, grid.ny};
  py::array_t<double> x(shape), y(shape), psi(shape), u(shape), v(shape), p(shape), pd(shape);
  auto ax = x.mutable_unchecked<2>(), ay = y.mutable_unchecked<2>(), apsi = psi.mutable_unchecked<2>();
  auto au = u.mutable_unchecked<2>(), av = v.mutable_unchecked<2>(), ap = p.mutable_unchecked<2>();
  auto apd = pd.mutable_unchecked<2>();
  for (int i = 0; i < grid.nx; ++i) {
    for (int j = 0; j < grid.ny; ++j) {
      const FieldSample& s = grid.at(i, j);
      ax(i, j) = grid.column_x[static_cast<std::size_t>(i)];
      ay(i, j) = s.y;
      apsi(i, j) = s.psi;
      au(i, j) = s.u;
      av(i, j) = s.v;
      ap(i, j) = s.pressure;
      apd(i, j) = s.dynamic_pressure;
    }
  }
  py::dict out;
  out["x"] = x;
  out["y"] = y;
  out["psi"] = psi;
  out["u"] = u;
  out["v"] = v;
  out["P"] = p;
  out["p_dyn"] = pd;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Steady periodic water waves: spectral solver, field evaluation and pressure-extrema checks";

  static py::exception<Error> wave_error(m, "WaveError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object err = wave_error;
      py::object instance = err(e.what());
      instance.attr("kind") = std::string(to_string(e.kind()));
      PyErr_SetObject(wave_error.ptr(), instance.ptr());
    }
  });

  py::class_<WaveParameters>(m, "WaveParameters")
      .def(py::init(&make_parameters), py::arg("wavelength"), py::arg("depth") = py::none(),
           py::arg("current") = 0.0, py::arg("height") = 0.0, py::arg("modes") = 32, py::arg("density") = 1000.0,
           py::arg("gravity") = 9.81, py::arg("atmospheric_pressure") = 101325.0, py::arg("surface_nodes") = 0,
           py::arg("speed") = py::none())
      .def_property_readonly("wavelength", &WaveParameters::wavelength)
      .def_property_readonly("depth",
                             [](const WaveParameters& p) { return p.is_deep() ? std::nullopt : p.raw().depth; })
      .def_property_readonly("is_deep", &WaveParameters::is_deep)
      .def_property_readonly("current", &WaveParameters::current)
      .def_property_readonly("height", &WaveParameters::height)
      .def_property_readonly("modes", &WaveParameters::modes)
      .def_property_readonly("density", &WaveParameters::density)
      .def_property_readonly("gravity", &WaveParameters::gravity)
      .def_property_readonly("atmospheric_pressure", &WaveParameters::atmospheric_pressure)
      .def_property_readonly("wavenumber", &WaveParameters::wavenumber)
      .def("with_height", &WaveParameters::with_height)
      .def("with_current", &WaveParameters::with_current)
      .def(py::self == py::self);

  py::class_<SolverSettings>(m, "SolverSettings")
      .def(py::init(&make_settings), py::arg("newton_tol") = 1e-11, py::arg("max_iters") = 50,
           py::arg("continuation_steps") = 4, py::arg("damping") = 1.0, py::arg("branch") = "following");

  py::class_<FlowState>(m, "FlowState")
      .def_readonly("params", &FlowState::params)
      .def_readonly("wave_speed", &FlowState::wave_speed)
      .def_readonly("surface_coeffs", &FlowState::surface_coeffs)
      .def_readonly("stream_coeffs", &FlowState::stream_coeffs)
      .def_readonly("flux", &FlowState::flux)
      .def_readonly("head", &FlowState::head)
      .def_readonly("residual_norm", &FlowState::residual_norm)
      .def_readonly("newton_iterations", &FlowState::newton_iterations)
      .def_property_readonly("relative_current", &FlowState::relative_current)
      .def_property_readonly("is_flat", &FlowState::is_flat)
      .def("to_json", &state_to_json)
      .def_static("from_json", [](const std::string& text) { return state_from_json(text); })
      .def("__repr__", [](const FlowState& s) {
        return "<FlowState c=" + format_double(s.wave_speed) + " H=" + format_double(s.params.height()) +
               " N=" + std::to_string(s.modes()) + ">";
      });

  m.def("linear_phase_speed", &linear_phase_speed, py::arg("params"));
  m.def("solve", &solve, py::arg("params"), py::arg("settings") = SolverSettings{},
        py::call_guard<py::gil_scoped_release>());
  m.def("continuation_sweep", &continuation_sweep, py::arg("params"), py::arg("heights"),
        py::arg("settings") = SolverSettings{}, py::call_guard<py::gil_scoped_release>());
  m.def("continue_to", &continue_to, py::arg("previous"), py::arg("height"), py::arg("settings") = SolverSettings{});
  m.def("galilean_shift", &galilean_shift, py::arg("state"), py::arg("delta"));
  m.def("reverse_relative_flow", &reverse_relative_flow, py::arg("state"));

  m.def(
      "residual",
      [](const FlowState& s, bool nondimensional) {
        ResidualReport r = residual(s);
        if (nondimensional) r = r.nondimensional(s.params);
        py::dict out;
        out["kinematic_max"] = r.kinematic_max;
        out["bernoulli_max"] = r.bernoulli_max;
        out["bed_max"] = r.bed_max;
        out["samples"] = r.samples;
        return out;
      },
      py::arg("state"), py::arg("nondimensional") = true);

  m.def("surface", &surface_at, py::arg("state"), py::arg("x"));
  m.def("stream", &stream_at, py::arg("state"), py::arg("x"), py::arg("y"));
  m.def(
      "velocity",
      [](const FlowState& s, double x, double y) {
        const Velocity v = velocity_at(s, x, y);
        return py::make_tuple(v.u, v.v);
      },
      py::arg("state"), py::arg("x"), py::arg("y"));
  m.def("pressure", &pressure_at, py::arg("state"), py::arg("x"), py::arg("y"));
  m.def("dynamic_pressure", &dynamic_pressure_at, py::arg("state"), py::arg("x"), py::arg("y"));
  m.def("flux", [](const FlowState& s) { return flux(s); }, py::arg("state"));
  m.def("mean_current", &mean_current, py::arg("state"), py::arg("y0"));
  m.def(
      "sample_grid",
      [](const FlowState& s, int nx, int ny, const std::string& region) {
        return grid_arrays(sample_grid(s, nx, ny, region_from(region)));
      },
      py::arg("state"), py::arg("nx"), py::arg("ny"), py::arg("region") = "half");

  m.def(
      "verify_report_json",
      [](const FlowState& s, int nx, int ny, int npath) {
        VerifyPlan plan;
        plan.nx = nx;
        plan.ny = ny;
        plan.npath = npath;
        VerificationReport r;
        {
          py::gil_scoped_release release;
          r = verify_state(s, plan);
        }
        return report_to_json(s, r);
      },
      py::arg("state"), py::arg("nx") = 129, py::arg("ny") = 65, py::arg("npath") = 64);
  m.def(
      "verdict_fingerprint",
      [](const FlowState& s, int nx, int ny) {
        VerifyPlan plan;
        plan.nx = nx;
        plan.ny = ny;
        return verdict_fingerprint(verify_state(s, plan));
      },
      py::arg("state"), py::arg("nx") = 129, py::arg("ny") = 65);
}
