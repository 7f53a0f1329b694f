// Python bindings for the greedy solver: presets, configs, experiment runs
// and a few low-level helpers (quadrature rules, neuron evaluation, orders).

#include "oga/experiment.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <string>
#include <vector>

namespace py = pybind11;

namespace {

oga::Vector to_vector(const std::vector<double>& xs) {
  if (xs.empty() || xs.size() > static_cast<std::size_t>(oga::kMaxDim))
    throw oga::Error("expected 1 to 3 coordinates, got " + std::to_string(xs.size()));
  oga::Vector v(static_cast<Eigen::Index>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) v[static_cast<Eigen::Index>(i)] = xs[i];
  return v;
}

std::vector<double> from_vector(const oga::Vector& v) { return {v.data(), v.data() + v.size()}; }

py::dict row_to_dict(const oga::ConvergenceRow& r) {
  py::dict d;
  d["n"] = r.n;
  d["dof"] = r.dof;
  d["l2_error"] = r.l2_error;
  d["l2_order"] = r.l2_order ? py::cast(*r.l2_order) : py::none();
  d["h1_error"] = r.h1_error;
  d["h1_order"] = r.h1_order ? py::cast(*r.h1_order) : py::none();
  return d;
}

py::dict result_to_dict(const oga::ExperimentResult& r) {
  py::list rows;
  for (const auto& row : r.rows) rows.append(row_to_dict(row));
  py::dict d;
  d["name"] = r.config.name;
  d["rows"] = rows;
  d["csv"] = oga::emit_table(r.rows, oga::TableFormat::Csv);
  d["markdown"] = oga::emit_table(r.rows, oga::TableFormat::Markdown);
  d["metadata_json"] = r.metadata().dump();
  d["max_orthogonality_defect"] = r.max_orthogonality_defect;
  d["max_condition_estimate"] = r.max_condition_estimate;
  d["elapsed_seconds"] = r.elapsed_seconds;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Orthogonal greedy solver for indefinite elliptic problems on ReLU^k dictionaries";

  const auto error = py::register_exception<oga::Error>(m, "Error", PyExc_RuntimeError);
  const py::tuple config_bases = py::make_tuple(error, py::handle(PyExc_ValueError));
  py::register_exception<oga::ConfigError>(m, "ConfigError", config_bases);

  py::class_<oga::ExperimentConfig>(m, "ExperimentConfig")
      .def_readonly("name", &oga::ExperimentConfig::name)
      .def_property_readonly("preset", [](const oga::ExperimentConfig& c) { return std::string(oga::to_string(c.preset)); })
      .def_readonly("c", &oga::ExperimentConfig::c)
      .def_readonly("wavenumber", &oga::ExperimentConfig::wavenumber)
      .def_readonly("activation_power", &oga::ExperimentConfig::activation_power)
      .def_readonly("cells", &oga::ExperimentConfig::cells)
      .def_readonly("n_b", &oga::ExperimentConfig::n_b)
      .def_readonly("n_max", &oga::ExperimentConfig::n_max)
      .def_readonly("checkpoints", &oga::ExperimentConfig::checkpoints)
      .def_readonly("refine", &oga::ExperimentConfig::refine)
      .def("to_json", [](const oga::ExperimentConfig& c) { return oga::to_json(c).dump(); });

  m.def("load_config", &oga::load_config, py::arg("path"), py::arg("overrides") = std::vector<std::string>{},
        "Read a flat YAML experiment config, applying key=value overrides.");
  m.def(
      "parse_config",
      [](const std::string& text, const std::vector<std::string>& overrides) { return oga::parse_config(text, overrides); },
      py::arg("text"), py::arg("overrides") = std::vector<std::string>{}, "Parse experiment config YAML text.");
  m.def(
      "run_experiment",
      [](const oga::ExperimentConfig& cfg) {
        oga::ExperimentResult r;
        {
          py::gil_scoped_release release;
          r = oga::run_experiment(cfg);
        }
        return result_to_dict(r);
      },
      py::arg("config"), "Run one experiment and return its convergence table and diagnostics.");

  m.def(
      "gauss_legendre",
      [](int t) {
        const oga::GaussRule r = oga::gauss_legendre_1d(t);
        return py::make_tuple(r.nodes, r.weights);
      },
      py::arg("t"), "Nodes and weights of the t-point Gauss-Legendre rule on [-1, 1].");
  m.def(
      "eval_neuron",
      [](const std::vector<double>& omega, double b, int k, const std::vector<double>& x) {
        return oga::eval_neuron(oga::Neuron(to_vector(omega), b, k), to_vector(x));
      },
      py::arg("omega"), py::arg("b"), py::arg("k"), py::arg("x"), "max(0, omega.x + b)^k.");
  m.def(
      "grad_neuron",
      [](const std::vector<double>& omega, double b, int k, const std::vector<double>& x) {
        return from_vector(oga::grad_neuron(oga::Neuron(to_vector(omega), b, k), to_vector(x)));
      },
      py::arg("omega"), py::arg("b"), py::arg("k"), py::arg("x"));
  m.def("convergence_order", &oga::convergence_order, py::arg("e_coarse"), py::arg("e_fine"), py::arg("ratio") = 2.0);
  m.def(
      "preset_names",
      [] {
        std::vector<std::string> names;
        for (oga::Preset p : {oga::Preset::Ex1_1D, oga::Preset::Ex2_2D, oga::Preset::Ex3_2D_anisotropic,
                              oga::Preset::Ex4_3D, oga::Preset::Ex5_Helmholtz})
          names.emplace_back(oga::to_string(p));
        return names;
      });
}
