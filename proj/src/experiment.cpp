#include "oga/experiment.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace oga {

int ExperimentConfig::dim() const {
  switch (preset) {
    case Preset::Ex1_1D: return 1;
    case Preset::Ex4_3D: return 3;
    default: return 2;
  }
}

int ExperimentConfig::resolved_dof_per_neuron() const {
  if (dof_per_neuron > 0) return dof_per_neuron;
  return sampling == SamplingMode::Angular2D ? 2 : dim() + 1;
}

SolverConfig ExperimentConfig::solver_config() const {
  SolverConfig s;
  s.n_max = n_max;
  s.checkpoints = checkpoints;
  s.sampling.mode = sampling;
  s.sampling.n_b = n_b;
  s.sampling.n_theta = n_theta;
  s.sampling.k = activation_power;
  s.sampling.margin = b_margin;
  s.sampling.normalize = normalize_directions;
  s.sampling.b_range = b_range;
  s.refine = refine;
  s.refine_max_iters = refine_max_iters;
  s.refine_step_tol = refine_step_tol;
  s.duplicate_tol = duplicate_tol;
  s.singular_pivot_tol = singular_pivot_tol;
  s.track_orthogonality = track_orthogonality;
  return s;
}

void ExperimentConfig::validate() const {
  if (name.empty()) throw ConfigError("name: must not be empty");
  if (static_cast<int>(cells.size()) != dim()) {
    throw ConfigError("cells: expected " + std::to_string(dim()) + " entries for preset " +
                      std::string(to_string(preset)));
  }
  for (int c : cells) {
    if (c < 1) throw ConfigError("cells: counts must be positive");
  }
  if (quadrature_points < 1 || quadrature_points > 8) throw ConfigError("quadrature_points: must be in 1..8");
  if (sampling == SamplingMode::Angular2D && dim() != 2) throw ConfigError("sampling: angular requires a 2D preset");
  if (b_range && !(b_range->lo < b_range->hi)) throw ConfigError("b_range: lower bound must be below upper bound");
  if (verify_grid_factor < 1) throw ConfigError("verify_grid_factor: must be at least 1");
  if (dof_per_neuron < 0) throw ConfigError("dof_per_neuron: must be nonnegative");
  if (preset == Preset::Ex5_Helmholtz && !(wavenumber > 1.0)) throw ConfigError("wavenumber: must exceed 1");
  try {
    solver_config().validate();
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("solver: ") + e.what());
  }
}

namespace {

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "name",          "preset",           "c",                "wavenumber",      "activation_power",
      "quadrature_points", "cells",        "sampling",         "n_b",             "n_theta",
      "b_margin",      "b_range",          "normalize_directions", "n_max",       "checkpoints",
      "refine",        "refine_max_iters", "refine_step_tol",  "duplicate_tol", "singular_pivot_tol",   "track_orthogonality",
      "dof_per_neuron", "verify_grid_factor", "output_dir"};
  return keys;
}

template <typename T>
T read_scalar(const YAML::Node& node, const std::string& key) {
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError(key + ": cannot parse value '" + YAML::Dump(node) + "'");
  }
}

std::vector<int> read_int_list(const YAML::Node& node, const std::string& key) {
  std::vector<int> out;
  if (node.IsScalar()) {
    out.push_back(read_scalar<int>(node, key));
  } else if (node.IsSequence()) {
    for (const auto& item : node) out.push_back(read_scalar<int>(item, key));
  } else {
    throw ConfigError(key + ": expected an integer or a list of integers");
  }
  return out;
}

ExperimentConfig from_yaml(const YAML::Node& root, std::string default_name) {
  if (!root.IsMap() && !root.IsNull()) throw ConfigError("config must be a flat key/value mapping");
  ExperimentConfig cfg;
  cfg.name = std::move(default_name);
  for (const auto& kv : root) {
    const auto key = kv.first.as<std::string>();
    if (!known_keys().contains(key)) throw ConfigError("unknown config key '" + key + "'");
  }
  const auto get = [&](const char* key) { return root[key]; };

  if (auto n = get("name")) cfg.name = read_scalar<std::string>(n, "name");
  if (auto n = get("preset")) cfg.preset = parse_preset(read_scalar<std::string>(n, "preset"));
  if (auto n = get("c")) cfg.c = read_scalar<double>(n, "c");
  if (auto n = get("wavenumber")) cfg.wavenumber = read_scalar<double>(n, "wavenumber");
  if (auto n = get("activation_power")) cfg.activation_power = read_scalar<int>(n, "activation_power");
  if (auto n = get("quadrature_points")) cfg.quadrature_points = read_scalar<int>(n, "quadrature_points");
  if (auto n = get("sampling")) cfg.sampling = parse_sampling_mode(read_scalar<std::string>(n, "sampling"));
  if (auto n = get("n_b")) cfg.n_b = read_scalar<int>(n, "n_b");
  if (auto n = get("n_theta")) cfg.n_theta = read_scalar<int>(n, "n_theta");
  if (auto n = get("b_margin")) cfg.b_margin = read_scalar<double>(n, "b_margin");
  if (auto n = get("b_range")) {
    if (!n.IsSequence() || n.size() != 2) throw ConfigError("b_range: expected [lo, hi]");
    cfg.b_range = BRange{read_scalar<double>(n[0], "b_range"), read_scalar<double>(n[1], "b_range")};
  }
  if (auto n = get("normalize_directions")) cfg.normalize_directions = read_scalar<bool>(n, "normalize_directions");
  if (auto n = get("n_max")) cfg.n_max = read_scalar<int>(n, "n_max");
  if (auto n = get("checkpoints")) cfg.checkpoints = read_int_list(n, "checkpoints");
  if (auto n = get("refine")) cfg.refine = read_scalar<bool>(n, "refine");
  if (auto n = get("refine_max_iters")) cfg.refine_max_iters = read_scalar<int>(n, "refine_max_iters");
  if (auto n = get("refine_step_tol")) cfg.refine_step_tol = read_scalar<double>(n, "refine_step_tol");
  if (auto n = get("duplicate_tol")) cfg.duplicate_tol = read_scalar<double>(n, "duplicate_tol");
  if (auto n = get("singular_pivot_tol")) cfg.singular_pivot_tol = read_scalar<double>(n, "singular_pivot_tol");
  if (auto n = get("track_orthogonality")) cfg.track_orthogonality = read_scalar<bool>(n, "track_orthogonality");
  if (auto n = get("dof_per_neuron")) cfg.dof_per_neuron = read_scalar<int>(n, "dof_per_neuron");
  if (auto n = get("verify_grid_factor")) cfg.verify_grid_factor = read_scalar<int>(n, "verify_grid_factor");
  if (auto n = get("output_dir")) cfg.output_dir = read_scalar<std::string>(n, "output_dir");

  const int d = cfg.dim();
  if (auto n = get("cells")) {
    cfg.cells = read_int_list(n, "cells");
    if (cfg.cells.size() == 1 && d > 1) cfg.cells.assign(static_cast<std::size_t>(d), cfg.cells.front());
  } else {
    // Full-scale quadrature partitions used for every reported table.
    const int per_axis = d == 1 ? 4000 : d == 2 ? 400 : 50;
    cfg.cells.assign(static_cast<std::size_t>(d), per_axis);
  }
  cfg.validate();
  return cfg;
}

YAML::Node apply_overrides(YAML::Node root, const std::vector<std::string>& overrides) {
  if (root.IsNull()) root = YAML::Node(YAML::NodeType::Map);
  for (const std::string& ov : overrides) {
    const auto eq = ov.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("override '" + ov + "' is not of the form key=value");
    const std::string key = ov.substr(0, eq);
    if (!known_keys().contains(key)) throw ConfigError("unknown config key '" + key + "' in override");
    try {
      root[key] = YAML::Load(ov.substr(eq + 1));
    } catch (const YAML::Exception& e) {
      throw ConfigError("override '" + ov + "': " + e.what());
    }
  }
  return root;
}

}  // namespace

ExperimentConfig parse_config(std::string_view yaml_text, const std::vector<std::string>& overrides,
                              std::string default_name) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml_text));
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("config is not valid YAML: ") + e.what());
  }
  return from_yaml(apply_overrides(root, overrides), std::move(default_name));
}

ExperimentConfig load_config(const std::filesystem::path& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), overrides, path.stem().string());
}

nlohmann::json to_json(const ExperimentConfig& cfg) {
  nlohmann::json j;
  j["name"] = cfg.name;
  j["preset"] = std::string(to_string(cfg.preset));
  j["c"] = cfg.c;
  j["wavenumber"] = cfg.wavenumber;
  j["reaction"] = cfg.preset == Preset::Ex5_Helmholtz ? -cfg.wavenumber * cfg.wavenumber : cfg.c;
  j["activation_power"] = cfg.activation_power;
  j["quadrature_points"] = cfg.quadrature_points;
  j["cells"] = cfg.cells;
  j["sampling"] = std::string(to_string(cfg.sampling));
  j["n_b"] = cfg.n_b;
  j["n_theta"] = cfg.n_theta;
  j["b_margin"] = cfg.b_margin;
  j["b_range"] = cfg.b_range ? nlohmann::json::array({cfg.b_range->lo, cfg.b_range->hi}) : nlohmann::json();
  j["normalize_directions"] = cfg.normalize_directions;
  j["n_max"] = cfg.n_max;
  j["checkpoints"] = cfg.checkpoints;
  j["refine"] = cfg.refine;
  j["refine_max_iters"] = cfg.refine_max_iters;
  j["refine_step_tol"] = cfg.refine_step_tol;
  j["duplicate_tol"] = cfg.duplicate_tol;
  j["singular_pivot_tol"] = cfg.singular_pivot_tol;
  j["track_orthogonality"] = cfg.track_orthogonality;
  j["dof_per_neuron"] = cfg.resolved_dof_per_neuron();
  j["verify_grid_factor"] = cfg.verify_grid_factor;
  j["output_dir"] = cfg.output_dir;
  return j;
}

nlohmann::json ExperimentResult::metadata() const {
  nlohmann::json j;
  j["config"] = to_json(config);
  nlohmann::json cps = nlohmann::json::array();
  for (const auto& cp : run.checkpoints) {
    cps.push_back({{"n", cp.n}, {"l2_error", cp.l2_error}, {"h1_error", cp.h1_error}});
  }
  j["checkpoints"] = cps;
  j["iterations"] = run.history.size();
  nlohmann::json hist = nlohmann::json::array();
  for (const auto& it : run.history) {
    hist.push_back({{"n", it.n},
                    {"objective", it.objective},
                    {"orthogonality_defect", it.orthogonality_defect},
                    {"condition_estimate", it.condition_estimate}});
  }
  j["history"] = hist;
  j["max_orthogonality_defect"] = max_orthogonality_defect;
  j["max_condition_estimate"] = max_condition_estimate;
  j["elapsed_seconds"] = elapsed_seconds;
  if (!run.checkpoints.empty()) {
    const Model& m = run.checkpoints.back().model;
    nlohmann::json neurons = nlohmann::json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
      const Neuron& g = m.neurons[i];
      std::vector<double> omega(g.omega.data(), g.omega.data() + g.omega.size());
      neurons.push_back({{"coefficient", m.coefficients[i]}, {"omega", omega}, {"b", g.b}, {"k", g.k}});
    }
    j["final_model"] = neurons;
  }
  return j;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const ProblemSpec problem = make_preset(cfg.preset, cfg.preset_param());
  const QuadratureGrid grid(problem.domain(), cfg.cells, cfg.quadrature_points);
  std::optional<QuadratureGrid> verify;
  if (cfg.verify_grid_factor > 1) verify.emplace(grid.refined(cfg.verify_grid_factor));

  ExperimentResult result;
  result.config = cfg;
  result.run = run(problem, grid, cfg.solver_config(), verify ? &*verify : nullptr);

  std::vector<ErrorSample> samples;
  for (const auto& cp : result.run.checkpoints) samples.push_back({cp.n, cp.l2_error, cp.h1_error});
  result.rows = tabulate(samples, cfg.resolved_dof_per_neuron());
  for (const auto& it : result.run.history) {
    if (std::isfinite(it.orthogonality_defect)) {
      result.max_orthogonality_defect = std::max(result.max_orthogonality_defect, it.orthogonality_defect);
    }
    result.max_condition_estimate = std::max(result.max_condition_estimate, it.condition_estimate);
  }
  result.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

namespace {

std::string format_error(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::string format_order(const std::optional<double>& v, std::string_view missing) {
  if (!v) return std::string(missing);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", *v);
  return buf;
}

std::vector<std::string> split_cells(std::string_view line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char ch : line) {
    if (ch == '|') {
      cells.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  cells.push_back(cur);
  for (auto& c : cells) {
    const auto b = c.find_first_not_of(' ');
    const auto e = c.find_last_not_of(' ');
    c = b == std::string::npos ? std::string() : c.substr(b, e - b + 1);
  }
  // Leading and trailing pipes produce empty edge cells.
  if (!cells.empty() && cells.front().empty()) cells.erase(cells.begin());
  if (!cells.empty() && cells.back().empty()) cells.pop_back();
  return cells;
}

}  // namespace

std::string emit_table(const std::vector<ConvergenceRow>& rows, TableFormat format) {
  std::string out;
  if (format == TableFormat::Csv) {
    out += "n,dof,l2_error,l2_order,h1_error,h1_order\n";
    for (const auto& r : rows) {
      out += std::to_string(r.n) + ',' + std::to_string(r.dof) + ',' + format_error(r.l2_error) + ',' +
             format_order(r.l2_order, "") + ',' + format_error(r.h1_error) + ',' + format_order(r.h1_order, "") + '\n';
    }
  } else {
    out += "| n | dof | L2 error | order | H1 error | order |\n";
    out += "|---|---|---|---|---|---|\n";
    for (const auto& r : rows) {
      out += "| " + std::to_string(r.n) + " | " + std::to_string(r.dof) + " | " + format_error(r.l2_error) + " | " +
             format_order(r.l2_order, "-") + " | " + format_error(r.h1_error) + " | " + format_order(r.h1_order, "-") +
             " |\n";
    }
  }
  return out;
}

std::vector<ConvergenceRow> parse_markdown_table(std::string_view text) {
  std::vector<ConvergenceRow> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  const auto order = [](const std::string& s) -> std::optional<double> {
    if (s == "-") return std::nullopt;
    return std::stod(s);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no <= 2 || line.empty()) continue;
    const auto cells = split_cells(line);
    if (cells.size() != 6) throw Error("markdown row " + std::to_string(line_no) + " does not have 6 columns");
    ConvergenceRow r;
    r.n = std::stoi(cells[0]);
    r.dof = std::stol(cells[1]);
    r.l2_error = std::stod(cells[2]);
    r.l2_order = order(cells[3]);
    r.h1_error = std::stod(cells[4]);
    r.h1_order = order(cells[5]);
    rows.push_back(r);
  }
  return rows;
}

OutputSelection parse_output_format(std::string_view name) {
  if (name == "csv") return {true, false};
  if (name == "markdown" || name == "md") return {false, true};
  if (name == "both") return {true, true};
  throw ConfigError("format: expected csv, markdown or both");
}

std::vector<std::filesystem::path> write_outputs(const ExperimentResult& result, const std::filesystem::path& dir,
                                                 OutputSelection formats) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  const auto write = [&](const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw Error("cannot write " + p.string());
    out << text;
    written.push_back(p);
  };
  const std::string& stem = result.config.name;
  if (formats.csv) write(dir / (stem + ".csv"), emit_table(result.rows, TableFormat::Csv));
  if (formats.markdown) write(dir / (stem + ".md"), emit_table(result.rows, TableFormat::Markdown));
  write(dir / (stem + ".meta.json"), result.metadata().dump(2) + "\n");
  return written;
}

}  // namespace oga
