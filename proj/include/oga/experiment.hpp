#pragma once

#include "oga/metrics.hpp"
#include "oga/oga_solver.hpp"
#include "oga/pde_problem.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace oga {

/// Every knob of one experiment, with defaults materialized.
///
/// Config files are flat YAML mappings whose keys are the field names below
/// (see configs/ for examples). `c` is the reaction constant for ex1..ex4,
/// `wavenumber` the Helmholtz k for ex5. `cells` may be a scalar, applied to
/// every axis, or a per-axis list.
struct ExperimentConfig {
  std::string name = "experiment";
  Preset preset = Preset::Ex1_1D;
  double c = -1.0;
  double wavenumber = 2.0 * 3.14159265358979323846;
  int activation_power = 2;
  int quadrature_points = 2;
  std::vector<int> cells;
  SamplingMode sampling = SamplingMode::SignVectors;
  int n_b = 200;
  int n_theta = 64;
  double b_margin = 0.0;
  std::optional<BRange> b_range;
  bool normalize_directions = false;
  int n_max = 256;
  std::vector<int> checkpoints = {16, 32, 64, 128, 256};
  bool refine = true;
  int refine_max_iters = 20;
  double refine_step_tol = 1e-10;
  double duplicate_tol = 1e-12;
  double singular_pivot_tol = kSingularPivotTol;
  bool track_orthogonality = true;
  int dof_per_neuron = 0;  // 0: d + 1 for sign vectors, 2 for angular
  int verify_grid_factor = 1;
  std::string output_dir = ".";

  int dim() const;
  double preset_param() const { return preset == Preset::Ex5_Helmholtz ? wavenumber : c; }
  int resolved_dof_per_neuron() const;
  SolverConfig solver_config() const;
  void validate() const;
};

/// Reads a flat YAML config; each override is "key=value" with a YAML value.
ExperimentConfig load_config(const std::filesystem::path& path, const std::vector<std::string>& overrides = {});
ExperimentConfig parse_config(std::string_view yaml_text, const std::vector<std::string>& overrides = {},
                              std::string default_name = "experiment");

nlohmann::json to_json(const ExperimentConfig& cfg);

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<ConvergenceRow> rows;
  RunResult run;
  double max_orthogonality_defect = 0.0;
  double max_condition_estimate = 0.0;
  double elapsed_seconds = 0.0;

  /// Resolved config echo plus run diagnostics.
  nlohmann::json metadata() const;
};

ExperimentResult run_experiment(const ExperimentConfig& cfg);

enum class TableFormat { Csv, Markdown };

/// CSV header n,dof,l2_error,l2_order,h1_error,h1_order; errors as %.3e,
/// orders as %.2f, missing orders empty (CSV) or "-" (markdown).
std::string emit_table(const std::vector<ConvergenceRow>& rows, TableFormat format);

/// Inverse of emit_table(..., Markdown) at the printed precision.
std::vector<ConvergenceRow> parse_markdown_table(std::string_view text);

struct OutputSelection {
  bool csv = true;
  bool markdown = true;
};
OutputSelection parse_output_format(std::string_view name);

/// Writes <name>.csv / <name>.md / <name>.meta.json into `dir`; returns written paths.
std::vector<std::filesystem::path> write_outputs(const ExperimentResult& result, const std::filesystem::path& dir,
                                                 OutputSelection formats);

}  // namespace oga
