#pragma once

#include "oga/dense_linalg.hpp"
#include "oga/dictionary.hpp"
#include "oga/model.hpp"
#include "oga/pde_problem.hpp"
#include "oga/quadrature.hpp"

#include <Eigen/Core>

#include <span>
#include <vector>

namespace oga {

struct SolverConfig {
  int n_max = 256;
  /// Neuron counts at which errors are recorded; ascending, within [0, n_max].
  std::vector<int> checkpoints;
  SamplingOptions sampling;
  bool refine = true;
  int refine_max_iters = 20;
  double refine_step_tol = 1e-10;
  double duplicate_tol = 1e-12;
  /// Relative pivot size below which the projection system counts as singular.
  double singular_pivot_tol = kSingularPivotTol;
  /// Re-evaluate a(u_n, g_j) - (f, g_j) for every j after each projection.
  bool track_orthogonality = true;

  int activation_power() const { return sampling.k; }
  void validate() const;
};

/// Failure inside the greedy loop, tagged with the 1-based iteration.
class SolverError : public Error {
 public:
  SolverError(int iteration, const std::string& what);
  int iteration() const { return iteration_; }

 private:
  int iteration_;
};

/// Lowest index among the entries of largest magnitude.
std::size_t argmax_abs(std::span<const double> values);

/// Iteration cache for the orthogonal greedy algorithm on one problem and grid.
///
/// Holds u_{n-1} at the nodes in the weighted form the residual pairing needs:
///   <g, u_{n-1} - u>_a = sum_j k s_{k-1}(z_j) (omega . flux_j) + s_k(z_j) load_j,
/// with flux_j = w_j A grad u_{n-1}(x_j), load_j = w_j (c u_{n-1}(x_j) - f(x_j))
/// and z_j = omega . x_j + b.
class SolverState {
 public:
  SolverState(const ProblemSpec& problem, const QuadratureGrid& grid, SolverConfig config);

  const ProblemSpec& problem() const { return *problem_; }
  const QuadratureGrid& grid() const { return *grid_; }
  const SolverConfig& config() const { return config_; }
  const CandidateSet& candidates() const { return candidates_; }
  const Model& model() const { return model_; }
  const FieldSample& model_values() const { return model_values_; }
  const GramSystem& gram() const { return gram_; }
  const Eigen::VectorXd& source_values() const { return source_values_; }
  double condition_estimate() const { return condition_; }

  /// <g, u_{n-1} - u>_a = (grad g, A grad u_{n-1}) + (c g, u_{n-1}) - (f, g).
  double residual_functional(const Neuron& g) const;

  /// residual_functional for every candidate, in candidate order.
  Eigen::VectorXd candidate_objectives() const;

  /// Local ascent of |residual_functional| from `start`; never returns a worse neuron.
  Neuron refine(const Neuron& start) const;

  /// Greedy choice: grid argmax, optional refinement, duplicate screening.
  Neuron select_neuron() const;

  bool is_duplicate(const Neuron& g) const;

  /// Adds g to the model without re-solving.
  void append(const Neuron& g);

  /// Grows the Gram system to the model size, re-solves every coefficient and
  /// refreshes the node caches.
  void project();

  /// max_j |a(u_n, g_j) - (f, g_j)| / (||G|| ||a|| + ||rhs||), infinity norms.
  double orthogonality_defect() const;

 private:
  struct Objective {
    double value = 0.0;
    double d_b = 0.0;
    double d_theta = 0.0;
  };
  Objective objective_with_derivatives(const Vector& omega, double b, bool want_theta) const;
  void refresh_caches();

  const ProblemSpec* problem_;
  const QuadratureGrid* grid_;
  SolverConfig config_;
  CandidateSet candidates_;

  Model model_;
  FieldSample model_values_;
  GramSystem gram_;
  Eigen::VectorXd source_values_;
  Eigen::VectorXd weighted_source_;
  Eigen::MatrixXd flux_;  // N x d
  Eigen::VectorXd load_;
  double condition_ = 1.0;
};

struct CheckpointRecord {
  int n = 0;
  Model model;
  double l2_error = 0.0;
  double h1_error = 0.0;
};

struct IterationRecord {
  int n = 0;
  double objective = 0.0;
  double orthogonality_defect = 0.0;
  double condition_estimate = 0.0;
};

struct RunResult {
  std::vector<CheckpointRecord> checkpoints;
  std::vector<IterationRecord> history;
};

/// u_0 = 0; n_max rounds of select + project. Errors at checkpoints are
/// measured on `error_grid` (defaults to `grid`) when the problem has an exact solution.
RunResult run(const ProblemSpec& problem, const QuadratureGrid& grid, const SolverConfig& config,
              const QuadratureGrid* error_grid = nullptr);

}  // namespace oga
