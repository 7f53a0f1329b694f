#pragma once

#include "oga/model.hpp"
#include "oga/pde_problem.hpp"
#include "oga/quadrature.hpp"

#include <optional>
#include <span>
#include <vector>

namespace oga {

struct ErrorNorms {
  double l2 = 0.0;
  double h1 = 0.0;          // full norm, value and gradient
  double h1_seminorm = 0.0;
};

ErrorNorms error_norms(const QuadratureGrid& grid, const Model& model, const ScalarField& exact);

double l2_error(const QuadratureGrid& grid, const Model& model, const ScalarField& exact);
double h1_error(const QuadratureGrid& grid, const Model& model, const ScalarField& exact);
double h1_seminorm_error(const QuadratureGrid& grid, const Model& model, const ScalarField& exact);

/// log(e_coarse / e_fine) / log(ratio).
double convergence_order(double e_coarse, double e_fine, double ratio = 2.0);

struct ConvergenceRow {
  int n = 0;
  long dof = 0;
  double l2_error = 0.0;
  std::optional<double> l2_order;
  double h1_error = 0.0;
  std::optional<double> h1_order;
};

struct ErrorSample {
  int n;
  double l2;
  double h1;
};

/// One row per sample; orders against the previous row using the ratio of n.
std::vector<ConvergenceRow> tabulate(std::span<const ErrorSample> samples, int dof_per_neuron);

}  // namespace oga
