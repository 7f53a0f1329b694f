#include "oga/metrics.hpp"

#include <cmath>

namespace oga {

ErrorNorms error_norms(const QuadratureGrid& grid, const Model& model, const ScalarField& exact) {
  const FieldSample uh = sample_model(grid, model);
  const FieldSample u = sample_field(grid, exact);
  const Eigen::VectorXd dv = (uh.values - u.values).array().square();
  const Eigen::VectorXd dg = (uh.gradients - u.gradients).rowwise().squaredNorm();
  const double l2_sq = integrate(grid, dv);
  const double semi_sq = integrate(grid, dg);
  return {std::sqrt(l2_sq), std::sqrt(l2_sq + semi_sq), std::sqrt(semi_sq)};
}

double l2_error(const QuadratureGrid& grid, const Model& model, const ScalarField& exact) {
  return error_norms(grid, model, exact).l2;
}

double h1_error(const QuadratureGrid& grid, const Model& model, const ScalarField& exact) {
  return error_norms(grid, model, exact).h1;
}

double h1_seminorm_error(const QuadratureGrid& grid, const Model& model, const ScalarField& exact) {
  return error_norms(grid, model, exact).h1_seminorm;
}

double convergence_order(double e_coarse, double e_fine, double ratio) {
  if (!(e_coarse > 0.0) || !(e_fine > 0.0)) throw Error("degenerate order: errors must be positive");
  if (!(ratio > 1.0)) throw Error("degenerate order: refinement ratio must exceed 1");
  return std::log(e_coarse / e_fine) / std::log(ratio);
}

std::vector<ConvergenceRow> tabulate(std::span<const ErrorSample> samples, int dof_per_neuron) {
  std::vector<ConvergenceRow> rows;
  rows.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const ErrorSample& s = samples[i];
    ConvergenceRow row;
    row.n = s.n;
    row.dof = static_cast<long>(s.n) * dof_per_neuron;
    row.l2_error = s.l2;
    row.h1_error = s.h1;
    if (i > 0) {
      const ErrorSample& prev = samples[i - 1];
      if (prev.n > 0 && s.n > prev.n) {
        const double ratio = static_cast<double>(s.n) / prev.n;
        if (prev.l2 > 0.0 && s.l2 > 0.0) row.l2_order = convergence_order(prev.l2, s.l2, ratio);
        if (prev.h1 > 0.0 && s.h1 > 0.0) row.h1_order = convergence_order(prev.h1, s.h1, ratio);
      }
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace oga
