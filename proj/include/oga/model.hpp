#pragma once

#include "oga/dictionary.hpp"
#include "oga/pde_problem.hpp"
#include "oga/quadrature.hpp"

#include <cstddef>
#include <vector>

namespace oga {

/// u_n = sum_i a_i g_i, neurons kept in selection order.
struct Model {
  std::vector<Neuron> neurons;
  std::vector<double> coefficients;

  std::size_t size() const { return neurons.size(); }
  bool empty() const { return neurons.empty(); }

  double value(const Vector& x) const;
  Vector gradient(const Vector& x) const;
  ScalarField as_field() const;
};

/// Model values and gradients at every node of `grid`.
FieldSample sample_model(const QuadratureGrid& grid, const Model& model);

}  // namespace oga
