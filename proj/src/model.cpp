#include "oga/model.hpp"

namespace oga {

double Model::value(const Vector& x) const {
  double u = 0.0;
  for (std::size_t i = 0; i < neurons.size(); ++i) u += coefficients[i] * eval_neuron(neurons[i], x);
  return u;
}

Vector Model::gradient(const Vector& x) const {
  Vector g = Vector::Zero(x.size());
  for (std::size_t i = 0; i < neurons.size(); ++i) g += coefficients[i] * grad_neuron(neurons[i], x);
  return g;
}

ScalarField Model::as_field() const {
  return {[m = *this](const Vector& x) { return m.value(x); }, [m = *this](const Vector& x) { return m.gradient(x); }};
}

FieldSample sample_model(const QuadratureGrid& grid, const Model& model) {
  const Eigen::Index n = grid.size();
  const int d = grid.dim();
  FieldSample out = FieldSample::zeros(n, d);
  if (model.coefficients.size() != model.neurons.size()) throw Error("model coefficient count mismatch");
  for (std::size_t i = 0; i < model.size(); ++i) {
    const Neuron& g = model.neurons[i];
    const double a = model.coefficients[i];
    const Eigen::VectorXd z = (grid.nodes() * g.omega).array() + g.b;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (z[j] <= 0.0) continue;
      const double r = relu_power(z[j], g.k - 1);
      out.values[j] += a * r * z[j];
      const double s = a * g.k * r;
      for (int ax = 0; ax < d; ++ax) out.gradients(j, ax) += s * g.omega[ax];
    }
  }
  return out;
}

}  // namespace oga
