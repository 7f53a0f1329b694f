#pragma once

#include "oga/dictionary.hpp"
#include "oga/quadrature.hpp"
#include "oga/types.hpp"

#include <Eigen/Core>

#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace oga {

/// A scalar field together with its gradient.
struct ScalarField {
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> gradient;
};

/// -div(A grad u) + c u = f on a box with the conormal condition A grad u . n = 0.
class ProblemSpec {
 public:
  ProblemSpec(BoxDomain domain, SmallMatrix diffusion, double reaction, std::function<double(const Vector&)> source,
              std::optional<ScalarField> exact = std::nullopt, std::string name = "custom");

  const BoxDomain& domain() const { return domain_; }
  int dim() const { return domain_.dim(); }
  const SmallMatrix& diffusion() const { return diffusion_; }
  double reaction() const { return reaction_; }
  double source(const Vector& x) const { return source_(x); }
  const std::optional<ScalarField>& exact() const { return exact_; }
  const std::string& name() const { return name_; }

  /// Smallest eigenvalue of A.
  double ellipticity() const { return beta_; }

 private:
  BoxDomain domain_;
  SmallMatrix diffusion_;
  double reaction_;
  std::function<double(const Vector&)> source_;
  std::optional<ScalarField> exact_;
  std::string name_;
  double beta_;
};

/// Values and gradients at quadrature nodes, in grid node order.
struct FieldSample {
  Eigen::VectorXd values;
  Eigen::MatrixXd gradients;  // N x d

  static FieldSample zeros(Eigen::Index n, int dim) {
    return {Eigen::VectorXd::Zero(n), Eigen::MatrixXd::Zero(n, dim)};
  }
};

FieldSample sample_field(const QuadratureGrid& grid, const ScalarField& field);
FieldSample sample_neuron(const QuadratureGrid& grid, const Neuron& neuron);
Eigen::VectorXd sample_source(const QuadratureGrid& grid, const ProblemSpec& problem);

/// a(u, v) = (A grad u, grad v) + (c u, v) by quadrature.
double bilinear_form(const QuadratureGrid& grid, const ProblemSpec& problem, const FieldSample& u,
                     const FieldSample& v);

enum class Preset { Ex1_1D, Ex2_2D, Ex3_2D_anisotropic, Ex4_3D, Ex5_Helmholtz };

Preset parse_preset(std::string_view name);
std::string_view to_string(Preset preset);

/// Manufactured-solution problem. `param` is the reaction constant c for
/// Ex1..Ex4 and the wavenumber k for Ex5 (where c = -k^2).
ProblemSpec make_preset(Preset preset, double param);

}  // namespace oga
