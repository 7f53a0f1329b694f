#include "oga/pde_problem.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>

namespace oga {

namespace {
constexpr double pi = std::numbers::pi;
}

ProblemSpec::ProblemSpec(BoxDomain domain, SmallMatrix diffusion, double reaction,
                         std::function<double(const Vector&)> source, std::optional<ScalarField> exact,
                         std::string name)
    : domain_(std::move(domain)),
      diffusion_(std::move(diffusion)),
      reaction_(reaction),
      source_(std::move(source)),
      exact_(std::move(exact)),
      name_(std::move(name)) {
  const int d = domain_.dim();
  if (diffusion_.rows() != d || diffusion_.cols() != d) throw Error("diffusion matrix must be d x d");
  if (diffusion_ != diffusion_.transpose()) throw Error("diffusion matrix must be symmetric");
  if (!std::isfinite(reaction_)) throw Error("reaction coefficient must be finite");
  if (!source_) throw Error("problem needs a source term");
  Eigen::SelfAdjointEigenSolver<SmallMatrix> eig(diffusion_, Eigen::EigenvaluesOnly);
  beta_ = eig.eigenvalues().minCoeff();
  if (!(beta_ > 0.0)) throw Error("diffusion matrix must be positive definite");
}

FieldSample sample_field(const QuadratureGrid& grid, const ScalarField& field) {
  const Eigen::Index n = grid.size();
  FieldSample out = FieldSample::zeros(n, grid.dim());
  for (Eigen::Index j = 0; j < n; ++j) {
    const Vector x = grid.node(j);
    out.values[j] = field.value(x);
    out.gradients.row(j) = field.gradient(x).transpose();
  }
  return out;
}

FieldSample sample_neuron(const QuadratureGrid& grid, const Neuron& neuron) {
  const Eigen::Index n = grid.size();
  FieldSample out = FieldSample::zeros(n, grid.dim());
  const Eigen::VectorXd z = (grid.nodes() * neuron.omega).array() + neuron.b;
  for (Eigen::Index j = 0; j < n; ++j) {
    out.values[j] = relu_power(z[j], neuron.k);
    out.gradients.row(j) = (neuron.k * relu_power(z[j], neuron.k - 1)) * neuron.omega.transpose();
  }
  return out;
}

Eigen::VectorXd sample_source(const QuadratureGrid& grid, const ProblemSpec& problem) {
  Eigen::VectorXd f(grid.size());
  for (Eigen::Index j = 0; j < grid.size(); ++j) f[j] = problem.source(grid.node(j));
  return f;
}

double bilinear_form(const QuadratureGrid& grid, const ProblemSpec& problem, const FieldSample& u,
                     const FieldSample& v) {
  const Eigen::Index n = grid.size();
  if (u.values.size() != n || v.values.size() != n) throw Error("field samples do not match the grid");
  const SmallMatrix& a = problem.diffusion();
  const double c = problem.reaction();
  const double* w = grid.weights().data();
  double sum = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double flux = u.gradients.row(j) * a * v.gradients.row(j).transpose();
    sum += w[j] * (flux + c * u.values[j] * v.values[j]);
  }
  return sum;
}

Preset parse_preset(std::string_view name) {
  if (name == "ex1_1d") return Preset::Ex1_1D;
  if (name == "ex2_2d") return Preset::Ex2_2D;
  if (name == "ex3_2d_anisotropic") return Preset::Ex3_2D_anisotropic;
  if (name == "ex4_3d") return Preset::Ex4_3D;
  if (name == "ex5_helmholtz") return Preset::Ex5_Helmholtz;
  throw ConfigError("unknown preset '" + std::string(name) + "'");
}

std::string_view to_string(Preset preset) {
  switch (preset) {
    case Preset::Ex1_1D: return "ex1_1d";
    case Preset::Ex2_2D: return "ex2_2d";
    case Preset::Ex3_2D_anisotropic: return "ex3_2d_anisotropic";
    case Preset::Ex4_3D: return "ex4_3d";
    case Preset::Ex5_Helmholtz: return "ex5_helmholtz";
  }
  return "unknown";
}

namespace {

// Each source below is f = -div(A grad u) + c u worked out by hand from u.

ProblemSpec ex1(double c) {
  // u = cos(pi x) on (-1,1); -u'' = pi^2 u.
  ScalarField u{[](const Vector& x) { return std::cos(pi * x[0]); },
                [](const Vector& x) {
                  Vector g(1);
                  g << -pi * std::sin(pi * x[0]);
                  return g;
                }};
  auto f = [c](const Vector& x) { return (pi * pi + c) * std::cos(pi * x[0]); };
  Vector lo(1), hi(1);
  lo << -1.0;
  hi << 1.0;
  return ProblemSpec(BoxDomain(lo, hi), SmallMatrix::Identity(1, 1), c, f, u, "ex1_1d");
}

ProblemSpec ex2(double c) {
  // u = cos(10 pi x) cos(10 pi y); -lap u = 200 pi^2 u.
  constexpr double m = 10.0 * pi;
  ScalarField u{[](const Vector& x) { return std::cos(m * x[0]) * std::cos(m * x[1]); },
                [](const Vector& x) {
                  Vector g(2);
                  g << -m * std::sin(m * x[0]) * std::cos(m * x[1]), -m * std::cos(m * x[0]) * std::sin(m * x[1]);
                  return g;
                }};
  auto f = [c](const Vector& x) { return (2.0 * m * m + c) * std::cos(m * x[0]) * std::cos(m * x[1]); };
  return ProblemSpec(BoxDomain::unit(2), SmallMatrix::Identity(2, 2), c, f, u, "ex2_2d");
}

ProblemSpec ex3(double c) {
  // u = sin^2(2 pi x) sin^2(2 pi y) cos^2(2 pi x) cos^2(2 pi y) = P(x) P(y) / 16,
  // P(t) = sin^2(4 pi t), P' = 4 pi sin(8 pi t), P'' = 32 pi^2 cos(8 pi t).
  // grad u vanishes on the whole boundary of the unit square.
  SmallMatrix a(2, 2);
  a << 2.0, 1.0, 1.0, 3.0;
  const auto p0 = [](double t) {
    const double s = std::sin(4.0 * pi * t);
    return s * s;
  };
  const auto p1 = [](double t) { return 4.0 * pi * std::sin(8.0 * pi * t); };
  const auto p2 = [](double t) { return 32.0 * pi * pi * std::cos(8.0 * pi * t); };
  ScalarField u{[p0](const Vector& x) { return p0(x[0]) * p0(x[1]) / 16.0; },
                [p0, p1](const Vector& x) {
                  Vector g(2);
                  g << p1(x[0]) * p0(x[1]) / 16.0, p0(x[0]) * p1(x[1]) / 16.0;
                  return g;
                }};
  auto f = [=](const Vector& x) {
    const double uxx = p2(x[0]) * p0(x[1]) / 16.0;
    const double uxy = p1(x[0]) * p1(x[1]) / 16.0;
    const double uyy = p0(x[0]) * p2(x[1]) / 16.0;
    const double u_val = p0(x[0]) * p0(x[1]) / 16.0;
    return -(a(0, 0) * uxx + 2.0 * a(0, 1) * uxy + a(1, 1) * uyy) + c * u_val;
  };
  return ProblemSpec(BoxDomain::unit(2), a, c, f, u, "ex3_2d_anisotropic");
}

ProblemSpec ex4(double c) {
  // u = cos(2 pi x) cos(2 pi y) cos(2 pi z); -lap u = 12 pi^2 u.
  constexpr double m = 2.0 * pi;
  ScalarField u{[](const Vector& x) { return std::cos(m * x[0]) * std::cos(m * x[1]) * std::cos(m * x[2]); },
                [](const Vector& x) {
                  const double cx = std::cos(m * x[0]), cy = std::cos(m * x[1]), cz = std::cos(m * x[2]);
                  Vector g(3);
                  g << -m * std::sin(m * x[0]) * cy * cz, -m * cx * std::sin(m * x[1]) * cz,
                      -m * cx * cy * std::sin(m * x[2]);
                  return g;
                }};
  auto f = [c](const Vector& x) {
    return (3.0 * m * m + c) * std::cos(m * x[0]) * std::cos(m * x[1]) * std::cos(m * x[2]);
  };
  return ProblemSpec(BoxDomain::unit(3), SmallMatrix::Identity(3, 3), c, f, u, "ex4_3d");
}

ProblemSpec ex5(double k) {
  // u = cos(kx) cos(ky) + 1, c = -k^2: f = 2k^2 cos cos - k^2 (cos cos + 1) = k^2 cos cos - k^2.
  if (!(k > 1.0)) throw ConfigError("Helmholtz wavenumber must exceed 1");
  ScalarField u{[k](const Vector& x) { return std::cos(k * x[0]) * std::cos(k * x[1]) + 1.0; },
                [k](const Vector& x) {
                  Vector g(2);
                  g << -k * std::sin(k * x[0]) * std::cos(k * x[1]), -k * std::cos(k * x[0]) * std::sin(k * x[1]);
                  return g;
                }};
  auto f = [k](const Vector& x) { return k * k * std::cos(k * x[0]) * std::cos(k * x[1]) - k * k; };
  return ProblemSpec(BoxDomain::unit(2), SmallMatrix::Identity(2, 2), -k * k, f, u, "ex5_helmholtz");
}

}  // namespace

ProblemSpec make_preset(Preset preset, double param) {
  switch (preset) {
    case Preset::Ex1_1D: return ex1(param);
    case Preset::Ex2_2D: return ex2(param);
    case Preset::Ex3_2D_anisotropic: return ex3(param);
    case Preset::Ex4_3D: return ex4(param);
    case Preset::Ex5_Helmholtz: return ex5(param);
  }
  throw ConfigError("unknown preset");
}

}  // namespace oga
