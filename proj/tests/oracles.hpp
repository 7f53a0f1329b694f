#pragma once

#include "oga/pde_problem.hpp"
#include "test_support.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <array>
#include <functional>
#include <numbers>

namespace oga::test {

using Real = boost::multiprecision::cpp_bin_float_50;
using RealPoint = std::array<Real, 3>;

inline const Real kPi = boost::math::constants::pi<Real>();

struct Case {
  Preset preset;
  double param;
};

inline const Case kCases[] = {
    {Preset::Ex1_1D, -1.0},          {Preset::Ex1_1D, -1e6},
    {Preset::Ex2_2D, -1.0},          {Preset::Ex2_2D, -1e6},
    {Preset::Ex3_2D_anisotropic, -1.0}, {Preset::Ex3_2D_anisotropic, -1e6},
    {Preset::Ex4_3D, -1.0},          {Preset::Ex4_3D, -1e6},
    {Preset::Ex5_Helmholtz, 2.0 * std::numbers::pi}, {Preset::Ex5_Helmholtz, 10.0 * std::numbers::pi},
};

// Exact solutions restated independently of the library, in 50-digit arithmetic.
inline std::function<Real(const RealPoint&)> exact_solution(Preset preset, double param) {
  using boost::multiprecision::cos;
  using boost::multiprecision::sin;
  switch (preset) {
    case Preset::Ex1_1D: return [](const RealPoint& x) { return cos(kPi * x[0]); };
    case Preset::Ex2_2D: return [](const RealPoint& x) { return cos(10 * kPi * x[0]) * cos(10 * kPi * x[1]); };
    case Preset::Ex3_2D_anisotropic:
      return [](const RealPoint& x) {
        const Real sx = sin(2 * kPi * x[0]), cx = cos(2 * kPi * x[0]);
        const Real sy = sin(2 * kPi * x[1]), cy = cos(2 * kPi * x[1]);
        return sx * sx * sy * sy * cx * cx * cy * cy;
      };
    case Preset::Ex4_3D:
      return [](const RealPoint& x) { return cos(2 * kPi * x[0]) * cos(2 * kPi * x[1]) * cos(2 * kPi * x[2]); };
    case Preset::Ex5_Helmholtz: {
      const Real k = param;
      return [k](const RealPoint& x) { return cos(k * x[0]) * cos(k * x[1]) + 1; };
    }
  }
  return {};
}

// div(A grad u) by second-order central differences with a tiny step in 50-digit precision.
inline Real div_a_grad(const std::function<Real(const RealPoint&)>& u, const SmallMatrix& a, const RealPoint& x, int d) {
  const Real h("1e-15");
  Real acc = 0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if (a(i, j) == 0.0) continue;
      Real dij;
      if (i == j) {
        RealPoint p = x, m = x;
        p[i] += h;
        m[i] -= h;
        dij = (u(p) - 2 * u(x) + u(m)) / (h * h);
      } else {
        RealPoint pp = x, pm = x, mp = x, mm = x;
        pp[i] += h, pp[j] += h;
        pm[i] += h, pm[j] -= h;
        mp[i] -= h, mp[j] += h;
        mm[i] -= h, mm[j] -= h;
        dij = (u(pp) - u(pm) - u(mp) + u(mm)) / (4 * h * h);
      }
      acc += Real(a(i, j)) * dij;
    }
  }
  return acc;
}

inline Vector random_point(std::mt19937_64& rng, const BoxDomain& box) {
  Vector x(box.dim());
  for (int i = 0; i < box.dim(); ++i) x[i] = uniform(rng, box.lower()[i], box.upper()[i]);
  return x;
}

/// Worst mixed-scale deviation of the preset source from -div(A grad u) + c u at `samples` random points.
inline double source_consistency(const ProblemSpec& p, Preset preset, double param, int samples, std::mt19937_64& rng) {
  const auto u = exact_solution(preset, param);
  const int d = p.dim();
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const Vector x = random_point(rng, p.domain());
    RealPoint xr{0, 0, 0};
    for (int a = 0; a < d; ++a) xr[static_cast<std::size_t>(a)] = x[a];
    const Real div = div_a_grad(u, p.diffusion(), xr, d);
    const Real c_u = Real(p.reaction()) * u(xr);
    const double oracle = static_cast<double>(-div + c_u);
    const double scale = 1.0 + std::abs(static_cast<double>(c_u)) + std::abs(static_cast<double>(div));
    worst = std::max(worst, std::abs(p.source(x) - oracle) / scale);
  }
  return worst;
}

/// Smallest a(v,v) + (beta - c)|v|_0^2 - beta |v|_1^2, relative to |v|_1^2, over random 10-neuron spans.
inline double garding_margin(const ProblemSpec& p, int trials, std::mt19937_64& rng) {
  const int d = p.dim();
  const QuadratureGrid grid(p.domain(), std::vector<int>(static_cast<std::size_t>(d), d == 1 ? 200 : d == 2 ? 30 : 8), 2);
  const double beta = p.ellipticity();
  std::vector<FieldSample> basis;
  for (int i = 0; i < 10; ++i) {
    Vector w(d);
    for (int a = 0; a < d; ++a) w[a] = uniform(rng, -1.0, 1.0);
    basis.push_back(sample_neuron(grid, Neuron(w, uniform(rng, -1.0, 1.0), 2)));
  }
  double worst = 1e300;
  for (int trial = 0; trial < trials; ++trial) {
    FieldSample v = FieldSample::zeros(grid.size(), d);
    for (const FieldSample& b : basis) {
      const double a = uniform(rng, -1.0, 1.0);
      v.values += a * b.values;
      v.gradients += a * b.gradients;
    }
    const double l2_sq = integrate(grid, v.values.array().square().matrix());
    const double h1_sq = l2_sq + integrate(grid, v.gradients.rowwise().squaredNorm());
    const double lhs = bilinear_form(grid, p, v, v) + (beta - p.reaction()) * l2_sq;
    worst = std::min(worst, (lhs - beta * h1_sq) / h1_sq);
  }
  return worst;
}

}  // namespace oga::test
