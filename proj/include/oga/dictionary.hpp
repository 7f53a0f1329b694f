#pragma once

#include "oga/quadrature.hpp"
#include "oga/types.hpp"

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace oga {

inline constexpr int kMaxActivationPower = 4;

/// max(0, z)^k with the convention max(0, z)^0 = [z > 0].
inline double relu_power(double z, int k) {
  if (z <= 0.0) return 0.0;
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= z;
  return r;
}

/// Dictionary element x -> max(0, omega . x + b)^k.
struct Neuron {
  Vector omega;
  double b = 0.0;
  int k = 2;

  Neuron() = default;
  Neuron(Vector omega_, double b_, int k_);

  int dim() const { return static_cast<int>(omega.size()); }
  double preactivation(const Vector& x) const { return omega.dot(x) + b; }

  friend bool operator==(const Neuron& a, const Neuron& b) {
    return a.k == b.k && a.b == b.b && a.omega == b.omega;
  }
};

double eval_neuron(const Neuron& n, const Vector& x);

/// k max(0, z)^(k-1) omega; zero at the kink when k = 1.
Vector grad_neuron(const Neuron& n, const Vector& x);

enum class SamplingMode { SignVectors, Angular2D };

SamplingMode parse_sampling_mode(std::string_view name);
std::string_view to_string(SamplingMode mode);

struct BRange {
  double lo;
  double hi;
};

/// Offsets for which omega . x + b = 0 can meet the box, widened by margin.
BRange compute_b_range(const BoxDomain& domain, const std::vector<Vector>& directions, double margin);

/// All 2^d vectors in {+1,-1}^d; +1 before -1, axis 0 varying slowest.
std::vector<Vector> sign_vectors(int dim, bool normalize = false);

/// (cos theta_i, sin theta_i), theta_i = 2 pi i / n_theta, i = 0..n_theta-1.
std::vector<Vector> angular_directions(int n_theta);

struct CandidateSet {
  SamplingMode mode = SamplingMode::SignVectors;
  int n_b = 0;
  double b_lo = 0.0;
  double b_hi = 0.0;
  std::vector<Vector> directions;
  /// directions.size() * (n_b + 1) neurons; direction-major, b ascending.
  std::vector<Neuron> neurons;

  double b_value(int j) const { return b_lo + (b_hi - b_lo) * j / n_b; }
  double b_spacing() const { return (b_hi - b_lo) / n_b; }
};

struct SamplingOptions {
  SamplingMode mode = SamplingMode::SignVectors;
  int n_b = 200;
  int n_theta = 64;
  int k = 2;
  double margin = 0.0;
  bool normalize = false;
  /// Fixed offset interval; replaces the corner-extrema range when set.
  std::optional<BRange> b_range;
};

CandidateSet sample_candidates(const BoxDomain& domain, const SamplingOptions& opts);

}  // namespace oga
