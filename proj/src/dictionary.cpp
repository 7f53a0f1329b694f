#include "oga/dictionary.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace oga {

Neuron::Neuron(Vector omega_, double b_, int k_) : omega(std::move(omega_)), b(b_), k(k_) {
  if (omega.size() < 1 || omega.size() > kMaxDim) throw Error("neuron direction must have 1 to 3 entries");
  if (omega.isZero(0.0)) throw Error("neuron direction must be nonzero");
  if (k < 1 || k > kMaxActivationPower) throw Error("activation power must be in 1..4");
}

double eval_neuron(const Neuron& n, const Vector& x) { return relu_power(n.preactivation(x), n.k); }

Vector grad_neuron(const Neuron& n, const Vector& x) {
  const double z = n.preactivation(x);
  return (n.k * relu_power(z, n.k - 1)) * n.omega;
}

SamplingMode parse_sampling_mode(std::string_view name) {
  if (name == "sign_vectors" || name == "sign") return SamplingMode::SignVectors;
  if (name == "angular" || name == "angular2d") return SamplingMode::Angular2D;
  throw ConfigError("unknown sampling mode '" + std::string(name) + "' (expected sign_vectors or angular)");
}

std::string_view to_string(SamplingMode mode) {
  return mode == SamplingMode::SignVectors ? "sign_vectors" : "angular";
}

BRange compute_b_range(const BoxDomain& domain, const std::vector<Vector>& directions, double margin) {
  if (directions.empty()) throw Error("b-range needs at least one direction");
  if (margin < 0.0) throw Error("b-range margin must be nonnegative");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const Vector& c : domain.corners()) {
    for (const Vector& w : directions) {
      const double s = w.dot(c);
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
  }
  return {-hi - margin, -lo + margin};
}

std::vector<Vector> sign_vectors(int dim, bool normalize) {
  if (dim < 1 || dim > kMaxDim) throw Error("sign vectors need dimension 1, 2 or 3");
  const double scale = normalize ? 1.0 / std::sqrt(static_cast<double>(dim)) : 1.0;
  std::vector<Vector> out;
  for (unsigned mask = 0; mask < (1u << dim); ++mask) {
    Vector w(dim);
    for (int i = 0; i < dim; ++i) w[i] = ((mask >> (dim - 1 - i)) & 1u ? -1.0 : 1.0) * scale;
    out.push_back(w);
  }
  return out;
}

std::vector<Vector> angular_directions(int n_theta) {
  if (n_theta < 1) throw Error("n_theta must be positive");
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(n_theta));
  for (int i = 0; i < n_theta; ++i) {
    const double theta = 2.0 * std::numbers::pi * i / n_theta;
    Vector w(2);
    w << std::cos(theta), std::sin(theta);
    out.push_back(w);
  }
  return out;
}

CandidateSet sample_candidates(const BoxDomain& domain, const SamplingOptions& opts) {
  if (opts.n_b < 1) throw Error("n_b must be at least 1");
  CandidateSet set;
  set.mode = opts.mode;
  set.n_b = opts.n_b;
  if (opts.mode == SamplingMode::Angular2D) {
    if (domain.dim() != 2) throw Error("angular sampling requires a 2D domain");
    set.directions = angular_directions(opts.n_theta);
  } else {
    set.directions = sign_vectors(domain.dim(), opts.normalize);
  }
  const BRange range = opts.b_range ? *opts.b_range : compute_b_range(domain, set.directions, opts.margin);
  if (!(range.lo < range.hi)) throw Error("empty b-range");
  set.b_lo = range.lo;
  set.b_hi = range.hi;
  set.neurons.reserve(set.directions.size() * static_cast<std::size_t>(opts.n_b + 1));
  for (const Vector& w : set.directions) {
    for (int j = 0; j <= opts.n_b; ++j) set.neurons.emplace_back(w, set.b_value(j), opts.k);
  }
  return set;
}

}  // namespace oga
