#include "oga/oga_solver.hpp"

#include "oga/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

namespace oga {

void SolverConfig::validate() const {
  if (n_max < 0) throw ConfigError("n_max must be nonnegative");
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    if (checkpoints[i] < 0 || checkpoints[i] > n_max) {
      throw ConfigError("checkpoint " + std::to_string(checkpoints[i]) + " is outside [0, n_max]");
    }
    if (i > 0 && checkpoints[i] <= checkpoints[i - 1]) throw ConfigError("checkpoints must be strictly ascending");
  }
  if (sampling.n_b < 1) throw ConfigError("n_b must be at least 1");
  if (sampling.mode == SamplingMode::Angular2D && sampling.n_theta < 1) throw ConfigError("n_theta must be positive");
  if (sampling.k < 1 || sampling.k > kMaxActivationPower) throw ConfigError("activation power must be in 1..4");
  if (sampling.margin < 0.0) throw ConfigError("b margin must be nonnegative");
  if (refine_max_iters < 0) throw ConfigError("refine_max_iters must be nonnegative");
  if (!(refine_step_tol > 0.0)) throw ConfigError("refine_step_tol must be positive");
  if (!(duplicate_tol >= 0.0)) throw ConfigError("duplicate_tol must be nonnegative");
  if (!(singular_pivot_tol >= 0.0)) throw ConfigError("singular_pivot_tol must be nonnegative");
}

SolverError::SolverError(int iteration, const std::string& what)
    : Error("iteration " + std::to_string(iteration) + ": " + what), iteration_(iteration) {}

std::size_t argmax_abs(std::span<const double> values) {
  if (values.empty()) throw Error("argmax of an empty set");
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (std::abs(values[i]) > std::abs(values[best])) best = i;
  }
  return best;
}

namespace {

// Sum over nodes of s_{k-1}(s + b) (k t + (s + b) p); the candidate-scan kernel.
template <int K>
double scan_kernel(const double* s, const double* t, const double* p, Eigen::Index n, double b) {
  double acc = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double z = s[j] + b;
    if (z > 0.0) {
      double r = 1.0;
      for (int q = 0; q < K - 1; ++q) r *= z;
      acc += r * (K * t[j] + z * p[j]);
    }
  }
  return acc;
}

double scan(int k, const double* s, const double* t, const double* p, Eigen::Index n, double b) {
  switch (k) {
    case 1: return scan_kernel<1>(s, t, p, n, b);
    case 2: return scan_kernel<2>(s, t, p, n, b);
    case 3: return scan_kernel<3>(s, t, p, n, b);
    case 4: return scan_kernel<4>(s, t, p, n, b);
  }
  throw Error("activation power must be in 1..4");
}

}  // namespace

SolverState::SolverState(const ProblemSpec& problem, const QuadratureGrid& grid, SolverConfig config)
    : problem_(&problem), grid_(&grid), config_(std::move(config)) {
  config_.validate();
  if (problem.dim() != grid.dim()) throw Error("problem and grid dimensions differ");
  candidates_ = sample_candidates(problem.domain(), config_.sampling);
  source_values_ = sample_source(grid, problem);
  weighted_source_ = source_values_.cwiseProduct(grid.weights());
  model_values_ = FieldSample::zeros(grid.size(), grid.dim());
  gram_.matrix.resize(0, 0);
  gram_.rhs.resize(0);
  refresh_caches();
}

void SolverState::refresh_caches() {
  const Eigen::VectorXd& w = grid_->weights();
  flux_ = (model_values_.gradients * problem_->diffusion()).array().colwise() * w.array();
  load_ = problem_->reaction() * model_values_.values.cwiseProduct(w) - weighted_source_;
}

double SolverState::residual_functional(const Neuron& g) const {
  if (g.dim() != grid_->dim()) throw Error("neuron dimension does not match the grid");
  const Eigen::VectorXd s = grid_->nodes() * g.omega;
  const Eigen::VectorXd t = flux_ * g.omega;
  return scan(g.k, s.data(), t.data(), load_.data(), grid_->size(), g.b);
}

Eigen::VectorXd SolverState::candidate_objectives() const {
  const int per_dir = candidates_.n_b + 1;
  const int k = config_.sampling.k;
  Eigen::VectorXd out(static_cast<Eigen::Index>(candidates_.neurons.size()));
  Eigen::VectorXd s, t;
  for (std::size_t d = 0; d < candidates_.directions.size(); ++d) {
    const Vector& omega = candidates_.directions[d];
    s.noalias() = grid_->nodes() * omega;
    t.noalias() = flux_ * omega;
    for (int j = 0; j < per_dir; ++j) {
      const auto idx = static_cast<Eigen::Index>(d) * per_dir + j;
      out[idx] = scan(k, s.data(), t.data(), load_.data(), grid_->size(), candidates_.neurons[idx].b);
    }
  }
  return out;
}

SolverState::Objective SolverState::objective_with_derivatives(const Vector& omega, double b, bool want_theta) const {
  const int k = config_.sampling.k;
  const Eigen::VectorXd s = grid_->nodes() * omega;
  const Eigen::VectorXd t = flux_ * omega;
  Eigen::VectorXd s_rot, t_rot;
  if (want_theta) {
    Vector rot(2);
    rot << -omega[1], omega[0];
    s_rot = grid_->nodes() * rot;
    t_rot = flux_ * rot;
  }
  Objective obj;
  const double kk1 = static_cast<double>(k) * (k - 1);
  for (Eigen::Index j = 0; j < grid_->size(); ++j) {
    const double z = s[j] + b;
    if (z <= 0.0) continue;
    const double r2 = k >= 2 ? relu_power(z, k - 2) : 0.0;
    const double r1 = k >= 2 ? r2 * z : 1.0;
    obj.value += r1 * (k * t[j] + z * load_[j]);
    obj.d_b += kk1 * r2 * t[j] + k * r1 * load_[j];
    if (want_theta) obj.d_theta += kk1 * r2 * s_rot[j] * t[j] + k * r1 * (t_rot[j] + s_rot[j] * load_[j]);
  }
  return obj;
}

Neuron SolverState::refine(const Neuron& start) const {
  const bool angular = candidates_.mode == SamplingMode::Angular2D;
  const double scale_b = candidates_.b_spacing();
  const double scale_theta =
      angular ? 2.0 * std::numbers::pi / static_cast<double>(candidates_.directions.size()) : 0.0;

  const auto direction = [&](double theta) {
    if (!angular) return start.omega;
    Vector w(2);
    w << std::cos(theta), std::sin(theta);
    return w;
  };
  // Parameters in grid-spacing units: p = (b / scale_b, theta / scale_theta).
  double theta = angular ? std::atan2(start.omega[1], start.omega[0]) : 0.0;
  double b = start.b;
  Objective cur = objective_with_derivatives(direction(theta), b, angular);
  const double start_abs = std::abs(cur.value);

  Eigen::Vector2d prev_step = Eigen::Vector2d::Zero();
  Eigen::Vector2d prev_grad = Eigen::Vector2d::Zero();
  bool have_prev = false;
  for (int it = 0; it < config_.refine_max_iters; ++it) {
    const Eigen::Vector2d grad(2.0 * cur.value * cur.d_b * scale_b, 2.0 * cur.value * cur.d_theta * scale_theta);
    const double gnorm = grad.norm();
    if (!(gnorm > 0.0)) break;

    // Barzilai-Borwein length after the first step, capped at one grid spacing.
    double len = 0.5;
    if (have_prev) {
      const double curvature = std::abs(prev_step.dot(grad - prev_grad));
      if (curvature > 0.0) len = std::min(1.0, prev_step.squaredNorm() / curvature * gnorm);
    }
    const Eigen::Vector2d dir = grad / gnorm;

    bool accepted = false;
    double step_size = 0.0;
    Objective trial;
    double b_new = b, theta_new = theta;
    while (true) {
      b_new = std::clamp(b + len * dir[0] * scale_b, candidates_.b_lo, candidates_.b_hi);
      theta_new = theta + len * dir[1] * scale_theta;
      step_size = std::hypot(b_new - b, theta_new - theta);
      if (step_size < config_.refine_step_tol) break;
      trial = objective_with_derivatives(direction(theta_new), b_new, angular);
      if (std::abs(trial.value) > std::abs(cur.value)) {
        accepted = true;
        break;
      }
      len *= 0.5;
    }
    if (!accepted) break;

    prev_step = Eigen::Vector2d(scale_b > 0 ? (b_new - b) / scale_b : 0.0,
                                scale_theta > 0 ? (theta_new - theta) / scale_theta : 0.0);
    prev_grad = grad;
    have_prev = true;
    b = b_new;
    theta = theta_new;
    cur = trial;
  }

  if (!(std::abs(cur.value) >= start_abs)) return start;
  if (angular) theta = std::remainder(theta, 2.0 * std::numbers::pi);
  return Neuron(direction(theta), b, start.k);
}

bool SolverState::is_duplicate(const Neuron& g) const {
  return std::any_of(model_.neurons.begin(), model_.neurons.end(), [&](const Neuron& m) {
    return m.k == g.k && m.omega == g.omega && std::abs(m.b - g.b) < config_.duplicate_tol;
  });
}

Neuron SolverState::select_neuron() const {
  const Eigen::VectorXd obj = candidate_objectives();
  for (Eigen::Index i = 0; i < obj.size(); ++i) {
    if (!std::isfinite(obj[i])) throw Error("non-finite residual pairing for candidate " + std::to_string(i));
  }
  std::vector<std::size_t> order(static_cast<std::size_t>(obj.size()));
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(obj[static_cast<Eigen::Index>(a)]) > std::abs(obj[static_cast<Eigen::Index>(b)]);
  });

  for (std::size_t idx : order) {
    const Neuron& cand = candidates_.neurons[idx];
    if (is_duplicate(cand)) continue;
    if (config_.refine) {
      Neuron refined = refine(cand);
      if (!is_duplicate(refined)) return refined;
    }
    return cand;
  }
  throw Error("dictionary exhausted: every candidate duplicates a selected neuron");
}

void SolverState::append(const Neuron& g) {
  if (g.dim() != grid_->dim()) throw Error("neuron dimension does not match the grid");
  model_.neurons.push_back(g);
  model_.coefficients.push_back(0.0);
}

void SolverState::project() {
  const auto n = static_cast<Eigen::Index>(model_.size());
  if (n == 0) throw Error("projection needs at least one neuron");
  const Eigen::Index n_old = gram_.size();
  const Eigen::Index npts = grid_->size();
  const Eigen::VectorXd& w = grid_->weights();
  const SmallMatrix& a = problem_->diffusion();
  const double c = problem_->reaction();

  gram_.matrix.conservativeResize(n, n);
  gram_.rhs.conservativeResize(n);

  Eigen::VectorXd wr(npts), wrz(npts), zj(npts);
  for (Eigen::Index i = n_old; i < n; ++i) {
    const Neuron& gi = model_.neurons[static_cast<std::size_t>(i)];
    const Eigen::VectorXd zi = (grid_->nodes() * gi.omega).array() + gi.b;
    for (Eigen::Index q = 0; q < npts; ++q) {
      const double r = zi[q] > 0.0 ? relu_power(zi[q], gi.k - 1) : 0.0;
      wr[q] = w[q] * r;
      wrz[q] = wr[q] * zi[q];
    }
    gram_.rhs[i] = source_values_.dot(wrz);

    // grad g = k s_{k-1}(z) omega and g = s_{k-1}(z) z, so
    // a(g_i, g_j) = k_i k_j (omega_i . A omega_j) sum w r_i r_j + c sum w r_i z_i r_j z_j.
    for (Eigen::Index j = 0; j <= i; ++j) {
      const Neuron& gj = model_.neurons[static_cast<std::size_t>(j)];
      zj.noalias() = grid_->nodes() * gj.omega;
      double flux = 0.0, mass = 0.0;
      for (Eigen::Index q = 0; q < npts; ++q) {
        const double z = zj[q] + gj.b;
        if (z <= 0.0 || wr[q] == 0.0) continue;
        const double r = relu_power(z, gj.k - 1);
        flux += wr[q] * r;
        mass += wrz[q] * r * z;
      }
      const double coupling = gi.omega.dot(a * gj.omega);
      const double entry = gi.k * gj.k * coupling * flux + c * mass;
      gram_.matrix(i, j) = entry;
      gram_.matrix(j, i) = entry;
    }
  }

  const SymmetricSolve sol = solve_symmetric(gram_, config_.singular_pivot_tol);
  for (Eigen::Index i = 0; i < n; ++i) model_.coefficients[static_cast<std::size_t>(i)] = sol.coefficients[i];
  condition_ = sol.condition_estimate;
  model_values_ = sample_model(*grid_, model_);
  refresh_caches();
}

double SolverState::orthogonality_defect() const {
  if (model_.empty()) return 0.0;
  double worst = 0.0;
  for (const Neuron& g : model_.neurons) worst = std::max(worst, std::abs(residual_functional(g)));
  const Eigen::Map<const Eigen::VectorXd> coef(model_.coefficients.data(),
                                               static_cast<Eigen::Index>(model_.coefficients.size()));
  const double g_norm = gram_.matrix.cwiseAbs().rowwise().sum().maxCoeff();
  const double scale = g_norm * coef.cwiseAbs().maxCoeff() + gram_.rhs.cwiseAbs().maxCoeff();
  return scale > 0.0 ? worst / scale : worst;
}

RunResult run(const ProblemSpec& problem, const QuadratureGrid& grid, const SolverConfig& config,
              const QuadratureGrid* error_grid) {
  SolverState state(problem, grid, config);
  const QuadratureGrid& egrid = error_grid ? *error_grid : grid;
  if (egrid.dim() != grid.dim()) throw Error("error grid dimension differs from the solve grid");

  RunResult result;
  auto next_cp = config.checkpoints.begin();
  const auto record = [&](int n) {
    CheckpointRecord rec;
    rec.n = n;
    rec.model = state.model();
    if (problem.exact()) {
      const ErrorNorms e = error_norms(egrid, rec.model, *problem.exact());
      rec.l2_error = e.l2;
      rec.h1_error = e.h1;
    } else {
      rec.l2_error = rec.h1_error = std::numeric_limits<double>::quiet_NaN();
    }
    result.checkpoints.push_back(std::move(rec));
  };

  if (next_cp != config.checkpoints.end() && *next_cp == 0) {
    record(0);
    ++next_cp;
  }
  for (int n = 1; n <= config.n_max; ++n) {
    IterationRecord it;
    it.n = n;
    try {
      const Neuron g = state.select_neuron();
      it.objective = state.residual_functional(g);
      state.append(g);
      state.project();
    } catch (const SolverError&) {
      throw;
    } catch (const Error& e) {
      throw SolverError(n, e.what());
    }
    it.orthogonality_defect =
        config.track_orthogonality ? state.orthogonality_defect() : std::numeric_limits<double>::quiet_NaN();
    it.condition_estimate = state.condition_estimate();
    result.history.push_back(it);
    if (next_cp != config.checkpoints.end() && *next_cp == n) {
      record(n);
      ++next_cp;
    }
  }
  return result;
}

}  // namespace oga
