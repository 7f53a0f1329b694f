#pragma once

#include "oga/types.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace oga {

/// Axis-aligned box (lower, upper) in 1 to 3 dimensions.
class BoxDomain {
 public:
  BoxDomain(Vector lower, Vector upper);

  /// Unit cube (0,1)^dim.
  static BoxDomain unit(int dim);

  int dim() const { return static_cast<int>(lower_.size()); }
  const Vector& lower() const { return lower_; }
  const Vector& upper() const { return upper_; }
  double volume() const;
  /// All 2^d corners, lower-corner first, axis 0 varying fastest.
  std::vector<Vector> corners() const;
  bool contains_strictly(const Vector& x) const;

 private:
  Vector lower_;
  Vector upper_;
};

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule on [-1, 1] with 1 <= t <= 8 points, nodes ascending.
GaussRule gauss_legendre_1d(int t);

inline constexpr std::int64_t kDefaultGridPointCap = 100'000'000;

/// Composite tensor-product Gauss-Legendre rule over a uniformly partitioned box.
///
/// Node order: cells in lexicographic order with axis 0 slowest, and within a
/// cell the tensor points in the same lexicographic order with ascending 1D
/// nodes. Solver caches are indexed by this order, so it must not change.
class QuadratureGrid {
 public:
  QuadratureGrid(const BoxDomain& domain, std::vector<int> cells_per_dim, int points_per_cell,
                 std::int64_t point_cap = kDefaultGridPointCap);

  const BoxDomain& domain() const { return domain_; }
  int dim() const { return domain_.dim(); }
  const std::vector<int>& cells_per_dim() const { return cells_; }
  int points_per_cell() const { return t_; }
  Eigen::Index size() const { return weights_.size(); }

  /// N x d, one column per axis.
  const Eigen::MatrixXd& nodes() const { return nodes_; }
  const Eigen::VectorXd& weights() const { return weights_; }
  Vector node(Eigen::Index j) const { return nodes_.row(j).transpose(); }

  /// Same partition refined by an integer factor along every axis.
  QuadratureGrid refined(int factor) const;

 private:
  BoxDomain domain_;
  std::vector<int> cells_;
  int t_;
  Eigen::MatrixXd nodes_;
  Eigen::VectorXd weights_;
};

inline QuadratureGrid build_grid(const BoxDomain& domain, std::vector<int> cells_per_dim, int t) {
  return QuadratureGrid(domain, std::move(cells_per_dim), t);
}

/// Sum of values[j] * w[j] in node order.
double integrate(const QuadratureGrid& grid, const Eigen::VectorXd& values);

template <typename F>
double integrate_function(const QuadratureGrid& grid, F&& f) {
  Eigen::VectorXd values(grid.size());
  for (Eigen::Index j = 0; j < grid.size(); ++j) values[j] = f(grid.node(j));
  return integrate(grid, values);
}

}  // namespace oga
