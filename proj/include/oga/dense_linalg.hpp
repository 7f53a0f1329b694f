#pragma once

#include "oga/types.hpp"

#include <Eigen/Core>

namespace oga {

/// G_ij = a(g_i, g_j), rhs_j = (f, g_j).
struct GramSystem {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd rhs;

  Eigen::Index size() const { return rhs.size(); }
};

struct SymmetricSolve {
  Eigen::VectorXd coefficients;
  /// 1-norm condition number estimate.
  double condition_estimate = 0.0;
};

/// Raised when a pivot falls below pivot_tol * ||G||_1.
class SingularSystemError : public Error {
 public:
  SingularSystemError(Eigen::Index pivot, double value, double norm);
  Eigen::Index pivot_index() const { return pivot_; }

 private:
  Eigen::Index pivot_;
};

inline constexpr double kSingularPivotTol = 1e-14;

/// Solves a symmetric, possibly indefinite, system with a row-pivoted LU.
SymmetricSolve solve_symmetric(const GramSystem& sys, double pivot_tol = kSingularPivotTol);

}  // namespace oga
