#include "oga/dense_linalg.hpp"

#include <Eigen/LU>

#include <cmath>
#include <limits>
#include <sstream>

namespace oga {

namespace {
std::string singular_message(Eigen::Index pivot, double value, double norm) {
  std::ostringstream os;
  os << "singular projection system: pivot " << pivot << " is " << value << " (||G||_1 = " << norm << ")";
  return os.str();
}
}  // namespace

SingularSystemError::SingularSystemError(Eigen::Index pivot, double value, double norm)
    : Error(singular_message(pivot, value, norm)), pivot_(pivot) {}

SymmetricSolve solve_symmetric(const GramSystem& sys, double pivot_tol) {
  const Eigen::Index n = sys.size();
  if (sys.matrix.rows() != n || sys.matrix.cols() != n) throw Error("Gram system dimensions are inconsistent");
  if (n == 0) return {Eigen::VectorXd(), 1.0};

  const double norm = sys.matrix.cwiseAbs().colwise().sum().maxCoeff();
  if (!std::isfinite(norm)) throw Error("Gram matrix has non-finite entries");

  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(sys.matrix);
  const auto diag = lu.matrixLU().diagonal();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(std::abs(diag[i]) > pivot_tol * norm)) throw SingularSystemError(i, diag[i], norm);
  }

  SymmetricSolve out;
  out.coefficients = lu.solve(sys.rhs);
  const double rcond = lu.rcond();
  out.condition_estimate = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
  return out;
}

}  // namespace oga
