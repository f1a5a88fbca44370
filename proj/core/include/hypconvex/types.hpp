#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace hypconvex {

using Cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

// Raised when inputs violate an operation's preconditions (dimension
// mismatch, point outside the domain, malformed specs).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Sup norm over complex coordinates, max_j |z_j|.
inline double sup_norm(const CVector& z) {
  double m = 0.0;
  for (Eigen::Index j = 0; j < z.size(); ++j) m = std::max(m, std::abs(z[j]));
  return m;
}

}  // namespace hypconvex
