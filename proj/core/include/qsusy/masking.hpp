#pragma once

#include <string>
#include <vector>

#include "qsusy/fock.hpp"

namespace qsusy {

/// Rows and columns restricted to `idx`.
Matrix masked(const Matrix& m, const std::vector<Index>& idx);
double masked_max_abs(const Matrix& m, const std::vector<Index>& idx);
double masked_frobenius(const Matrix& m, const std::vector<Index>& idx);

inline Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }
inline Matrix anticommutator(const Matrix& a, const Matrix& b) { return a * b + b * a; }

/// Interior-masked identity lhs == rhs. Passes iff max|lhs - rhs| < tol (1 + scale),
/// with scale the larger max-abs entry of the two sides.
struct ResidualCheck {
  std::string name;
  double max_abs_residual = 0.0;
  double scale = 0.0;
  Index masked_dim = 0;
  bool pass = false;

  double relative() const { return max_abs_residual / (1.0 + scale); }
};

ResidualCheck residual_check(std::string name, const Matrix& lhs, const Matrix& rhs,
                             const std::vector<Index>& interior, double tol);

}  // namespace qsusy
