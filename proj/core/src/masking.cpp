#include "qsusy/masking.hpp"

#include <algorithm>

namespace qsusy {

Matrix masked(const Matrix& m, const std::vector<Index>& idx) { return m(idx, idx); }

double masked_max_abs(const Matrix& m, const std::vector<Index>& idx) {
  if (idx.empty()) return 0.0;
  return m(idx, idx).cwiseAbs().maxCoeff();
}

double masked_frobenius(const Matrix& m, const std::vector<Index>& idx) { return m(idx, idx).norm(); }

ResidualCheck residual_check(std::string name, const Matrix& lhs, const Matrix& rhs,
                             const std::vector<Index>& interior, double tol) {
  ResidualCheck c;
  c.name = std::move(name);
  c.masked_dim = static_cast<Index>(interior.size());
  c.max_abs_residual = masked_max_abs(lhs - rhs, interior);
  c.scale = std::max(masked_max_abs(lhs, interior), masked_max_abs(rhs, interior));
  c.pass = c.max_abs_residual < tol * (1.0 + c.scale);
  return c;
}

}  // namespace qsusy
