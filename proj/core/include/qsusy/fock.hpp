#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

#include "qsusy/params.hpp"
#include "qsusy/rational.hpp"

namespace qsusy {

using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// |n, nu>: level n on the tower selected by nu.
struct FockState {
  long n = 0;
  int nu = 0;

  friend bool operator==(const FockState&, const FockState&) = default;
};

/// Both towers truncated at n_max; idx(n, nu) = nu * (n_max + 1) + n.
class TruncatedBasis {
 public:
  long n_max() const noexcept { return n_max_; }
  Index dim() const noexcept { return 2 * (n_max_ + 1); }

  Index index(FockState s) const noexcept { return s.nu * (n_max_ + 1) + s.n; }
  Index index(long n, int nu) const noexcept { return index(FockState{n, nu}); }
  FockState state(Index idx) const noexcept {
    return {static_cast<long>(idx % (n_max_ + 1)), static_cast<int>(idx / (n_max_ + 1))};
  }
  bool contains(long n) const noexcept { return n >= 0 && n <= n_max_; }

  /// Indices with n <= n_max - buffer, in increasing order.
  std::vector<Index> interior(long buffer) const;

  friend bool operator==(const TruncatedBasis&, const TruncatedBasis&) = default;

 private:
  explicit TruncatedBasis(long n_max) : n_max_(n_max) {}
  long n_max_;

  friend TruncatedBasis build_basis(long n_max);
};

inline constexpr long kMinCutoff = 4;

/// Throws CutoffTooSmall for n_max < 4.
TruncatedBasis build_basis(long n_max);

/// phi1(n, nu) = 1/2 [n]_{(eps q)^-1} (1 + (eps q)^{1-n-2nu}); 0 for n <= 0, n at eps q == 1.
double phi1(long n, int nu, const DeformationParams& p);

struct SignedLog {
  int sign = 0;
  double log_abs = 0.0;
};

/// Sign and log-magnitude of phi1, free of overflow for any n.
SignedLog log_phi1(long n, int nu, const DeformationParams& p);

/// [phi1(n,nu)]! = phi1(n,nu) ... phi1(1,nu), with [phi1(0,nu)]! = 1.
/// Throws OverflowDetected when the product leaves the double range.
double phi1_factorial(long n, int nu, const DeformationParams& p);
double log_phi1_factorial(long n, int nu, const DeformationParams& p);

/// [phi1(a,alpha)]! / [phi1(b,beta)]!, accumulated as a product of per-level
/// quotients with a log-space fallback. Throws DomainError on a nonpositive factor.
double phi1_factorial_ratio(long a, int alpha, long b, int beta, const DeformationParams& p);

Rational phi1_exact(long n, int nu, const DeformationParams& p);
Rational phi1_factorial_exact(long n, int nu, const DeformationParams& p);

struct OperatorSet {
  Matrix a1, a2, a1dag, a2dag;

  const Matrix& lower(std::size_t mode) const { return mode == kMode1 ? a1 : a2; }
  const Matrix& raise(std::size_t mode) const { return mode == kMode1 ? a1dag : a2dag; }
};

/// Ladder operators on a truncated basis. The dagger matrices are transposes
/// of the annihilators by construction.
class LadderMatrices {
 public:
  const DeformationParams& params() const noexcept { return params_; }
  const TruncatedBasis& basis() const noexcept { return basis_; }
  const OperatorSet& ops() const noexcept { return ops_; }

  const Matrix& a1() const noexcept { return ops_.a1; }
  const Matrix& a2() const noexcept { return ops_.a2; }
  const Matrix& a1dag() const noexcept { return ops_.a1dag; }
  const Matrix& a2dag() const noexcept { return ops_.a2dag; }

  /// Operators with modes 1 <-> 2 exchanged: the physical labeling when the
  /// parameters are in picture B.
  OperatorSet relabeled() const { return {ops_.a2, ops_.a1, ops_.a2dag, ops_.a1dag}; }

 private:
  LadderMatrices(DeformationParams p, TruncatedBasis b, OperatorSet ops)
      : params_(std::move(p)), basis_(b), ops_(std::move(ops)) {}

  DeformationParams params_;
  TruncatedBasis basis_;
  OperatorSet ops_;

  friend LadderMatrices build_ladder_matrices(const DeformationParams&, const TruncatedBasis&);
};

/// Out-of-range targets (n < 0 or n > n_max) are zero amplitudes.
LadderMatrices build_ladder_matrices(const DeformationParams& p, const TruncatedBasis& basis);

struct NormCheck {
  double formula = 0.0;
  Rational formula_exact;
  Rational oracle;
};

/// [phi1(n,nu)]! from the closed form next to <n,nu|n,nu> from the exact oracle.
NormCheck norm_check(long n, int nu, const DeformationParams& p);

}  // namespace qsusy
