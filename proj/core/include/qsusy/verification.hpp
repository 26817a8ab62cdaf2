#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qsusy/fock.hpp"
#include "qsusy/masking.hpp"
#include "qsusy/oracle.hpp"
#include "qsusy/params.hpp"

namespace qsusy {

/// Residuals of the six defining relations: quad, exchange, r11, r22, r12, r21.
struct RelationReport {
  std::vector<ResidualCheck> relations;

  bool pass() const;
  double worst_relative() const;
  const ResidualCheck& get(const std::string& name) const;
};

/// Interior-masked (n <= n_max - buffer) residuals of the algebra on `ops`.
/// Requires buffer >= 2.
RelationReport check_algebra_relations(const OperatorSet& ops, const TruncatedBasis& basis,
                                       const CoefficientTensor& c, long buffer, double tol);
RelationReport check_algebra_relations(const LadderMatrices& m, const CoefficientTensor& c, long buffer,
                                       double tol);

struct OracleEquivalence {
  double max_relative_deviation = 0.0;
  std::size_t entries_compared = 0;
};

/// Compares <s|A|t> for A in {a1, a2, a1dag, a2dag}, t of level <= max_degree
/// and every s up to max_degree + 2, against exact oracle overlaps divided by
/// exact norms. Requires rational q and n_max >= max_degree + 2.
OracleEquivalence oracle_equivalence(const LadderMatrices& m, int max_degree);

enum class Verdict { WellDefined, Obstructed };
const char* to_string(Verdict v) noexcept;

struct ObstructionReport {
  double residual_total_N = 0.0;
  double residual_N1 = 0.0;
  double residual_N2 = 0.0;
  Verdict verdict = Verdict::WellDefined;
};

inline constexpr double kDefaultObstructionThreshold = 1e-2;

/// Least squares over every dim x dim matrix X for [X,a1] = -a1, [X,a2] = 0
/// (and the mirrored system for N2) on the interior block. Residuals are
/// ||[X,.] - rhs|| / ||a_target|| on that block. Throws SolverFailure.
ObstructionReport number_operator_obstruction(const LadderMatrices& m, long buffer,
                                              double threshold = kDefaultObstructionThreshold);

/// q uniform on [-4,-0.05] u [0.05,4], all three signs uniform, |eps q + 1| > 1e-3.
DeformationParams sample_params(std::mt19937_64& rng);

struct PositivityFinding {
  double q = 0.0;
  int eps = 1;
  long n = 0;
  int nu = 0;
  int sign = 0;
  double log_abs = 0.0;
};

struct PositivityReport {
  std::vector<PositivityFinding> violations;
  std::size_t evaluations = 0;
  /// Diagnostic mode only: values at eps q = -1 + 1e-9, reported but not counted.
  std::vector<PositivityFinding> boundary;
};

PositivityReport positivity_sweep(long n_range, std::size_t samples, std::uint64_t seed, bool diagnostic = false);

/// The alternative ψ12 expression with leading factor phi1(n-2+2nu, 1-nu).
double psi12_printed(long n, int nu, const DeformationParams& p);

struct PsiComparisonRow {
  long n = 0;
  int nu = 0;
  double composed = 0.0;
  double printed = 0.0;
  double matrix_q12 = 0.0;  // <n-1+2nu,1-nu| Q12 |n,nu>
  double matrix_q21 = 0.0;  // <n-1+2nu,1-nu| Q21 |n,nu>
  bool composed_matches_q12 = false;
  bool composed_psi21_relation = false;
  bool printed_matches_q12 = false;
  bool printed_psi21_relation = false;
  std::string verdict;  // "agree", "printed_inconsistent", "composed_inconsistent"
};

inline constexpr double kPsiRelTol = 1e-12;

std::vector<PsiComparisonRow> psi_formula_comparison(const DeformationParams& p, long n_range);

struct DegeneracyLevel {
  long total = 0;
  std::size_t rank = 0;
  bool representatives_span = false;
  bool families_collinear = false;
  std::vector<std::string> failures;
};

struct DegeneracyReport {
  std::vector<DegeneracyLevel> levels;
  bool pass = false;
};

/// For 1 <= n1 + n2 <= max_total: exact rank of the monomial family (expected 2),
/// span by |n,0>, |n-1,1>, and |n1,n2> ∝ |n1-2k, n2+2k>. Rational q only.
DegeneracyReport degeneracy_audit(const DeformationParams& p, long max_total);

}  // namespace qsusy
