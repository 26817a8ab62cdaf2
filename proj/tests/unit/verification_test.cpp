#include <gtest/gtest.h>

#include <random>

#include "generators.hpp"
#include "qsusy/errors.hpp"
#include "qsusy/verification.hpp"

using namespace qsusy;

TEST(Relations, RandomParameterSets) {
  std::mt19937_64 rng(11);
  const TruncatedBasis b = build_basis(20);
  for (int i = 0; i < 15; ++i) {
    const DeformationParams p = sample_params(rng);
    const RelationReport r = check_algebra_relations(build_ladder_matrices(p, b), coefficient_tensor(p), 4, 1e-10);
    EXPECT_TRUE(r.pass()) << "q=" << p.q() << " worst " << r.worst_relative();
    EXPECT_EQ(r.relations.size(), 6u);
  }
}

TEST(Relations, WrongCoefficientsAreCaught) {
  const DeformationParams p = validate_params(0.5, 1, 1, 1);
  const DeformationParams other = validate_params(0.5, 1, -1, 1);
  const RelationReport r =
      check_algebra_relations(build_ladder_matrices(p, build_basis(12)), coefficient_tensor(other), 4, 1e-10);
  EXPECT_FALSE(r.pass());
}

TEST(Relations, BufferGuard) {
  const DeformationParams p = validate_params(0.5, 1, 1, 1);
  EXPECT_THROW(check_algebra_relations(build_ladder_matrices(p, build_basis(8)), coefficient_tensor(p), 1, 1e-10),
               std::invalid_argument);
}

TEST(OracleEquivalence, AllSignsAtTwoThirds) {
  for (const auto& s : gen::all_signs()) {
    const DeformationParams p = validate_params(Rational(2, 3), s.eps, s.eps_prime, s.eps_dprime);
    const OracleEquivalence e = oracle_equivalence(build_ladder_matrices(p, build_basis(8)), 5);
    EXPECT_LT(e.max_relative_deviation, 1e-12);
    EXPECT_GT(e.entries_compared, 0u);
  }
}

TEST(Obstruction, DeformedVersusUndeformed) {
  const TruncatedBasis b = build_basis(20);
  const ObstructionReport flat = number_operator_obstruction(build_ladder_matrices(validate_params(1.0, 1, 1, 1), b), 4);
  const ObstructionReport bent = number_operator_obstruction(build_ladder_matrices(validate_params(0.5, 1, 1, 1), b), 4);
  EXPECT_EQ(flat.verdict, Verdict::WellDefined);
  EXPECT_EQ(bent.verdict, Verdict::Obstructed);
  EXPECT_LT(std::max(flat.residual_N1, flat.residual_N2), 1e-10);
  EXPECT_GT(bent.residual_N1, 0.1);
  EXPECT_LT(flat.residual_total_N, 1e-12);
  EXPECT_LT(bent.residual_total_N, 1e-12);
}

TEST(Positivity, NoViolations) {
  const PositivityReport r = positivity_sweep(60, 200, 5, true);
  EXPECT_TRUE(r.violations.empty());
  EXPECT_EQ(r.evaluations, 200u * 120u + 2u * 120u);
  EXPECT_FALSE(r.boundary.empty());
}

TEST(Psi, PrintedFormFlaggedAwayFromUndeformed) {
  const auto rows = psi_formula_comparison(validate_params(0.5, 1, 1, 1), 10);
  bool flagged_20 = false;
  for (const auto& r : rows) {
    EXPECT_TRUE(r.composed_matches_q12);
    EXPECT_TRUE(r.composed_psi21_relation);
    EXPECT_NE(r.verdict, "composed_inconsistent");
    if (r.n == 2 && r.nu == 0) flagged_20 = r.verdict == "printed_inconsistent";
  }
  EXPECT_TRUE(flagged_20);
  EXPECT_EQ(psi12_printed(2, 0, validate_params(0.5, 1, 1, 1)), 0.0);
}

TEST(Degeneracy, HalfQUpToSix) {
  const DegeneracyReport r = degeneracy_audit(validate_params(Rational(1, 2), 1, 1, 1), 6);
  EXPECT_TRUE(r.pass);
  for (const DegeneracyLevel& l : r.levels) EXPECT_EQ(l.rank, 2u);
}

TEST(Degeneracy, NeedsRationalQ) { EXPECT_THROW(degeneracy_audit(validate_params(0.5, 1, 1, 1), 4), OracleError); }
