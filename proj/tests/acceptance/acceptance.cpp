// One line per acceptance criterion; exit status is nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "generators.hpp"
#include "qsusy/errors.hpp"
#include "qsusy/io.hpp"
#include "qsusy/susy.hpp"
#include "qsusy/verification.hpp"

using namespace qsusy;

namespace {

constexpr long kNmax = 30;
constexpr long kBuffer = 4;
constexpr double kTol = 1e-10;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

Outcome algebra_fidelity() {
  Outcome o;
  std::mt19937_64 rng(42);
  const TruncatedBasis b = build_basis(kNmax);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const DeformationParams p = sample_params(rng);
    const RelationReport r = check_algebra_relations(build_ladder_matrices(p, b), coefficient_tensor(p), kBuffer, kTol);
    worst = std::max(worst, r.worst_relative());
    o.require(r.pass(), "relations fail at q=" + fmt(p.q()));
  }
  o.detail = o.detail.empty() ? "50 sets, worst relative residual " + fmt(worst) : o.detail;
  return o;
}

Outcome oracle_equivalence_all() {
  Outcome o;
  double worst = 0.0;
  int sets = 0;
  for (const Rational& q : gen::exact_qs())
    for (const auto& s : gen::all_signs()) {
      if (q * s.eps == -1) continue;
      const DeformationParams p = validate_params(q, s.eps, s.eps_prime, s.eps_dprime);
      const OracleEquivalence e = oracle_equivalence(build_ladder_matrices(p, build_basis(kNmax)), 6);
      worst = std::max(worst, e.max_relative_deviation);
      o.require(e.max_relative_deviation < 1e-12 && e.entries_compared > 0, "deviation at q=" + q.get_str());
      ++sets;
    }
  if (o.pass) o.detail = std::to_string(sets) + " sets, degree <= 6, worst " + fmt(worst);
  return o;
}

Outcome positivity() {
  Outcome o;
  const PositivityReport r = positivity_sweep(200, 1000, 42);
  o.require(r.violations.empty(), std::to_string(r.violations.size()) + " violations");
  if (o.pass) o.detail = std::to_string(r.evaluations) + " evaluations, 0 violations";
  return o;
}

Outcome susy_structure() {
  Outcome o;
  const DeformationParams p = validate_params(0.5, 1, 1, 1);
  const TruncatedBasis b = build_basis(kNmax);
  const ChargeSet c = build_charges(build_ladder_matrices(p, b));
  const HamiltonianPair h = build_hamiltonians(c, b);
  SpectrumReport s;
  try {
    s = spectrum(h.H, b, kBuffer);
  } catch (const NotDiagonal& e) {
    o.require(false, e.what());
    return o;
  }
  for (const ResidualCheck& r : susy_commutator_suite(c, h, b, kBuffer, kTol))
    o.require(r.pass, r.name + " residual " + fmt(r.relative()));
  o.require(s.max_pair_splitting <= 1e-12, "pair splitting " + fmt(s.max_pair_splitting));
  o.require(s.unpaired.size() == 1 && std::abs(s.unpaired.front().energy) < 1e-12, "ground state not at zero");
  for (const LevelPair& lp : s.pairs) o.require(lp.energy_boson > 0 && lp.energy_fermion > 0, "nonpositive level");
  o.require(s.equidistance_deviation > 1e-3, "spectrum looks equidistant");
  if (o.pass) o.detail = "pairs degenerate, deviation from equidistance " + fmt(s.equidistance_deviation);
  return o;
}

json load_calibration() {
  std::ifstream in(QSUSY_CALIBRATION_FILE);
  if (!in) throw std::runtime_error("cannot open " + std::string(QSUSY_CALIBRATION_FILE));
  return json::parse(in);
}

Outcome limits() {
  Outcome o;
  const json cal = load_calibration().at("obstruction");
  const TruncatedBasis b = build_basis(kNmax);

  const LadderMatrices flat = build_ladder_matrices(validate_params(1.0, 1, 1, 1), b);
  const ChargeSet cf = build_charges(flat);
  const SpectrumReport sf = spectrum(build_hamiltonians(cf, b).H, b, kBuffer);
  o.require(sf.equidistance_deviation < 1e-9, "undeformed spectrum not equidistant");
  o.require(nilpotency(cf, b, kBuffer).q12_squared_norm < 1e-10, "Q12^2 nonzero at q=1");
  const ObstructionReport of = number_operator_obstruction(flat, kBuffer);
  const double flat_res = std::max(of.residual_N1, of.residual_N2);
  o.require(of.verdict == Verdict::WellDefined, "undeformed verdict");
  o.require(flat_res < cal.at("undeformed_ceiling").get<double>(), "undeformed residual " + fmt(flat_res));

  const LadderMatrices bent = build_ladder_matrices(validate_params(0.5, 1, 1, 1), b);
  const NilpotencyReport nb = nilpotency(build_charges(bent), b, kBuffer);
  o.require(nb.q12_squared_norm > 1e-3 * nb.q12_norm_squared, "Q12^2 too small at q=1/2");
  const ObstructionReport ob = number_operator_obstruction(bent, kBuffer);
  const double bent_res = std::max(ob.residual_N1, ob.residual_N2);
  o.require(ob.verdict == Verdict::Obstructed, "deformed verdict");
  const double ratio = bent_res / std::max(flat_res, std::numeric_limits<double>::min());
  o.require(ratio >= cal.at("ratio_floor").get<double>(), "ratio " + fmt(ratio));

  const double rel = cal.at("regression_rel_tol").get<double>();
  const json& frozen = cal.at("deformed");
  for (const char* key : {"residual_N1", "residual_N2"}) {
    const double want = frozen.at(key).get<double>();
    const double got = std::string(key) == "residual_N1" ? ob.residual_N1 : ob.residual_N2;
    o.require(std::abs(got - want) <= rel * want, std::string(key) + " drifted to " + fmt(got));
  }
  if (o.pass) o.detail = "obstruction ratio " + fmt(ratio) + ", |Q12^2| at q=1/2 " + fmt(nb.q12_squared_norm);
  return o;
}

Outcome degeneracy() {
  Outcome o;
  const DegeneracyReport r = degeneracy_audit(validate_params(Rational(1, 2), 1, 1, 1), 8);
  o.require(r.pass, "audit failed");
  for (const DegeneracyLevel& l : r.levels)
    for (const std::string& f : l.failures) o.require(false, f);
  if (o.pass) o.detail = std::to_string(r.levels.size()) + " levels, rank 2 throughout";
  return o;
}

Outcome psi_adjudication() {
  Outcome o;
  std::mt19937_64 rng(42);
  std::vector<DeformationParams> sets{validate_params(0.5, 1, 1, 1), validate_params(1.0, 1, 1, 1)};
  for (int i = 0; i < 10; ++i) sets.push_back(sample_params(rng));
  bool flagged = false;
  for (const DeformationParams& p : sets) {
    for (const PsiComparisonRow& r : psi_formula_comparison(p, kNmax - kBuffer)) {
      o.require(r.composed_matches_q12 && r.composed_psi21_relation,
                "composed form off at q=" + fmt(p.q()) + " (" + std::to_string(r.n) + "," + std::to_string(r.nu) + ")");
      if (p.q() == 0.5 && r.n == 2 && r.nu == 0) flagged = r.verdict == "printed_inconsistent";
    }
  }
  o.require(flagged, "printed form not flagged at (2,0)");
  if (o.pass) o.detail = std::to_string(sets.size()) + " sets; printed form flagged at (2,0)";
  return o;
}

Outcome picture_symmetry() {
  Outcome o;
  std::mt19937_64 rng(42);
  const TruncatedBasis b = build_basis(kNmax);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const DeformationParams p = gen::sample_swappable(rng);
    const LadderMatrices m = build_ladder_matrices(swap_picture(p), b);
    const CoefficientTensor c = algebra_coefficients(p.q(), value(p.eps()), value(p.eps_prime()), value(p.eps_dprime()));
    const RelationReport r = check_algebra_relations(m.relabeled(), b, c, kBuffer, kTol);
    worst = std::max(worst, r.worst_relative());
    o.require(r.pass(), "relabeled relations fail at q=" + fmt(p.q()));
  }
  // q = -1, eps = 1: singular in picture A, fine after the swap.
  bool rejected = false;
  try {
    validate_params(Rational(-1), 1, 1, 1);
  } catch (const ParamError& e) {
    rejected = e.code() == ParamError::Code::SingularPrefactor;
  }
  o.require(rejected, "q=-1, eps=1 accepted in picture A");
  const DeformationParams swapped = validate_params(Rational(-1), -1, 1, 1, Picture::B);
  const LadderMatrices m = build_ladder_matrices(swapped, b);
  const RelationReport r =
      check_algebra_relations(m.relabeled(), b, algebra_coefficients(-1.0, 1, 1, 1), kBuffer, kTol);
  o.require(r.pass(), "q=-1 after swap fails relations");
  if (o.pass) o.detail = "20 sets, worst " + fmt(worst) + "; q=-1 representable only after swap";
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"algebra fidelity", algebra_fidelity},
      {"oracle equivalence", oracle_equivalence_all},
      {"positivity", positivity},
      {"susy structure at q=1/2", susy_structure},
      {"undeformed and deformed limits", limits},
      {"degeneracy audit", degeneracy},
      {"psi adjudication", psi_adjudication},
      {"picture symmetry", picture_symmetry},
  };
  int failed = 0;
  int index = 1;
  for (const auto& [name, fn] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] criterion %d: %s (%.2fs) %s\n", o.pass ? "PASS" : "FAIL", index, name, secs, o.detail.c_str());
    failed += !o.pass;
    ++index;
  }
  std::printf("%d/8 criteria passed\n", 8 - failed);
  return failed == 0 ? 0 : 1;
}
