#include "qsusy/verification.hpp"

#include <Eigen/OrderingMethods>
#include <Eigen/QR>
#include <Eigen/SparseCore>
#include <Eigen/SparseQR>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "qsusy/errors.hpp"
#include "qsusy/susy.hpp"

namespace qsusy {

bool RelationReport::pass() const {
  return std::all_of(relations.begin(), relations.end(), [](const ResidualCheck& c) { return c.pass; });
}

double RelationReport::worst_relative() const {
  double w = 0.0;
  for (const auto& c : relations) w = std::max(w, c.relative());
  return w;
}

const ResidualCheck& RelationReport::get(const std::string& name) const {
  for (const auto& c : relations)
    if (c.name == name) return c;
  throw std::out_of_range("no relation named " + name);
}

RelationReport check_algebra_relations(const OperatorSet& ops, const TruncatedBasis& basis,
                                       const CoefficientTensor& c, long buffer, double tol) {
  if (buffer < 2) throw std::invalid_argument("relation checks need buffer >= 2");
  const std::vector<Index> in = basis.interior(buffer);
  const Matrix id = Matrix::Identity(basis.dim(), basis.dim());

  RelationReport rep;
  rep.relations.push_back(
      residual_check("quad", c.quad_a1 * (ops.a1 * ops.a1), c.quad_a2 * (ops.a2 * ops.a2), in, tol));
  rep.relations.push_back(
      residual_check("exchange", ops.a1 * ops.a2, c.exchange_sign * (ops.a2 * ops.a1), in, tol));

  const std::pair<std::size_t, std::size_t> order[] = {{kMode1, kMode1}, {kMode2, kMode2}, {kMode1, kMode2}, {kMode2, kMode1}};
  for (const auto& [i, j] : order) {
    Matrix rhs = (i == j) ? id : Matrix::Zero(basis.dim(), basis.dim());
    for (std::size_t k = 0; k < 2; ++k)
      for (std::size_t l = 0; l < 2; ++l)
        if (c.at(i, j, k, l) != 0.0) rhs += c.at(i, j, k, l) * (ops.raise(k) * ops.lower(l));
    rep.relations.push_back(residual_check("r" + std::to_string(i + 1) + std::to_string(j + 1),
                                           ops.lower(i) * ops.raise(j), rhs, in, tol));
  }
  return rep;
}

RelationReport check_algebra_relations(const LadderMatrices& m, const CoefficientTensor& c, long buffer,
                                       double tol) {
  return check_algebra_relations(m.ops(), m.basis(), c, buffer, tol);
}

OracleEquivalence oracle_equivalence(const LadderMatrices& m, int max_degree) {
  const DeformationParams& p = m.params();
  if (!p.is_exact()) throw OracleError(OracleError::Code::NonRationalQ, "oracle equivalence needs a rational q");
  if (max_degree > 8 || max_degree < 0) throw std::invalid_argument("max_degree must lie in [0, 8]");
  if (m.basis().n_max() < max_degree + 2) throw std::invalid_argument("n_max must be at least max_degree + 2");

  const long top = max_degree + 2;
  std::vector<MonomialLabel> labels;
  for (int nu = 0; nu < 2; ++nu)
    for (long n = 0; n <= top; ++n) labels.push_back({n, nu});

  std::map<std::pair<MonomialLabel, MonomialLabel>, Rational> gram;
  for (const auto& s : labels)
    for (const auto& t : labels) gram[{s, t}] = inner_product(s, t, p);

  const Letter letters[] = {Letter::A1, Letter::A2, Letter::A1Dag, Letter::A2Dag};
  OracleEquivalence out;
  for (Letter a : letters) {
    const Matrix& mat = is_dagger(a) ? m.ops().raise(mode_of(a)) : m.ops().lower(mode_of(a));
    for (int nu = 0; nu < 2; ++nu)
      for (long n = 0; n <= max_degree; ++n) {
        const MonomialLabel t{n, nu};
        const ExactStateVector image = apply_word({a}, ExactStateVector::monomial(t), p);
        for (const auto& s : labels) {
          Rational overlap(0);
          for (const auto& [u, coeff] : image.terms()) overlap += coeff * gram.at({s, u});
          const Rational sq = overlap * overlap / (gram.at({s, s}) * gram.at({t, t}));
          const double oracle = (overlap < 0 ? -1.0 : 1.0) * std::sqrt(sq.get_d());
          const double matrix = mat(m.basis().index(s.n, s.nu), m.basis().index(t.n, t.nu));
          const double scale = std::max(std::abs(oracle), std::abs(matrix));
          const double dev = scale == 0.0 ? 0.0 : std::abs(oracle - matrix) / scale;
          out.max_relative_deviation = std::max(out.max_relative_deviation, dev);
          ++out.entries_compared;
        }
      }
  }
  return out;
}

const char* to_string(Verdict v) noexcept { return v == Verdict::WellDefined ? "WellDefined" : "Obstructed"; }

namespace {

using SparseMatrix = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

// min_X || [X,target] + target ||^2 + || [X,other] ||^2 over the interior block,
// normalized by ||target|| on that block.
double commutator_least_squares(const Matrix& target, const Matrix& other, const std::vector<Index>& in,
                                Index dim) {
  std::unordered_map<Index, Index> column_of;  // X(a,b) -> compressed column
  const auto unknown = [&](Index a, Index b) {
    const Index key = a * dim + b;
    auto [it, inserted] = column_of.try_emplace(key, static_cast<Index>(column_of.size()));
    return it->second;
  };

  std::vector<Triplet> triplets;
  std::vector<double> rhs;
  Index row = 0;
  for (int which = 0; which < 2; ++which) {
    const Matrix& a = which == 0 ? target : other;
    for (Index r : in)
      for (Index c : in) {
        // ([X,A])_{rc} = sum_k X_{rk} A_{kc} - sum_k A_{rk} X_{kc}
        for (Index k = 0; k < dim; ++k) {
          if (a(k, c) != 0.0) triplets.emplace_back(row, unknown(r, k), a(k, c));
          if (a(r, k) != 0.0) triplets.emplace_back(row, unknown(k, c), -a(r, k));
        }
        rhs.push_back(which == 0 ? -a(r, c) : 0.0);
        ++row;
      }
  }

  // The normal equations never couple unknowns that share no row, so the
  // least-squares problem splits exactly into connected components.
  const Index cols = static_cast<Index>(column_of.size());
  std::vector<Index> parent(static_cast<std::size_t>(cols));
  std::iota(parent.begin(), parent.end(), Index{0});
  const auto find = [&](Index v) {
    while (parent[static_cast<std::size_t>(v)] != v) {
      parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
      v = parent[static_cast<std::size_t>(v)];
    }
    return v;
  };
  std::vector<Index> first_col(static_cast<std::size_t>(row), -1);
  for (const Triplet& t : triplets) {
    Index& f = first_col[static_cast<std::size_t>(t.row())];
    if (f < 0) f = t.col();
    else parent[static_cast<std::size_t>(find(t.col()))] = find(f);
  }

  std::unordered_map<Index, std::vector<Index>> rows_of;  // component root -> rows
  double residual2 = 0.0;
  for (Index r = 0; r < row; ++r) {
    const Index f = first_col[static_cast<std::size_t>(r)];
    if (f < 0) residual2 += rhs[static_cast<std::size_t>(r)] * rhs[static_cast<std::size_t>(r)];
    else rows_of[find(f)].push_back(r);
  }
  std::vector<std::vector<Triplet>> by_row(static_cast<std::size_t>(row));
  for (const Triplet& t : triplets) by_row[static_cast<std::size_t>(t.row())].push_back(t);

  std::unordered_map<Index, Index> local;
  for (const auto& [root, rows] : rows_of) {
    local.clear();
    for (Index r : rows)
      for (const Triplet& t : by_row[static_cast<std::size_t>(r)])
        local.try_emplace(t.col(), static_cast<Index>(local.size()));
    Matrix block = Matrix::Zero(static_cast<Index>(rows.size()), static_cast<Index>(local.size()));
    Eigen::VectorXd b(static_cast<Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (const Triplet& t : by_row[static_cast<std::size_t>(rows[i])]) block(static_cast<Index>(i), local.at(t.col())) += t.value();
      b(static_cast<Index>(i)) = rhs[static_cast<std::size_t>(rows[i])];
    }
    Eigen::VectorXd r;
    if (block.cols() <= 1500) {
      const Eigen::CompleteOrthogonalDecomposition<Matrix> cod(block);
      r = block * cod.solve(b) - b;
    } else {
      SparseMatrix sparse = block.sparseView();
      sparse.makeCompressed();
      Eigen::SparseQR<SparseMatrix, Eigen::COLAMDOrdering<int>> qr;
      qr.compute(sparse);
      if (qr.info() != Eigen::Success) throw SolverFailure("sparse QR factorization failed");
      const Eigen::VectorXd x = qr.solve(b);
      if (qr.info() != Eigen::Success) throw SolverFailure("sparse QR solve failed");
      r = sparse * x - b;
    }
    residual2 += r.squaredNorm();
  }
  const double residual = std::sqrt(residual2);
  const double norm = masked_frobenius(target, in);
  return norm > 0 ? residual / norm : residual;
}

}  // namespace

ObstructionReport number_operator_obstruction(const LadderMatrices& m, long buffer, double threshold) {
  if (buffer < 4) throw std::invalid_argument("obstruction certificate needs buffer >= 4");
  const TruncatedBasis& basis = m.basis();
  const std::vector<Index> in = basis.interior(buffer);
  const Matrix n = total_number_operator(basis);

  ObstructionReport rep;
  for (std::size_t mode = 0; mode < 2; ++mode) {
    const Matrix& up = m.ops().raise(mode);
    const Matrix& down = m.ops().lower(mode);
    rep.residual_total_N = std::max({rep.residual_total_N, residual_check("", commutator(n, up), up, in, 0).relative(),
                                     residual_check("", commutator(n, down), -down, in, 0).relative()});
  }
  rep.residual_N1 = commutator_least_squares(m.a1(), m.a2(), in, basis.dim());
  rep.residual_N2 = commutator_least_squares(m.a2(), m.a1(), in, basis.dim());
  rep.verdict = std::max(rep.residual_N1, rep.residual_N2) > threshold ? Verdict::Obstructed : Verdict::WellDefined;
  return rep;
}

DeformationParams sample_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> magnitude(0.05, 4.0);
  std::bernoulli_distribution coin(0.5);
  for (;;) {
    const double q = (coin(rng) ? 1.0 : -1.0) * magnitude(rng);
    const int eps = coin(rng) ? 1 : -1;
    const int eps_prime = coin(rng) ? 1 : -1;
    const int eps_dprime = coin(rng) ? 1 : -1;
    if (std::abs(eps * q + 1.0) <= 1e-3) continue;
    return validate_params(q, eps, eps_prime, eps_dprime);
  }
}

PositivityReport positivity_sweep(long n_range, std::size_t samples, std::uint64_t seed, bool diagnostic) {
  std::mt19937_64 rng(seed);
  PositivityReport rep;
  const auto evaluate = [&](const DeformationParams& p, std::vector<PositivityFinding>& sink, bool only_bad) {
    for (int nu = 0; nu < 2; ++nu)
      for (long n = 1; n <= n_range; ++n) {
        const SignedLog s = log_phi1(n, nu, p);
        const double direct = phi1(n, nu, p);
        ++rep.evaluations;
        const bool bad = s.sign <= 0 || !(direct > 0);
        if (bad || !only_bad) sink.push_back({p.q(), value(p.eps()), n, nu, s.sign, s.log_abs});
      }
  };
  for (std::size_t i = 0; i < samples; ++i) evaluate(sample_params(rng), rep.violations, true);

  if (diagnostic) {
    const double near = -1.0 + 1e-9;
    for (int eps : {1, -1}) evaluate(validate_params(eps * near, eps, 1, 1), rep.boundary, false);
  }
  return rep;
}

double psi12_printed(long n, int nu, const DeformationParams& p) {
  if (n < 0) return 0.0;
  const double head = phi1(n - 2 + 2 * nu, 1 - nu, p);
  if (head == 0.0) return 0.0;
  const double radicand = head * phi1_factorial_ratio(n + 2 * nu, 1 - nu, n, nu, p);
  const double prefactor = (nu == 1 ? quad_ratio(p) : 1.0) * (n % 2 == 0 ? 1.0 : value(p.eps_dprime()));
  return std::sqrt(radicand) * prefactor;
}

namespace {

bool rel_close(double a, double b, double tol) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 || std::abs(a - b) <= tol * scale;
}

}  // namespace

std::vector<PsiComparisonRow> psi_formula_comparison(const DeformationParams& p, long n_range) {
  const TruncatedBasis basis = build_basis(std::max(n_range + kDefaultInteriorBuffer, kMinCutoff));
  const ChargeSet charges = build_charges(build_ladder_matrices(p, basis));
  const Matrix& q12 = charges.Q[kMode1][kMode2];
  const Matrix& q21 = charges.Q[kMode2][kMode1];

  std::vector<PsiComparisonRow> rows;
  for (int nu = 0; nu < 2; ++nu)
    for (long n = 0; n <= n_range; ++n) {
      PsiComparisonRow row;
      row.n = n;
      row.nu = nu;
      row.composed = psi12(n, nu, p);
      row.printed = psi12_printed(n, nu, p);
      const long target = n - 1 + 2 * nu;
      if (target >= 0) {
        row.matrix_q12 = q12(basis.index(target, 1 - nu), basis.index(n, nu));
        row.matrix_q21 = q21(basis.index(target, 1 - nu), basis.index(n, nu));
      }
      row.composed_matches_q12 = rel_close(row.composed, row.matrix_q12, kPsiRelTol);
      row.printed_matches_q12 = rel_close(row.printed, row.matrix_q12, kPsiRelTol);
      row.composed_psi21_relation = rel_close(psi12(target, 1 - nu, p), row.matrix_q21, kPsiRelTol);
      row.printed_psi21_relation = rel_close(psi12_printed(target, 1 - nu, p), row.matrix_q21, kPsiRelTol);

      if (!row.composed_matches_q12 || !row.composed_psi21_relation) row.verdict = "composed_inconsistent";
      else if (!row.printed_matches_q12 || !row.printed_psi21_relation) row.verdict = "printed_inconsistent";
      else row.verdict = "agree";
      rows.push_back(std::move(row));
    }
  return rows;
}

DegeneracyReport degeneracy_audit(const DeformationParams& p, long max_total) {
  if (!p.is_exact()) throw OracleError(OracleError::Code::NonRationalQ, "degeneracy audit needs a rational q");
  if (max_total > 8) throw std::invalid_argument("max_total must be at most 8");

  DegeneracyReport rep;
  rep.pass = true;
  for (long total = 1; total <= max_total; ++total) {
    DegeneracyLevel level;
    level.total = total;

    std::vector<ExactStateVector> family;
    for (long n1 = 0; n1 <= total; ++n1) family.push_back(monomial_state(n1, total - n1, p));
    level.rank = exact_rank(family);

    const std::vector<ExactStateVector> reps{ExactStateVector::monomial({total, 0}),
                                             ExactStateVector::monomial({total - 1, 1})};
    std::vector<ExactStateVector> joined = family;
    joined.insert(joined.end(), reps.begin(), reps.end());
    level.representatives_span = exact_rank(reps) == 2 && exact_rank(joined) == level.rank;

    level.families_collinear = true;
    for (long n1 = 0; n1 <= total; ++n1)
      for (long k = -total; k <= total; ++k) {
        const long m1 = n1 - 2 * k;
        const long m2 = total - n1 + 2 * k;
        if (k == 0 || m1 < 0 || m2 < 0) continue;
        const Collinearity c = check_collinearity(family[static_cast<std::size_t>(n1)],
                                                  family[static_cast<std::size_t>(m1)]);
        if (!c.collinear) {
          level.families_collinear = false;
          level.failures.push_back("|" + std::to_string(n1) + "," + std::to_string(total - n1) + "> vs |" +
                                   std::to_string(m1) + "," + std::to_string(m2) + ">");
        }
      }

    if (level.rank != 2 || !level.representatives_span || !level.families_collinear) rep.pass = false;
    rep.levels.push_back(std::move(level));
  }
  return rep;
}

}  // namespace qsusy
