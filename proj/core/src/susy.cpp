#include "qsusy/susy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qsusy/errors.hpp"

namespace qsusy {

double psi12(long n, int nu, const DeformationParams& p) {
  if (n < 0) return 0.0;
  const long level = n + 2 * nu;
  const double head = phi1(level, 1 - nu, p);
  if (head == 0.0) return 0.0;
  const double radicand = head * phi1_factorial_ratio(level, 1 - nu, n, nu, p);
  if (radicand < 0) throw DomainError("negative radicand in psi12");
  const double prefactor = (nu == 1 ? quad_ratio(p) : 1.0) * (n % 2 == 0 ? 1.0 : value(p.eps_dprime()));
  return std::sqrt(radicand) * prefactor;
}

double psi21(long n, int nu, const DeformationParams& p) { return psi12(n - 1 + 2 * nu, 1 - nu, p); }

double phi2(long n, int nu, const DeformationParams& p) {
  const long lower = n - 2 + 2 * nu;
  if (n < 0 || lower < 0) return 0.0;
  const double r = quad_ratio(p);
  return phi1_factorial_ratio(n, nu, lower, 1 - nu, p) * (nu == 0 ? r * r : 1.0);
}

double energy(long n, int nu, const DeformationParams& p) {
  const double a = psi12(n, nu, p);
  const double b = psi12(n - 1 + 2 * nu, 1 - nu, p);
  return 0.5 * (a * a + b * b);
}

ChargeSet build_charges(const OperatorSet& ops) {
  ChargeSet c;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      c.Q[i][j] = ops.lower(i) * ops.raise(j);
      c.Qt[i][j] = ops.raise(i) * ops.lower(j);
    }
  return c;
}

Matrix total_number_operator(const TruncatedBasis& basis) {
  Matrix n = Matrix::Zero(basis.dim(), basis.dim());
  for (Index i = 0; i < basis.dim(); ++i) {
    const FockState s = basis.state(i);
    n(i, i) = static_cast<double>(s.n + s.nu);
  }
  return n;
}

HamiltonianPair build_hamiltonians(const ChargeSet& c, const TruncatedBasis& basis) {
  HamiltonianPair h;
  const Matrix& q = c.Q12();
  const Matrix& qt = c.Qt12();
  h.H = 0.5 * (q * q.transpose() + q.transpose() * q);
  h.Ht = 0.5 * (qt * qt.transpose() + qt.transpose() * qt);
  h.N = total_number_operator(basis);
  return h;
}

SpectrumReport spectrum(const Matrix& h, const TruncatedBasis& basis, long interior_buffer) {
  const long top = basis.n_max() - interior_buffer;
  const std::vector<Index> interior = basis.interior(interior_buffer);

  double max_diag = 0.0;
  double max_off = 0.0;
  for (Index r : interior)
    for (Index c : interior) {
      if (r == c) max_diag = std::max(max_diag, std::abs(h(r, c)));
      else max_off = std::max(max_off, std::abs(h(r, c)));
    }
  if (max_off >= 1e-10 * (1.0 + max_diag))
    throw NotDiagonal("Hamiltonian has interior off-diagonal entry " + std::to_string(max_off));

  const auto e = [&](long n, int nu) { return h(basis.index(n, nu), basis.index(n, nu)); };

  SpectrumReport rep;
  rep.unpaired.push_back({0, 0, e(0, 0)});
  rep.levels.push_back(rep.unpaired.front());
  for (long n = 1; n <= top; ++n) {
    LevelPair pair{static_cast<std::size_t>(n), n, e(n, 0), e(n - 1, 1)};
    rep.levels.push_back({n, 0, pair.energy_boson});
    rep.levels.push_back({n - 1, 1, pair.energy_fermion});
    rep.max_pair_splitting = std::max(rep.max_pair_splitting, std::abs(pair.energy_boson - pair.energy_fermion) /
                                                                  (1.0 + std::abs(pair.energy())));
    rep.pairs.push_back(pair);
  }

  rep.min_energy = rep.levels.front().energy;
  for (const Level& l : rep.levels) rep.min_energy = std::min(rep.min_energy, l.energy);

  std::vector<double> distinct{rep.unpaired.front().energy};
  for (const LevelPair& p : rep.pairs) distinct.push_back(p.energy());
  std::sort(distinct.begin(), distinct.end());
  for (std::size_t i = 1; i < distinct.size(); ++i) rep.gaps.push_back(distinct[i] - distinct[i - 1]);

  if (!rep.gaps.empty()) {
    const auto [lo, hi] = std::minmax_element(rep.gaps.begin(), rep.gaps.end());
    const double mean = std::accumulate(rep.gaps.begin(), rep.gaps.end(), 0.0) / static_cast<double>(rep.gaps.size());
    rep.equidistance_deviation = mean != 0.0 ? (*hi - *lo) / std::abs(mean) : (*hi - *lo);
  }
  rep.equidistant = rep.equidistance_deviation <= kEquidistanceTol;
  return rep;
}

std::vector<ResidualCheck> susy_commutator_suite(const ChargeSet& c, const HamiltonianPair& h,
                                                 const TruncatedBasis& basis, long buffer, double tol) {
  const std::vector<Index> in = basis.interior(buffer);
  std::vector<ResidualCheck> out;
  const auto comm_zero = [&](std::string name, const Matrix& a, const Matrix& b) {
    out.push_back(residual_check(std::move(name), a * b, b * a, in, tol));
  };

  comm_zero("[H,Q12]", h.H, c.Q12());
  comm_zero("[H,Q12^T]", h.H, c.Q12().transpose());
  comm_zero("[H,N]", h.H, h.N);
  comm_zero("[Ht,Qt12]", h.Ht, c.Qt12());
  comm_zero("[Ht,Qt12^T]", h.Ht, c.Qt12().transpose());
  comm_zero("[Ht,N]", h.Ht, h.N);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      const std::string ij = std::to_string(i + 1) + std::to_string(j + 1);
      comm_zero("[N,Q" + ij + "]", h.N, c.Q[i][j]);
      comm_zero("[N,Qt" + ij + "]", h.N, c.Qt[i][j]);
    }
  return out;
}

NilpotencyReport nilpotency(const ChargeSet& c, const TruncatedBasis& basis, long buffer) {
  const std::vector<Index> in = basis.interior(buffer);
  NilpotencyReport r;
  r.q12_squared_norm = masked_frobenius(c.Q12() * c.Q12(), in);
  const double qn = masked_frobenius(c.Q12(), in);
  r.q12_norm_squared = qn * qn;
  return r;
}

}  // namespace qsusy
