#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "qsusy/fock.hpp"
#include "qsusy/masking.hpp"

namespace qsusy {

/// Amplitude of Q12 = a1 a2dag: Q12 |n,nu> = psi12(n,nu) |n-1+2nu, 1-nu>.
///
/// Defined by composing the two ladder amplitudes,
///   psi12(n,nu) = sqrt(phi1(n+2nu,1-nu) [phi1(n+2nu,1-nu)]! / [phi1(n,nu)]!) r^nu (eps'')^n,
/// and 0 whenever a phi1 argument leaves the ladder.
double psi12(long n, int nu, const DeformationParams& p);

/// psi21(n,nu) = psi12(n-1+2nu, 1-nu), the amplitude of Q21 = Q12^T.
double psi21(long n, int nu, const DeformationParams& p);

/// phi2(n,nu) = [phi1(n,nu)]! / [phi1(n-2+2nu,1-nu)]! r^{2(1-nu)};
/// Q22 |n,nu> = phi2(n+2nu, 1-nu) |n,nu>.
double phi2(long n, int nu, const DeformationParams& p);

/// Closed-form diagonal of H: (psi12(n,nu)^2 + psi12(n-1+2nu,1-nu)^2) / 2.
double energy(long n, int nu, const DeformationParams& p);

using ChargeGrid = std::array<std::array<Matrix, 2>, 2>;

/// Q[i][j] = a_i a_j^dag, Qt[i][j] = a_i^dag a_j (0-based modes).
struct ChargeSet {
  ChargeGrid Q;
  ChargeGrid Qt;

  const Matrix& Q12() const { return Q[kMode1][kMode2]; }
  const Matrix& Qt12() const { return Qt[kMode1][kMode2]; }
};

ChargeSet build_charges(const OperatorSet& ops);
inline ChargeSet build_charges(const LadderMatrices& m) { return build_charges(m.ops()); }

/// Diagonal N |n,nu> = (n + nu) |n,nu>.
Matrix total_number_operator(const TruncatedBasis& basis);

struct HamiltonianPair {
  Matrix H;   // {Q12, Q12^T} / 2
  Matrix Ht;  // {Qt12, Qt12^T} / 2
  Matrix N;
};

HamiltonianPair build_hamiltonians(const ChargeSet& c, const TruncatedBasis& basis);

struct Level {
  long n = 0;
  int nu = 0;
  double energy = 0.0;
};

/// SUSY doublet {|n,0>, |n-1,1>}.
struct LevelPair {
  std::size_t id = 0;
  long n = 0;
  double energy_boson = 0.0;    // |n,0>
  double energy_fermion = 0.0;  // |n-1,1>
  double energy() const { return 0.5 * (energy_boson + energy_fermion); }
};

struct SpectrumReport {
  std::vector<Level> levels;
  std::vector<LevelPair> pairs;
  std::vector<Level> unpaired;
  /// Differences of consecutive sorted distinct energies (ground + one per pair).
  std::vector<double> gaps;
  /// (max gap - min gap) / |mean gap|
  double equidistance_deviation = 0.0;
  bool equidistant = false;
  /// max |E(n,0) - E(n-1,1)| / (1 + E)
  double max_pair_splitting = 0.0;
  double min_energy = 0.0;
};

inline constexpr long kDefaultInteriorBuffer = 4;
inline constexpr double kEquidistanceTol = 1e-9;

/// Reads the spectrum of `h` from its interior diagonal, pairing levels by
/// construction. Throws NotDiagonal if an interior off-diagonal entry
/// exceeds 1e-10 (1 + max diagonal).
SpectrumReport spectrum(const Matrix& h, const TruncatedBasis& basis, long interior_buffer = kDefaultInteriorBuffer);

/// [H,Q12], [H,Q12^T], [H,N], the same for Ht with Qt12, and [N,Q_ij], [N,Qt_ij].
std::vector<ResidualCheck> susy_commutator_suite(const ChargeSet& c, const HamiltonianPair& h,
                                                 const TruncatedBasis& basis, long buffer, double tol);

struct NilpotencyReport {
  double q12_squared_norm = 0.0;  // ||Q12^2||_F on the interior
  double q12_norm_squared = 0.0;  // ||Q12||_F^2 on the interior
  double ratio() const { return q12_norm_squared > 0 ? q12_squared_norm / q12_norm_squared : 0.0; }
};

NilpotencyReport nilpotency(const ChargeSet& c, const TruncatedBasis& basis, long buffer);

}  // namespace qsusy
