#pragma once

#include <stdexcept>
#include <string>

namespace qsusy {

/// Rejected deformation parameters. `code()` is stable and machine readable.
class ParamError : public std::invalid_argument {
 public:
  enum class Code { ZeroQ, NonFiniteQ, SingularPrefactor, BadSign, Parse };

  ParamError(Code code, const std::string& what, std::string hint = {})
      : std::invalid_argument(what), code_(code), hint_(std::move(hint)) {}

  Code code() const noexcept { return code_; }
  /// Suggested remedy, e.g. "swap_picture" when eps*q == -1. Empty if none.
  const std::string& hint() const noexcept { return hint_; }

 private:
  Code code_;
  std::string hint_;
};

const char* to_string(ParamError::Code code) noexcept;

class CutoffTooSmall : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A floating product left the representable range; switch to the log form.
class OverflowDetected : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// A radicand or logarithm argument that would only be negative outside the
/// valid parameter domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class OracleError : public std::runtime_error {
 public:
  enum class Code { NonRationalQ, Overflow, Parse };

  OracleError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Code code() const noexcept { return code_; }

 private:
  Code code_;
};

/// Hamiltonian has an interior off-diagonal entry above tolerance.
class NotDiagonal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SolverFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qsusy
