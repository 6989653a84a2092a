#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sparkforge {

enum class Errc {
  DivisionByZero,
  OrderMismatch,
  ShapeError,
  SideLimitExceeded,
  BudgetExceeded,
  ZeroMatrix,
  NonFiniteEntry,
  CapExceeded,
  EmptyBases,
  IndexOutOfRange,
  NotPrime,
  BadModulus,
  RankDeficient,
  ZeroColumn,
  NotADivisor,
  NotPrimePower,
  DegenerateSet,
  OrbitCapExceeded,
  BadK,
  InvalidInput,
};

inline const char* errc_name(Errc e) {
  switch (e) {
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::OrderMismatch: return "OrderMismatch";
    case Errc::ShapeError: return "ShapeError";
    case Errc::SideLimitExceeded: return "SideLimitExceeded";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::ZeroMatrix: return "ZeroMatrix";
    case Errc::NonFiniteEntry: return "NonFiniteEntry";
    case Errc::CapExceeded: return "CapExceeded";
    case Errc::EmptyBases: return "EmptyBases";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::NotPrime: return "NotPrime";
    case Errc::BadModulus: return "BadModulus";
    case Errc::RankDeficient: return "RankDeficient";
    case Errc::ZeroColumn: return "ZeroColumn";
    case Errc::NotADivisor: return "NotADivisor";
    case Errc::NotPrimePower: return "NotPrimePower";
    case Errc::DegenerateSet: return "DegenerateSet";
    case Errc::OrbitCapExceeded: return "OrbitCapExceeded";
    case Errc::BadK: return "BadK";
    case Errc::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Raised by subset sweeps; `reached_k` is the subset size that would have
// pushed the sweep past its budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::size_t reached_k, const std::string& what)
      : Error(Errc::BudgetExceeded, what), reached_k_(reached_k) {}

  std::size_t reached_k() const noexcept { return reached_k_; }

 private:
  std::size_t reached_k_;
};

}  // namespace sparkforge
