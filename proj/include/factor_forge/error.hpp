#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace factor_forge {

enum class ErrorKind {
  EmptyGraph,
  ParseError,
  InvalidGraph,
  DivisionByZero,
  OutOfScope,
  SearchExhausted,
  NotBipartite,
  ConditionViolated,
  BalancingFailed,
  InvalidFactorCount,
  XOutOfRange,
  ConstructionFailed,
  TooLarge,
  InvalidParams,
  InfeasibleParams,
  CertificateFailed,
  DegreeSpectrumMismatch,
  Infeasible,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::EmptyGraph: return "EmptyGraph";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidGraph: return "InvalidGraph";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::OutOfScope: return "OutOfScope";
    case ErrorKind::SearchExhausted: return "SearchExhausted";
    case ErrorKind::NotBipartite: return "NotBipartite";
    case ErrorKind::ConditionViolated: return "ConditionViolated";
    case ErrorKind::BalancingFailed: return "BalancingFailed";
    case ErrorKind::InvalidFactorCount: return "InvalidFactorCount";
    case ErrorKind::XOutOfRange: return "XOutOfRange";
    case ErrorKind::ConstructionFailed: return "ConstructionFailed";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::InfeasibleParams: return "InfeasibleParams";
    case ErrorKind::CertificateFailed: return "CertificateFailed";
    case ErrorKind::DegreeSpectrumMismatch: return "DegreeSpectrumMismatch";
    case ErrorKind::Infeasible: return "Infeasible";
  }
  return "Unknown";
}

/// Base exception for every library failure; `kind()` identifies the contract
/// that was violated so callers (the CLI in particular) can map it to an exit
/// status without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Raised by equitable_colour_simple when two adjacent vertices both have
/// degree divisible by the colour count.
class ConditionViolated : public Error {
 public:
  ConditionViolated(int u, int v, const std::string& message)
      : Error(ErrorKind::ConditionViolated, message), u_(u), v_(v) {}

  int u() const noexcept { return u_; }
  int v() const noexcept { return v_; }

 private:
  int u_;
  int v_;
};

}  // namespace factor_forge
