#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace condan {

enum class ErrorKind {
  AlgebraMismatch,
  InvalidAssignment,
  ConditionNotBelow,
  ConditionMismatch,
  EmptyFamily,
  MissingUniverse,
  InsufficientSequence,
  UncertifiedTail,
  DimensionMismatch,
  GridMismatch,
  UnsupportedDimension,
  UnsupportedNormKind,
  NotInjective,
  NotBounded,
  ZeroFunctional,
  Undecided,
  UnboundedOnCondition,
  NotACover,
  ResolutionExhausted,
  HypothesisViolated,
  GenerationFailed,
  UnknownSuite,
  BadInput,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Carries the join of the atoms where boundedness failed, as a bitmask over
// the algebra's atoms (see algebra.hpp; kept as raw bits to avoid a cycle).
class UnboundedError : public Error {
 public:
  UnboundedError(std::uint64_t condition_bits, int atom_count, const std::string& what)
      : Error(ErrorKind::UnboundedOnCondition, what),
        bits_(condition_bits),
        atom_count_(atom_count) {}

  std::uint64_t condition_bits() const { return bits_; }
  int atom_count() const { return atom_count_; }

 private:
  std::uint64_t bits_;
  int atom_count_;
};

}  // namespace condan
