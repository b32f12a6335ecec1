#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hyperarr {

enum class ErrorKind {
  // input errors
  InvalidInput,
  ParseError,
  DuplicateHyperplane,
  SubsetBudgetExceeded,
  BezoutBudgetExceeded,
  NotEssential,
  NotProductOfLinearForms,
  OnBoundary,
  BadPrime,
  // numerical failures
  TargetNotReached,
  SeedFailure,
  PathLoss,
  NoConvergence,
  SingularJacobian,
  ConjugationMismatch,
  SignCollision,
  NumericFailure,
  SliceDegenerate,
};

std::string_view to_string(ErrorKind kind);

/// True for failures of the numerical pipeline (as opposed to bad input).
bool is_numerical(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hyperarr
