#pragma once

#include <stdexcept>
#include <string>

namespace qorder {

/// Base class for all qorder errors.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Operands live on spaces of incompatible dimensions.
class DimensionMismatch : public Error {
public:
  using Error::Error;
};

/// A constructor invariant was violated (non-normalized ket, non-PSD
/// density matrix, non-orthonormal basis, superluminal boost, ...).
class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// A selective measurement conditioned on an outcome whose Born
/// probability is below the probability floor.
class ImpossibleOutcome : public Error {
public:
  using Error::Error;
};

/// A conditional or counterfactual quantity conditioned on an event of
/// (numerically) vanishing probability.
class ImpossibleCondition : public Error {
public:
  ImpossibleCondition(std::string label, const std::string& what)
      : Error(what), label_(std::move(label)) {}

  /// Outcome label whose probability vanished.
  const std::string& label() const { return label_; }

private:
  std::string label_;
};

/// An order-reversing boost was requested for a non-spacelike event pair.
class NotSpacelike : public Error {
public:
  using Error::Error;
};

/// Hardy parameters at (or beyond) the degenerate interval endpoints.
class DegenerateParams : public Error {
public:
  using Error::Error;
};

/// An empirical conditional was requested but no run produced the
/// conditioning outcome.
class NoConditionEvents : public Error {
public:
  using Error::Error;
};

/// An outcome label not present in the basis it was looked up in.
class UnknownLabel : public Error {
public:
  using Error::Error;
};

/// A scenario file failed to parse or validate. The message is anchored:
/// "path:line:column" for syntax errors, "path: field: ..." for semantic
/// ones.
class ScenarioError : public Error {
public:
  using Error::Error;
};

/// Two independent computation routes for the same quantity disagreed.
/// Thrown by built-in cross-checks; indicates a bug, not bad input.
class ConsistencyFailure : public Error {
public:
  using Error::Error;
};

}  // namespace qorder
