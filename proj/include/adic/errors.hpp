#pragma once

#include <stdexcept>
#include <string>

namespace adic {

enum class ErrorKind {
  IncompatibleAlphabets,
  HorizonExceeded,
  NotReduced,
  MalformedWord,
  InsufficientPrefix,
  AbelianizationMismatch,
  EmptyEdgeAlphabet,
  NotPrimitive,
  EmptyCone,
  NotNested,
  NotEigenvector,
  ShapeMismatch,
  NoFiniteBaseMeasure,
  NonPositiveEntry,
  NotIrreducible,
  DepthExceeded,
  NoSuccessor,
  NoPredecessor,
  UndeterminedTail,
  NotInBase,
  Undecided,
  InvalidInput,
  Internal,
};

const char* kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(kind_name(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace adic
