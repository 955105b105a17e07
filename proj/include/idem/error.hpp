#pragma once

#include <stdexcept>
#include <string>

namespace idem {

enum class ErrorKind {
  Input,               // unknown ids, space mismatch, malformed documents
  NoMass,              // measure with no finite atom
  NormAxiom,           // max weight != 0 without normalization
  CoefficientConstraint,
  MetricUnavailable,
  UndefinedOffImage,   // fiber extreme read on an empty fiber
  LiftImpossible,
  DenseTooCoarse,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace idem
