#include "idem/maxplus.hpp"

#include <charconv>

#include "idem/error.hpp"

namespace idem {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Input: return "input error";
    case ErrorKind::NoMass: return "no mass";
    case ErrorKind::NormAxiom: return "norm axiom violated";
    case ErrorKind::CoefficientConstraint: return "coefficient constraint violated";
    case ErrorKind::MetricUnavailable: return "metric unavailable";
    case ErrorKind::UndefinedOffImage: return "undefined on non-image point";
    case ErrorKind::LiftImpossible: return "lift impossible";
    case ErrorKind::DenseTooCoarse: return "dense set too coarse";
  }
  return "unknown error";
}

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, end);
}

std::string MaxPlus::to_string() const {
  return finite_ ? format_double(value_) : std::string("-inf");
}

}  // namespace idem
