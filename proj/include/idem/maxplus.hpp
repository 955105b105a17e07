#pragma once

#include <compare>
#include <string>

namespace idem {

/// An element of R_max = R u {-inf}. Bottom is a tag, not an IEEE infinity,
/// so the absorbing law of odot never touches floating-point inf arithmetic.
class MaxPlus {
 public:
  constexpr MaxPlus() = default;  // bottom
  constexpr MaxPlus(double v) : finite_(true), value_(v) {}  // NOLINT(implicit)

  static constexpr MaxPlus neg_inf() { return MaxPlus{}; }
  static constexpr MaxPlus zero() { return MaxPlus{}; }
  static constexpr MaxPlus one() { return MaxPlus{0.0}; }

  constexpr bool is_finite() const { return finite_; }
  constexpr bool is_neg_inf() const { return !finite_; }

  // Precondition: is_finite().
  constexpr double value() const { return value_; }

  constexpr bool operator==(const MaxPlus& o) const {
    if (finite_ != o.finite_) return false;
    return !finite_ || value_ == o.value_;
  }

  constexpr std::partial_ordering operator<=>(const MaxPlus& o) const {
    if (!finite_ && !o.finite_) return std::partial_ordering::equivalent;
    if (!finite_) return std::partial_ordering::less;
    if (!o.finite_) return std::partial_ordering::greater;
    return value_ <=> o.value_;
  }

  std::string to_string() const;

 private:
  bool finite_ = false;
  double value_ = 0.0;
};

inline constexpr MaxPlus kNegInf = MaxPlus::neg_inf();

constexpr MaxPlus oplus(MaxPlus a, MaxPlus b) {
  if (a.is_neg_inf()) return b;
  if (b.is_neg_inf()) return a;
  return a.value() < b.value() ? b : a;
}

constexpr MaxPlus odot(MaxPlus a, MaxPlus b) {
  if (a.is_neg_inf() || b.is_neg_inf()) return kNegInf;
  return MaxPlus{a.value() + b.value()};
}

constexpr MaxPlus operator+(MaxPlus a, MaxPlus b) { return oplus(a, b); }
constexpr MaxPlus operator*(MaxPlus a, MaxPlus b) { return odot(a, b); }

/// Shortest round-trip decimal form of a finite double ("4", "0.05", "-2.5").
std::string format_double(double v);

}  // namespace idem
