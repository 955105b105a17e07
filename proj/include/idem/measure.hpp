#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "idem/ground.hpp"
#include "idem/maxplus.hpp"

namespace idem {

inline constexpr double kDefaultTolerance = 1e-9;

struct Atom {
  PointIndex point;
  double weight;  // finite, <= 0

  bool operator==(const Atom&) const = default;
};

struct RawAtom {
  PointIndex point;
  MaxPlus weight;
};

enum class Normalize : bool { No = false, Yes = true };

/// A finite-support idempotent probability measure
///   lambda_1 (.) delta_{x_1} (+) ... (+) lambda_s (.) delta_{x_s}
/// kept in canonical form: atoms sorted by point, no -inf weights, no
/// repeated points, maximal weight exactly 0.
class IdempotentMeasure {
 public:
  /// Merges repeated points by max and drops -inf atoms. With Normalize::Yes
  /// every weight is shifted by -(max weight); otherwise a max weight other
  /// than 0 is rejected.
  static IdempotentMeasure build(std::string space_id, std::size_t space_size,
                                 std::vector<RawAtom> raw, Normalize normalize);

  const std::string& space_id() const { return space_id_; }
  std::size_t space_size() const { return space_size_; }
  std::span<const Atom> atoms() const { return atoms_; }
  std::size_t support_size() const { return atoms_.size(); }

  /// Weight of the atom at x, or -inf off the support.
  MaxPlus weight(PointIndex x) const;

  bool operator==(const IdempotentMeasure&) const = default;

 private:
  IdempotentMeasure() = default;

  std::string space_id_;
  std::size_t space_size_ = 0;
  std::vector<Atom> atoms_;
};

IdempotentMeasure make_measure(const GroundSpace& space, std::vector<RawAtom> raw,
                               Normalize normalize);

IdempotentMeasure dirac(const GroundSpace& space, PointIndex x);

/// The Maslov integral: max over atoms of weight(x) + phi(x).
double integrate(const IdempotentMeasure& mu, const FunctionTable& phi);

/// Atom points in increasing index order.
std::vector<PointIndex> support(const IdempotentMeasure& mu);

/// alpha (.) mu1 (+) beta (.) mu2, defined when alpha (+) beta = 0.
IdempotentMeasure combine(MaxPlus alpha, const IdempotentMeasure& mu1, MaxPlus beta,
                          const IdempotentMeasure& mu2);

bool measure_equal(const IdempotentMeasure& a, const IdempotentMeasure& b,
                   double tol = kDefaultTolerance);

/// Support-size bound; std::nullopt is the unbounded class.
using SupportBound = std::optional<std::size_t>;
inline constexpr SupportBound kUnbounded = std::nullopt;

bool card_class(const IdempotentMeasure& mu, SupportBound bound);

/// A black-box functional on function tables, e.g. a candidate measure.
using Functional = std::function<double(const FunctionTable&)>;

struct AxiomOutcome {
  std::string axiom;
  bool passed = true;
  std::size_t checks = 0;
  std::string counterexample;  // empty when passed
};

struct AxiomReport {
  std::vector<AxiomOutcome> outcomes;  // norm, homogeneity, additivity

  bool passed() const;
  const AxiomOutcome& outcome(std::string_view axiom) const;
};

/// Randomized check of the three measure axioms for an arbitrary functional.
/// Per trial: phi, psi with values uniform in [-10, 10], lambda uniform in
/// [-5, 5], drawn from Rng(trial_seed(seed, trial)). Each axiom records its
/// first counterexample.
AxiomReport check_axioms(const Functional& functional, const GroundSpace& space,
                         std::size_t trials, std::uint64_t seed, double tol);

std::string to_string(const IdempotentMeasure& mu, const GroundSpace* space = nullptr);

}  // namespace idem
