#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "idem/ground.hpp"

namespace idem {

/// rho(x, C) for a point and a nonempty set. On a finite discrete model every
/// subset is canonically closed, so any nonempty set is a valid argument.
using KappaFunction = std::function<double(PointIndex, std::span<const PointIndex>)>;

struct KappaCandidate {
  std::string name;
  std::string space_id;
  KappaFunction rho;
  bool metric_derived = false;  // the 1-Lipschitz continuity check applies
};

/// min over c in C of distance(x, c).
double distance_to_set(const GroundSpace& space, PointIndex x, std::span<const PointIndex> set);

KappaCandidate distance_candidate(const GroundSpace& space);
KappaCandidate squared_distance_candidate(const GroundSpace& space);
KappaCandidate constant_candidate(const GroundSpace& space, double value = 1.0);

/// Built-in candidates by name: "distance", "squared-distance", "constant".
KappaCandidate builtin_candidate(const std::string& name, const GroundSpace& space);

enum class CheckStatus { Pass, Fail, NotEvaluated };
const char* to_string(CheckStatus status);

struct KappaAxiomOutcome {
  std::string axiom;  // K1 .. K4
  CheckStatus status = CheckStatus::Pass;
  std::size_t checks = 0;
  std::string counterexample;
};

struct KappaReport {
  std::string candidate;
  std::vector<KappaAxiomOutcome> outcomes;
  std::string note;

  bool passed() const;  // no axiom failed
  const KappaAxiomOutcome& outcome(std::string_view axiom) const;
};

/// Randomized check of the kappa-metric axioms on a finite model:
///   K1  rho(x,C) <= tol  iff  x in C
///   K2  C' subset of C  =>  rho(x,C) <= rho(x,C') + tol
///   K3  |rho(x,C) - rho(x',C)| <= d(x,x') + tol   (metric-derived candidates only)
///   K4  rho(x, C_m) = min_j rho(x, C_j) within tol over increasing chains
///       C_1 subset ... subset C_m, whose union is C_m.
KappaReport check_kappa_axioms(const KappaCandidate& candidate, const GroundSpace& space,
                               std::size_t trials, std::uint64_t seed, double tol);

}  // namespace idem
