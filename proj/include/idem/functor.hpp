#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "idem/ground.hpp"
#include "idem/measure.hpp"

namespace idem {

/// The image measure I(f)(mu): the weight at y is the max of mu's weights
/// over the fiber of y. I(f)(mu)(phi) = mu(phi o f).
IdempotentMeasure pushforward(const PointMap& f, const IdempotentMeasure& mu);

/// True iff supp I(f)(mu) equals the set image f(supp mu).
bool support_image_check(const PointMap& f, const IdempotentMeasure& mu);

/// Membership in I(f)^{-1}(nu).
bool preimage_contains(const PointMap& f, const IdempotentMeasure& nu,
                       const IdempotentMeasure& mu, double tol = kDefaultTolerance);

/// The largest element of I(f)^{-1}(nu): every point of the fiber over y
/// receives nu's weight at y. Throws LiftImpossible if supp nu leaves image(f).
IdempotentMeasure canonical_lift(const PointMap& f, const IdempotentMeasure& nu);

/// A random element of I(f)^{-1}(nu). In each fiber over supp nu one point,
/// chosen uniformly, carries nu(y) exactly; each other fiber point is -inf
/// with probability 1/4 and otherwise uniform in [nu(y) - 5, nu(y)].
IdempotentMeasure sample_preimage(const PointMap& f, const IdempotentMeasure& nu,
                                  std::uint64_t seed);

/// Fiberwise extreme of a function along f. Defined only on image(f).
class FiberExtreme {
 public:
  FiberExtreme(std::string space_id, std::vector<std::optional<double>> values)
      : space_id_(std::move(space_id)), values_(std::move(values)) {}

  const std::string& space_id() const { return space_id_; }
  std::size_t size() const { return values_.size(); }
  bool defined_at(PointIndex y) const { return values_.at(y).has_value(); }

  /// Throws UndefinedOffImage when the fiber over y is empty.
  double operator()(PointIndex y) const;

  /// The whole table; throws UndefinedOffImage unless f is surjective.
  FunctionTable as_table(const GroundSpace& target) const;

 private:
  std::string space_id_;
  std::vector<std::optional<double>> values_;
};

FiberExtreme fiber_sup(const PointMap& f, const FunctionTable& phi);
FiberExtreme fiber_inf(const PointMap& f, const FunctionTable& phi);

struct Lemma2Report {
  bool applicable = false;  // I(f)(nu) == delta_{y0}
  bool passed = false;
  double lower = 0.0;       // min of phi on the fiber over y0
  double upper = 0.0;       // max of phi on the fiber over y0
  double integral = 0.0;    // nu(phi)
  std::string detail;
};

/// For nu with I(f)(nu) = delta_{y0}: checks lower <= nu(phi) <= upper.
Lemma2Report lemma2_check(const PointMap& f, PointIndex y0, const IdempotentMeasure& nu,
                          const FunctionTable& phi, double tol = kDefaultTolerance);

struct LiftRequest {
  const PointMap& f;
  const GroundSpace& source;
  const IdempotentMeasure& base;    // mu_0 on the source
  const IdempotentMeasure& target;  // nu' on the target
};

/// Lifts the target atom by atom: for each (y_j, lambda_j) picks the point of
/// the fiber over y_j closest to supp(base), ties by smallest index, and
/// places lambda_j there. Without coordinates the smallest fiber index is used.
IdempotentMeasure lift_toward(const LiftRequest& req);

/// Max over atoms of mu of the distance to the nearest point of supp(base).
double displacement(const GroundSpace& space, const IdempotentMeasure& mu,
                    const IdempotentMeasure& base);

}  // namespace idem
