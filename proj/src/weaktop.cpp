#include "idem/weaktop.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "idem/error.hpp"

namespace idem {

WeakNeighborhood::WeakNeighborhood(IdempotentMeasure center, std::vector<FunctionTable> tests,
                                   double epsilon)
    : center_(std::move(center)), tests_(std::move(tests)), epsilon_(epsilon) {
  if (tests_.empty()) fail(ErrorKind::Input, "a neighborhood needs at least one test function");
  if (!(epsilon_ > 0.0) || !std::isfinite(epsilon_))
    fail(ErrorKind::Input, "neighborhood radius must be positive and finite");
  center_values_.reserve(tests_.size());
  for (const auto& phi : tests_) center_values_.push_back(integrate(center_, phi));
}

double WeakNeighborhood::discrepancy(const IdempotentMeasure& nu) const {
  if (nu.space_id() != center_.space_id())
    fail(ErrorKind::Input, "measure on '" + nu.space_id() + "' tested against a neighborhood on '" +
                               center_.space_id() + "'");
  double worst = 0.0;
  for (std::size_t i = 0; i < tests_.size(); ++i)
    worst = std::max(worst, std::abs(integrate(nu, tests_[i]) - center_values_[i]));
  return worst;
}

bool WeakNeighborhood::contains(const IdempotentMeasure& nu) const {
  return discrepancy(nu) < epsilon_;
}

IdempotentMeasure approximate_on_dense(const GroundSpace& space, const IdempotentMeasure& mu,
                                       std::span<const PointIndex> dense,
                                       std::span<const FunctionTable> tests, double epsilon) {
  if (mu.space_id() != space.id() || mu.space_size() != space.size())
    fail(ErrorKind::Input, "measure is not on '" + space.id() + "'");
  if (dense.empty()) fail(ErrorKind::Input, "dense set is empty");
  if (!space.has_coords())
    fail(ErrorKind::MetricUnavailable, "space '" + space.id() + "' has no coordinates");

  std::vector<PointIndex> candidates(dense.begin(), dense.end());
  for (PointIndex y : candidates)
    if (y >= space.size()) fail(ErrorKind::Input, "dense point outside '" + space.id() + "'");
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  std::vector<RawAtom> raw;
  for (const Atom& a : mu.atoms()) {
    PointIndex nearest = candidates.front();
    double best = space.distance(a.point, nearest);
    for (std::size_t k = 1; k < candidates.size() && best > 0.0; ++k) {
      const double d = space.distance(a.point, candidates[k]);
      if (d < best) {
        best = d;
        nearest = candidates[k];
      }
    }
    raw.push_back({nearest, a.weight});
  }
  IdempotentMeasure nu = make_measure(space, std::move(raw), Normalize::No);

  const WeakNeighborhood nbhd(mu, {tests.begin(), tests.end()}, epsilon);
  const double worst = nbhd.discrepancy(nu);
  if (!(worst < epsilon))
    fail(ErrorKind::DenseTooCoarse, "worst test discrepancy " + format_double(worst) +
                                        " is not below epsilon " + format_double(epsilon));
  return nu;
}

std::optional<std::size_t> tail_start(std::span<const IdempotentMeasure> sequence,
                                      const IdempotentMeasure& limit,
                                      std::span<const FunctionTable> tests, double epsilon) {
  if (sequence.empty()) fail(ErrorKind::Input, "empty sequence");
  const WeakNeighborhood nbhd(limit, {tests.begin(), tests.end()}, epsilon);
  std::optional<std::size_t> start;
  for (std::size_t i = sequence.size(); i-- > 0;) {
    if (!nbhd.contains(sequence[i])) break;
    start = i;
  }
  return start;
}

bool converges(std::span<const IdempotentMeasure> sequence, const IdempotentMeasure& limit,
               std::span<const FunctionTable> tests, double epsilon) {
  const auto start = tail_start(sequence, limit, tests, epsilon);
  return start && *start <= sequence.size() / 2;
}

}  // namespace idem
