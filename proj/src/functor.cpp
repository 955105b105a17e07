#include "idem/functor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "idem/error.hpp"
#include "idem/random.hpp"

namespace idem {

namespace {

void require_source(const PointMap& f, const IdempotentMeasure& mu) {
  if (mu.space_id() != f.from_space() || mu.space_size() != f.source_size())
    fail(ErrorKind::Input, "measure on '" + mu.space_id() + "' is not on the source '" +
                               f.from_space() + "' of the map");
}

void require_target(const PointMap& f, const IdempotentMeasure& nu) {
  if (nu.space_id() != f.to_space() || nu.space_size() != f.target_size())
    fail(ErrorKind::Input, "measure on '" + nu.space_id() + "' is not on the target '" +
                               f.to_space() + "' of the map");
}

// Fibers over every target point, each in increasing index order.
std::vector<std::vector<PointIndex>> all_fibers(const PointMap& f) {
  std::vector<std::vector<PointIndex>> fibers(f.target_size());
  for (PointIndex x = 0; x < f.source_size(); ++x) fibers[f(x)].push_back(x);
  return fibers;
}

void require_liftable(const PointMap& f, const IdempotentMeasure& nu,
                      const std::vector<std::vector<PointIndex>>& fibers) {
  require_target(f, nu);
  for (const Atom& a : nu.atoms())
    if (fibers[a.point].empty())
      fail(ErrorKind::LiftImpossible, "atom at target index " + std::to_string(a.point) +
                                          " lies outside the image of the map");
}

}  // namespace

IdempotentMeasure pushforward(const PointMap& f, const IdempotentMeasure& mu) {
  require_source(f, mu);
  std::vector<RawAtom> raw;
  raw.reserve(mu.support_size());
  for (const Atom& a : mu.atoms()) raw.push_back({f(a.point), a.weight});
  return IdempotentMeasure::build(f.to_space(), f.target_size(), std::move(raw), Normalize::No);
}

bool support_image_check(const PointMap& f, const IdempotentMeasure& mu) {
  std::vector<PointIndex> image;
  for (PointIndex x : support(mu)) image.push_back(f(x));
  std::sort(image.begin(), image.end());
  image.erase(std::unique(image.begin(), image.end()), image.end());
  return support(pushforward(f, mu)) == image;
}

bool preimage_contains(const PointMap& f, const IdempotentMeasure& nu,
                       const IdempotentMeasure& mu, double tol) {
  require_target(f, nu);
  return measure_equal(pushforward(f, mu), nu, tol);
}

IdempotentMeasure canonical_lift(const PointMap& f, const IdempotentMeasure& nu) {
  const auto fibers = all_fibers(f);
  require_liftable(f, nu, fibers);
  std::vector<RawAtom> raw;
  for (const Atom& a : nu.atoms())
    for (PointIndex x : fibers[a.point]) raw.push_back({x, a.weight});
  return IdempotentMeasure::build(f.from_space(), f.source_size(), std::move(raw), Normalize::No);
}

IdempotentMeasure sample_preimage(const PointMap& f, const IdempotentMeasure& nu,
                                  std::uint64_t seed) {
  const auto fibers = all_fibers(f);
  require_liftable(f, nu, fibers);
  Rng rng(seed);
  std::vector<RawAtom> raw;
  for (const Atom& a : nu.atoms()) {
    const auto& fib = fibers[a.point];
    const std::size_t carrier = rng.below(fib.size());
    for (std::size_t k = 0; k < fib.size(); ++k) {
      if (k == carrier) {
        raw.push_back({fib[k], a.weight});
      } else if (!rng.chance(0.25)) {
        raw.push_back({fib[k], a.weight - 5.0 * rng.uniform01()});
      }
    }
  }
  return IdempotentMeasure::build(f.from_space(), f.source_size(), std::move(raw), Normalize::No);
}

double FiberExtreme::operator()(PointIndex y) const {
  const auto& v = values_.at(y);
  if (!v)
    fail(ErrorKind::UndefinedOffImage,
         "fiber over target index " + std::to_string(y) + " in '" + space_id_ + "' is empty");
  return *v;
}

FunctionTable FiberExtreme::as_table(const GroundSpace& target) const {
  if (target.id() != space_id_ || target.size() != values_.size())
    fail(ErrorKind::Input, "fiber extreme lives on '" + space_id_ + "', not '" + target.id() + "'");
  std::vector<double> out(values_.size());
  for (PointIndex y = 0; y < out.size(); ++y) out[y] = (*this)(y);
  return FunctionTable(target, std::move(out));
}

namespace {

template <typename Pick>
FiberExtreme fiber_extreme(const PointMap& f, const FunctionTable& phi, Pick pick) {
  if (phi.space_id() != f.from_space() || phi.size() != f.source_size())
    fail(ErrorKind::Input, "function on '" + phi.space_id() + "' is not on the source '" +
                               f.from_space() + "' of the map");
  std::vector<std::optional<double>> out(f.target_size());
  for (PointIndex x = 0; x < f.source_size(); ++x) {
    auto& slot = out[f(x)];
    slot = slot ? pick(*slot, phi(x)) : phi(x);
  }
  return FiberExtreme(f.to_space(), std::move(out));
}

}  // namespace

FiberExtreme fiber_sup(const PointMap& f, const FunctionTable& phi) {
  return fiber_extreme(f, phi, [](double a, double b) { return std::max(a, b); });
}

FiberExtreme fiber_inf(const PointMap& f, const FunctionTable& phi) {
  return fiber_extreme(f, phi, [](double a, double b) { return std::min(a, b); });
}

Lemma2Report lemma2_check(const PointMap& f, PointIndex y0, const IdempotentMeasure& nu,
                          const FunctionTable& phi, double tol) {
  Lemma2Report report;
  const auto fib = fiber(f, y0);
  require_source(f, nu);
  const auto image = pushforward(f, nu);
  if (image.support_size() != 1 || image.atoms()[0].point != y0) {
    report.detail = "inapplicable: pushforward is not the point mass at the given point";
    return report;
  }
  report.applicable = true;
  report.lower = std::numeric_limits<double>::infinity();
  report.upper = -std::numeric_limits<double>::infinity();
  for (PointIndex x : fib) {
    report.lower = std::min(report.lower, phi(x));
    report.upper = std::max(report.upper, phi(x));
  }
  report.integral = integrate(nu, phi);
  report.passed = report.lower - tol <= report.integral && report.integral <= report.upper + tol;
  report.detail = "integral " + format_double(report.integral) + " against fiber bounds [" +
                  format_double(report.lower) + ", " + format_double(report.upper) + "]";
  return report;
}

IdempotentMeasure lift_toward(const LiftRequest& req) {
  const PointMap& f = req.f;
  if (req.source.id() != f.from_space() || req.source.size() != f.source_size())
    fail(ErrorKind::Input, "space '" + req.source.id() + "' is not the source of the map");
  require_source(f, req.base);
  const auto fibers = all_fibers(f);
  require_liftable(f, req.target, fibers);

  const bool metric = req.source.has_coords();
  const auto base_support = support(req.base);
  auto gap = [&](PointIndex x) {
    double best = std::numeric_limits<double>::infinity();
    for (PointIndex b : base_support) best = std::min(best, req.source.distance(x, b));
    return best;
  };

  std::vector<RawAtom> raw;
  for (const Atom& a : req.target.atoms()) {
    const auto& fib = fibers[a.point];
    PointIndex chosen = fib.front();
    if (metric) {
      double best = gap(chosen);
      for (std::size_t k = 1; k < fib.size(); ++k) {
        const double d = gap(fib[k]);
        if (d < best) {
          best = d;
          chosen = fib[k];
        }
      }
    }
    raw.push_back({chosen, a.weight});
  }
  return IdempotentMeasure::build(f.from_space(), f.source_size(), std::move(raw), Normalize::No);
}

double displacement(const GroundSpace& space, const IdempotentMeasure& mu,
                    const IdempotentMeasure& base) {
  if (mu.space_id() != space.id() || base.space_id() != space.id())
    fail(ErrorKind::Input, "displacement needs both measures on '" + space.id() + "'");
  double worst = 0.0;
  for (const Atom& a : mu.atoms()) {
    double best = std::numeric_limits<double>::infinity();
    for (const Atom& b : base.atoms()) best = std::min(best, space.distance(a.point, b.point));
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace idem
