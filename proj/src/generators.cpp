#include "idem/generators.hpp"

#include <algorithm>
#include <numeric>

#include "idem/error.hpp"

namespace idem::gen {

GroundSpace bare_space(const std::string& id, std::size_t n, const std::string& prefix) {
  std::vector<Point> points;
  for (std::size_t i = 0; i < n; ++i) points.push_back({prefix + std::to_string(i), {}});
  return GroundSpace(id, std::move(points));
}

GroundSpace scattered_space(Rng& rng, const std::string& id, std::size_t n, std::size_t dim,
                            double lo, double hi, double min_gap) {
  std::vector<Point> points;
  while (points.size() < n) {
    std::vector<double> c(dim);
    for (double& v : c) v = rng.uniform(lo, hi);
    const bool crowded = std::any_of(points.begin(), points.end(), [&](const Point& p) {
      double s = 0.0;
      for (std::size_t k = 0; k < dim; ++k) s += (p.coords[k] - c[k]) * (p.coords[k] - c[k]);
      return s < min_gap * min_gap;
    });
    if (!crowded) points.push_back({"p" + std::to_string(points.size()), std::move(c)});
  }
  return GroundSpace(id, std::move(points));
}

GroundSpace unit_grid(const std::string& id, std::size_t n, const std::string& prefix) {
  std::vector<Point> points;
  for (std::size_t i = 0; i < n; ++i)
    points.push_back({prefix + std::to_string(i),
                      {n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1)}});
  return GroundSpace(id, std::move(points));
}

GroundSpace unit_grid_2d(const std::string& id, std::size_t n) {
  std::vector<Point> points;
  const double pitch = n == 1 ? 0.0 : 1.0 / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      points.push_back({"x" + std::to_string(i) + "_" + std::to_string(j),
                        {static_cast<double>(i) * pitch, static_cast<double>(j) * pitch}});
  return GroundSpace(id, std::move(points));
}

PointMap first_coordinate(const GroundSpace& square, const GroundSpace& line, std::size_t n) {
  std::vector<PointIndex> assign(n * n);
  for (std::size_t k = 0; k < assign.size(); ++k) assign[k] = k / n;
  return PointMap(square, line, std::move(assign));
}

PointMap random_map(Rng& rng, const GroundSpace& from, const GroundSpace& to) {
  std::vector<PointIndex> assign(from.size());
  for (auto& y : assign) y = rng.below(to.size());
  return PointMap(from, to, std::move(assign));
}

FunctionTable random_table(Rng& rng, const GroundSpace& space, double lo, double hi) {
  std::vector<double> v(space.size());
  for (double& x : v) x = rng.uniform(lo, hi);
  return FunctionTable(space, std::move(v));
}

std::vector<PointIndex> sample_indices(Rng& rng, std::size_t n, std::size_t k) {
  std::vector<PointIndex> all(n);
  std::iota(all.begin(), all.end(), PointIndex{0});
  k = std::min(k, n);
  // Partial Fisher-Yates.
  for (std::size_t i = 0; i < k; ++i) std::swap(all[i], all[i + rng.below(n - i)]);
  all.resize(k);
  std::sort(all.begin(), all.end());
  return all;
}

IdempotentMeasure random_measure(Rng& rng, const GroundSpace& space,
                                 std::span<const PointIndex> candidates, std::size_t min_support,
                                 std::size_t max_support, double min_weight) {
  if (candidates.empty()) fail(ErrorKind::Input, "no candidate support points");
  max_support = std::min(max_support, candidates.size());
  min_support = std::clamp<std::size_t>(min_support, 1, max_support);
  const std::size_t k = rng.between(min_support, max_support);
  std::vector<RawAtom> raw;
  for (std::size_t i : sample_indices(rng, candidates.size(), k))
    raw.push_back({candidates[i], rng.uniform(min_weight, 0.0)});
  return make_measure(space, std::move(raw), Normalize::Yes);
}

IdempotentMeasure random_measure(Rng& rng, const GroundSpace& space, std::size_t min_support,
                                 std::size_t max_support, double min_weight) {
  std::vector<PointIndex> all(space.size());
  std::iota(all.begin(), all.end(), PointIndex{0});
  return random_measure(rng, space, all, min_support, max_support, min_weight);
}

}  // namespace idem::gen
