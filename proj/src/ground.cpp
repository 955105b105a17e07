#include "idem/ground.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "idem/error.hpp"

namespace idem {

GroundSpace::GroundSpace(std::string id, std::vector<Point> points)
    : id_(std::move(id)), points_(std::move(points)) {
  if (points_.empty()) fail(ErrorKind::Input, "space '" + id_ + "' has no points");

  dimension_ = points_.front().coords.size();
  std::set<std::vector<double>> seen_coords;
  for (PointIndex i = 0; i < points_.size(); ++i) {
    const Point& p = points_[i];
    if (!index_.emplace(p.id, i).second)
      fail(ErrorKind::Input, "duplicate point id '" + p.id + "' in space '" + id_ + "'");
    if (p.coords.size() != dimension_)
      fail(ErrorKind::Input, "point '" + p.id + "' has coordinate dimension " +
                                 std::to_string(p.coords.size()) + ", expected " +
                                 std::to_string(dimension_));
    if (dimension_ == 0) continue;
    for (double c : p.coords)
      if (!std::isfinite(c)) fail(ErrorKind::Input, "non-finite coordinate at '" + p.id + "'");
    if (!seen_coords.insert(p.coords).second)
      fail(ErrorKind::Input, "point '" + p.id + "' duplicates the coordinates of another point");
  }
}

std::optional<PointIndex> GroundSpace::find(std::string_view point_id) const {
  auto it = index_.find(std::string(point_id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

PointIndex GroundSpace::index_of(std::string_view point_id) const {
  if (auto i = find(point_id)) return *i;
  fail(ErrorKind::Input,
       "unknown point '" + std::string(point_id) + "' in space '" + id_ + "'");
}

double GroundSpace::distance(PointIndex x, PointIndex y) const {
  if (!has_coords()) fail(ErrorKind::MetricUnavailable, "space '" + id_ + "' has no coordinates");
  const auto& a = point(x).coords;
  const auto& b = point(y).coords;
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    sum += d * d;
  }
  return std::sqrt(sum);
}

FunctionTable::FunctionTable(const GroundSpace& space, std::vector<double> values)
    : space_id_(space.id()), values_(std::move(values)) {
  if (values_.size() != space.size())
    fail(ErrorKind::Input, "function on '" + space_id_ + "' defines " +
                               std::to_string(values_.size()) + " of " +
                               std::to_string(space.size()) + " values");
  for (double v : values_)
    if (!std::isfinite(v)) fail(ErrorKind::Input, "function values must be finite");
}

FunctionTable FunctionTable::constant(const GroundSpace& space, double c) {
  return FunctionTable(space, std::vector<double>(space.size(), c));
}

FunctionTable FunctionTable::shifted(double lambda) const {
  std::vector<double> out(values_);
  for (double& v : out) v += lambda;
  return FunctionTable(space_id_, std::move(out));
}

FunctionTable pointwise_max(const FunctionTable& phi, const FunctionTable& psi) {
  if (phi.space_id_ != psi.space_id_ || phi.size() != psi.size())
    fail(ErrorKind::Input, "pointwise max of functions on different spaces");
  std::vector<double> out(phi.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::max(phi.values_[i], psi.values_[i]);
  return FunctionTable(phi.space_id_, std::move(out));
}

PointMap::PointMap(const GroundSpace& from, const GroundSpace& to,
                   std::vector<PointIndex> assign)
    : from_(from.id()), to_(to.id()), target_size_(to.size()), assign_(std::move(assign)) {
  if (assign_.size() != from.size())
    fail(ErrorKind::Input, "map from '" + from_ + "' is not total");
  for (PointIndex y : assign_)
    if (y >= target_size_) fail(ErrorKind::Input, "map lands outside '" + to_ + "'");
}

PointMap PointMap::identity(const GroundSpace& space) {
  std::vector<PointIndex> assign(space.size());
  for (PointIndex i = 0; i < assign.size(); ++i) assign[i] = i;
  return PointMap(space, space, std::move(assign));
}

bool PointMap::is_injective() const {
  std::vector<bool> hit(target_size_, false);
  for (PointIndex y : assign_) {
    if (hit[y]) return false;
    hit[y] = true;
  }
  return true;
}

std::vector<PointIndex> fiber(const PointMap& f, PointIndex y) {
  if (y >= f.target_size())
    fail(ErrorKind::Input, "point index " + std::to_string(y) + " not in '" + f.to_space() + "'");
  std::vector<PointIndex> out;
  for (PointIndex x = 0; x < f.source_size(); ++x)
    if (f(x) == y) out.push_back(x);
  return out;
}

std::vector<bool> image_mask(const PointMap& f) {
  std::vector<bool> mask(f.target_size(), false);
  for (PointIndex y : f.assign()) mask[y] = true;
  return mask;
}

PointMap compose(const PointMap& g, const PointMap& f) {
  if (f.to_space() != g.from_space() || f.target_size() != g.source_size())
    fail(ErrorKind::Input, "cannot compose: '" + f.to_space() + "' is not the source '" +
                               g.from_space() + "'");
  std::vector<PointIndex> assign(f.source_size());
  for (PointIndex x = 0; x < assign.size(); ++x) assign[x] = g(f(x));
  return PointMap(f.from_space(), g.to_space(), g.target_size(), std::move(assign));
}

FunctionTable pull_back(const FunctionTable& phi, const PointMap& f) {
  if (phi.space_id() != f.to_space() || phi.size() != f.target_size())
    fail(ErrorKind::Input, "function on '" + phi.space_id() + "' cannot be pulled back along a map into '" +
                               f.to_space() + "'");
  std::vector<double> out(f.source_size());
  for (PointIndex x = 0; x < out.size(); ++x) out[x] = phi(f(x));
  return FunctionTable(f.from_space(), std::move(out));
}

}  // namespace idem
