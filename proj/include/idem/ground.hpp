#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace idem {

using PointIndex = std::size_t;

struct Point {
  std::string id;
  std::vector<double> coords;  // empty when the space carries no metric
};

/// A finite point model. Points are addressed by their position in the list;
/// "smallest index" tie-breaks throughout the library refer to this order.
class GroundSpace {
 public:
  GroundSpace(std::string id, std::vector<Point> points);

  const std::string& id() const { return id_; }
  std::size_t size() const { return points_.size(); }
  std::span<const Point> points() const { return points_; }
  const Point& point(PointIndex i) const { return points_.at(i); }

  std::optional<PointIndex> find(std::string_view point_id) const;
  PointIndex index_of(std::string_view point_id) const;

  bool has_coords() const { return dimension_ > 0; }
  std::size_t dimension() const { return dimension_; }

  /// Euclidean distance; throws MetricUnavailable on coordinate-free spaces.
  double distance(PointIndex x, PointIndex y) const;

 private:
  std::string id_;
  std::vector<Point> points_;
  std::unordered_map<std::string, PointIndex> index_;
  std::size_t dimension_ = 0;
};

class PointMap;

/// A real-valued function on a finite space, stored as a value per point.
class FunctionTable {
 public:
  FunctionTable(const GroundSpace& space, std::vector<double> values);

  static FunctionTable constant(const GroundSpace& space, double c);

  const std::string& space_id() const { return space_id_; }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double operator()(PointIndex x) const { return values_.at(x); }

  FunctionTable shifted(double lambda) const;

 private:
  FunctionTable(std::string space_id, std::vector<double> values)
      : space_id_(std::move(space_id)), values_(std::move(values)) {}

  friend FunctionTable pointwise_max(const FunctionTable&, const FunctionTable&);
  friend FunctionTable pull_back(const FunctionTable&, const PointMap&);

  std::string space_id_;
  std::vector<double> values_;
};

FunctionTable pointwise_max(const FunctionTable& phi, const FunctionTable& psi);

/// A total map between finite spaces.
class PointMap {
 public:
  PointMap(const GroundSpace& from, const GroundSpace& to,
           std::vector<PointIndex> assign);

  static PointMap identity(const GroundSpace& space);

  const std::string& from_space() const { return from_; }
  const std::string& to_space() const { return to_; }
  std::size_t source_size() const { return assign_.size(); }
  std::size_t target_size() const { return target_size_; }
  std::span<const PointIndex> assign() const { return assign_; }
  PointIndex operator()(PointIndex x) const { return assign_.at(x); }

  bool is_injective() const;

 private:
  PointMap(std::string from, std::string to, std::size_t target_size,
           std::vector<PointIndex> assign)
      : from_(std::move(from)), to_(std::move(to)),
        target_size_(target_size), assign_(std::move(assign)) {}

  friend PointMap compose(const PointMap& g, const PointMap& f);

  std::string from_;
  std::string to_;
  std::size_t target_size_ = 0;
  std::vector<PointIndex> assign_;
};

/// Preimage of a single target point, in increasing index order.
std::vector<PointIndex> fiber(const PointMap& f, PointIndex y);

/// image[y] is true iff the fiber over y is nonempty.
std::vector<bool> image_mask(const PointMap& f);

/// g after f.
PointMap compose(const PointMap& g, const PointMap& f);

/// phi after f, a table on the source of f.
FunctionTable pull_back(const FunctionTable& phi, const PointMap& f);

}  // namespace idem
