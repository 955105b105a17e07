#pragma once

#include <span>
#include <string>
#include <vector>

#include "idem/ground.hpp"
#include "idem/measure.hpp"
#include "idem/random.hpp"

// Random instances for the property suites.
namespace idem::gen {

/// Coordinate-free space with points "<prefix>0", "<prefix>1", ...
GroundSpace bare_space(const std::string& id, std::size_t n, const std::string& prefix);

/// n points uniform in [lo, hi]^dim, pairwise at least min_gap apart.
GroundSpace scattered_space(Rng& rng, const std::string& id, std::size_t n, std::size_t dim,
                            double lo, double hi, double min_gap);

/// n points i/(n-1) on [0, 1], ids "<prefix><i>".
GroundSpace unit_grid(const std::string& id, std::size_t n, const std::string& prefix);

/// n x n points (i/(n-1), j/(n-1)) on [0, 1]^2 at index i*n + j.
GroundSpace unit_grid_2d(const std::string& id, std::size_t n);

/// (i, j) -> i from unit_grid_2d onto unit_grid.
PointMap first_coordinate(const GroundSpace& square, const GroundSpace& line, std::size_t n);

PointMap random_map(Rng& rng, const GroundSpace& from, const GroundSpace& to);

FunctionTable random_table(Rng& rng, const GroundSpace& space, double lo, double hi);

/// Support of size in [min_support, max_support] drawn from `candidates`,
/// weights uniform in [min_weight, 0], then normalized.
IdempotentMeasure random_measure(Rng& rng, const GroundSpace& space,
                                 std::span<const PointIndex> candidates, std::size_t min_support,
                                 std::size_t max_support, double min_weight = -10.0);

IdempotentMeasure random_measure(Rng& rng, const GroundSpace& space, std::size_t min_support,
                                 std::size_t max_support, double min_weight = -10.0);

/// k distinct indices from [0, n) in increasing order.
std::vector<PointIndex> sample_indices(Rng& rng, std::size_t n, std::size_t k);

}  // namespace idem::gen
