#pragma once

#include <optional>
#include <span>
#include <vector>

#include "idem/ground.hpp"
#include "idem/measure.hpp"

namespace idem {

/// Basic neighborhood <center; tests; epsilon> of the pointwise topology:
/// all nu with |nu(phi_i) - center(phi_i)| < epsilon for every test.
class WeakNeighborhood {
 public:
  WeakNeighborhood(IdempotentMeasure center, std::vector<FunctionTable> tests, double epsilon);

  const IdempotentMeasure& center() const { return center_; }
  std::span<const FunctionTable> tests() const { return tests_; }
  double epsilon() const { return epsilon_; }

  /// Largest |nu(phi_i) - center(phi_i)| over the tests.
  double discrepancy(const IdempotentMeasure& nu) const;

  /// Strict: a discrepancy equal to epsilon is outside.
  bool contains(const IdempotentMeasure& nu) const;

 private:
  IdempotentMeasure center_;
  std::vector<FunctionTable> tests_;
  std::vector<double> center_values_;
  double epsilon_;
};

/// Moves each atom of mu to the nearest point of `dense` (ties to the
/// smallest index), keeping its weight. Throws DenseTooCoarse, with the
/// worst test discrepancy in the message, when the result leaves
/// <mu; tests; epsilon>.
IdempotentMeasure approximate_on_dense(const GroundSpace& space, const IdempotentMeasure& mu,
                                       std::span<const PointIndex> dense,
                                       std::span<const FunctionTable> tests, double epsilon);

/// Start of the longest tail of `sequence` inside <limit; tests; epsilon>,
/// or nullopt when even the last element is outside.
std::optional<std::size_t> tail_start(std::span<const IdempotentMeasure> sequence,
                                      const IdempotentMeasure& limit,
                                      std::span<const FunctionTable> tests, double epsilon);

/// True iff a tail covering at least the second half of the sequence lies in
/// <limit; tests; epsilon>. A single trailing element is not evidence of
/// convergence, so the tail must start at or before index size/2.
bool converges(std::span<const IdempotentMeasure> sequence, const IdempotentMeasure& limit,
               std::span<const FunctionTable> tests, double epsilon);

}  // namespace idem
