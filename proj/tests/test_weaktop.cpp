#include <doctest.h>

#include <cmath>
#include <string>

#include "idem/error.hpp"
#include "idem/generators.hpp"
#include "idem/weaktop.hpp"

using namespace idem;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an idem::Error");
  return ErrorKind::Input;
}

GroundSpace line(std::initializer_list<double> coords) {
  std::vector<Point> pts;
  for (double c : coords) pts.push_back({"t" + std::to_string(pts.size()), {c}});
  return GroundSpace("L", std::move(pts));
}

FunctionTable identity_test(const GroundSpace& space) {
  std::vector<double> v(space.size());
  for (PointIndex x = 0; x < v.size(); ++x) v[x] = space.point(x).coords[0];
  return FunctionTable(space, std::move(v));
}

}  // namespace

TEST_CASE("contains") {
  const auto L = line({0.5, 0.45, 1.0});
  const auto centre = dirac(L, 0);
  const WeakNeighborhood wide(centre, {identity_test(L)}, 0.1);
  CHECK(wide.contains(centre));
  CHECK(wide.contains(dirac(L, 1)));
  const WeakNeighborhood narrow(centre, {identity_test(L)}, 0.04);
  CHECK_FALSE(narrow.contains(dirac(L, 1)));

  // Strict inequality at the boundary.
  const auto grid = line({0.0, 0.5});
  const WeakNeighborhood edge(dirac(grid, 0), {identity_test(grid)}, 0.5);
  CHECK(edge.discrepancy(dirac(grid, 1)) == 0.5);
  CHECK_FALSE(edge.contains(dirac(grid, 1)));

  CHECK(kind_of([&] { WeakNeighborhood(centre, {}, 0.1); }) == ErrorKind::Input);
  CHECK(kind_of([&] { WeakNeighborhood(centre, {identity_test(L)}, 0.0); }) == ErrorKind::Input);
  const auto other = gen::bare_space("M", 3, "m");
  CHECK(kind_of([&] { (void)wide.contains(dirac(other, 0)); }) == ErrorKind::Input);
}

TEST_CASE("neighborhood monotonicity") {
  Rng rng(12);
  for (int t = 0; t < 300; ++t) {
    const auto X = gen::bare_space("X", rng.between(1, 8), "x");
    const auto centre = gen::random_measure(rng, X, 1, 8);
    const auto nu = gen::random_measure(rng, X, 1, 8);
    std::vector<FunctionTable> tests{gen::random_table(rng, X, -1.0, 1.0)};
    const double eps = rng.uniform(0.01, 2.0);
    const WeakNeighborhood n1(centre, tests, eps);
    CHECK(n1.contains(centre));
    const WeakNeighborhood wider(centre, tests, eps * 1.5);
    if (n1.contains(nu)) CHECK(wider.contains(nu));
    tests.push_back(gen::random_table(rng, X, -1.0, 1.0));
    const WeakNeighborhood more(centre, tests, eps);
    if (!n1.contains(nu)) CHECK_FALSE(more.contains(nu));
  }
}

TEST_CASE("approximate_on_dense") {
  const auto L = line({0.0, 0.45, 0.55, 1.0, 0.5});
  const std::vector<PointIndex> dense{0, 1, 2, 3};
  const std::vector<FunctionTable> tests{identity_test(L)};
  const auto mu = dirac(L, 4);

  const auto nu = approximate_on_dense(L, mu, dense, tests, 0.1);
  CHECK(nu == dirac(L, 1));
  const WeakNeighborhood nbhd(mu, tests, 0.1);
  CHECK(nbhd.contains(nu));
  CHECK(nbhd.discrepancy(nu) == doctest::Approx(0.05).epsilon(1e-12));

  const auto own = make_measure(L, {{0, 0.0}, {3, -1.0}}, Normalize::No);
  CHECK(approximate_on_dense(L, own, dense, tests, 1e-6) == own);

  CHECK(kind_of([&] { (void)approximate_on_dense(L, mu, dense, tests, 0.04); }) ==
        ErrorKind::DenseTooCoarse);
  try {
    (void)approximate_on_dense(L, mu, dense, tests, 0.04);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("0.0") != std::string::npos);
  }

  const auto bare = gen::bare_space("L", 2, "b");
  CHECK(kind_of([&] { (void)approximate_on_dense(bare, dirac(bare, 0), std::vector<PointIndex>{1},
                                                 std::vector<FunctionTable>{FunctionTable::constant(bare, 0.0)},
                                                 0.1); }) == ErrorKind::MetricUnavailable);
}

TEST_CASE("approximate_on_dense exact tie goes to the smallest index") {
  const auto L = line({0.25, 0.75, 0.5});  // both 0.25 away, exactly representable
  const std::vector<FunctionTable> tests{FunctionTable::constant(L, 1.0)};
  CHECK(approximate_on_dense(L, dirac(L, 2), std::vector<PointIndex>{1, 0}, tests, 0.1) == dirac(L, 0));
}

TEST_CASE("approximate_on_dense merges atoms that share a nearest point") {
  const auto L = line({0.0, 1.0, 0.1, 0.2});
  const auto mu = make_measure(L, {{2, 0.0}, {3, -1.0}}, Normalize::No);
  const std::vector<FunctionTable> tests{identity_test(L)};
  const auto nu = approximate_on_dense(L, mu, std::vector<PointIndex>{0, 1}, tests, 0.5);
  CHECK(nu == dirac(L, 0));
  CHECK(nu.support_size() <= mu.support_size());
}

TEST_CASE("density on a uniform grid above the resolution bound") {
  // N-point grid, tests with Lipschitz constant <= 1: success whenever eps > 1/(2(N-1)).
  Rng rng(31);
  for (std::size_t n : {3u, 11u, 51u}) {
    const auto grid = gen::unit_grid("G", n, "g");
    std::vector<Point> pts(grid.points().begin(), grid.points().end());
    for (int i = 0; i < 15; ++i) {
      const double c = rng.uniform(0.0, 1.0);
      pts.push_back({"q" + std::to_string(i), {c}});
    }
    const GroundSpace X("G", std::move(pts));
    std::vector<PointIndex> dense(n), rest;
    for (PointIndex i = 0; i < n; ++i) dense[i] = i;
    for (PointIndex i = n; i < X.size(); ++i) rest.push_back(i);
    const double eps = 1.0 / (2.0 * (n - 1)) * 1.01;
    for (int t = 0; t < 40; ++t) {
      const auto mu = gen::random_measure(rng, X, rest, 1, 6);
      std::vector<double> v(X.size());
      const double slope = rng.uniform(-1.0, 1.0), shift = rng.uniform(-1.0, 1.0);
      for (PointIndex x = 0; x < X.size(); ++x) v[x] = slope * X.point(x).coords[0] + shift;
      const std::vector<FunctionTable> tests{FunctionTable(X, v), identity_test(X)};
      const auto nu = approximate_on_dense(X, mu, dense, tests, eps);
      for (PointIndex y : support(nu)) CHECK(y < n);
    }
  }
}

TEST_CASE("converges") {
  // Points 0.5 + 1/k for k = 1..1000, then 0.5 itself.
  std::vector<Point> pts;
  for (int k = 1; k <= 1000; ++k) pts.push_back({"s" + std::to_string(k), {0.5 + 1.0 / k}});
  pts.push_back({"limit", {0.5}});
  const GroundSpace X("X", std::move(pts));
  const PointIndex limit_point = 1000;
  const std::vector<FunctionTable> tests{identity_test(X)};
  const auto limit = dirac(X, limit_point);

  std::vector<IdempotentMeasure> seq;
  for (PointIndex k = 0; k < 1000; ++k) seq.push_back(dirac(X, k));
  // Oracle: |1/k| < 0.01 exactly when k > 100, i.e. from index 100 on.
  CHECK(tail_start(seq, limit, tests, 0.01) == std::optional<std::size_t>{100});
  CHECK(converges(seq, limit, tests, 0.01));

  const std::vector<IdempotentMeasure> constant(5, limit);
  CHECK(converges(constant, limit, tests, 1e-9));

  // Alternating at test distance 1.
  const auto L = line({0.0, 1.0});
  const std::vector<FunctionTable> probe{identity_test(L)};
  std::vector<IdempotentMeasure> alternating;
  for (int i = 0; i < 20; ++i) alternating.push_back(dirac(L, i % 2));
  CHECK_FALSE(converges(alternating, dirac(L, 0), probe, 0.5));
  CHECK_FALSE(converges(alternating, dirac(L, 1), probe, 0.5));

  CHECK(kind_of([&] { (void)converges(std::vector<IdempotentMeasure>{}, limit, tests, 0.1); }) ==
        ErrorKind::Input);
}
