#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "idem/error.hpp"
#include "idem/generators.hpp"
#include "idem/measure.hpp"

using namespace idem;

namespace {

GroundSpace abc() { return gen::bare_space("X", 3, "p"); }  // p0, p1, p2 as a, b, c

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an idem::Error");
  return ErrorKind::Input;
}

// Brute-force Maslov integral straight from (point, weight) pairs, no
// canonical form involved.
double maslov_oracle(const std::vector<std::pair<PointIndex, double>>& atoms,
                     const std::vector<double>& phi) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& [x, w] : atoms) best = std::max(best, w + phi[x]);
  return best;
}

}  // namespace

TEST_CASE("make_measure") {
  const auto X = abc();
  const auto shifted = make_measure(X, {{0, -3.0}, {1, -5.0}}, Normalize::Yes);
  CHECK(shifted.atoms()[0] == Atom{0, 0.0});
  CHECK(shifted.atoms()[1] == Atom{1, -2.0});

  const auto merged = make_measure(X, {{0, 0.0}, {0, -1.0}, {1, -2.0}}, Normalize::No);
  REQUIRE(merged.support_size() == 2);
  CHECK(merged.weight(0) == MaxPlus{0.0});
  CHECK(merged.weight(1) == MaxPlus{-2.0});
  CHECK(merged.weight(2) == kNegInf);

  CHECK(kind_of([&] { make_measure(X, {{0, -3.0}, {1, -5.0}}, Normalize::No); }) ==
        ErrorKind::NormAxiom);
  CHECK(kind_of([&] { make_measure(X, {}, Normalize::Yes); }) == ErrorKind::NoMass);
  CHECK(kind_of([&] { make_measure(X, {{0, kNegInf}}, Normalize::Yes); }) == ErrorKind::NoMass);
  CHECK(kind_of([&] { make_measure(X, {{7, 0.0}}, Normalize::Yes); }) == ErrorKind::Input);
}

TEST_CASE("dirac") {
  const auto X = abc();
  const auto d = dirac(X, 0);
  CHECK(d.support_size() == 1);
  CHECK(d.weight(0) == MaxPlus{0.0});
  CHECK(support(d) == std::vector<PointIndex>{0});
  Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    const auto phi = gen::random_table(rng, X, -10.0, 10.0);
    CHECK(integrate(d, phi) == phi(0));
  }
  CHECK(kind_of([&] { dirac(X, 3); }) == ErrorKind::Input);
}

TEST_CASE("integrate") {
  const auto X = abc();
  const auto mu = make_measure(X, {{0, 0.0}, {1, -1.0}}, Normalize::No);
  CHECK(integrate(mu, FunctionTable(X, {2.0, 5.0, 0.0})) == 4.0);
  CHECK(integrate(mu, FunctionTable::constant(X, -7.25)) == -7.25);

  const std::vector<std::pair<PointIndex, double>> atoms{{0, 0.0}, {1, -2.0}, {2, -1.0}};
  const std::vector<double> phi{1.0, 10.0, 0.0};
  const double expected = maslov_oracle(atoms, phi);
  REQUIRE(expected == 8.0);
  const auto nu = make_measure(X, {{0, 0.0}, {1, -2.0}, {2, -1.0}}, Normalize::No);
  CHECK(integrate(nu, FunctionTable(X, phi)) == expected);

  const auto Y = gen::bare_space("Y", 3, "q");
  CHECK(kind_of([&] { (void)integrate(mu, FunctionTable::constant(Y, 0.0)); }) == ErrorKind::Input);
}

TEST_CASE("integrate agrees with the brute-force oracle on unmerged inputs") {
  Rng rng(11);
  for (int t = 0; t < 300; ++t) {
    const auto X = gen::bare_space("X", rng.between(1, 10), "x");
    std::vector<std::pair<PointIndex, double>> atoms;
    std::vector<RawAtom> raw;
    const std::size_t k = rng.between(1, 12);
    for (std::size_t i = 0; i < k; ++i) {
      const PointIndex x = rng.below(X.size());
      const double w = rng.uniform(-10.0, 0.0);
      atoms.push_back({x, w});
      raw.push_back({x, w});
    }
    raw.push_back({rng.below(X.size()), kNegInf});
    double top = -std::numeric_limits<double>::infinity();
    for (auto& [x, w] : atoms) top = std::max(top, w);
    for (auto& [x, w] : atoms) w -= top;

    const auto mu = make_measure(X, raw, Normalize::Yes);
    std::vector<double> phi(X.size());
    for (double& v : phi) v = rng.uniform(-10.0, 10.0);
    CHECK(integrate(mu, FunctionTable(X, phi)) == maslov_oracle(atoms, phi));
  }
}

TEST_CASE("support") {
  const auto X = abc();
  CHECK(support(make_measure(X, {{0, 0.0}, {1, -2.0}}, Normalize::No)) ==
        std::vector<PointIndex>{0, 1});
  CHECK(support(dirac(X, 0)) == std::vector<PointIndex>{0});
  CHECK(support(make_measure(X, {{0, 0.0}, {1, kNegInf}}, Normalize::No)) ==
        std::vector<PointIndex>{0});
}

TEST_CASE("combine") {
  const auto X = abc();
  const auto mu1 = make_measure(X, {{0, 0.0}, {2, -4.0}}, Normalize::No);
  const auto mu2 = make_measure(X, {{1, 0.0}, {2, -1.0}}, Normalize::No);
  CHECK(combine(kNegInf, mu1, 0.0, mu2) == mu2);
  CHECK(combine(0.0, mu1, kNegInf, mu2) == mu1);

  const auto ab = combine(-1.0, dirac(X, 0), 0.0, dirac(X, 1));
  CHECK(ab.weight(0) == MaxPlus{-1.0});
  CHECK(ab.weight(1) == MaxPlus{0.0});
  CHECK(ab.support_size() == 2);

  CHECK(combine(0.0, mu1, 0.0, mu1) == mu1);

  CHECK(kind_of([&] { combine(-1.0, mu1, -2.0, mu2); }) == ErrorKind::CoefficientConstraint);
  CHECK(kind_of([&] { combine(1.0, mu1, 0.0, mu2); }) == ErrorKind::CoefficientConstraint);
  CHECK(kind_of([&] { combine(kNegInf, mu1, kNegInf, mu2); }) == ErrorKind::CoefficientConstraint);
  const auto Y = gen::bare_space("Y", 3, "q");
  CHECK(kind_of([&] { combine(0.0, mu1, 0.0, dirac(Y, 0)); }) == ErrorKind::Input);
}

TEST_CASE("combine keeps the canonical form and obeys the support laws") {
  Rng rng(99);
  for (int t = 0; t < 500; ++t) {
    const auto X = gen::bare_space("X", rng.between(1, 10), "x");
    const auto mu1 = gen::random_measure(rng, X, 1, X.size());
    const auto mu2 = gen::random_measure(rng, X, 1, X.size());
    MaxPlus alpha = 0.0, beta = rng.uniform(-5.0, 0.0);
    if (rng.chance(0.5)) std::swap(alpha, beta);
    const auto combo = combine(alpha, mu1, beta, mu2);

    double top = -1e300;
    for (const Atom& a : combo.atoms()) {
      CHECK(a.weight <= 0.0);
      top = std::max(top, a.weight);
    }
    CHECK(top == 0.0);
    std::vector<PointIndex> joined;
    const auto s1 = support(mu1), s2 = support(mu2);
    std::set_union(s1.begin(), s1.end(), s2.begin(), s2.end(), std::back_inserter(joined));
    CHECK(support(combo) == joined);
    CHECK(card_class(combo, s1.size() + s2.size()));

    // The combination integrates as the max-plus mixture of integrals.
    const auto phi = gen::random_table(rng, X, -10.0, 10.0);
    const double mix = std::max(alpha.value() + integrate(mu1, phi), beta.value() + integrate(mu2, phi));
    CHECK(integrate(combo, phi) == doctest::Approx(mix).epsilon(1e-14));
  }
}

TEST_CASE("measure_equal") {
  const auto X = abc();
  const auto mu = make_measure(X, {{0, 0.0}, {1, -2.0}}, Normalize::No);
  CHECK(measure_equal(mu, mu));
  CHECK_FALSE(measure_equal(dirac(X, 0), mu));
  const auto near = make_measure(X, {{0, 0.0}, {1, -2.0 + 1e-12}}, Normalize::No);
  CHECK(measure_equal(mu, near, 1e-9));
  CHECK_FALSE(measure_equal(mu, near, 0.0));
}

TEST_CASE("card_class") {
  const auto X = abc();
  CHECK(card_class(dirac(X, 0), 1));
  CHECK_FALSE(card_class(make_measure(X, {{0, 0.0}, {1, -1.0}}, Normalize::No), 1));
  CHECK(card_class(make_measure(X, {{0, 0.0}, {1, -1.0}, {2, -1.0}}, Normalize::No), kUnbounded));
}

TEST_CASE("integrate satisfies the measure axioms and order preservation") {
  Rng rng(7);
  for (int t = 0; t < 200; ++t) {
    const auto X = gen::bare_space("X", rng.between(1, 10), "x");
    const auto mu = gen::random_measure(rng, X, 1, 8);
    for (int k = 0; k < 20; ++k) {
      const double lambda = rng.uniform(-10.0, 10.0);
      CHECK(integrate(mu, FunctionTable::constant(X, lambda)) == lambda);
      const auto phi = gen::random_table(rng, X, -10.0, 10.0);
      const auto psi = gen::random_table(rng, X, -10.0, 10.0);
      CHECK(std::abs(integrate(mu, phi.shifted(lambda)) - (integrate(mu, phi) + lambda)) <= 1e-12);
      CHECK(integrate(mu, pointwise_max(phi, psi)) ==
            std::max(integrate(mu, phi), integrate(mu, psi)));
      const auto upper = pointwise_max(phi, psi);
      CHECK(integrate(mu, phi) <= integrate(mu, upper));
    }
  }
}

TEST_CASE("check_axioms accepts Maslov integrals") {
  Rng rng(1);
  const auto X = gen::bare_space("X", 6, "x");
  for (int t = 0; t < 20; ++t) {
    const auto mu = gen::random_measure(rng, X, 1, 6);
    const auto report = check_axioms([&](const FunctionTable& phi) { return integrate(mu, phi); },
                                     X, 200, rng.next(), 1e-12);
    CHECK(report.passed());
    CHECK(report.outcome("norm").checks == 200);
  }
}

TEST_CASE("min-plus counterfeit breaks additivity") {
  // Brute force over 2-point tables with values in {0, 1}: find phi, psi with
  // min(max(phi, psi)) != max(min(phi), min(psi)), confirming a witness exists.
  bool witnessed = false;
  for (int bits = 0; bits < 16 && !witnessed; ++bits) {
    const double p0 = bits & 1, p1 = (bits >> 1) & 1, q0 = (bits >> 2) & 1, q1 = (bits >> 3) & 1;
    const double joined = std::min(std::max(p0, q0), std::max(p1, q1));
    const double separate = std::max(std::min(p0, p1), std::min(q0, q1));
    witnessed = joined != separate;
  }
  REQUIRE(witnessed);

  const auto X = abc();
  const auto mu = make_measure(X, {{0, 0.0}, {1, 0.0}, {2, 0.0}}, Normalize::No);
  auto min_plus = [&](const FunctionTable& phi) {
    double best = std::numeric_limits<double>::infinity();
    for (const Atom& a : mu.atoms()) best = std::min(best, a.weight + phi(a.point));
    return best;
  };
  const auto report = check_axioms(min_plus, X, 1000, 42, 1e-9);
  CHECK(report.outcome("norm").passed);
  CHECK(report.outcome("homogeneity").passed);
  CHECK_FALSE(report.outcome("additivity").passed);
  CHECK_FALSE(report.outcome("additivity").counterexample.empty());
}

TEST_CASE("summation counterfeit breaks the norm axiom") {
  const auto X = gen::bare_space("X", 2, "x");
  auto sum = [](const FunctionTable& phi) { return phi(0) + phi(1); };
  CHECK(sum(FunctionTable::constant(X, 1.0)) == 2.0);
  const auto report = check_axioms(sum, X, 1000, 42, 1e-9);
  CHECK_FALSE(report.outcome("norm").passed);
  CHECK(report.outcome("norm").counterexample.find("Phi(lambda_X)") != std::string::npos);
  CHECK_FALSE(report.passed());
}

TEST_CASE("check_axioms is deterministic in the seed") {
  const auto X = gen::bare_space("X", 2, "x");
  auto sum = [](const FunctionTable& phi) { return phi(0) + phi(1); };
  CHECK(check_axioms(sum, X, 10, 5, 1e-9).outcome("norm").counterexample ==
        check_axioms(sum, X, 10, 5, 1e-9).outcome("norm").counterexample);
}
