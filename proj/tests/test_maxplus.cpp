#include <doctest.h>

#include <vector>

#include "idem/maxplus.hpp"
#include "idem/random.hpp"

using idem::kNegInf;
using idem::MaxPlus;
using idem::odot;
using idem::oplus;

TEST_CASE("oplus examples") {
  CHECK(oplus(3.0, 5.0) == MaxPlus{5.0});
  CHECK(oplus(kNegInf, -2.0) == MaxPlus{-2.0});
  CHECK(oplus(4.0, 4.0) == MaxPlus{4.0});
  CHECK(oplus(kNegInf, kNegInf) == kNegInf);
}

TEST_CASE("odot examples") {
  CHECK(odot(3.0, 5.0) == MaxPlus{8.0});
  CHECK(odot(kNegInf, 7.0) == kNegInf);
  CHECK(odot(7.0, kNegInf) == kNegInf);
  CHECK(odot(0.0, -2.5) == MaxPlus{-2.5});
}

TEST_CASE("bottom is strictly below every finite value") {
  CHECK(kNegInf < MaxPlus{-1e308});
  CHECK_FALSE(MaxPlus{-1e308} < kNegInf);
  CHECK(kNegInf == MaxPlus::zero());
  CHECK(MaxPlus::one() == MaxPlus{0.0});
  CHECK(kNegInf.to_string() == "-inf");
  CHECK(MaxPlus{-2.5}.to_string() == "-2.5");
}

TEST_CASE("semiring laws hold exactly on random triples") {
  idem::Rng rng(2024);
  auto draw = [&]() -> MaxPlus {
    if (rng.chance(0.15)) return kNegInf;
    return rng.uniform(-50.0, 50.0);
  };
  const std::vector<MaxPlus> units{MaxPlus::zero(), MaxPlus::one()};
  for (int i = 0; i < 5000; ++i) {
    const MaxPlus a = draw(), b = draw(), c = draw();
    CHECK(oplus(a, oplus(b, c)) == oplus(oplus(a, b), c));
    CHECK(oplus(a, b) == oplus(b, a));
    CHECK(oplus(a, a) == a);
    CHECK(odot(a, b) == odot(b, a));
    CHECK(odot(a, oplus(b, c)) == oplus(odot(a, b), odot(a, c)));
    CHECK(oplus(kNegInf, a) == a);
    CHECK(odot(MaxPlus::one(), a) == a);
    CHECK(odot(kNegInf, a) == kNegInf);
    // total order
    CHECK(((a < b) + (b < a) + (a == b)) == 1);
  }
}

TEST_CASE("format_double is shortest round trip") {
  CHECK(idem::format_double(4.0) == "4");
  CHECK(idem::format_double(0.05) == "0.05");
  CHECK(idem::format_double(-2.0) == "-2");
}
