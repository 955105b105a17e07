#include <doctest.h>

#include "idem/error.hpp"
#include "idem/suites.hpp"

using namespace idem;

TEST_CASE("every suite passes a short run") {
  for (const auto& name : suites::suite_names()) {
    CAPTURE(name);
    suites::SuiteOptions opts;
    opts.trials = 60;
    opts.seed = 3;
    const auto report = suites::run_suite(name, opts);
    CHECK(report.pass());
    CHECK(report.trials == 60);
  }
}

TEST_CASE("reports are deterministic and omit timing by default") {
  suites::SuiteOptions opts;
  opts.trials = 20;
  opts.seed = 42;
  const auto a = suites::to_json(suites::run_suite("convexity", opts)).dump();
  const auto b = suites::to_json(suites::run_suite("convexity", opts)).dump();
  CHECK(a == b);
  CHECK(a.find("wall_time") == std::string::npos);
  CHECK(suites::to_json(suites::run_suite("convexity", opts), true).contains("wall_time_ms"));
}

TEST_CASE("a failing tolerance produces replayable failure records") {
  suites::SuiteOptions opts;
  opts.trials = 5;
  opts.seed = 9;
  opts.tol = -1.0;  // nothing is within a negative tolerance
  const auto report = suites::run_suite("axioms", opts);
  REQUIRE_FALSE(report.pass());
  const auto& first = report.failures.front();
  REQUIRE(first.trial.has_value());
  CHECK(first.inputs_digest.size() == 16);

  suites::SuiteOptions replay = opts;
  replay.replay_seed = first.seed;
  const auto again = suites::run_suite("axioms", replay);
  CHECK(again.trials == 1);
  REQUIRE_FALSE(again.failures.empty());
  CHECK(again.failures.front().inputs_digest == first.inputs_digest);
  CHECK(again.failures.front().check == first.check);
}

TEST_CASE("unknown suite") {
  try {
    (void)suites::run_suite("nope", {});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Input);
  }
}
