// Command-line front end for the idempotent measure library.
//
// Exit codes: 0 success / all checks pass, 1 a check came out false or a
// suite recorded failures (including impossible lifts and too-coarse dense
// sets), 2 malformed input.

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "idem/error.hpp"
#include "idem/functor.hpp"
#include "idem/json_io.hpp"
#include "idem/kappa.hpp"
#include "idem/measure.hpp"
#include "idem/suites.hpp"
#include "idem/weaktop.hpp"

namespace {

using idem::io::Json;

constexpr int kExitPass = 0;
constexpr int kExitFalse = 1;
constexpr int kExitInput = 2;

int exit_code_for(idem::ErrorKind kind) {
  switch (kind) {
    case idem::ErrorKind::LiftImpossible:
    case idem::ErrorKind::DenseTooCoarse:
      return kExitFalse;
    default:
      return kExitInput;
  }
}

double default_tolerance() {
  if (const char* env = std::getenv("MAXPLUS_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && *end == '\0' && v >= 0.0) return v;
    idem::fail(idem::ErrorKind::Input, std::string("MAXPLUS_TOL is not a tolerance: ") + env);
  }
  return idem::kDefaultTolerance;
}

// Spaces given with --space, by id. Documents that reference a space not
// given explicitly fall back to a coordinate-free space inferred from them.
class Spaces {
 public:
  explicit Spaces(const std::vector<std::string>& files) {
    for (const auto& path : files) {
      auto space = idem::io::space_from_json(idem::io::load_file(path));
      const std::string id = space.id();
      if (!by_id_.emplace(id, std::move(space)).second)
        idem::fail(idem::ErrorKind::Input, "space '" + id + "' given twice");
    }
  }

  template <typename Infer>
  const idem::GroundSpace& get(const std::string& id, Infer infer) {
    auto it = by_id_.find(id);
    if (it == by_id_.end()) it = by_id_.emplace(id, infer()).first;
    return it->second;
  }

  const idem::GroundSpace& require(const std::string& id) {
    auto it = by_id_.find(id);
    if (it == by_id_.end())
      idem::fail(idem::ErrorKind::Input, "space '" + id + "' must be given with --space");
    return it->second;
  }

 private:
  std::map<std::string, idem::GroundSpace> by_id_;
};

std::string map_field(const Json& map, const char* key) {
  if (!map.is_object() || !map.contains(key) || !map[key].is_string())
    idem::fail(idem::ErrorKind::Input, std::string("map document is missing \"") + key + "\"");
  return map[key].get<std::string>();
}

struct Options {
  std::vector<std::string> spaces;
  bool normalize = false;
  std::optional<double> tol;

  double tolerance() const { return tol ? *tol : default_tolerance(); }
  idem::Normalize normalization() const {
    return normalize ? idem::Normalize::Yes : idem::Normalize::No;
  }
};

void print(const Json& j) { std::cout << j.dump(2) << '\n'; }

int run_integrate(const Options& o, const std::string& measure_path, const std::string& function_path) {
  Spaces spaces(o.spaces);
  const Json m = idem::io::load_file(measure_path);
  const Json phi_doc = idem::io::load_file(function_path);
  const auto& space = spaces.get(idem::io::space_ref(phi_doc),
                                 [&] { return idem::io::space_from_function_keys(phi_doc); });
  const auto phi = idem::io::function_from_json(phi_doc, space);
  const auto mu = idem::io::measure_from_json(m, space, o.normalization());
  std::cout << idem::format_double(idem::integrate(mu, phi)) << '\n';
  return kExitPass;
}

struct MapSpaces {
  const idem::GroundSpace& from;
  const idem::GroundSpace& to;
};

MapSpaces resolve_map(Spaces& spaces, const Json& map) {
  const auto& from = spaces.get(map_field(map, "from"),
                                [&] { return idem::io::space_from_map_source(map); });
  const auto& to = spaces.get(map_field(map, "to"),
                              [&] { return idem::io::space_from_map_target(map); });
  return {from, to};
}

int run_pushforward(const Options& o, const std::string& map_path, const std::string& measure_path) {
  Spaces spaces(o.spaces);
  const Json map = idem::io::load_file(map_path);
  const auto [from, to] = resolve_map(spaces, map);
  const auto f = idem::io::map_from_json(map, from, to);
  const auto mu = idem::io::measure_from_json(idem::io::load_file(measure_path), from, o.normalization());
  print(idem::io::to_json(idem::pushforward(f, mu), to));
  return kExitPass;
}

int run_combine(const Options& o, const std::string& alpha_text, const std::string& beta_text,
                const std::string& m1_path, const std::string& m2_path) {
  auto coefficient = [](const std::string& s) -> idem::MaxPlus {
    if (s == "-inf") return idem::kNegInf;
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    idem::fail(idem::ErrorKind::Input, "coefficient '" + s + "' is neither a number nor -inf");
  };
  const auto alpha = coefficient(alpha_text);
  const auto beta = coefficient(beta_text);
  Spaces spaces(o.spaces);
  const Json m1 = idem::io::load_file(m1_path);
  const Json m2 = idem::io::load_file(m2_path);
  const auto& space = spaces.get(idem::io::space_ref(m1),
                                 [&] { return idem::io::space_from_measure_atoms({&m1, &m2}); });
  const auto mu1 = idem::io::measure_from_json(m1, space, o.normalization());
  const auto mu2 = idem::io::measure_from_json(m2, space, o.normalization());
  print(idem::io::to_json(idem::combine(alpha, mu1, beta, mu2), space));
  return kExitPass;
}

int run_approx(const Options& o, const std::string& measure_path, const std::string& dense_path,
               const std::string& tests_path, double eps) {
  Spaces spaces(o.spaces);
  const Json m = idem::io::load_file(measure_path);
  const auto& space = spaces.require(idem::io::space_ref(m));
  const auto mu = idem::io::measure_from_json(m, space, o.normalization());
  const auto dense = idem::io::dense_from_json(idem::io::load_file(dense_path), space);
  const auto tests = idem::io::tests_from_json(idem::io::load_file(tests_path), space);
  print(idem::io::to_json(idem::approximate_on_dense(space, mu, dense, tests, eps), space));
  return kExitPass;
}

int run_lift(const Options& o, const std::string& map_path, const std::string& base_path,
             const std::string& target_path) {
  Spaces spaces(o.spaces);
  const Json map = idem::io::load_file(map_path);
  const auto [from, to] = resolve_map(spaces, map);
  const auto f = idem::io::map_from_json(map, from, to);
  const auto base = idem::io::measure_from_json(idem::io::load_file(base_path), from, o.normalization());
  const auto target = idem::io::measure_from_json(idem::io::load_file(target_path), to, o.normalization());
  print(idem::io::to_json(idem::lift_toward({f, from, base, target}), from));
  return kExitPass;
}

int run_preimage_check(const Options& o, const std::string& map_path, const std::string& nu_path,
                       const std::string& mu_path) {
  Spaces spaces(o.spaces);
  const Json map = idem::io::load_file(map_path);
  const auto [from, to] = resolve_map(spaces, map);
  const auto f = idem::io::map_from_json(map, from, to);
  const auto nu = idem::io::measure_from_json(idem::io::load_file(nu_path), to, o.normalization());
  const auto mu = idem::io::measure_from_json(idem::io::load_file(mu_path), from, o.normalization());
  const bool inside = idem::preimage_contains(f, nu, mu, o.tolerance());
  std::cout << (inside ? "true" : "false") << '\n';
  return inside ? kExitPass : kExitFalse;
}

int run_kappa_on_space(const Options& o, const std::string& candidate_name, std::size_t trials,
                       std::uint64_t seed) {
  if (o.spaces.size() != 1)
    idem::fail(idem::ErrorKind::Input, "check kappa with --space takes exactly one space");
  const auto space = idem::io::space_from_json(idem::io::load_file(o.spaces.front()));
  const auto report = idem::check_kappa_axioms(idem::builtin_candidate(candidate_name, space),
                                               space, trials, seed, o.tolerance());
  Json axioms = Json::array();
  for (const auto& a : report.outcomes)
    axioms.push_back({{"axiom", a.axiom},
                      {"status", idem::to_string(a.status)},
                      {"checks", a.checks},
                      {"counterexample", a.counterexample}});
  print({{"candidate", report.candidate},
         {"space", space.id()},
         {"trials", trials},
         {"seed", seed},
         {"pass", report.passed()},
         {"axioms", std::move(axioms)},
         {"note", report.note}});
  return report.passed() ? kExitPass : kExitFalse;
}

int run_check(const Options& o, const std::string& suite, std::size_t trials, std::uint64_t seed,
              std::optional<std::uint64_t> replay, bool timing, const std::string& candidate) {
  if (suite == "kappa" && !o.spaces.empty()) return run_kappa_on_space(o, candidate, trials, seed);
  idem::suites::SuiteOptions opts;
  opts.trials = trials;
  opts.seed = seed;
  opts.tol = o.tolerance();
  opts.replay_seed = replay;
  const auto report = idem::suites::run_suite(suite, opts);
  print(idem::suites::to_json(report, timing));
  std::cerr << "suite " << report.suite << ": " << report.trials << " trials, "
            << report.failures.size() << " failures, " << (report.pass() ? "pass" : "FAIL")
            << " (" << idem::format_double(report.wall_ms) << " ms)\n";
  return report.pass() ? kExitPass : kExitFalse;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Idempotent (max-plus) probability measures on finite models"};
  app.require_subcommand(1);

  Options o;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--space", o.spaces, "Space document (repeatable)")->check(CLI::ExistingFile);
    sub->add_flag("--normalize", o.normalize, "Shift input measures so the maximal weight is 0");
    sub->add_option("--tol", o.tol, "Comparison tolerance (default: MAXPLUS_TOL or 1e-9)")
        ->check(CLI::NonNegativeNumber);
  };

  std::string measure, function, map, m1, m2, dense, tests, base, target, nu, mu, alpha, beta;
  double eps = 0.0;

  auto* integrate = app.add_subcommand("integrate", "Maslov integral of a function");
  integrate->add_option("--measure", measure)->required();
  integrate->add_option("--function", function)->required();
  common(integrate);

  auto* push = app.add_subcommand("pushforward", "Image measure along a map");
  push->add_option("--map", map)->required();
  push->add_option("--measure", measure)->required();
  common(push);

  auto* comb = app.add_subcommand("combine", "Max-plus convex combination alpha.m1 (+) beta.m2");
  comb->add_option("--alpha", alpha, "Number or -inf")->required();
  comb->add_option("--beta", beta, "Number or -inf")->required();
  comb->add_option("--m1", m1)->required();
  comb->add_option("--m2", m2)->required();
  common(comb);

  auto* approx = app.add_subcommand("approx", "Approximate a measure on a dense subset");
  approx->add_option("--measure", measure)->required();
  approx->add_option("--dense", dense)->required();
  approx->add_option("--tests", tests)->required();
  approx->add_option("--eps", eps)->required();
  common(approx);

  auto* lift = app.add_subcommand("lift", "Lift a target measure along a map toward a base measure");
  lift->add_option("--map", map)->required();
  lift->add_option("--base", base)->required();
  lift->add_option("--target", target)->required();
  common(lift);

  auto* pre = app.add_subcommand("preimage-check", "Does mu push forward to nu?");
  pre->add_option("--map", map)->required();
  pre->add_option("--nu", nu)->required();
  pre->add_option("--mu", mu)->required();
  common(pre);

  std::string suite;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> replay;
  bool timing = false;
  std::string candidate = "distance";
  auto* check = app.add_subcommand("check", "Run a seeded property suite");
  check->add_option("suite", suite, "Suite name")
      ->required()
      ->check(CLI::IsMember(idem::suites::suite_names()));
  check->add_option("--trials", trials)->check(CLI::PositiveNumber);
  check->add_option("--seed", seed);
  check->add_option("--trial-seed", replay, "Replay one trial from a failure record's seed");
  check->add_flag("--timing", timing, "Include wall time in the JSON report");
  check->add_option("--candidate", candidate,
                    "kappa with --space: distance, squared-distance or constant");
  common(check);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*integrate) return run_integrate(o, measure, function);
    if (*push) return run_pushforward(o, map, measure);
    if (*comb) return run_combine(o, alpha, beta, m1, m2);
    if (*approx) return run_approx(o, measure, dense, tests, eps);
    if (*lift) return run_lift(o, map, base, target);
    if (*pre) return run_preimage_check(o, map, nu, mu);
    if (*check) return run_check(o, suite, trials, seed, replay, timing, candidate);
  } catch (const idem::Error& e) {
    std::cerr << "error: " << idem::to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
