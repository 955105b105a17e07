#include "idem/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include "idem/error.hpp"
#include "idem/functor.hpp"
#include "idem/generators.hpp"
#include "idem/kappa.hpp"
#include "idem/random.hpp"
#include "idem/weaktop.hpp"

namespace idem::suites {

namespace {

class TrialLog {
 public:
  void input(std::string_view label, std::string_view value) {
    canonical_.append(label).append("=").append(value).append(";");
  }

  void fail(std::string check, std::string expected, std::string actual) {
    failures_.push_back({std::nullopt, 0, {}, std::move(check), std::move(expected),
                         std::move(actual)});
  }

  void count(const std::string& counter, std::uint64_t by = 1) { counters_[counter] += by; }

  std::string digest() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canonical_) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
  }

  std::vector<FailureRecord>& failures() { return failures_; }
  const std::map<std::string, std::uint64_t>& counters() const { return counters_; }

 private:
  std::string canonical_;
  std::vector<FailureRecord> failures_;
  std::map<std::string, std::uint64_t> counters_;
};

using TrialFn = std::function<void(Rng&, const SuiteOptions&, TrialLog&)>;
using FinishFn = std::function<void(SuiteReport&)>;

std::string str(double v) { return format_double(v); }

std::string indices_text(const std::vector<PointIndex>& v) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ']';
  return os.str();
}

std::string table_text(const FunctionTable& phi) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < phi.size(); ++i) os << (i ? "," : "") << str(phi(i));
  os << ']';
  return os.str();
}

std::string map_text(const PointMap& f) {
  return indices_text({f.assign().begin(), f.assign().end()});
}

// ---------------------------------------------------------------------------

void axioms_trial(Rng& rng, const SuiteOptions& opt, TrialLog& log) {
  const auto space = gen::bare_space("X", rng.between(8, 12), "x");
  const auto mu = gen::random_measure(rng, space, 1, 8);
  log.input("space_size", std::to_string(space.size()));
  log.input("mu", to_string(mu));

  for (int k = 0; k < 100; ++k) {
    const auto phi = gen::random_table(rng, space, -10.0, 10.0);
    const auto psi = gen::random_table(rng, space, -10.0, 10.0);
    const double lambda = rng.uniform(-10.0, 10.0);
    const double shift = rng.uniform(-5.0, 5.0);

    const double at_const = integrate(mu, FunctionTable::constant(space, lambda));
    if (at_const != lambda) log.fail("norm", str(lambda), str(at_const));

    const double base = integrate(mu, phi);
    const double shifted = integrate(mu, phi.shifted(shift));
    if (!(std::abs(shifted - (base + shift)) <= opt.tol))
      log.fail("homogeneity phi=" + table_text(phi) + " lambda=" + str(shift), str(base + shift),
               str(shifted));

    const double joined = integrate(mu, pointwise_max(phi, psi));
    const double separate = std::max(base, integrate(mu, psi));
    if (!(std::abs(joined - separate) <= opt.tol))
      log.fail("additivity phi=" + table_text(phi) + " psi=" + table_text(psi), str(separate),
               str(joined));

    std::vector<double> above(space.size());
    for (PointIndex x = 0; x < space.size(); ++x) above[x] = phi(x) + rng.uniform(0.0, 3.0);
    const double upper = integrate(mu, FunctionTable(space, std::move(above)));
    if (!(base <= upper)) log.fail("order preservation", "<= " + str(upper), str(base));
    log.count("function_tables");
  }
}

void functor_trial(Rng& rng, const SuiteOptions& opt, TrialLog& log) {
  const auto X = gen::bare_space("X", rng.between(1, 12), "x");
  const auto Y = gen::bare_space("Y", rng.between(1, 12), "y");
  const auto Z = gen::bare_space("Z", rng.between(1, 12), "z");
  const auto f = gen::random_map(rng, X, Y);
  const auto g = gen::random_map(rng, Y, Z);
  const auto mu = gen::random_measure(rng, X, 1, X.size());
  log.input("f", map_text(f));
  log.input("g", map_text(g));
  log.input("mu", to_string(mu));

  const auto id_image = pushforward(PointMap::identity(X), mu);
  if (id_image != mu) log.fail("identity", to_string(mu), to_string(id_image));

  const auto gf = compose(g, f);
  const auto direct = pushforward(gf, mu);
  const auto fmu = pushforward(f, mu);
  const auto stepwise = pushforward(g, fmu);
  if (direct != stepwise) log.fail("composition", to_string(stepwise), to_string(direct));

  if (!support_image_check(f, mu)) log.fail("support image f", "true", "false");
  if (!support_image_check(gf, mu)) log.fail("support image g.f", "true", "false");
  if (!support_image_check(g, fmu)) log.fail("support image g", "true", "false");

  for (int k = 0; k < 100; ++k) {
    const auto phi = gen::random_table(rng, Y, -10.0, 10.0);
    const double lhs = integrate(fmu, phi);
    const double rhs = integrate(mu, pull_back(phi, f));
    if (!(std::abs(lhs - rhs) <= opt.tol))
      log.fail("duality phi=" + table_text(phi), str(rhs), str(lhs));
  }
}

void convexity_trial(Rng& rng, const SuiteOptions&, TrialLog& log) {
  const auto X = gen::bare_space("X", rng.between(1, 12), "x");
  const auto Y = gen::bare_space("Y", rng.between(1, 12), "y");
  const auto f = gen::random_map(rng, X, Y);
  std::vector<PointIndex> image;
  const auto mask = image_mask(f);
  for (PointIndex y = 0; y < mask.size(); ++y)
    if (mask[y]) image.push_back(y);
  const auto nu = gen::random_measure(rng, Y, image, 1, image.size());
  const auto mu1 = sample_preimage(f, nu, rng.next());
  const auto mu2 = sample_preimage(f, nu, rng.next());

  MaxPlus alpha = 0.0, beta = 0.0;
  switch (rng.below(5)) {
    case 0: alpha = kNegInf; log.count("alpha_neg_inf"); break;
    case 1: beta = kNegInf; log.count("beta_neg_inf"); break;
    case 2: beta = rng.uniform(-5.0, 0.0); log.count("beta_finite_negative"); break;
    case 3: alpha = rng.uniform(-5.0, 0.0); log.count("alpha_finite_negative"); break;
    default: log.count("both_zero"); break;
  }
  log.input("f", map_text(f));
  log.input("nu", to_string(nu));
  log.input("mu1", to_string(mu1));
  log.input("mu2", to_string(mu2));
  log.input("alpha", alpha.to_string());
  log.input("beta", beta.to_string());

  for (const auto* mu : {&mu1, &mu2})
    if (!preimage_contains(f, nu, *mu, 0.0))
      log.fail("sampled preimage", to_string(nu), to_string(pushforward(f, *mu)));

  const auto combo = combine(alpha, mu1, beta, mu2);
  if (!preimage_contains(f, nu, combo, 0.0))
    log.fail("combination stays in the preimage", to_string(nu), to_string(pushforward(f, combo)));

  const auto s1 = support(mu1), s2 = support(mu2), sc = support(combo);
  std::vector<PointIndex> joined;
  std::set_union(s1.begin(), s1.end(), s2.begin(), s2.end(), std::back_inserter(joined));
  if (!std::includes(joined.begin(), joined.end(), sc.begin(), sc.end()))
    log.fail("support inclusion", "subset of " + indices_text(joined), indices_text(sc));
  if (alpha.is_finite() && beta.is_finite() && sc != joined)
    log.fail("support union", indices_text(joined), indices_text(sc));
  if (!card_class(combo, s1.size() + s2.size()))
    log.fail("support cardinality", "<= " + std::to_string(s1.size() + s2.size()),
             std::to_string(sc.size()));
}

void lemmas_trial(Rng& rng, const SuiteOptions& opt, TrialLog& log) {
  const auto X = gen::bare_space("X", rng.between(2, 12), "x");
  const auto Y = gen::bare_space("Y", rng.between(1, 8), "y");
  const auto f = gen::random_map(rng, X, Y);
  const auto phi = gen::random_table(rng, X, -10.0, 10.0);
  log.input("f", map_text(f));
  log.input("phi", table_text(phi));

  const auto low = fiber_inf(f, phi);
  const auto high = fiber_sup(f, phi);
  for (PointIndex x = 0; x < X.size(); ++x) {
    if (!(low(f(x)) <= phi(x))) log.fail("psi.f <= phi at " + std::to_string(x), "<= " + str(phi(x)), str(low(f(x))));
    if (!(phi(x) <= high(f(x)))) log.fail("phi <= phi*.f at " + std::to_string(x), ">= " + str(phi(x)), str(high(f(x))));
  }

  std::vector<PointIndex> image;
  for (PointIndex y = 0; y < Y.size(); ++y) {
    const auto fib = fiber(f, y);
    if (fib.empty()) {
      bool threw = false;
      try {
        (void)low(y);
      } catch (const Error& e) {
        threw = e.kind() == ErrorKind::UndefinedOffImage;
      }
      if (!threw) log.fail("fiber extreme off the image", "undefined", "a value");
      continue;
    }
    image.push_back(y);
    double mn = phi(fib.front()), mx = phi(fib.front());
    for (PointIndex x : fib) {
      mn = std::min(mn, phi(x));
      mx = std::max(mx, phi(x));
    }
    if (low(y) != mn) log.fail("fiber minimum at " + std::to_string(y), str(mn), str(low(y)));
    if (high(y) != mx) log.fail("fiber maximum at " + std::to_string(y), str(mx), str(high(y)));
  }

  const PointIndex y0 = image[rng.below(image.size())];
  const auto fib = fiber(f, y0);
  const auto nu = gen::random_measure(rng, X, fib, 1, fib.size());
  log.input("y0", std::to_string(y0));
  log.input("nu", to_string(nu));
  const auto report = lemma2_check(f, y0, nu, phi, opt.tol);
  if (!report.applicable) log.fail("fiber integral applicability", "applicable", report.detail);
  else if (!report.passed)
    log.fail("fiber integral bounds", "[" + str(report.lower) + ", " + str(report.upper) + "]",
             str(report.integral));
}

// Tests with Lipschitz constant at most 1 on [0, 1].
FunctionTable lipschitz_test(Rng& rng, const GroundSpace& line) {
  std::vector<double> v(line.size());
  if (rng.chance(0.5)) {
    const double slope = rng.uniform(-1.0, 1.0), kink = rng.uniform(0.0, 1.0),
                 offset = rng.uniform(-5.0, 5.0);
    for (PointIndex x = 0; x < v.size(); ++x)
      v[x] = slope * std::abs(line.point(x).coords[0] - kink) + offset;
  } else {
    const double freq = rng.uniform(1.0, 20.0), phase = rng.uniform(0.0, 6.283185307179586),
                 amp = rng.uniform(-1.0, 1.0);
    for (PointIndex x = 0; x < v.size(); ++x)
      v[x] = amp * std::sin(freq * line.point(x).coords[0] + phase) / freq;
  }
  return FunctionTable(line, std::move(v));
}

constexpr std::size_t kGridPoints = 101;
constexpr double kLipschitz = 1.0;

void density_trial(Rng& rng, const SuiteOptions&, TrialLog& log) {
  const double resolution = kLipschitz / (2.0 * (kGridPoints - 1));

  // Ambient model: the grid, a few off-grid points, and one grid midpoint.
  std::vector<Point> points;
  for (std::size_t i = 0; i < kGridPoints; ++i)
    points.push_back({"g" + std::to_string(i), {static_cast<double>(i) / (kGridPoints - 1)}});
  std::vector<PointIndex> off_grid;
  while (off_grid.size() < 20) {
    const double c = rng.uniform(0.0, 1.0);
    if (std::any_of(points.begin(), points.end(),
                    [&](const Point& p) { return p.coords[0] == c; }))
      continue;
    off_grid.push_back(points.size());
    points.push_back({"p" + std::to_string(off_grid.size() - 1), {c}});
  }
  const std::size_t cell = rng.below(kGridPoints - 1);
  const PointIndex midpoint = points.size();
  points.push_back({"m", {(static_cast<double>(cell) + 0.5) / (kGridPoints - 1)}});
  const GroundSpace X("X", std::move(points));

  std::vector<PointIndex> dense(kGridPoints);
  for (PointIndex i = 0; i < kGridPoints; ++i) dense[i] = i;

  const auto mu = gen::random_measure(rng, X, off_grid, 1, 8);
  std::vector<FunctionTable> tests;
  const std::size_t k = rng.between(1, 5);
  for (std::size_t i = 0; i < k; ++i) tests.push_back(lipschitz_test(rng, X));
  log.input("mu", to_string(mu, &X));
  for (const auto& t : tests) log.input("test", table_text(t));

  for (double eps : {0.1, 0.01}) {
    const std::string tag = "eps=" + str(eps);
    try {
      const auto nu = approximate_on_dense(X, mu, dense, tests, eps);
      const WeakNeighborhood nbhd(mu, tests, eps);
      if (!nbhd.contains(nu)) log.fail(tag + " contains", "true", "false");
      const double gap = nbhd.discrepancy(nu);
      if (!(gap <= resolution + 1e-12))
        log.fail(tag + " discrepancy within grid resolution", "<= " + str(resolution), str(gap));
      for (PointIndex y : support(nu))
        if (y >= kGridPoints) log.fail(tag + " support on dense set", "grid point", X.point(y).id);
      if (nu.support_size() > mu.support_size())
        log.fail(tag + " support size", "<= " + std::to_string(mu.support_size()),
                 std::to_string(nu.support_size()));
      log.count("approximations");
    } catch (const Error& e) {
      log.fail(tag + " approximation", "success", e.what());
    }
  }

  // Below the resolution a point halfway between grid points cannot be matched.
  const double fine = resolution / 5.0;
  const auto coarse_target = dirac(X, midpoint);
  std::vector<double> identity(X.size());
  for (PointIndex x = 0; x < X.size(); ++x) identity[x] = X.point(x).coords[0];
  const std::vector<FunctionTable> probe{FunctionTable(X, std::move(identity))};
  try {
    const auto nu = approximate_on_dense(X, coarse_target, dense, probe, fine);
    log.fail("coarseness below resolution", "dense set too coarse", to_string(nu, &X));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DenseTooCoarse) throw;
    log.count("coarseness_errors");
  }
}

constexpr double kLiftRadius = 0.2;

void openmap_trial(Rng& rng, const SuiteOptions&, TrialLog& log) {
  const std::size_t n = rng.between(2, 25);
  const double pitch = 1.0 / static_cast<double>(n - 1);
  const auto X = gen::unit_grid_2d("X", n);
  const auto Y = gen::unit_grid("Y", n, "y");
  const auto f = gen::first_coordinate(X, Y, n);

  const auto mu0 = gen::random_measure(rng, X, 1, 5);
  const auto nu0 = pushforward(f, mu0);
  const auto base_support = support(nu0);
  std::vector<RawAtom> raw;
  const std::size_t atoms = rng.between(1, 4);
  for (std::size_t j = 0; j < atoms; ++j) {
    const PointIndex anchor = base_support[rng.below(base_support.size())];
    std::vector<PointIndex> near;
    for (PointIndex y = 0; y < Y.size(); ++y)
      if (Y.distance(y, anchor) <= kLiftRadius) near.push_back(y);
    raw.push_back({near[rng.below(near.size())], rng.uniform(-10.0, 0.0)});
  }
  const auto target = make_measure(Y, std::move(raw), Normalize::Yes);
  log.input("n", std::to_string(n));
  log.input("mu0", to_string(mu0, &X));
  log.input("target", to_string(target, &Y));

  const auto lifted = lift_toward({f, X, mu0, target});
  const auto image = pushforward(f, lifted);
  if (image != target) log.fail("lift pushes forward to the target", to_string(target, &Y), to_string(image, &Y));
  const double moved = displacement(X, lifted, mu0);
  if (!(moved <= kLiftRadius + pitch + 1e-12))
    log.fail("lift displacement", "<= " + str(kLiftRadius + pitch), str(moved));

  const auto own = lift_toward({f, X, mu0, nu0});
  if (pushforward(f, own) != nu0) log.fail("lift of own image", to_string(nu0, &Y), to_string(pushforward(f, own), &Y));
  if (displacement(X, own, mu0) != 0.0)
    log.fail("lift of own image displacement", "0", str(displacement(X, own, mu0)));
  log.count("lifts", 2);
}

void kappa_trial(Rng& rng, const SuiteOptions& opt, TrialLog& log) {
  const auto space = gen::scattered_space(rng, "X", rng.between(2, 20), 2, 0.0, 10.0, 1e-3);
  const std::uint64_t inner = rng.next();
  log.input("space_size", std::to_string(space.size()));
  log.input("inner_seed", std::to_string(inner));

  const auto dist = check_kappa_axioms(distance_candidate(space), space, 50, inner, opt.tol);
  for (const auto& o : dist.outcomes)
    if (o.status != CheckStatus::Pass)
      log.fail("distance " + o.axiom, "pass", std::string(to_string(o.status)) + ": " + o.counterexample);

  const auto flat = check_kappa_axioms(constant_candidate(space), space, 50, inner, opt.tol);
  const auto& flat_k1 = flat.outcome("K1");
  if (flat_k1.status != CheckStatus::Fail || flat_k1.counterexample.empty())
    log.fail("constant K1 rejected", "fail with counterexample", to_string(flat_k1.status));
  else
    log.count("constant_k1_rejected");

  const auto squared = check_kappa_axioms(squared_distance_candidate(space), space, 50, inner, opt.tol);
  for (const char* axiom : {"K1", "K2", "K4"})
    if (squared.outcome(axiom).status != CheckStatus::Pass)
      log.fail(std::string("squared-distance ") + axiom, "pass", squared.outcome(axiom).counterexample);
  const auto& sq_k3 = squared.outcome("K3");
  if (sq_k3.status == CheckStatus::Fail && !sq_k3.counterexample.empty())
    log.count("squared_k3_rejected");
}

void require_counter(SuiteReport& r, const std::string& counter, const std::string& what) {
  if (r.trials == 0 || r.counters[counter] > 0) return;
  r.failures.push_back({std::nullopt, r.seed, {}, what, "at least one", "none"});
}

struct SuiteDef {
  std::string name;
  TrialFn trial;
  FinishFn finish;
};

const std::vector<SuiteDef>& registry() {
  static const std::vector<SuiteDef> defs = {
      {"axioms", axioms_trial, nullptr},
      {"functor", functor_trial, nullptr},
      {"convexity", convexity_trial,
       [](SuiteReport& r) {
         if (r.trials >= 50) require_counter(r, "alpha_neg_inf", "degenerate alpha = -inf exercised");
       }},
      {"density", density_trial,
       [](SuiteReport& r) { require_counter(r, "coarseness_errors", "coarseness error below resolution"); }},
      {"openmap", openmap_trial, nullptr},
      {"lemmas", lemmas_trial, nullptr},
      {"kappa", kappa_trial,
       [](SuiteReport& r) {
         require_counter(r, "squared_k3_rejected", "squared distance rejected by the Lipschitz check");
       }},
  };
  return defs;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& d : registry()) out.push_back(d.name);
    return out;
  }();
  return names;
}

SuiteReport run_suite(std::string_view name, const SuiteOptions& options) {
  const auto& defs = registry();
  auto it = std::find_if(defs.begin(), defs.end(), [&](const SuiteDef& d) { return d.name == name; });
  if (it == defs.end()) fail(ErrorKind::Input, "unknown suite '" + std::string(name) + "'");

  SuiteReport report;
  report.suite = it->name;
  report.seed = options.seed;
  report.tol = options.tol;
  report.trials = options.replay_seed ? 1 : options.trials;

  const auto start = std::chrono::steady_clock::now();
  for (std::size_t t = 0; t < report.trials; ++t) {
    const std::uint64_t s = options.replay_seed ? *options.replay_seed : trial_seed(options.seed, t);
    Rng rng(s);
    TrialLog log;
    try {
      it->trial(rng, options, log);
    } catch (const std::exception& e) {
      log.fail("unexpected exception", "none", e.what());
    }
    const std::string digest = log.digest();
    for (auto& rec : log.failures()) {
      rec.trial = t;
      rec.seed = s;
      rec.inputs_digest = digest;
      report.failures.push_back(std::move(rec));
    }
    for (const auto& [k, v] : log.counters()) report.counters[k] += v;
  }
  if (it->finish && !options.replay_seed) it->finish(report);
  report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

io::Json to_json(const SuiteReport& report, bool include_timing) {
  io::Json failures = io::Json::array();
  for (const auto& f : report.failures) {
    io::Json rec;
    rec["trial"] = f.trial ? io::Json(*f.trial) : io::Json(nullptr);
    rec["seed"] = f.seed;
    rec["inputs_digest"] = f.inputs_digest;
    rec["check"] = f.check;
    rec["expected"] = f.expected;
    rec["actual"] = f.actual;
    failures.push_back(std::move(rec));
  }
  io::Json counters = io::Json::object();
  for (const auto& [k, v] : report.counters) counters[k] = v;

  io::Json j;
  j["suite"] = report.suite;
  j["trials"] = report.trials;
  j["seed"] = report.seed;
  j["tol"] = report.tol;
  j["pass"] = report.pass();
  j["failures"] = std::move(failures);
  j["counters"] = std::move(counters);
  if (include_timing) j["wall_time_ms"] = report.wall_ms;
  return j;
}

}  // namespace idem::suites
