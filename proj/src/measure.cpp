#include "idem/measure.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "idem/error.hpp"
#include "idem/random.hpp"

namespace idem {

IdempotentMeasure IdempotentMeasure::build(std::string space_id, std::size_t space_size,
                                           std::vector<RawAtom> raw, Normalize normalize) {
  if (raw.empty()) fail(ErrorKind::NoMass, "measure on '" + space_id + "' has no atoms");

  std::vector<MaxPlus> merged(space_size, kNegInf);
  for (const RawAtom& a : raw) {
    if (a.point >= space_size)
      fail(ErrorKind::Input, "atom point index " + std::to_string(a.point) + " not in '" +
                                 space_id + "'");
    if (a.weight.is_finite() && !std::isfinite(a.weight.value()))
      fail(ErrorKind::Input, "atom weights must be finite or -inf");
    merged[a.point] = oplus(merged[a.point], a.weight);
  }

  MaxPlus top = kNegInf;
  for (MaxPlus w : merged) top = oplus(top, w);
  if (top.is_neg_inf())
    fail(ErrorKind::NoMass, "measure on '" + space_id + "' has only -inf weights");

  double shift = 0.0;
  if (top.value() != 0.0) {
    if (normalize == Normalize::No)
      fail(ErrorKind::NormAxiom, "maximal weight is " + top.to_string() + ", not 0");
    shift = top.value();
  }

  IdempotentMeasure mu;
  mu.space_id_ = std::move(space_id);
  mu.space_size_ = space_size;
  for (PointIndex x = 0; x < space_size; ++x)
    if (merged[x].is_finite()) mu.atoms_.push_back({x, merged[x].value() - shift});
  return mu;
}

MaxPlus IdempotentMeasure::weight(PointIndex x) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), x,
                             [](const Atom& a, PointIndex p) { return a.point < p; });
  if (it == atoms_.end() || it->point != x) return kNegInf;
  return it->weight;
}

IdempotentMeasure make_measure(const GroundSpace& space, std::vector<RawAtom> raw,
                               Normalize normalize) {
  return IdempotentMeasure::build(space.id(), space.size(), std::move(raw), normalize);
}

IdempotentMeasure dirac(const GroundSpace& space, PointIndex x) {
  if (x >= space.size())
    fail(ErrorKind::Input, "point index " + std::to_string(x) + " not in '" + space.id() + "'");
  return make_measure(space, {{x, 0.0}}, Normalize::No);
}

double integrate(const IdempotentMeasure& mu, const FunctionTable& phi) {
  if (mu.space_id() != phi.space_id() || mu.space_size() != phi.size())
    fail(ErrorKind::Input, "measure on '" + mu.space_id() + "' integrated against function on '" +
                               phi.space_id() + "'");
  MaxPlus acc = kNegInf;
  for (const Atom& a : mu.atoms()) acc = oplus(acc, odot(a.weight, phi(a.point)));
  return acc.value();
}

std::vector<PointIndex> support(const IdempotentMeasure& mu) {
  std::vector<PointIndex> out;
  out.reserve(mu.support_size());
  for (const Atom& a : mu.atoms()) out.push_back(a.point);
  return out;
}

IdempotentMeasure combine(MaxPlus alpha, const IdempotentMeasure& mu1, MaxPlus beta,
                          const IdempotentMeasure& mu2) {
  if (oplus(alpha, beta) != MaxPlus::one())
    fail(ErrorKind::CoefficientConstraint,
         "alpha (+) beta = " + oplus(alpha, beta).to_string() + ", expected 0");
  if (mu1.space_id() != mu2.space_id() || mu1.space_size() != mu2.space_size())
    fail(ErrorKind::Input, "cannot combine measures on '" + mu1.space_id() + "' and '" +
                               mu2.space_id() + "'");

  if (alpha.is_neg_inf()) return mu2;
  if (beta.is_neg_inf()) return mu1;

  std::vector<RawAtom> raw;
  raw.reserve(mu1.support_size() + mu2.support_size());
  for (const Atom& a : mu1.atoms()) raw.push_back({a.point, odot(alpha, a.weight)});
  for (const Atom& a : mu2.atoms()) raw.push_back({a.point, odot(beta, a.weight)});
  return IdempotentMeasure::build(mu1.space_id(), mu1.space_size(), std::move(raw), Normalize::No);
}

bool measure_equal(const IdempotentMeasure& a, const IdempotentMeasure& b, double tol) {
  if (a.space_id() != b.space_id() || a.support_size() != b.support_size()) return false;
  for (std::size_t i = 0; i < a.atoms().size(); ++i) {
    const Atom& x = a.atoms()[i];
    const Atom& y = b.atoms()[i];
    if (x.point != y.point || std::abs(x.weight - y.weight) > tol) return false;
  }
  return true;
}

bool card_class(const IdempotentMeasure& mu, SupportBound bound) {
  return !bound || mu.support_size() <= *bound;
}

bool AxiomReport::passed() const {
  return std::all_of(outcomes.begin(), outcomes.end(),
                     [](const AxiomOutcome& o) { return o.passed; });
}

const AxiomOutcome& AxiomReport::outcome(std::string_view axiom) const {
  for (const auto& o : outcomes)
    if (o.axiom == axiom) return o;
  fail(ErrorKind::Input, "no axiom named '" + std::string(axiom) + "'");
}

namespace {

FunctionTable random_table(const GroundSpace& space, Rng& rng) {
  std::vector<double> v(space.size());
  for (double& x : v) x = rng.uniform(-10.0, 10.0);
  return FunctionTable(space, std::move(v));
}

std::string table_text(const FunctionTable& phi) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < phi.size(); ++i) os << (i ? "," : "") << format_double(phi(i));
  os << ']';
  return os.str();
}

void record(AxiomOutcome& o, bool ok, std::size_t trial, std::uint64_t seed,
            const std::function<std::string()>& describe) {
  ++o.checks;
  if (ok || !o.passed) return;
  o.passed = false;
  o.counterexample = "trial " + std::to_string(trial) + " (seed " + std::to_string(seed) +
                     "): " + describe();
}

}  // namespace

AxiomReport check_axioms(const Functional& functional, const GroundSpace& space,
                         std::size_t trials, std::uint64_t seed, double tol) {
  AxiomReport report;
  for (const char* name : {"norm", "homogeneity", "additivity"}) {
    AxiomOutcome o;
    o.axiom = name;
    report.outcomes.push_back(std::move(o));
  }
  auto& norm = report.outcomes[0];
  auto& homogeneity = report.outcomes[1];
  auto& additivity = report.outcomes[2];

  for (std::size_t t = 0; t < trials; ++t) {
    const std::uint64_t s = trial_seed(seed, t);
    Rng rng(s);
    const FunctionTable phi = random_table(space, rng);
    const FunctionTable psi = random_table(space, rng);
    const double lambda = rng.uniform(-5.0, 5.0);

    const double at_const = functional(FunctionTable::constant(space, lambda));
    record(norm, std::abs(at_const - lambda) <= tol, t, s, [&] {
      return "lambda=" + format_double(lambda) + " Phi(lambda_X)=" + format_double(at_const);
    });

    const double base = functional(phi);
    const double shifted = functional(phi.shifted(lambda));
    record(homogeneity, std::abs(shifted - (base + lambda)) <= tol, t, s, [&] {
      return "phi=" + table_text(phi) + " lambda=" + format_double(lambda) +
             " Phi(phi+lambda)=" + format_double(shifted) +
             " Phi(phi)+lambda=" + format_double(base + lambda);
    });

    const double joined = functional(pointwise_max(phi, psi));
    const double separate = std::max(base, functional(psi));
    record(additivity, std::abs(joined - separate) <= tol, t, s, [&] {
      return "phi=" + table_text(phi) + " psi=" + table_text(psi) +
             " Phi(max(phi,psi))=" + format_double(joined) +
             " max(Phi(phi),Phi(psi))=" + format_double(separate);
    });
  }
  return report;
}

std::string to_string(const IdempotentMeasure& mu, const GroundSpace* space) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const Atom& a : mu.atoms()) {
    if (!first) os << ", ";
    first = false;
    if (space != nullptr)
      os << space->point(a.point).id;
    else
      os << '#' << a.point;
    os << ':' << format_double(a.weight);
  }
  os << '}';
  return os.str();
}

}  // namespace idem
