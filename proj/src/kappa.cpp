#include "idem/kappa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "idem/error.hpp"
#include "idem/maxplus.hpp"
#include "idem/random.hpp"

namespace idem {

double distance_to_set(const GroundSpace& space, PointIndex x, std::span<const PointIndex> set) {
  if (set.empty()) fail(ErrorKind::Input, "distance to an empty set");
  double best = std::numeric_limits<double>::infinity();
  for (PointIndex c : set) best = std::min(best, space.distance(x, c));
  return best;
}

KappaCandidate distance_candidate(const GroundSpace& space) {
  return {"distance", space.id(),
          [space](PointIndex x, std::span<const PointIndex> c) {
            return distance_to_set(space, x, c);
          },
          true};
}

KappaCandidate squared_distance_candidate(const GroundSpace& space) {
  return {"squared-distance", space.id(),
          [space](PointIndex x, std::span<const PointIndex> c) {
            const double d = distance_to_set(space, x, c);
            return d * d;
          },
          true};
}

KappaCandidate constant_candidate(const GroundSpace& space, double value) {
  return {"constant", space.id(),
          [value](PointIndex, std::span<const PointIndex>) { return value; }, false};
}

KappaCandidate builtin_candidate(const std::string& name, const GroundSpace& space) {
  if (name == "distance") return distance_candidate(space);
  if (name == "squared-distance") return squared_distance_candidate(space);
  if (name == "constant") return constant_candidate(space);
  fail(ErrorKind::Input, "unknown kappa candidate '" + name + "'");
}

const char* to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::NotEvaluated: return "not evaluated";
  }
  return "?";
}

bool KappaReport::passed() const {
  return std::none_of(outcomes.begin(), outcomes.end(),
                      [](const KappaAxiomOutcome& o) { return o.status == CheckStatus::Fail; });
}

const KappaAxiomOutcome& KappaReport::outcome(std::string_view axiom) const {
  for (const auto& o : outcomes)
    if (o.axiom == axiom) return o;
  fail(ErrorKind::Input, "no axiom named '" + std::string(axiom) + "'");
}

namespace {

std::vector<PointIndex> random_subset(Rng& rng, std::size_t n) {
  std::vector<PointIndex> out;
  while (out.empty())
    for (PointIndex i = 0; i < n; ++i)
      if (rng.chance(0.3)) out.push_back(i);
  return out;
}

// Random nonempty subset of `set`.
std::vector<PointIndex> random_sub(Rng& rng, const std::vector<PointIndex>& set) {
  std::vector<PointIndex> out;
  while (out.empty())
    for (PointIndex c : set)
      if (rng.chance(0.5)) out.push_back(c);
  return out;
}

std::string set_text(const GroundSpace& space, std::span<const PointIndex> set) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < set.size(); ++i) os << (i ? "," : "") << space.point(set[i]).id;
  os << '}';
  return os.str();
}

bool contains(const std::vector<PointIndex>& set, PointIndex x) {
  return std::binary_search(set.begin(), set.end(), x);
}

class Recorder {
 public:
  explicit Recorder(KappaAxiomOutcome& o) : o_(o) {}
  template <typename Describe>
  void operator()(bool ok, Describe&& describe) {
    ++o_.checks;
    if (ok || o_.status == CheckStatus::Fail) return;
    o_.status = CheckStatus::Fail;
    o_.counterexample = describe();
  }

 private:
  KappaAxiomOutcome& o_;
};

}  // namespace

KappaReport check_kappa_axioms(const KappaCandidate& candidate, const GroundSpace& space,
                               std::size_t trials, std::uint64_t seed, double tol) {
  if (candidate.space_id != space.id())
    fail(ErrorKind::Input, "candidate is defined on '" + candidate.space_id + "', not '" +
                               space.id() + "'");
  KappaReport report;
  report.candidate = candidate.name;
  for (const char* name : {"K1", "K2", "K3", "K4"}) {
    KappaAxiomOutcome o;
    o.axiom = name;
    report.outcomes.push_back(std::move(o));
  }
  report.note =
      "every subset of a finite discrete model is canonically closed; K4 is checked on finite "
      "increasing chains; K3 is checked as 1-Lipschitz continuity";
  Recorder k1(report.outcomes[0]), k2(report.outcomes[1]), k3(report.outcomes[2]),
      k4(report.outcomes[3]);
  const bool lipschitz_applies = candidate.metric_derived && space.has_coords();
  if (!lipschitz_applies) report.outcomes[2].status = CheckStatus::NotEvaluated;

  const std::size_t n = space.size();
  const auto& rho = candidate.rho;
  auto id = [&](PointIndex x) { return space.point(x).id; };

  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(trial_seed(seed, t));
    const auto set = random_subset(rng, n);

    // K1 on a member and, when one exists, a non-member.
    const PointIndex inside = set[rng.below(set.size())];
    const double r_in = rho(inside, set);
    k1(std::abs(r_in) <= tol, [&] {
      return "rho(" + id(inside) + ", " + set_text(space, set) + ") = " + format_double(r_in) +
             " but the point belongs to the set";
    });
    if (set.size() < n) {
      PointIndex outside;
      do {
        outside = rng.below(n);
      } while (contains(set, outside));
      const double r_out = rho(outside, set);
      k1(r_out > tol, [&] {
        return "rho(" + id(outside) + ", " + set_text(space, set) + ") = " +
               format_double(r_out) + " but the point is outside the set";
      });
    }

    // K2
    const PointIndex x = rng.below(n);
    const auto smaller = random_sub(rng, set);
    const double r_big = rho(x, set);
    const double r_small = rho(x, smaller);
    k2(r_big <= r_small + tol, [&] {
      return "rho(" + id(x) + ", " + set_text(space, set) + ") = " + format_double(r_big) +
             " exceeds rho(" + id(x) + ", " + set_text(space, smaller) + ") = " +
             format_double(r_small);
    });

    // K3
    if (lipschitz_applies) {
      const PointIndex x2 = rng.below(n);
      const double r2 = rho(x2, set);
      const double d = space.distance(x, x2);
      k3(std::abs(r_big - r2) <= d + tol, [&] {
        return "|rho(" + id(x) + ",C) - rho(" + id(x2) + ",C)| = " +
               format_double(std::abs(r_big - r2)) + " exceeds d = " + format_double(d) +
               " for C = " + set_text(space, set);
      });
    }

    // K4: grow an increasing chain from a random subset of `set` up to `set`.
    std::vector<std::vector<PointIndex>> chain{random_sub(rng, set)};
    const std::size_t links = rng.between(1, 4);
    for (std::size_t j = 0; j < links; ++j) {
      auto next = chain.back();
      for (PointIndex c : set)
        if (!contains(next, c) && rng.chance(0.4)) next.insert(std::upper_bound(next.begin(), next.end(), c), c);
      chain.push_back(std::move(next));
    }
    chain.push_back(set);
    double chain_min = std::numeric_limits<double>::infinity();
    for (const auto& link : chain) chain_min = std::min(chain_min, rho(x, link));
    const double at_union = rho(x, chain.back());
    k4(std::abs(at_union - chain_min) <= tol, [&] {
      return "rho(" + id(x) + ", union) = " + format_double(at_union) +
             " but the chain minimum is " + format_double(chain_min);
    });
  }
  return report;
}

}  // namespace idem
