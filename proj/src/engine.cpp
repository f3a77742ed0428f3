#include <cmath>
#include <sstream>
#include <string>

#include "frugal/dependency.hpp"
#include "frugal/error.hpp"
#include "frugal/mechanisms.hpp"

namespace frugal {

std::string to_string(const Threshold& t) {
  if (t.is_infinite()) return "inf";
  std::ostringstream out;
  out.precision(17);
  out << t.value();
  return out.str();
}

double threshold_bid(const std::function<bool(double)>& wins, double upper,
                     double tolerance) {
  if (!(upper > 0.0) || !std::isfinite(upper)) {
    throw ValidationError("threshold search needs a finite positive upper bound");
  }
  if (wins(upper)) return upper;
  double lo = 0.0;
  double hi = upper;
  bool lost = false;
  bool won_any = false;
  for (int i = 0; i < kMonotonicityProbes; ++i) {
    const double x = upper * i / (kMonotonicityProbes - 1);
    const bool w = wins(x);
    if (w && lost) {
      throw MonotonicityError("agent loses at bid " + std::to_string(hi) +
                              " but wins at higher bid " + std::to_string(x));
    }
    if (w) {
      won_any = true;
      lo = x;
    } else if (!lost) {
      lost = true;
      hi = x;
    }
  }
  if (!won_any) return 0.0;
  while (hi - lo > tolerance) {
    const double mid = lo + (hi - lo) / 2;
    if (mid <= lo || mid >= hi) break;
    (wins(mid) ? lo : hi) = mid;
  }
  return lo + (hi - lo) / 2;
}

Threshold threshold_search(const std::function<bool(double)>& wins, double upper) {
  const double t = threshold_bid(wins, upper);
  return t >= upper ? Threshold::infinite() : Threshold::at(t);
}

MechanismOutcome run_pruning_lifting(const SetSystem& system, std::span<const double> bids,
                                     const Pruner& pruner, const Selector& selector,
                                     const Lifter& lifter, const std::string& name) {
  check_bids(system, bids);
  const std::size_t n = system.num_agents();
  MechanismOutcome out;
  out.mechanism = name;
  out.pruned = pruner.prune(bids);
  if (!is_monopoly_free(system, out.pruned)) {
    throw MonopolyError("pruning left a system with a monopoly agent");
  }
  if (lifter) {
    out.lift = lifter(system, out.pruned);
    out.components = {out.pruned.members()};
  } else {
    const DependencyGraph h = build_dependency(system, out.pruned);
    out.lift = lift(h, n);
    out.components = h.components;
  }

  const auto& w = out.lift.weights;
  out.scaled_bids.assign(n, 0.0);
  for (AgentId e : out.pruned.members()) {
    if (!(w[e] > 0.0)) {
      throw NumericalError("agent " + std::to_string(e) + " received a non-positive weight");
    }
    out.scaled_bids[e] = bids[e] / w[e];
  }

  out.winners = selector.select(out.pruned, out.scaled_bids);
  if (!out.winners.is_subset_of(out.pruned) || !is_feasible(system, out.winners)) {
    throw StructureError("winner rule returned a set that is not feasible in the pruned system");
  }

  std::optional<double> best;
  if (selector.optimum) best = selector.optimum(out.pruned, out.scaled_bids);

  out.t1.assign(n, Threshold::infinite());
  out.t2.assign(n, Threshold::infinite());
  out.payments.assign(n, 0.0);
  std::vector<double> probe(bids.begin(), bids.end());
  for (AgentId e : out.winners.members()) {
    double others = 0.0;
    for (std::size_t u = 0; u < n; ++u) {
      if (static_cast<AgentId>(u) != e) others += bids[u];
    }

    if (pruner.threshold) {
      out.t1[e] = pruner.threshold(bids, e);
    } else {
      out.t1[e] = threshold_search(
          [&](double x) {
            probe[e] = x;
            const bool survives = pruner.prune(probe).contains(e);
            probe[e] = bids[e];
            return survives;
          },
          1.0 + 2.0 * others);
    }

    if (best) {
      const auto without = selector.optimum(out.pruned.without(e), out.scaled_bids);
      out.t2[e] = without ? Threshold::at(w[e] * (*without - *best + out.scaled_bids[e]))
                          : Threshold::infinite();
    } else {
      double scaled_others = 0.0;
      for (AgentId u : out.pruned.members()) {
        if (u != e) scaled_others += out.scaled_bids[u];
      }
      std::vector<double> scaled = out.scaled_bids;
      out.t2[e] = threshold_search(
          [&](double x) {
            scaled[e] = x / w[e];
            return selector.select(out.pruned, scaled).contains(e);
          },
          1.0 + w[e] * scaled_others);
    }

    const Threshold pay = min(out.t1[e], out.t2[e]);
    if (pay.is_infinite()) {
      throw MonopolyError("agent " + std::to_string(e) + " wins at every bid");
    }
    out.payments[e] = pay.value();
    out.total_payment += pay.value();
  }
  return out;
}

}  // namespace frugal
