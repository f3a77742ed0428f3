#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "frugal/agent_set.hpp"
#include "frugal/core.hpp"
#include "frugal/flows.hpp"
#include "frugal/graph.hpp"
#include "frugal/spectral.hpp"

namespace frugal {

inline constexpr double kThresholdTolerance = 1e-9;
inline constexpr int kMonotonicityProbes = 32;

// A threshold bid, possibly +infinity. The infinite case is a separate state,
// never a large number.
class Threshold {
 public:
  Threshold() = default;
  static Threshold infinite() {
    Threshold t;
    t.infinite_ = true;
    return t;
  }
  static Threshold at(double value) {
    Threshold t;
    t.value_ = value;
    return t;
  }

  bool is_infinite() const { return infinite_; }
  // The finite value, or +inf for the infinite threshold.
  double value() const {
    return infinite_ ? std::numeric_limits<double>::infinity() : value_;
  }

  friend Threshold min(const Threshold& a, const Threshold& b) {
    if (a.infinite_) return b;
    if (b.infinite_) return a;
    return a.value_ <= b.value_ ? a : b;
  }
  friend bool operator==(const Threshold&, const Threshold&) = default;

 private:
  double value_ = 0.0;
  bool infinite_ = false;
};

std::string to_string(const Threshold& t);

// Maps bids to the surviving agents. `threshold`, when set, returns the
// largest bid at which an agent still survives with everyone else fixed.
struct Pruner {
  std::function<AgentSet(std::span<const double> bids)> prune;
  std::function<Threshold(std::span<const double> bids, AgentId agent)> threshold;
};

// Picks a winning feasible set inside `within` under scaled bids. `optimum`,
// when set, returns the cheapest scaled cost of a feasible set inside
// `within`, or nullopt if there is none.
struct Selector {
  std::function<AgentSet(const AgentSet& within, std::span<const double> scaled)> select;
  std::function<std::optional<double>(const AgentSet& within,
                                      std::span<const double> scaled)>
      optimum;
};

// Weights for the surviving agents. The default builds the dependency graph
// and takes per-component Perron vectors.
using Lifter = std::function<SpectralLift(const SetSystem& system, const AgentSet& surviving)>;

struct MechanismOutcome {
  std::string mechanism;
  AgentSet pruned;
  std::vector<std::vector<AgentId>> components;
  SpectralLift lift;
  std::vector<double> scaled_bids;  // 0 outside the pruned set
  AgentSet winners;
  std::vector<Threshold> t1;        // per agent; meaningful for winners only
  std::vector<Threshold> t2;
  std::vector<double> payments;     // per agent; 0 for losers
  double total_payment = 0.0;
};

MechanismOutcome run_pruning_lifting(const SetSystem& system, std::span<const double> bids,
                                     const Pruner& pruner, const Selector& selector,
                                     const Lifter& lifter = {},
                                     const std::string& name = "pruning-lifting");

// Supremum of the bids in [0, upper] at which `wins` holds, to absolute
// tolerance 1e-9. Returns `upper` itself if the agent still wins there. The
// predicate is sampled at 32 evenly spaced points first; a loss followed by a
// win raises MonotonicityError.
double threshold_bid(const std::function<bool(double)>& wins, double upper,
                     double tolerance = kThresholdTolerance);

// threshold_bid with the upper sentinel mapped to Threshold::infinite().
Threshold threshold_search(const std::function<bool(double)>& wins, double upper);

enum class ThresholdMethod { Analytic, Bisection };

MechanismOutcome kpath_mechanism(const DiGraph& g, std::span<const double> bids, int k,
                                 ThresholdMethod method = ThresholdMethod::Analytic);

struct ThresholdPair {
  Threshold t1;
  Threshold t2;
};

// Closed-form thresholds of one agent in the k-path mechanism. t2 is only
// meaningful when the agent survives pruning.
ThresholdPair analytic_thresholds_kpath(const DiGraph& g, std::span<const double> bids,
                                        int k, AgentId agent);

enum class CoverMode { Exact, Approx2 };

inline constexpr VertexId kExactCoverMaxVertices = 30;

MechanismOutcome vertex_cover_mechanism(const UndirectedGraph& g,
                                        std::span<const double> bids,
                                        CoverMode mode = CoverMode::Exact);

// Cheapest vertex cover using only `allowed` vertices, smallest under
// canonical_less among ties; nullopt if `allowed` admits no cover.
std::optional<AgentSet> min_weight_cover(const UndirectedGraph& g,
                                         std::span<const double> weights,
                                         const AgentSet& allowed);

// Local-ratio 2-approximation in edge-id order.
AgentSet local_ratio_cover(const UndirectedGraph& g, std::span<const double> weights);

// Repeatedly replaces a member v with b'(v) > sum of b'(u) over neighbours u
// outside the cover by those neighbours, scanning in id order.
AgentSet local_optimality_repair(const UndirectedGraph& g,
                                 std::span<const double> scaled_bids, AgentSet cover);

bool is_locally_optimal(const UndirectedGraph& g, std::span<const double> scaled_bids,
                        const AgentSet& cover, double tolerance = kCostTolerance);

MechanismOutcome r_out_of_k_mechanism(const ROutOfKSystem& system,
                                      std::span<const double> bids,
                                      ThresholdMethod method = ThresholdMethod::Analytic);

// Reference single-path mechanism with explicit per-segment square-root
// weights over the articulation decomposition of the cheapest 2-flow.
MechanismOutcome sqrt_mechanism(const DiGraph& g, std::span<const double> bids);

// Cheapest feasible set with threshold payments and no lifting.
MechanismOutcome vcg(const SetSystem& system, std::span<const double> bids);

// Cheapest feasible set inside `within` for any system kind (ties by
// canonical_less), with its cost; nullopt if none is feasible.
std::optional<std::pair<AgentSet, double>> cheapest_feasible_set(
    const SetSystem& system, std::span<const double> bids, const AgentSet& within);

// "kpath", "vertex-cover", "vertex-cover-approx", "r-out-of-k", "sqrt", "vcg".
MechanismOutcome run_mechanism(const std::string& name, const SetSystem& system,
                               std::span<const double> bids);

bool is_known_mechanism(const std::string& name);

}  // namespace frugal
