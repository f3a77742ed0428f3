#include "frugal/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "frugal/benchmarks.hpp"
#include "frugal/error.hpp"
#include "frugal/generate.hpp"
#include "frugal/log.hpp"
#include "frugal/spectral.hpp"

namespace frugal {
namespace {

constexpr double kCheckTolerance = 1e-7;
constexpr double kTruthTolerance = 1e-6;
constexpr std::size_t kExhaustiveAgents = 12;

bool close(double a, double b, double tol = kCheckTolerance) {
  return std::abs(a - b) <= tol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

bool at_most(double a, double b, double tol = kCheckTolerance) {
  return a <= b + tol * std::max(1.0, std::abs(b));
}

std::string num(double v) {
  std::ostringstream out;
  out.precision(12);
  out << v;
  return out.str();
}

class Checker {
 public:
  explicit Checker(std::string label) : label_(std::move(label)) {}

  // Runs `body`; a false return or an exception marks the check failed.
  void run(const std::string& name, const std::function<bool(std::string&)>& body) {
    CheckResult r{label_, name, true, false, ""};
    try {
      r.passed = body(r.detail);
    } catch (const MonotonicityError& e) {
      r.passed = name.find("approx") != std::string::npos;
      r.skipped = r.passed;
      r.detail = std::string("winner rule not monotone: ") + e.what();
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    if (!r.passed) log::warn(label_ + ": " + name + " failed " + r.detail);
    if (r.skipped) log::info(label_ + ": " + name + " skipped, " + r.detail);
    results_.push_back(std::move(r));
  }

  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  std::string label_;
  std::vector<CheckResult> results_;
};

std::vector<std::string> mechanisms_for(const SetSystem& system) {
  if (const auto* s = system.as<KPathSystem>()) {
    if (s->k == 1) return {"kpath", "sqrt", "vcg"};
    return {"kpath", "vcg"};
  }
  if (system.as<VertexCoverSystem>()) return {"vertex-cover", "vertex-cover-approx", "vcg"};
  if (system.as<ROutOfKSystem>()) return {"r-out-of-k", "vcg"};
  return {"vcg"};
}

void check_core(Checker& c, const SetSystem& system) {
  const std::size_t n = system.num_agents();
  if (n > kExhaustiveAgents) return;
  const auto minimal = minimal_feasible_sets(system);
  c.run("core.upward-closure", [&](std::string& d) {
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      AgentSet s(n);
      for (std::size_t i = 0; i < n; ++i) {
        if (mask >> i & 1u) s.insert(static_cast<AgentId>(i));
      }
      if (!is_feasible(system, s)) continue;
      for (std::size_t i = 0; i < n; ++i) {
        AgentSet bigger = s;
        bigger.insert(static_cast<AgentId>(i));
        if (!is_feasible(system, bigger)) {
          d = "adding agent " + std::to_string(i) + " breaks feasibility";
          return false;
        }
      }
      const bool dominated = std::any_of(minimal.begin(), minimal.end(),
                                         [&](const AgentSet& m) { return m.is_subset_of(s); });
      if (!dominated) {
        d = "a feasible set contains no listed minimal set";
        return false;
      }
    }
    return true;
  });
  c.run("core.minimality", [&](std::string& d) {
    for (const auto& m : minimal) {
      if (!is_feasible(system, m)) {
        d = "listed set is infeasible";
        return false;
      }
      for (AgentId e : m.members()) {
        if (is_feasible(system, m.without(e))) {
          d = "listed set stays feasible without agent " + std::to_string(e);
          return false;
        }
      }
    }
    return std::is_sorted(minimal.begin(), minimal.end());
  });
}

void check_mechanisms(Checker& c, const Instance& inst) {
  const auto& system = inst.system;
  const auto& costs = inst.costs;
  for (const auto& name : mechanisms_for(system)) {
    c.run("mechanism." + name + ".voluntary-participation", [&](std::string& d) {
      const auto out = run_mechanism(name, system, costs);
      for (std::size_t e = 0; e < costs.size(); ++e) {
        const bool win = out.winners.contains(static_cast<AgentId>(e));
        if (win && out.payments[e] < costs[e] - kThresholdTolerance) {
          d = "winner " + std::to_string(e) + " paid " + num(out.payments[e]) + " below bid " +
              num(costs[e]);
          return false;
        }
        if (!win && out.payments[e] != 0.0) {
          d = "loser " + std::to_string(e) + " was paid";
          return false;
        }
      }
      return true;
    });
    c.run("mechanism." + name + ".truthfulness", [&](std::string& d) {
      for (std::size_t e = 0; e < costs.size(); ++e) {
        const double ce = costs[e];
        for (double dev : {0.0, ce / 2, ce + 0.5, 2 * ce + 1, ce + 3}) {
          const double gain =
              deviation_gain(name, system, costs, static_cast<AgentId>(e), dev);
          if (gain > kTruthTolerance) {
            d = "agent " + std::to_string(e) + " gains " + num(gain) + " by bidding " + num(dev);
            return false;
          }
        }
      }
      return true;
    });
  }
}

void check_benchmarks(Checker& c, const Instance& inst, double& nu, double& mu,
                      std::vector<double>& nu_witness) {
  const auto& system = inst.system;
  c.run("benchmarks.witnesses", [&](std::string& d) {
    const auto m = compute_mu(system, inst.costs);
    mu = m.value;
    const double mv = benchmark_violation(system, inst.costs, m.reference, m.witness, false);
    if (mv > kWitnessTolerance) {
      d = "mu witness violates constraints by " + num(mv);
      return false;
    }
    try {
      const auto v = compute_nu(system, inst.costs);
      nu = v.value;
      nu_witness = v.witness;
      const double vv = benchmark_violation(system, inst.costs, v.reference, v.witness, true);
      if (vv > kWitnessTolerance) {
        d = "nu witness violates constraints by " + num(vv);
        return false;
      }
    } catch (const BenchmarkError& e) {
      d = std::string("nu not attained: ") + e.what();
      nu = std::nan("");
    }
    return true;
  });
  if (!std::isnan(nu)) {
    c.run("benchmarks.nu-le-mu", [&](std::string& d) {
      d = "nu " + num(nu) + " mu " + num(mu);
      return at_most(nu, mu);
    });
  }
}

void check_kpath(Checker& c, const Instance& inst, double nu, double mu,
                 const std::vector<double>& nu_witness) {
  const auto& s = *inst.system.as<KPathSystem>();
  const DiGraph& g = s.graph;
  const int k = s.k;
  const auto& costs = inst.costs;
  const IntegralFlow gstar = cheapest_kplus1_subgraph(g, costs, k);
  const FlowCostCurve curve = flow_cost_curve(g, costs);

  c.run("flows.convexity", [&](std::string& d) {
    for (int i = 1; i + 1 <= curve.max_flow(); ++i) {
      const double left = curve.values[i] - curve.values[i - 1];
      const double right = curve.values[i + 1] - curve.values[i];
      if (right < left - kCostTolerance) {
        d = "C is not convex at " + std::to_string(i);
        return false;
      }
    }
    return curve.values[0] == 0.0;
  });
  c.run("flows.pruning-optimality", [&](std::string& d) {
    d = "G* cost " + num(gstar.cost) + " C(k+1) " + num(curve.values[k + 1]);
    return close(gstar.cost, curve.values[k + 1], kCostTolerance) &&
           max_flow_value(g, gstar.edges) == k + 1;
  });
  const double longest = longest_path_dag(g, gstar.edges, costs);
  const double delta = delta_kplus1(g, costs, k);
  c.run("flows.delta-bound", [&](std::string& d) {
    d = "L " + num(longest) + " delta " + num(delta);
    return at_most(longest, (k + 1) * delta);
  });
  const auto dec = articulation_decomposition(g, gstar.edges);
  c.run("flows.decomposition", [&](std::string& d) {
    double sum = 0.0;
    AgentSet seen(g.num_edges());
    for (std::size_t i = 0; i < dec.num_parts(); ++i) {
      if (seen.intersects(dec.parts[i])) {
        d = "parts overlap";
        return false;
      }
      seen = seen.unite(dec.parts[i]);
      const DiGraph sub(g.num_vertices(), dec.points[i], dec.points[i + 1],
                        {g.arcs().begin(), g.arcs().end()});
      sum += longest_path_dag(sub, dec.parts[i], costs);
    }
    d = "sum " + num(sum) + " whole " + num(longest);
    return seen == gstar.edges && close(sum, longest, kCostTolerance);
  });

  const DependencyGraph h = build_dependency(inst.system, gstar.edges);
  c.run("dependency.cross-check", [&](std::string&) {
    const auto from_sets =
        build_dependency_from_sets(minimal_feasible_sets_within(inst.system, gstar.edges),
                                   gstar.edges);
    return from_sets.adjacency == h.adjacency && from_sets.components == h.components;
  });
  c.run("dependency.feasible-sets-cover", [&](std::string& d) {
    for (const auto& t : minimal_feasible_sets_within(inst.system, gstar.edges)) {
      for (std::size_t i = 0; i < h.size(); ++i) {
        for (std::size_t j = i + 1; j < h.size(); ++j) {
          if (h.adjacency[i][j] && !t.contains(h.nodes[i]) && !t.contains(h.nodes[j])) {
            d = "feasible set misses an edge of H";
            return false;
          }
        }
      }
    }
    return true;
  });
  c.run("dependency.articulation-structure",
        [&](std::string&) { return matches_articulation_structure(g, gstar.edges, h); });
  c.run("dependency.interval-property",
        [&](std::string&) { return has_interval_property(g, gstar.edges, h); });

  const SpectralLift weights = lift(h, g.num_edges());
  c.run("spectral.residual", [&](std::string& d) {
    d = "relative residual " + num(weights.residual);
    return weights.residual <= kEigenResidual;
  });
  c.run("spectral.degree-bounds", [&](std::string& d) {
    for (std::size_t ci = 0; ci < h.components.size(); ++ci) {
      const auto& comp = h.components[ci];
      double total = 0.0;
      double top = 0.0;
      for (AgentId a : comp) {
        double deg = 0.0;
        for (AgentId b : comp) deg += h.adjacent(a, b) ? 1.0 : 0.0;
        total += deg;
        top = std::max(top, deg);
      }
      const double alpha = weights.component_alphas[ci];
      if (!at_most(total / comp.size(), alpha, 1e-9) || !at_most(alpha, top, 1e-9)) {
        d = "component " + std::to_string(ci) + " alpha " + num(alpha);
        return false;
      }
    }
    return true;
  });

  const auto analytic = kpath_mechanism(g, costs, k, ThresholdMethod::Analytic);
  c.run("mechanism.analytic-vs-bisection", [&](std::string& d) {
    const auto bisect = kpath_mechanism(g, costs, k, ThresholdMethod::Bisection);
    if (!(bisect.winners == analytic.winners)) {
      d = "winner sets differ";
      return false;
    }
    for (AgentId e : analytic.winners.members()) {
      if (!close(analytic.payments[e], bisect.payments[e])) {
        d = "edge " + std::to_string(e) + ": " + num(analytic.payments[e]) + " vs " +
            num(bisect.payments[e]);
        return false;
      }
    }
    return true;
  });
  if (k == 1) {
    c.run("mechanism.sqrt-equivalence", [&](std::string& d) {
      const auto ref = sqrt_mechanism(g, costs);
      if (!(ref.winners == analytic.winners)) {
        d = "winner sets differ";
        return false;
      }
      for (AgentId e : ref.winners.members()) {
        if (!close(ref.payments[e], analytic.payments[e])) {
          d = "edge " + std::to_string(e) + ": " + num(ref.payments[e]) + " vs " +
              num(analytic.payments[e]);
          return false;
        }
      }
      return true;
    });
  }
  c.run("mechanism.payment-vs-longest-path", [&](std::string& d) {
    d = "p " + num(analytic.total_payment) + " alpha*L " + num(analytic.lift.alpha * longest);
    return at_most(analytic.total_payment, analytic.lift.alpha * longest);
  });
  c.run("mechanism.bid-independence", [&](std::string& d) {
    std::vector<double> probe = costs;
    for (AgentId e : gstar.edges.members()) {
      for (double bid : {0.0, costs[e] / 2, costs[e] + 1, 2 * costs[e] + 3}) {
        probe[e] = bid;
        const AgentSet pruned = cheapest_kplus1_subgraph(g, probe, k).edges;
        if (pruned.contains(e) && !(pruned == gstar.edges)) {
          d = "edge " + std::to_string(e) + " survives at " + num(bid) + " with another G*";
          return false;
        }
      }
      probe[e] = costs[e];
    }
    return true;
  });

  const double a_k1 = alpha_kplus1(g, k).alpha;
  c.run("benchmarks.nu-lower-delta", [&](std::string& d) {
    d = "nu " + num(nu) + " k*delta " + num(k * delta);
    return std::isnan(nu) || at_most(k * delta, nu);
  });
  c.run("benchmarks.mu-flow-bound", [&](std::string& d) {
    const double lower = mu_lower_flow(g, costs, k);
    d = "mu " + num(mu) + " bound " + num(lower);
    return at_most(lower, mu);
  });
  c.run("benchmarks.payment-vs-nu", [&](std::string& d) {
    d = "p " + num(analytic.total_payment) + " nu " + num(nu) + " alpha " + num(a_k1);
    return std::isnan(nu) || at_most(analytic.total_payment, a_k1 * (k + 1) / k * nu);
  });
  c.run("benchmarks.payment-vs-mu", [&](std::string& d) {
    d = "p " + num(analytic.total_payment) + " mu " + num(mu) + " alpha " + num(a_k1);
    return at_most(analytic.total_payment, a_k1 / k * mu);
  });
  if (!nu_witness.empty()) {
    c.run("benchmarks.nu-witness-flow", [&](std::string& d) {
      const auto flow = verify_shortest_path_flow(g, nu_witness, k, kWitnessTolerance);
      if (!flow) {
        d = "no k+1 equal shortest paths under the nu witness";
        return false;
      }
      for (const auto& path : decompose_paths(g, flow->edges)) {
        double len = 0.0;
        for (EdgeId e : path) len += nu_witness[e];
        if (!close(len, flow->cost / (k + 1))) {
          d = "paths of the flow differ in length";
          return false;
        }
      }
      return true;
    });
  }
}

void check_cover(Checker& c, const Instance& inst, double nu) {
  const auto& g = inst.system.as<VertexCoverSystem>()->graph;
  const auto& costs = inst.costs;
  c.run("dependency.equals-graph", [&](std::string&) {
    const auto h = build_dependency(inst.system, AgentSet::all(costs.size()));
    for (VertexId u = 0; u < g.num_vertices(); ++u) {
      for (VertexId v = 0; v < g.num_vertices(); ++v) {
        if (u != v && h.adjacent(u, v) != g.adjacent(u, v)) return false;
      }
    }
    return true;
  });
  for (const auto& [name, mode] : {std::pair{"exact", CoverMode::Exact},
                                   std::pair{"approx", CoverMode::Approx2}}) {
    c.run(std::string("mechanism.cover-payment-bound.") + name, [&, mode = mode](std::string& d) {
      const auto out = vertex_cover_mechanism(g, costs, mode);
      if (!is_locally_optimal(g, out.scaled_bids, out.winners)) {
        d = "winning cover is not locally optimal";
        return false;
      }
      const double outside = out.winners.complement().total(costs);
      d = "p " + num(out.total_payment) + " alpha " + num(out.lift.alpha) + " outside " +
          num(outside) + " nu " + num(nu);
      return at_most(out.total_payment, out.lift.alpha * outside) &&
             (std::isnan(nu) || at_most(out.total_payment, out.lift.alpha * nu));
    });
  }
  c.run("benchmarks.clique-bound", [&](std::string& d) {
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      if (g.degree(v) == 0) continue;
      std::vector<double> unit(costs.size(), 0.0);
      unit[v] = 1.0;
      const double value = compute_nu(inst.system, unit).value;
      const int rho = rho_v(g, v);
      if (!at_most(value, rho - 1.0)) {
        d = "vertex " + std::to_string(v) + ": nu " + num(value) + " rho " +
            std::to_string(rho);
        return false;
      }
    }
    return true;
  });
}

void check_groups(Checker& c, const Instance& inst) {
  const auto& s = *inst.system.as<ROutOfKSystem>();
  c.run("spectral.lozenge", [&](std::string& d) {
    std::vector<int> sizes;
    for (std::size_t i = 0; i <= static_cast<std::size_t>(s.r) && i < s.groups.size(); ++i) {
      sizes.push_back(static_cast<int>(s.groups[i].size()));
    }
    const auto sol = solve_lozenge(sizes, s.r);
    double total = 0.0;
    for (std::size_t j = 0; j < sizes.size(); ++j) total += sizes[j] * sol.x[j];
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      const double rhs = total - sizes[i] * sol.x[i];
      if (std::abs(sol.beta * s.r * sol.x[i] - rhs) > 1e-8) {
        d = "equation " + std::to_string(i) + " off by " + num(sol.beta * s.r * sol.x[i] - rhs);
        return false;
      }
    }
    return std::abs(sol.beta * s.r - sol.alpha) <= 1e-8;
  });
  c.run("mechanism.kpath-equivalence", [&](std::string& d) {
    const DiGraph g = parallel_group_network(s);
    const auto a = r_out_of_k_mechanism(s, inst.costs);
    const auto b = kpath_mechanism(g, inst.costs, s.r);
    if (!(a.winners == b.winners)) {
      d = "winner sets differ";
      return false;
    }
    for (AgentId e : a.winners.members()) {
      if (!close(a.payments[e], b.payments[e])) {
        d = "agent " + std::to_string(e) + ": " + num(a.payments[e]) + " vs " +
            num(b.payments[e]);
        return false;
      }
    }
    return true;
  });
}

}  // namespace

bool has_interval_property(const DiGraph& g, const AgentSet& gstar, const DependencyGraph& h) {
  for (const auto& path : decompose_paths(g, gstar)) {
    for (AgentId v : h.nodes) {
      std::vector<std::size_t> hits;
      for (std::size_t r = 0; r < path.size(); ++r) {
        if (path[r] != v && h.adjacent(v, path[r])) hits.push_back(r);
      }
      if (!hits.empty() && hits.back() - hits.front() + 1 != hits.size()) return false;
    }
  }
  return true;
}

bool matches_articulation_structure(const DiGraph& g, const AgentSet& gstar,
                                    const DependencyGraph& h) {
  const auto dec = articulation_decomposition(g, gstar);
  const bool interior = dec.points.size() > 2;
  const bool connected = h.components.size() == 1;
  if (connected == interior) return false;
  if (h.components.size() != dec.num_parts()) return false;
  std::vector<std::vector<AgentId>> parts;
  for (const auto& p : dec.parts) parts.push_back(p.members());
  std::sort(parts.begin(), parts.end());
  return parts == h.components;
}

DiGraph parallel_group_network(const ROutOfKSystem& system) {
  std::vector<Arc> arcs;
  VertexId next = 2;
  AgentId expected = 0;
  for (const auto& grp : system.groups) {
    VertexId prev = 0;
    for (std::size_t j = 0; j < grp.size(); ++j) {
      if (grp[j] != expected++) {
        throw ValidationError("groups are not consecutive blocks of agent ids");
      }
      const VertexId head = j + 1 == grp.size() ? 1 : next++;
      arcs.push_back({prev, head});
      prev = head;
    }
  }
  return DiGraph(next, 0, 1, std::move(arcs));
}

double deviation_gain(const std::string& mechanism, const SetSystem& system,
                      std::span<const double> costs, AgentId e, double deviation) {
  const auto honest = run_mechanism(mechanism, system, costs);
  std::vector<double> bids(costs.begin(), costs.end());
  bids[e] = deviation;
  const auto lying = run_mechanism(mechanism, system, bids);
  auto utility = [&](const MechanismOutcome& o) {
    return o.winners.contains(e) ? o.payments[e] - costs[e] : 0.0;
  };
  return utility(lying) - utility(honest);
}

std::vector<CheckResult> verify_instance(const Instance& instance, const std::string& label) {
  Checker c(label);
  check_core(c, instance.system);
  check_mechanisms(c, instance);
  double nu = std::nan("");
  double mu = std::nan("");
  std::vector<double> nu_witness;
  check_benchmarks(c, instance, nu, mu, nu_witness);
  if (instance.system.as<KPathSystem>()) check_kpath(c, instance, nu, mu, nu_witness);
  if (instance.system.as<VertexCoverSystem>()) check_cover(c, instance, nu);
  if (instance.system.as<ROutOfKSystem>()) check_groups(c, instance);
  return c.take();
}

std::vector<CheckResult> verify_suite(
    const std::vector<std::pair<std::string, Instance>>& fixtures, const VerifyOptions& options) {
  std::vector<CheckResult> all;
  auto absorb = [&](const Instance& inst, const std::string& label) {
    auto part = verify_instance(inst, label);
    all.insert(all.end(), part.begin(), part.end());
  };
  for (const auto& [label, inst] : fixtures) absorb(inst, label);

  struct Family {
    std::string kind;
    GeneratorParams params;
  };
  const std::vector<Family> families = {
      {"layered-dag", {{"k", "1"}, {"layers", "2"}, {"width", "3"}}},
      {"layered-dag", {{"k", "2"}, {"layers", "2"}, {"width", "3"}}},
      {"layered-dag", {{"k", "1"}, {"layers", "3"}, {"width", "2"}, {"density", "0.5"}}},
      {"random-gnp-cover", {{"n", "7"}, {"p", "0.45"}}},
      {"r-out-of-k", {{"sizes", "1,2,2,1"}, {"r", "2"}}},
      {"multipartite", {{"sizes", "1,2,3"}}},
  };
  std::uint64_t index = 0;
  for (const auto& f : families) {
    for (int i = 0; i < options.count; ++i, ++index) {
      const std::uint64_t seed = sweep_seed(options.seed, index);
      absorb(generate(f.kind, f.params, seed), f.kind + "#" + std::to_string(seed));
    }
  }
  return all;
}

}  // namespace frugal
