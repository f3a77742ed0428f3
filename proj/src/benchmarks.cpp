#include "frugal/benchmarks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <string>

#include "frugal/dependency.hpp"
#include "frugal/error.hpp"
#include "frugal/lp.hpp"
#include "frugal/spectral.hpp"

namespace frugal {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_costs(const SetSystem& system, std::span<const double> costs) {
  try {
    check_bids(system, costs);
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("cost vector: ") + e.what());
  }
}

// The LP shared by both benchmarks: one variable per member of S, lower
// bounds at cost, and one row per minimal feasible set T:
//   sum_{e in S \ T} b(e) <= c(T \ S).
struct BenchmarkProgram {
  std::vector<AgentId> members;
  std::vector<AgentSet> alternatives;
  std::vector<double> rhs;
  LinearProgram lp;

  BenchmarkProgram(const SetSystem& system, std::span<const double> costs,
                   const AgentSet& reference, double direction) {
    members = reference.members();
    const std::size_t n = members.size();
    lp.objective.assign(n, direction);
    lp.lower.resize(n);
    for (std::size_t i = 0; i < n; ++i) lp.lower[i] = costs[members[i]];
    for (auto& t : minimal_feasible_sets(system)) {
      if (!reference.minus(t).empty()) {
        rhs.push_back(t.minus(reference).total(costs));
        alternatives.push_back(std::move(t));
        lp.add_le(row(alternatives.back()), rhs.back());
      }
    }
  }

  std::vector<double> row(const AgentSet& t) const {
    std::vector<double> r(members.size(), 0.0);
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (!t.contains(members[i])) r[i] = 1.0;
    }
    return r;
  }

  std::vector<double> expand(std::span<const double> costs,
                             const std::vector<double>& solution) const {
    std::vector<double> full(costs.begin(), costs.end());
    for (std::size_t i = 0; i < members.size(); ++i) full[members[i]] = solution[i];
    return full;
  }

  bool is_tight(std::size_t t, const std::vector<double>& solution) const {
    double lhs = 0.0;
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (!alternatives[t].contains(members[i])) lhs += solution[i];
    }
    return std::abs(lhs - rhs[t]) <= kWitnessTolerance * std::max(1.0, std::abs(rhs[t]));
  }

  // Every member is excluded by some tight alternative.
  bool all_members_tight(const std::vector<double>& solution) const {
    for (AgentId e : members) {
      bool ok = false;
      for (std::size_t t = 0; t < alternatives.size() && !ok; ++t) {
        ok = !alternatives[t].contains(e) && is_tight(t, solution);
      }
      if (!ok) return false;
    }
    return true;
  }
};

struct NuSearch {
  explicit NuSearch(const BenchmarkProgram& p) : program(p) {}

  const BenchmarkProgram& program;
  double best = kInf;
  std::vector<double> best_solution;
  std::vector<std::size_t> chosen;
  std::vector<std::size_t> best_chosen;
  std::set<std::vector<std::size_t>> visited;

  void explore() {
    std::vector<std::size_t> key = chosen;
    std::sort(key.begin(), key.end());
    if (!visited.insert(std::move(key)).second) return;
    LinearProgram lp = program.lp;
    for (std::size_t t : chosen) lp.add_eq(program.row(program.alternatives[t]), program.rhs[t]);
    const LpResult res = solve_lp(lp);
    if (res.status != LpStatus::Optimal) return;
    const double value = -res.objective;
    const double tol = kWitnessTolerance * std::max(1.0, std::abs(best));
    if (value >= best - tol) return;
    if (program.all_members_tight(res.solution)) {
      best = value;
      best_solution = res.solution;
      best_chosen.clear();
      for (std::size_t t = 0; t < program.alternatives.size(); ++t) {
        if (program.is_tight(t, res.solution)) best_chosen.push_back(t);
      }
      return;
    }
    // Branch on a member that no tight alternative excludes at this optimum.
    // It is also not excluded by any chosen set, since those are all tight.
    AgentId pending = -1;
    for (AgentId e : program.members) {
      bool ok = false;
      for (std::size_t t = 0; t < program.alternatives.size() && !ok; ++t) {
        ok = !program.alternatives[t].contains(e) && program.is_tight(t, res.solution);
      }
      if (!ok) {
        pending = e;
        break;
      }
    }
    for (std::size_t t = 0; t < program.alternatives.size(); ++t) {
      if (program.alternatives[t].contains(pending)) continue;
      chosen.push_back(t);
      explore();
      chosen.pop_back();
    }
  }
};

double lift_alpha(const SetSystem& system, const AgentSet& surviving) {
  return lift(build_dependency(system, surviving), system.num_agents()).alpha;
}

}  // namespace

AgentSet reference_set(const SetSystem& system, std::span<const double> costs) {
  check_costs(system, costs);
  const auto sets = minimal_feasible_sets(system);
  const AgentSet* best = nullptr;
  double best_cost = kInf;
  for (const auto& s : sets) {
    const double c = s.total(costs);
    if (!best || c < best_cost - kCostTolerance * std::max(1.0, std::abs(best_cost))) {
      best = &s;
      best_cost = c;
    }
  }
  if (!best) throw InfeasibleError("system has no feasible set");
  return *best;
}

BenchmarkValue compute_mu(const SetSystem& system, std::span<const double> costs) {
  check_costs(system, costs);
  BenchmarkValue out;
  out.reference = reference_set(system, costs);
  const BenchmarkProgram program(system, costs, out.reference, 1.0);
  const LpResult res = solve_lp(program.lp);
  if (res.status == LpStatus::Infeasible) {
    throw BenchmarkError("mu program is infeasible");
  }
  if (res.status == LpStatus::Unbounded) {
    throw MonopolyError("mu program is unbounded, so some agent has no alternative");
  }
  out.value = res.objective;
  out.witness = program.expand(costs, res.solution);
  return out;
}

BenchmarkValue compute_nu(const SetSystem& system, std::span<const double> costs,
                          std::size_t max_reference) {
  check_costs(system, costs);
  BenchmarkValue out;
  out.reference = reference_set(system, costs);
  if (out.reference.size() > max_reference) {
    throw SizeError("nu oracle is limited to reference sets of " +
                    std::to_string(max_reference) + " agents");
  }
  const BenchmarkProgram program(system, costs, out.reference, -1.0);
  for (AgentId e : program.members) {
    const bool excluded = std::any_of(program.alternatives.begin(), program.alternatives.end(),
                                      [&](const AgentSet& t) { return !t.contains(e); });
    if (!excluded) throw MonopolyError("agent " + std::to_string(e) + " has no alternative");
  }
  NuSearch search(program);
  search.explore();
  if (!std::isfinite(search.best)) {
    throw BenchmarkError("no bid vector satisfies the tightness condition");
  }
  out.value = search.best;
  out.witness = program.expand(costs, search.best_solution);
  for (std::size_t t : search.best_chosen) out.tight_sets.push_back(program.alternatives[t]);
  return out;
}

double benchmark_violation(const SetSystem& system, std::span<const double> costs,
                           const AgentSet& reference, std::span<const double> bids,
                           bool tight) {
  double worst = 0.0;
  for (AgentId e : reference.members()) worst = std::max(worst, costs[e] - bids[e]);
  const auto sets = minimal_feasible_sets(system);
  for (AgentId e : reference.members()) {
    double slack = kInf;
    for (const auto& t : sets) {
      const double lhs = reference.minus(t).total(bids);
      const double rhs = t.minus(reference).total(costs);
      worst = std::max(worst, lhs - rhs);
      if (!t.contains(e)) slack = std::min(slack, std::abs(lhs - rhs));
    }
    if (tight) worst = std::max(worst, slack);
  }
  return worst;
}

double nu_lower_kpath(const DiGraph& g, std::span<const double> costs, int k) {
  return k * delta_kplus1(g, costs, k);
}

double mu_lower_flow(const DiGraph& g, std::span<const double> costs, int k) {
  const FlowCostCurve curve = flow_cost_curve(g, costs);
  if (curve.max_flow() < k + 1) {
    throw InfeasibleError("network has fewer than k+1 edge-disjoint s-t paths");
  }
  return k * (curve.values[k + 1] - curve.values[k]);
}

int rho_v(const UndirectedGraph& g, VertexId v) {
  if (g.num_vertices() > kExactCoverMaxVertices) {
    throw SizeError("clique enumeration is limited to 30 vertices");
  }
  if (v < 0 || v >= g.num_vertices()) {
    throw ValidationError("vertex " + std::to_string(v) + " does not exist");
  }
  const auto nbrs = g.neighbors(v);
  int best = std::numeric_limits<int>::max();
  // Maximal cliques through v are v plus maximal cliques of its neighbourhood.
  auto expand = [&](auto&& self, std::vector<VertexId>& clique, std::vector<VertexId> cand,
                    std::vector<VertexId> excl) -> void {
    if (cand.empty() && excl.empty()) {
      best = std::min(best, static_cast<int>(clique.size()) + 1);
      return;
    }
    while (!cand.empty()) {
      const VertexId u = cand.back();
      cand.pop_back();
      std::vector<VertexId> next_cand;
      std::vector<VertexId> next_excl;
      for (VertexId x : cand) {
        if (g.adjacent(u, x)) next_cand.push_back(x);
      }
      for (VertexId x : excl) {
        if (g.adjacent(u, x)) next_excl.push_back(x);
      }
      clique.push_back(u);
      self(self, clique, std::move(next_cand), std::move(next_excl));
      clique.pop_back();
      excl.push_back(u);
    }
  };
  std::vector<VertexId> clique;
  expand(expand, clique, std::vector<VertexId>(nbrs.begin(), nbrs.end()), {});
  return best;
}

AlphaKPlus1 alpha_kplus1(const DiGraph& g, int k) {
  const SetSystem flows(KPathSystem{g, k + 1});
  const SetSystem paths(KPathSystem{g, k});
  AlphaKPlus1 out;
  bool first = true;
  for (const auto& u : minimal_feasible_sets(flows)) {
    const double a = lift_alpha(paths, u);
    if (first || a > out.alpha) {
      out.alpha = a;
      out.argmax = u;
      first = false;
    }
  }
  return out;
}

double alpha_r_out_of_k(const ROutOfKSystem& system) {
  const std::size_t keep = static_cast<std::size_t>(system.r) + 1;
  if (system.groups.size() < keep) throw InfeasibleError("fewer than r+1 groups");
  double best = 0.0;
  std::vector<int> sizes;
  auto choose = [&](auto&& self, std::size_t start) -> void {
    if (sizes.size() == keep) {
      best = std::max(best, solve_lozenge(sizes, system.r).alpha);
      return;
    }
    for (std::size_t i = start; i < system.groups.size(); ++i) {
      sizes.push_back(static_cast<int>(system.groups[i].size()));
      self(self, i + 1);
      sizes.pop_back();
    }
  };
  choose(choose, 0);
  return best;
}

ProbeTable probe_payments(const SetSystem& system, const std::string& mechanism,
                          const AgentSet& distinguished, int resolution) {
  if (resolution < 1) throw ValidationError("probe resolution must be positive");
  const std::size_t n = system.num_agents();
  ProbeTable out;
  out.mechanism = mechanism;
  out.distinguished = distinguished;
  out.alpha = lift_alpha(system, distinguished);
  for (AgentId e : distinguished.members()) {
    for (int i = 0; i <= resolution; ++i) {
      const double x = static_cast<double>(i) / resolution;
      std::vector<double> costs(n, static_cast<double>(n + 1));
      for (AgentId u : distinguished.members()) costs[u] = 0.0;
      costs[e] = x;
      ProbeRow row;
      row.agent = e;
      row.x = x;
      row.payment = run_mechanism(mechanism, system, costs).total_payment;
      row.alpha_x = out.alpha * x;
      row.nu = compute_nu(system, costs).value;
      row.mu = compute_mu(system, costs).value;
      if (x > 0) out.max_payment_over_x = std::max(out.max_payment_over_x, row.payment / x);
      out.rows.push_back(row);
    }
  }
  return out;
}

std::pair<double, double> frugality_bounds(const std::string& mechanism,
                                           const SetSystem& system,
                                           const MechanismOutcome& outcome) {
  const double none = std::numeric_limits<double>::quiet_NaN();
  if (mechanism == "kpath" || mechanism == "sqrt") {
    const auto* s = system.as<KPathSystem>();
    const double a = alpha_kplus1(s->graph, s->k).alpha;
    return {a * (s->k + 1) / s->k, a / s->k};
  }
  if (mechanism == "vertex-cover" || mechanism == "vertex-cover-approx") {
    return {outcome.lift.alpha, outcome.lift.alpha};
  }
  if (mechanism == "r-out-of-k") {
    const auto* s = system.as<ROutOfKSystem>();
    const double a = alpha_r_out_of_k(*s);
    return {a * (s->r + 1) / s->r, a / s->r};
  }
  return {none, none};
}

std::vector<FrugalityReport> frugality_report(const SetSystem& system,
                                              std::span<const double> costs,
                                              const std::vector<std::string>& mechanisms) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  double nu = nan;
  std::string nu_note;
  try {
    nu = compute_nu(system, costs).value;
  } catch (const BenchmarkError& e) {
    nu_note = e.what();
  }
  const double mu = compute_mu(system, costs).value;

  auto ratio = [](double p, double b, std::string& note, const char* label) {
    if (std::isnan(b)) return std::numeric_limits<double>::quiet_NaN();
    if (b > 0.0) return p / b;
    note += std::string(note.empty() ? "" : "; ") + label + " is zero";
    return p > 0.0 ? kInf : 0.0;
  };

  std::vector<FrugalityReport> out;
  for (const auto& name : mechanisms) {
    const MechanismOutcome outcome = run_mechanism(name, system, costs);
    FrugalityReport r;
    r.mechanism = name;
    r.payment = outcome.total_payment;
    r.alpha = outcome.lift.alpha;
    r.nu = nu;
    r.mu = mu;
    r.note = nu_note;
    r.ratio_nu = ratio(r.payment, nu, r.note, "nu");
    r.ratio_mu = ratio(r.payment, mu, r.note, "mu");
    std::tie(r.bound_nu, r.bound_mu) = frugality_bounds(name, system, outcome);
    auto exceeds = [](double value, double bound) {
      return std::isfinite(bound) && std::isfinite(value) &&
             value > bound + kWitnessTolerance * std::max(1.0, bound);
    };
    r.violation = exceeds(r.ratio_nu, r.bound_nu) || exceeds(r.ratio_mu, r.bound_mu);
    if (r.violation) {
      r.note += std::string(r.note.empty() ? "" : "; ") + "ratio exceeds its bound";
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace frugal
