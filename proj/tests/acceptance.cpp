// Property sweeps over seeded random instances. Prints one PASS/FAIL line per
// criterion and exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "common.hpp"
#include "frugal/benchmarks.hpp"
#include "frugal/dependency.hpp"
#include "frugal/error.hpp"
#include "frugal/flows.hpp"
#include "frugal/generate.hpp"
#include "frugal/mechanisms.hpp"
#include "frugal/spectral.hpp"
#include "frugal/verify.hpp"
#include "oracles.hpp"

using namespace frugal;

namespace {

constexpr double kTol = 1e-7;

bool leq(double a, double b, double tol = kTol) {
  return a <= b + tol * std::max(1.0, std::abs(b));
}

bool near(double a, double b, double tol = kTol) {
  return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}

struct Tally {
  int cases = 0;
  int failures = 0;
  std::string first;
  std::string extra;

  void check(bool ok, const std::string& what) {
    ++cases;
    if (ok) return;
    if (failures++ == 0) first = what;
  }
};

// One k-path sweep instance with everything the flow criteria need.
struct PathCase {
  PathCase(std::string l, Instance i) : label(std::move(l)), inst(std::move(i)) {}

  std::string label;
  Instance inst;
  int k = 1;
  MechanismOutcome outcome;
  AgentSet gstar;
  double nu = std::nan("");
  std::vector<double> nu_witness;
  double mu = 0.0;
  double alpha_k1 = 0.0;
};

std::vector<PathCase> build_path_sweep() {
  std::vector<PathCase> out;
  for (int k = 1; k <= 3; ++k) {
    for (std::uint64_t i = 0; i < 70; ++i) {
      const std::uint64_t seed = sweep_seed(1000 + k, i);
      const GeneratorParams params{{"k", std::to_string(k)},
                                   {"layers", k < 3 && i % 3 == 0 ? "3" : "2"},
                                   {"width", std::to_string(k + 1 + static_cast<int>(i % 2))}};
      PathCase c("layered-dag k=" + std::to_string(k) + " seed " + std::to_string(seed),
                 generate("layered-dag", params, seed));
      c.k = k;
      const auto& g = c.inst.system.as<KPathSystem>()->graph;
      c.outcome = kpath_mechanism(g, c.inst.costs, k);
      c.gstar = c.outcome.pruned;
      try {
        const auto v = compute_nu(c.inst.system, c.inst.costs);
        c.nu = v.value;
        c.nu_witness = v.witness;
      } catch (const BenchmarkError&) {
      }
      c.mu = compute_mu(c.inst.system, c.inst.costs).value;
      c.alpha_k1 = alpha_kplus1(g, k).alpha;
      out.push_back(std::move(c));
    }
  }
  return out;
}

Tally truthfulness() {
  Tally t;
  SplitMix64 rng(20240601);
  struct Source {
    std::string mechanism;
    std::function<Instance(std::uint64_t)> make;
  };
  const std::vector<Source> sources = {
      {"kpath",
       [](std::uint64_t s) {
         return generate("layered-dag", {{"k", std::to_string(1 + s % 2)}, {"width", "3"}}, s);
       }},
      {"sqrt", [](std::uint64_t s) { return generate("layered-dag", {{"k", "1"}}, s); }},
      {"vertex-cover",
       [](std::uint64_t s) { return generate("random-gnp-cover", {{"n", "7"}}, s); }},
      {"r-out-of-k",
       [](std::uint64_t s) {
         return generate("r-out-of-k", {{"sizes", "1,2,2,1,3"}, {"r", std::to_string(1 + s % 3)}},
                         s);
       }},
  };
  int profitable = 0;
  double worst = 0.0;
  for (const auto& src : sources) {
    for (int i = 0; i < 260; ++i) {
      const Instance inst = src.make(rng.next());
      const auto& costs = inst.costs;
      const auto e = static_cast<AgentId>(rng.between(0, static_cast<std::int64_t>(costs.size()) - 1));
      const auto honest = run_mechanism(src.mechanism, inst.system, costs);
      double dev;
      switch (rng.between(0, 3)) {
        case 0: dev = 0.0; break;
        case 1: dev = honest.payments[e] > 0 ? honest.payments[e] + 0.01 : costs[e] + 1; break;
        case 2: dev = std::max(0.0, honest.payments[e] - 0.01); break;
        default: dev = rng.uniform() * 20.0;
      }
      const double gain = deviation_gain(src.mechanism, inst.system, costs, e, dev);
      worst = std::max(worst, gain);
      if (gain > 1e-6) ++profitable;
      t.check(gain <= 1e-6, src.mechanism + " agent " + std::to_string(e) + " gains " +
                                std::to_string(gain));
    }
  }
  t.extra = "profitable=" + std::to_string(profitable) + " max_gain=" + std::to_string(worst);
  return t;
}

Tally cover_payment_bound() {
  Tally t;
  int approx_skipped = 0;
  int nu_missing = 0;
  for (std::uint64_t i = 0; i < 220; ++i) {
    const std::uint64_t seed = sweep_seed(303, i);
    const int n = 4 + static_cast<int>(i % 7);
    const auto inst =
        generate("random-gnp-cover", {{"n", std::to_string(n)}, {"p", i % 2 ? "0.5" : "0.35"}}, seed);
    const auto& g = inst.system.as<VertexCoverSystem>()->graph;
    if (g.num_edges() == 0) continue;
    double nu = std::nan("");
    try {
      nu = compute_nu(inst.system, inst.costs).value;
    } catch (const BenchmarkError&) {
      ++nu_missing;
    }
    for (auto mode : {CoverMode::Exact, CoverMode::Approx2}) {
      MechanismOutcome out;
      try {
        out = vertex_cover_mechanism(g, inst.costs, mode);
      } catch (const MonotonicityError&) {
        ++approx_skipped;
        continue;
      }
      const double outside = out.winners.complement().total(inst.costs);
      const std::string tag = std::string(mode == CoverMode::Exact ? "exact" : "approx") +
                              " seed " + std::to_string(seed);
      t.check(leq(out.total_payment, out.lift.alpha * outside), tag + " p > alpha*c(V\\S)");
      if (!std::isnan(nu)) t.check(leq(out.total_payment, out.lift.alpha * nu), tag + " p > alpha*nu");
    }
  }
  t.extra = "approx_non_monotone=" + std::to_string(approx_skipped) +
            " nu_unattained=" + std::to_string(nu_missing);
  return t;
}

Tally star_case() {
  Tally t;
  for (int m : {2, 4, 9, 16}) {
    const auto sys = fixture::cover(fixture::star(m));
    const auto costs = fixture::star_costs(m);
    const auto out = vertex_cover_mechanism(fixture::star(m), costs);
    const double nu = compute_nu(sys, costs, 16).value;
    const std::string tag = "star m=" + std::to_string(m);
    t.check(near(out.total_payment, std::sqrt(m)), tag + " payment " + std::to_string(out.total_payment));
    t.check(near(nu, 1.0), tag + " nu " + std::to_string(nu));
    t.check(near(out.total_payment / nu, out.lift.alpha), tag + " ratio differs from alpha");
  }
  return t;
}

Tally payment_vs_nu(const std::vector<PathCase>& sweep) {
  Tally t;
  int missing = 0;
  for (const auto& c : sweep) {
    if (std::isnan(c.nu)) {
      ++missing;
      continue;
    }
    t.check(leq(c.outcome.total_payment, c.alpha_k1 * (c.k + 1) / c.k * c.nu),
            c.label + " p=" + std::to_string(c.outcome.total_payment));
  }
  t.extra = "nu_unattained=" + std::to_string(missing);
  return t;
}

Tally payment_vs_mu(const std::vector<PathCase>& sweep) {
  Tally t;
  for (const auto& c : sweep) {
    t.check(leq(c.outcome.total_payment, c.alpha_k1 / c.k * c.mu),
            c.label + " p=" + std::to_string(c.outcome.total_payment));
  }
  return t;
}

Tally flow_bounds(const std::vector<PathCase>& sweep) {
  Tally t;
  for (const auto& c : sweep) {
    const auto& g = c.inst.system.as<KPathSystem>()->graph;
    const auto curve = flow_cost_curve(g, c.inst.costs);
    if (!std::isnan(c.nu)) {
      t.check(leq(c.k * delta_kplus1(g, c.inst.costs, c.k), c.nu), c.label + " nu < k*delta");
    }
    t.check(leq(c.k * (curve.values[c.k + 1] - curve.values[c.k]), c.mu),
            c.label + " mu < k*(C(k+1)-C(k))");
    bool convex = true;
    for (int x = 1; x < curve.max_flow(); ++x) {
      convex = convex && curve.values[x + 1] - curve.values[x] >=
                             curve.values[x] - curve.values[x - 1] - 1e-9;
    }
    t.check(convex, c.label + " C is not convex");
  }
  return t;
}

Tally vcg_contrast() {
  Tally t;
  for (int n = 2; n <= 16; ++n) {
    const auto sys = fixture::kpath(fixture::para(n));
    const auto costs = fixture::para_costs(n);
    const std::string tag = "PARA(" + std::to_string(n) + ")";
    t.check(near(vcg(sys, costs).total_payment, n), tag + " vcg");
    t.check(near(kpath_mechanism(fixture::para(n), costs, 1).total_payment, std::sqrt(n)),
            tag + " pruning-lifting");
    t.check(near(compute_nu(sys, costs, 16).value, 1.0), tag + " nu");
  }
  return t;
}

Tally probe_family() {
  Tally t;
  const std::vector<std::string> shapes = {"1,2", "2,3,1", "2,1,3,2"};
  for (int k = 1; k <= 3; ++k) {
    const auto inst = generate("parallel-paths", {{"lengths", shapes[k - 1]}, {"k", std::to_string(k)}}, 0);
    const auto n = inst.system.num_agents();
    for (double x : {0.25, 0.5, 1.0}) {
      for (std::size_t e = 0; e < n; ++e) {
        std::vector<double> c(n, 0.0);
        c[e] = x;
        const std::string tag = "k=" + std::to_string(k) + " x=" + std::to_string(x) + " e=" +
                                std::to_string(e);
        t.check(compute_mu(inst.system, c).value == k * x, tag + " mu");
        t.check(compute_nu(inst.system, c).value == k * x, tag + " nu");
      }
    }
  }
  return t;
}

Tally clique_bound() {
  Tally t;
  int graphs = 0;
  for (std::uint64_t i = 0; graphs < 110; ++i) {
    const int n = 3 + static_cast<int>(i % 7);
    const auto inst =
        generate("random-gnp-cover", {{"n", std::to_string(n)}, {"p", "0.5"}}, sweep_seed(77, i));
    const auto& g = inst.system.as<VertexCoverSystem>()->graph;
    if (g.num_edges() == 0) continue;
    ++graphs;
    const double x = 0.5 + static_cast<double>(i % 4);
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      if (g.degree(v) == 0) continue;
      std::vector<double> c(n, 0.0);
      c[v] = x;
      const double nu = compute_nu(inst.system, c).value;
      t.check(leq(nu, x * (rho_v(g, v) - 1)), "n=" + std::to_string(n) + " v=" + std::to_string(v));
    }
  }
  return t;
}

Tally structure(const std::vector<PathCase>& sweep) {
  Tally t;
  int witnesses = 0;
  for (const auto& c : sweep) {
    const auto& g = c.inst.system.as<KPathSystem>()->graph;
    const auto h = build_dependency(c.inst.system, c.gstar);
    t.check(matches_articulation_structure(g, c.gstar, h), c.label + " articulation structure");
    t.check(has_interval_property(g, c.gstar, h), c.label + " interval property");
    if (c.nu_witness.empty()) continue;
    ++witnesses;
    const auto flow = verify_shortest_path_flow(g, c.nu_witness, c.k, kWitnessTolerance);
    t.check(flow.has_value() && flow->size == c.k + 1, c.label + " no equal shortest (k+1)-flow");
  }
  t.extra = "nu_witnesses=" + std::to_string(witnesses);
  return t;
}

Tally cross_implementation(const std::vector<PathCase>& sweep) {
  Tally t;
  int sqrt_cases = 0;
  auto same = [&](const MechanismOutcome& a, const MechanismOutcome& b, const std::string& tag) {
    bool ok = a.winners == b.winners;
    for (AgentId e : a.winners.members()) ok = ok && near(a.payments[e], b.payments[e]);
    t.check(ok, tag);
  };
  for (std::uint64_t i = 0; sqrt_cases < 110; ++i) {
    const auto inst = generate("layered-dag", {{"k", "1"}, {"layers", i % 2 ? "3" : "2"}},
                               sweep_seed(11, i));
    const auto& g = inst.system.as<KPathSystem>()->graph;
    same(kpath_mechanism(g, inst.costs, 1), sqrt_mechanism(g, inst.costs),
         "sqrt seed " + std::to_string(sweep_seed(11, i)));
    ++sqrt_cases;
  }
  for (std::uint64_t i = 0; i < 60; ++i) {
    const auto inst = generate("r-out-of-k", {{"sizes", i % 2 ? "1,2,3,2" : "2,1,1"},
                                              {"r", std::to_string(1 + i % 2)}},
                               sweep_seed(12, i));
    const auto& s = *inst.system.as<ROutOfKSystem>();
    same(r_out_of_k_mechanism(s, inst.costs), kpath_mechanism(parallel_group_network(s), inst.costs, s.r),
         "r-out-of-k seed " + std::to_string(sweep_seed(12, i)));
    same(r_out_of_k_mechanism(s, inst.costs),
         r_out_of_k_mechanism(s, inst.costs, ThresholdMethod::Bisection), "r-out-of-k bisection");
  }
  for (const auto& c : sweep) {
    const auto& g = c.inst.system.as<KPathSystem>()->graph;
    same(c.outcome, kpath_mechanism(g, c.inst.costs, c.k, ThresholdMethod::Bisection),
         c.label + " bisection");
  }
  t.extra = "sqrt_instances=" + std::to_string(sqrt_cases);
  return t;
}

Tally spectral(const std::vector<PathCase>& sweep) {
  Tally t;
  SplitMix64 rng(4242);
  for (int i = 0; i < 150; ++i) {
    const int parts = 2 + static_cast<int>(rng.between(0, 4));
    std::vector<int> sizes(parts);
    for (auto& s : sizes) s = 1 + static_cast<int>(rng.between(0, 4));
    const int r = parts - 1;
    const auto sol = solve_lozenge(sizes, r);
    const int n = std::accumulate(sizes.begin(), sizes.end(), 0);
    std::vector<int> part_of;
    for (int p = 0; p < parts; ++p) part_of.insert(part_of.end(), sizes[p], p);
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) adj[a][b] = part_of[a] != part_of[b];
    }
    t.check(std::abs(sol.beta * r - sol.alpha) <= 1e-8, "beta*r != alpha");
    t.check(std::abs(sol.alpha - oracle::top_eigenvalue(adj)) <= 1e-8, "alpha differs from dense solver");
    t.check(sol.residual <= 1e-9 * std::max(1.0, sol.alpha), "lozenge residual");
  }
  double worst = 0.0;
  for (const auto& c : sweep) {
    worst = std::max(worst, c.outcome.lift.residual);
    t.check(c.outcome.lift.residual <= kEigenResidual, c.label + " lift residual");
  }
  for (std::uint64_t i = 0; i < 60; ++i) {
    const auto inst = generate("random-gnp-cover", {{"n", "10"}, {"p", "0.4"}}, sweep_seed(99, i));
    const auto& g = inst.system.as<VertexCoverSystem>()->graph;
    if (g.num_edges() == 0) continue;
    const auto out = vertex_cover_mechanism(g, inst.costs);
    worst = std::max(worst, out.lift.residual);
    t.check(out.lift.residual <= kEigenResidual, "cover lift residual");
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "max_residual=%.3g", worst);
  t.extra = buf;
  return t;
}

}  // namespace

int main() {
  std::setvbuf(stdout, nullptr, _IONBF, 0);
  int failed = 0;
  std::vector<PathCase> sweep;
  auto report = [&](int id, const std::string& name, const std::function<Tally()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Tally t;
    try {
      t = body();
    } catch (const std::exception& e) {
      t.failures = 1;
      t.first = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool ok = t.failures == 0 && t.cases > 0;
    failed += ok ? 0 : 1;
    std::printf("%s %2d %s: %d cases, %d failures%s%s (%.1fs)\n", ok ? "PASS" : "FAIL", id,
                name.c_str(), t.cases, t.failures, t.extra.empty() ? "" : ", ",
                t.extra.c_str(), secs);
    if (!t.first.empty()) std::printf("     first failure: %s\n", t.first.c_str());
  };

  const auto start = std::chrono::steady_clock::now();
  sweep = build_path_sweep();
  std::printf("k-path sweep: %zu instances (%.1fs)\n", sweep.size(),
              std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());

  report(1, "truthfulness", truthfulness);
  report(2, "vertex cover payment bound", cover_payment_bound);
  report(3, "tight star", star_case);
  report(4, "k-path payment vs nu", [&] { return payment_vs_nu(sweep); });
  report(5, "k-path payment vs mu", [&] { return payment_vs_mu(sweep); });
  report(6, "delta and cost-curve bounds", [&] { return flow_bounds(sweep); });
  report(7, "VCG contrast on PARA", vcg_contrast);
  report(8, "probe family", probe_family);
  report(9, "clique bound", clique_bound);
  report(10, "pruned-network structure", [&] { return structure(sweep); });
  report(11, "cross-implementation equality", [&] { return cross_implementation(sweep); });
  report(12, "spectral accuracy", [&] { return spectral(sweep); });
  return failed == 0 ? 0 : 1;
}
