#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "frugal/benchmarks.hpp"
#include "frugal/error.hpp"
#include "frugal/generate.hpp"
#include "frugal/io.hpp"
#include "frugal/log.hpp"
#include "frugal/mechanisms.hpp"
#include "frugal/report.hpp"
#include "frugal/verify.hpp"

using nlohmann::json;

namespace {

struct Options {
  std::string mechanism;
  int k = 0;
  int r = 0;
  std::vector<std::string> instances;
  std::string fixtures;
  std::string out;
  std::uint64_t seed = 1;
  int count = 10;
  std::string kind;
  int grid = 0;
  std::vector<std::string> params;
};

std::string default_mechanism(const frugal::SetSystem& system) {
  const std::string kind = system.kind_name();
  return kind == "explicit" ? "vcg" : kind;
}

void emit(const Options& opt, const std::string& text) {
  if (opt.out.empty()) {
    std::cout << text;
  } else {
    frugal::save_text(opt.out, text);
  }
}

frugal::GeneratorParams parse_params(const Options& opt) {
  frugal::GeneratorParams params;
  for (const auto& p : opt.params) {
    const auto eq = p.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw frugal::ValidationError("--param expects name=value, got '" + p + "'");
    }
    params[p.substr(0, eq)] = p.substr(eq + 1);
  }
  if (opt.k > 0) params["k"] = std::to_string(opt.k);
  if (opt.r > 0) params["r"] = std::to_string(opt.r);
  return params;
}

// Applies --k / --r to a loaded instance.
frugal::Instance with_overrides(frugal::Instance inst, const Options& opt) {
  if (opt.k > 0) {
    const auto* s = inst.system.as<frugal::KPathSystem>();
    if (!s) throw frugal::ValidationError("--k applies only to kpath instances");
    inst.system = frugal::SetSystem(frugal::KPathSystem{s->graph, opt.k});
  }
  if (opt.r > 0) {
    const auto* s = inst.system.as<frugal::ROutOfKSystem>();
    if (!s) throw frugal::ValidationError("--r applies only to r-out-of-k instances");
    inst.system = frugal::SetSystem(frugal::ROutOfKSystem{s->num_agents, s->groups, opt.r});
  }
  return inst;
}

frugal::Instance load_one(const Options& opt) {
  if (opt.instances.size() != 1) {
    throw frugal::ValidationError("exactly one --instance is required");
  }
  return with_overrides(frugal::load_instance(opt.instances.front()), opt);
}

int cmd_run(const Options& opt) {
  const frugal::Instance inst = load_one(opt);
  const std::string mechanism =
      opt.mechanism.empty() ? default_mechanism(inst.system) : opt.mechanism;
  const auto outcome = frugal::run_mechanism(mechanism, inst.system, inst.costs);
  json report = {{"version", frugal::kInstanceFormatVersion},
                 {"instance_digest", frugal::instance_digest(inst)},
                 {"kind", inst.system.kind_name()},
                 {"outcome", frugal::outcome_json(outcome)}};
  try {
    const auto rows = frugal::frugality_report(inst.system, inst.costs, {mechanism});
    report["frugality"] = frugal::frugality_json(rows.front());
  } catch (const frugal::SizeError& e) {
    report["frugality"] = nullptr;
    report["note"] = std::string("benchmarks skipped: ") + e.what();
  } catch (const frugal::CapExceededError& e) {
    report["frugality"] = nullptr;
    report["note"] = std::string("benchmarks skipped: ") + e.what();
  }
  emit(opt, report.dump(2) + "\n");
  return 0;
}

frugal::AgentSet distinguished_set(const frugal::SetSystem& system,
                                   std::span<const double> costs) {
  if (const auto* s = system.as<frugal::KPathSystem>()) {
    return frugal::alpha_kplus1(s->graph, s->k).argmax;
  }
  if (system.as<frugal::VertexCoverSystem>()) {
    return frugal::AgentSet::all(system.num_agents());
  }
  if (const auto* s = system.as<frugal::ROutOfKSystem>()) {
    std::vector<std::pair<double, std::size_t>> totals;
    for (std::size_t i = 0; i < s->groups.size(); ++i) {
      double t = 0.0;
      for (auto a : s->groups[i]) t += costs[a];
      totals.push_back({t, i});
    }
    std::sort(totals.begin(), totals.end());
    frugal::AgentSet out(system.num_agents());
    const std::size_t take = std::min(totals.size(), static_cast<std::size_t>(s->r) + 1);
    for (std::size_t j = 0; j < take; ++j) {
      for (auto a : s->groups[totals[j].second]) out.insert(a);
    }
    return out;
  }
  throw frugal::ValidationError("--grid needs a kpath, vertex-cover or r-out-of-k instance");
}

int cmd_benchmark(const Options& opt) {
  const frugal::Instance inst = load_one(opt);
  json report = {{"instance_digest", frugal::instance_digest(inst)},
                 {"kind", inst.system.kind_name()}};
  report["mu"] = frugal::benchmark_json(frugal::compute_mu(inst.system, inst.costs));
  try {
    report["nu"] = frugal::benchmark_json(frugal::compute_nu(inst.system, inst.costs));
  } catch (const frugal::BenchmarkError& e) {
    report["nu"] = {{"value", nullptr}, {"note", e.what()}};
  }
  if (const auto* s = inst.system.as<frugal::KPathSystem>()) {
    report["lower_bounds"] = {
        {"k_delta", s->k * frugal::delta_kplus1(s->graph, inst.costs, s->k)},
        {"nu_lower", frugal::nu_lower_kpath(s->graph, inst.costs, s->k)},
        {"mu_lower", frugal::mu_lower_flow(s->graph, inst.costs, s->k)}};
  }
  if (opt.grid > 0) {
    const std::string mechanism =
        opt.mechanism.empty() ? default_mechanism(inst.system) : opt.mechanism;
    const auto table =
        frugal::probe_payments(inst.system, mechanism, distinguished_set(inst.system, inst.costs),
                               opt.grid);
    report["probe"] = frugal::probe_json(table);
  }
  emit(opt, report.dump(2) + "\n");
  return 0;
}

int cmd_experiment(const Options& opt) {
  if (opt.kind.empty()) throw frugal::ValidationError("--kind is required");
  if (opt.count < 1) throw frugal::ValidationError("--count must be positive");
  const frugal::GeneratorParams params = parse_params(opt);

  std::string csv = frugal::csv_header();
  int violations = 0;
  int undefined = 0;
  int nu_missing = 0;
  double worst_nu = 0.0;
  double worst_mu = 0.0;
  json notes = json::array();
  for (int i = 0; i < opt.count; ++i) {
    const std::uint64_t seed = frugal::sweep_seed(opt.seed, static_cast<std::uint64_t>(i));
    const frugal::Instance inst = frugal::generate(opt.kind, params, seed);
    const std::string digest = frugal::instance_digest(inst);
    const std::string mechanism =
        opt.mechanism.empty() ? default_mechanism(inst.system) : opt.mechanism;
    std::vector<frugal::FrugalityReport> rows;
    try {
      rows = frugal::frugality_report(inst.system, inst.costs, {mechanism});
    } catch (const frugal::MonotonicityError& e) {
      ++undefined;
      notes.push_back({{"instance_digest", digest}, {"seed", seed}, {"note", e.what()}});
      continue;
    }
    for (const auto& r : rows) {
      frugal::CsvRow row{digest,  r.mechanism, frugal::instance_order(inst.system),
                         r.alpha, r.payment,   r.nu,
                         r.mu,    r.ratio_nu,  r.ratio_mu,
                         r.bound_nu, r.bound_mu};
      csv += frugal::csv_line(row);
      if (std::isnan(r.nu)) ++nu_missing;
      if (r.violation) {
        ++violations;
        notes.push_back({{"instance_digest", digest}, {"seed", seed}, {"note", r.note}});
      }
      if (std::isfinite(r.ratio_nu)) worst_nu = std::max(worst_nu, r.ratio_nu);
      if (std::isfinite(r.ratio_mu)) worst_mu = std::max(worst_mu, r.ratio_mu);
    }
  }
  emit(opt, csv);
  const json summary = {{"kind", opt.kind},
                        {"seed", opt.seed},
                        {"count", opt.count},
                        {"params", params},
                        {"violations", violations},
                        {"non_monotone", undefined},
                        {"nu_unattained", nu_missing},
                        {"max_ratio_nu", worst_nu},
                        {"max_ratio_mu", worst_mu},
                        {"notes", notes}};
  if (!opt.out.empty()) {
    frugal::save_text(opt.out + ".json", summary.dump(2) + "\n");
  } else {
    std::cerr << summary.dump() << "\n";
  }
  return violations == 0 ? 0 : 1;
}

int cmd_gen(const Options& opt) {
  if (opt.kind.empty()) throw frugal::ValidationError("--kind is required");
  const auto inst = frugal::generate(opt.kind, parse_params(opt), opt.seed);
  emit(opt, frugal::serialize_instance(inst));
  return 0;
}

int cmd_verify(const Options& opt) {
  std::vector<std::pair<std::string, frugal::Instance>> fixtures;
  std::vector<std::string> paths = opt.instances;
  if (!opt.fixtures.empty()) {
    std::vector<std::string> found;
    for (const auto& entry : std::filesystem::directory_iterator(opt.fixtures)) {
      if (entry.path().extension() == ".json") found.push_back(entry.path().string());
    }
    std::sort(found.begin(), found.end());
    paths.insert(paths.end(), found.begin(), found.end());
  }
  for (const auto& p : paths) {
    fixtures.emplace_back(std::filesystem::path(p).stem().string(), frugal::load_instance(p));
  }
  frugal::VerifyOptions options;
  options.seed = opt.seed;
  options.count = opt.count;
  const auto results = frugal::verify_suite(fixtures, options);

  int failed = 0;
  int skipped = 0;
  json failures = json::array();
  for (const auto& r : results) {
    if (r.skipped) ++skipped;
    if (r.passed) continue;
    ++failed;
    failures.push_back({{"instance", r.instance}, {"check", r.check}, {"detail", r.detail}});
  }
  const json summary = {{"checks", results.size()},
                        {"failed", failed},
                        {"skipped", skipped},
                        {"failures", failures}};
  emit(opt, summary.dump(2) + "\n");
  return failed == 0 ? 0 : 1;
}

void error_record(const std::string& kind, const std::string& message) {
  std::cerr << json{{"error", kind}, {"message", message}}.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pruning-lifting mechanisms for set-system auctions"};
  app.require_subcommand(1);
  Options opt;

  auto add_instance = [&](CLI::App* cmd) {
    cmd->add_option("--instance", opt.instances, "Instance file (JSON)");
  };
  auto add_overrides = [&](CLI::App* cmd) {
    cmd->add_option("--k", opt.k, "Number of paths to buy")->check(CLI::PositiveNumber);
    cmd->add_option("--r", opt.r, "Number of groups to buy")->check(CLI::PositiveNumber);
  };
  auto add_mechanism = [&](CLI::App* cmd) {
    cmd->add_option("--mechanism", opt.mechanism,
                    "kpath, vertex-cover, vertex-cover-approx, r-out-of-k, sqrt or vcg");
  };

  auto* run = app.add_subcommand("run", "Run one mechanism on one instance");
  add_instance(run);
  add_mechanism(run);
  add_overrides(run);
  run->add_option("--out", opt.out, "Report file (default stdout)");

  auto* bench = app.add_subcommand("benchmark", "Compute nu, mu and their lower bounds");
  add_instance(bench);
  add_mechanism(bench);
  add_overrides(bench);
  bench->add_option("--grid", opt.grid, "Probe resolution; 0 disables the probe table");
  bench->add_option("--out", opt.out, "Report file (default stdout)");

  auto* exp = app.add_subcommand("experiment", "Sweep generated instances into a ratio table");
  exp->add_option("--kind", opt.kind, "Generator kind")->required();
  exp->add_option("--count", opt.count, "Number of instances");
  exp->add_option("--seed", opt.seed, "Sweep seed");
  exp->add_option("--param", opt.params, "Generator parameter name=value (repeatable)");
  add_mechanism(exp);
  add_overrides(exp);
  exp->add_option("--out", opt.out, "CSV file; the summary goes to <out>.json");

  auto* gen = app.add_subcommand("gen", "Generate one instance");
  gen->add_option("--kind", opt.kind, "Generator kind")->required();
  gen->add_option("--seed", opt.seed, "Generator seed");
  gen->add_option("--param", opt.params, "Generator parameter name=value (repeatable)");
  add_overrides(gen);
  gen->add_option("--out", opt.out, "Instance file (default stdout)");

  auto* ver = app.add_subcommand("verify", "Run the invariant suite");
  add_instance(ver);
  ver->add_option("--fixtures", opt.fixtures, "Directory of instance files to include");
  ver->add_option("--seed", opt.seed, "Seed of the generated sweeps");
  ver->add_option("--count", opt.count, "Generated instances per sweep family");
  ver->add_option("--out", opt.out, "Summary file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (opt.mechanism.size() && !frugal::is_known_mechanism(opt.mechanism)) {
      throw frugal::ValidationError("unknown mechanism '" + opt.mechanism + "'");
    }
    if (run->parsed()) return cmd_run(opt);
    if (bench->parsed()) return cmd_benchmark(opt);
    if (exp->parsed()) return cmd_experiment(opt);
    if (gen->parsed()) return cmd_gen(opt);
    return cmd_verify(opt);
  } catch (const frugal::Error& e) {
    error_record(e.kind(), e.what());
  } catch (const std::exception& e) {
    error_record("internal", e.what());
  }
  return 2;
}
