#include "frugal/report.hpp"

#include <cmath>
#include <cstdio>

namespace frugal {

using nlohmann::json;

json number_json(double value) {
  if (std::isnan(value)) return nullptr;
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return value;
}

json threshold_json(const Threshold& t) {
  return t.is_infinite() ? json("inf") : json(t.value());
}

json outcome_json(const MechanismOutcome& outcome) {
  json winners = json::array();
  for (AgentId e : outcome.winners.members()) {
    winners.push_back({{"agent", e},
                       {"payment", outcome.payments[e]},
                       {"t1", threshold_json(outcome.t1[e])},
                       {"t2", threshold_json(outcome.t2[e])},
                       {"weight", outcome.lift.weights.empty() ? 1.0 : outcome.lift.weights[e]}});
  }
  json components = json::array();
  for (const auto& c : outcome.components) components.push_back(c);
  json alphas = json::array();
  for (double a : outcome.lift.component_alphas) alphas.push_back(number_json(a));
  return {{"mechanism", outcome.mechanism},
          {"pruned", outcome.pruned.members()},
          {"components", components},
          {"alpha", number_json(outcome.lift.alpha)},
          {"component_alphas", alphas},
          {"eigen_residual", outcome.lift.residual},
          {"winners", winners},
          {"total_payment", outcome.total_payment}};
}

json benchmark_json(const BenchmarkValue& value) {
  json tight = json::array();
  for (const auto& t : value.tight_sets) tight.push_back(t.members());
  json out = {{"value", value.value},
              {"reference_set", value.reference.members()},
              {"witness", value.witness}};
  if (!value.tight_sets.empty()) out["tight_sets"] = tight;
  return out;
}

json frugality_json(const FrugalityReport& r) {
  json out = {{"mechanism", r.mechanism},
              {"payment", r.payment},
              {"alpha", number_json(r.alpha)},
              {"nu", number_json(r.nu)},
              {"mu", number_json(r.mu)},
              {"ratio_nu", number_json(r.ratio_nu)},
              {"ratio_mu", number_json(r.ratio_mu)},
              {"bound_nu", number_json(r.bound_nu)},
              {"bound_mu", number_json(r.bound_mu)},
              {"violation", r.violation}};
  if (!r.note.empty()) out["note"] = r.note;
  return out;
}

json probe_json(const ProbeTable& table) {
  json rows = json::array();
  for (const auto& row : table.rows) {
    rows.push_back({{"agent", row.agent},
                    {"x", row.x},
                    {"payment", row.payment},
                    {"alpha_x", row.alpha_x},
                    {"nu", row.nu},
                    {"mu", row.mu}});
  }
  return {{"mechanism", table.mechanism},
          {"distinguished", table.distinguished.members()},
          {"alpha", table.alpha},
          {"max_payment_over_x", table.max_payment_over_x},
          {"rows", rows}};
}

std::string format_number(double value, bool blank_nan) {
  if (std::isnan(value)) return blank_nan ? "" : "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string csv_header() {
  return "instance_digest,mechanism,k,alpha,payment,nu,mu,ratio_nu,ratio_mu,bound_nu,bound_mu\n";
}

std::string csv_line(const CsvRow& row) {
  std::string out = row.instance_digest + "," + row.mechanism + ",";
  out += row.k > 0 ? std::to_string(row.k) : "";
  for (double v : {row.alpha, row.payment, row.nu, row.mu, row.ratio_nu, row.ratio_mu,
                   row.bound_nu, row.bound_mu}) {
    out += "," + format_number(v, true);
  }
  return out + "\n";
}

int instance_order(const SetSystem& system) {
  if (const auto* s = system.as<KPathSystem>()) return s->k;
  if (const auto* s = system.as<ROutOfKSystem>()) return s->r;
  return 0;
}

}  // namespace frugal
