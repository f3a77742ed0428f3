#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "frugal/benchmarks.hpp"
#include "frugal/io.hpp"
#include "frugal/mechanisms.hpp"

namespace frugal {

// Finite numbers as JSON numbers, infinities as "inf"/"-inf", NaN as null.
nlohmann::json number_json(double value);
nlohmann::json threshold_json(const Threshold& t);

nlohmann::json outcome_json(const MechanismOutcome& outcome);
nlohmann::json benchmark_json(const BenchmarkValue& value);
nlohmann::json frugality_json(const FrugalityReport& report);
nlohmann::json probe_json(const ProbeTable& table);

// %.17g with "inf", "-inf" and "nan" spelled out; empty for NaN when
// `blank_nan` is set.
std::string format_number(double value, bool blank_nan = false);

struct CsvRow {
  std::string instance_digest;
  std::string mechanism;
  int k = 0;  // 0 when the instance has no k or r
  double alpha = 0.0;
  double payment = 0.0;
  double nu = 0.0;
  double mu = 0.0;
  double ratio_nu = 0.0;
  double ratio_mu = 0.0;
  double bound_nu = 0.0;
  double bound_mu = 0.0;
};

std::string csv_header();
std::string csv_line(const CsvRow& row);

// The k of a k-path instance or the r of an r-out-of-k instance, else 0.
int instance_order(const SetSystem& system);

}  // namespace frugal
