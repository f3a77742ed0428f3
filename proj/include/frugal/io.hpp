#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "frugal/core.hpp"

namespace frugal {

inline constexpr int kInstanceFormatVersion = 1;

struct Provenance {
  std::string generator;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> params;
};

struct Instance {
  SetSystem system;
  std::vector<double> costs;
  std::optional<Provenance> provenance;
};

// Parses and validates an instance document. Throws ParseError (with line and
// column) on malformed text, ValidationError on structural problems and
// MonopolyError when some agent lies in every feasible set.
Instance parse_instance(std::string_view text);

// Inverse of parse_instance: parse_instance(serialize_instance(x)) == x and
// serialize_instance is a fixed point on its own output.
std::string serialize_instance(const Instance& instance);

Instance load_instance(const std::string& path);
void save_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

// 64-bit FNV-1a of the serialized instance, as 16 hex digits.
std::string instance_digest(const Instance& instance);
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace frugal
