#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace frugal {

// Agents are dense indices 0..n-1. For path systems an agent is an edge id.
using AgentId = std::int32_t;

// Tolerance for comparing costs and bids. Integer instances compare exactly.
inline constexpr double kCostTolerance = 1e-9;

// A subset of a fixed universe of agents {0, ..., universe-1}.
class AgentSet {
 public:
  AgentSet() = default;
  explicit AgentSet(std::size_t universe) : bits_(universe, false) {}
  AgentSet(std::size_t universe, std::span<const AgentId> members);
  AgentSet(std::size_t universe, std::initializer_list<AgentId> members);

  static AgentSet all(std::size_t universe);

  std::size_t universe() const { return bits_.size(); }
  std::size_t size() const;
  bool empty() const { return size() == 0; }

  bool contains(AgentId a) const {
    return a >= 0 && static_cast<std::size_t>(a) < bits_.size() && bits_[a];
  }
  void insert(AgentId a);
  void erase(AgentId a);

  // Members in increasing id order.
  std::vector<AgentId> members() const;

  bool is_subset_of(const AgentSet& other) const;
  bool intersects(const AgentSet& other) const;

  AgentSet without(AgentId a) const;
  AgentSet unite(const AgentSet& other) const;
  AgentSet intersect(const AgentSet& other) const;
  AgentSet minus(const AgentSet& other) const;
  AgentSet complement() const;

  double total(std::span<const double> values) const;

  friend bool operator==(const AgentSet& a, const AgentSet& b) {
    return a.bits_ == b.bits_;
  }
  // Lexicographic comparison of the sorted member sequences.
  friend bool operator<(const AgentSet& a, const AgentSet& b);

 private:
  std::vector<bool> bits_;
};

// The canonical tie-breaking order used by every winner rule and pruner:
// compare the largest id in the symmetric difference; the set lacking it is
// smaller. Independent of bids, hence a fixed total order on subsets.
bool canonical_less(const AgentSet& a, const AgentSet& b);

}  // namespace frugal
