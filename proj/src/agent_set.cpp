#include "frugal/agent_set.hpp"

#include <algorithm>
#include <stdexcept>

namespace frugal {

AgentSet::AgentSet(std::size_t universe, std::span<const AgentId> members)
    : bits_(universe, false) {
  for (AgentId a : members) insert(a);
}

AgentSet::AgentSet(std::size_t universe, std::initializer_list<AgentId> members)
    : bits_(universe, false) {
  for (AgentId a : members) insert(a);
}

AgentSet AgentSet::all(std::size_t universe) {
  AgentSet s(universe);
  s.bits_.flip();
  return s;
}

std::size_t AgentSet::size() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true));
}

void AgentSet::insert(AgentId a) {
  if (a < 0 || static_cast<std::size_t>(a) >= bits_.size()) {
    throw std::out_of_range("agent id " + std::to_string(a) +
                            " outside universe of size " +
                            std::to_string(bits_.size()));
  }
  bits_[a] = true;
}

void AgentSet::erase(AgentId a) {
  if (contains(a)) bits_[a] = false;
}

std::vector<AgentId> AgentSet::members() const {
  std::vector<AgentId> out;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) out.push_back(static_cast<AgentId>(i));
  }
  return out;
}

bool AgentSet::is_subset_of(const AgentSet& other) const {
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] && !other.contains(static_cast<AgentId>(i))) return false;
  }
  return true;
}

bool AgentSet::intersects(const AgentSet& other) const {
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] && other.contains(static_cast<AgentId>(i))) return true;
  }
  return false;
}

AgentSet AgentSet::without(AgentId a) const {
  AgentSet s = *this;
  s.erase(a);
  return s;
}

AgentSet AgentSet::unite(const AgentSet& other) const {
  AgentSet s = *this;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (other.contains(static_cast<AgentId>(i))) s.bits_[i] = true;
  }
  return s;
}

AgentSet AgentSet::intersect(const AgentSet& other) const {
  AgentSet s(bits_.size());
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    s.bits_[i] = bits_[i] && other.contains(static_cast<AgentId>(i));
  }
  return s;
}

AgentSet AgentSet::minus(const AgentSet& other) const {
  AgentSet s(bits_.size());
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    s.bits_[i] = bits_[i] && !other.contains(static_cast<AgentId>(i));
  }
  return s;
}

AgentSet AgentSet::complement() const {
  AgentSet s = *this;
  s.bits_.flip();
  return s;
}

double AgentSet::total(std::span<const double> values) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) sum += values[i];
  }
  return sum;
}

bool operator<(const AgentSet& a, const AgentSet& b) {
  const auto ma = a.members();
  const auto mb = b.members();
  return std::lexicographical_compare(ma.begin(), ma.end(), mb.begin(), mb.end());
}

bool canonical_less(const AgentSet& a, const AgentSet& b) {
  const std::size_t n = std::max(a.universe(), b.universe());
  for (std::size_t i = n; i-- > 0;) {
    const bool in_a = a.contains(static_cast<AgentId>(i));
    const bool in_b = b.contains(static_cast<AgentId>(i));
    if (in_a != in_b) return in_b;
  }
  return false;
}

}  // namespace frugal
