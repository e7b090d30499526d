#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cascom/knowledge_base.hpp"

namespace cascom {

/// The data stream a task asks for.
struct Goal {
  PropertyRef produces;
  std::optional<std::string> location;  // absent: any sensor location qualifies

  bool operator==(const Goal&) const = default;
};

Goal goal_of(const TaskDescription& task);

struct SearchLimits {
  std::size_t max_depth = 8;
  std::size_t max_solutions = 64;
};

/// `consumer`'s input port `port` is fed by `producer`.
struct Edge {
  std::string consumer;
  std::size_t port = 0;
  std::string producer;

  auto operator<=>(const Edge&) const = default;
  bool operator==(const Edge&) const = default;
};

/// A rooted DAG of sensor leaves and component nodes. `nodes` and `edges`
/// are kept sorted; the root is the node no edge consumes.
struct Solution {
  std::string root;
  std::vector<std::string> nodes;
  std::vector<Edge> edges;

  bool operator==(const Solution&) const = default;
};

/// Builds a solution from a root and an unordered edge list, deriving the node set.
Solution make_solution(std::string root, std::vector<Edge> edges);

/// Canonical solution order: node count, then sorted edge list, then root id.
bool canonical_less(const Solution& a, const Solution& b);

/// Producer of each input port of `component`, in port order. Empty strings
/// mark ports without an edge.
std::vector<std::string> port_producers(const Solution& s, const std::string& component);

struct ValidityReport {
  bool ok = true;
  std::string violation;  // first violated invariant, empty when ok

  explicit operator bool() const { return ok; }
};

/// Independent check of every Solution invariant. Throws UnknownEntityError
/// when the solution names a node the KB does not contain (placeholder ids
/// included).
ValidityReport validate_solution(const KnowledgeBase& kb, const Goal& goal, const Solution& s);

/// Component-chain depth of the root: a bare sensor is 1, a component is one
/// more than its deepest producer. Assumes `s` is acyclic.
std::size_t solution_depth(const KnowledgeBase& kb, const Solution& s);

}  // namespace cascom
