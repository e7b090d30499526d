#pragma once

// Exhaustive reference enumerator for planner tests. Shares no code with the
// planner: it grows one assignment of producers to ports at a time over all
// reachable ports, then filters cycles and depth.

#include <cstddef>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "cascom/knowledge_base.hpp"
#include "cascom/solution.hpp"

namespace cascom::testing {

using EdgeTuple = std::tuple<std::string, std::size_t, std::string>;

struct OracleSolution {
  std::string root;
  std::set<EdgeTuple> edges;
  std::set<std::string> nodes;

  bool operator<(const OracleSolution& other) const {
    return std::tie(root, edges) < std::tie(other.root, other.edges);
  }
  bool operator==(const OracleSolution& other) const {
    return root == other.root && edges == other.edges;
  }
};

std::set<OracleSolution> brute_force_solutions(const KnowledgeBase& kb, const Goal& goal,
                                               std::size_t max_depth);

/// Oracle solutions sorted by (node count, edge list, root).
std::vector<OracleSolution> brute_force_ordered(const KnowledgeBase& kb, const Goal& goal,
                                                std::size_t max_depth);

OracleSolution to_oracle(const Solution& s);

}  // namespace cascom::testing
