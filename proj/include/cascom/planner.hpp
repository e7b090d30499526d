#pragma once

#include <vector>

#include "cascom/knowledge_base.hpp"
#include "cascom/solution.hpp"

namespace cascom {

struct PlannerOptions {
  /// Reuse one location-filtered producer list per PropertyRef within a call.
  /// Disabling it rescans the KB at every port; results are identical.
  bool cache_producers = true;
};

/// Every distinct solution for `goal` with depth <= limits.max_depth, in
/// canonical order, truncated to limits.max_solutions.
///
/// Producers of a needed property are location-matching sensors and
/// components with that output. A component may not appear on its own
/// ancestor path, ports pick producers independently, and a node reached
/// through several ports is one node (it must be wired identically
/// everywhere). An empty result means the KB cannot serve the goal.
std::vector<Solution> plan(const KnowledgeBase& kb, const Goal& goal, const SearchLimits& limits,
                           const PlannerOptions& options = {});

}  // namespace cascom
