#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "cascom/knowledge_base.hpp"
#include "cascom/solution.hpp"

namespace cascom {

/// A sensor that would have to be deployed.
struct MissingSpec {
  PropertyRef property;
  std::optional<std::string> location;  // the goal's location

  auto operator<=>(const MissingSpec&) const = default;
  bool operator==(const MissingSpec&) const = default;
};

/// Deployment advice for a goal the KB cannot serve. `partial` is a solution
/// whose missing sensors appear as placeholder leaves, with ids of the form
/// "?<property_id>/<unit>[@<location>]".
struct Recommendation {
  std::vector<MissingSpec> missing;  // sorted, deduplicated, never empty
  Solution partial;
  double present_cost = 0.0;  // existing nodes under equal weights
};

bool is_placeholder_id(std::string_view id);
std::string placeholder_id(const MissingSpec& spec);

/// Empty when plan() already succeeds. Otherwise reruns the search allowing a
/// placeholder wherever a needed property has no eligible producer, and
/// returns the completions ordered by (missing count, present cost, canonical
/// order), truncated to limits.max_solutions.
std::vector<Recommendation> recommend_deployments(const KnowledgeBase& kb, const Goal& goal,
                                                  const SearchLimits& limits);

/// Everything producible at `location`: sensor outputs there, closed under
/// components whose inputs are all available. Sorted.
std::vector<PropertyRef> derivable_context(const KnowledgeBase& kb,
                                           const std::optional<std::string>& location);

}  // namespace cascom
