#pragma once

// Search machinery shared by the planner and the deployment advisor.

#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cascom/knowledge_base.hpp"
#include "cascom/solution.hpp"

namespace cascom::detail {

inline constexpr int kSensorLeaf = -1;
inline constexpr int kPlaceholderLeaf = -2;
inline constexpr std::size_t kUnlimited = std::numeric_limits<std::size_t>::max();

/// Component index -> per-port producer: a component index, kSensorLeaf or
/// kPlaceholderLeaf.
using Assignment = std::map<int, std::vector<int>>;

/// A solution with its sensor leaves left open. `root` is a component index
/// or one of the leaf markers.
struct Skeleton {
  int root = kSensorLeaf;
  Assignment assignment;
};

struct EngineOptions {
  bool allow_placeholders = false;
  bool cache_producers = true;
};

std::string placeholder_id(const PropertyRef& ref, const std::optional<std::string>& location);

class PlanEngine {
 public:
  PlanEngine(const KnowledgeBase& kb, Goal goal, SearchLimits limits, EngineOptions options);

  const std::vector<Skeleton>& skeletons() const { return skeletons_; }

  /// Distinct placeholder properties used by skeleton `index`, sorted.
  std::vector<PropertyRef> placeholders(std::size_t index) const;

  /// Concrete solutions of the selected skeletons in canonical order, at most `limit`.
  std::vector<Solution> enumerate(const std::vector<std::size_t>& skeleton_indices,
                                  std::size_t limit) const;

 private:
  std::vector<Skeleton> expand(const PropertyRef& needed, std::size_t budget);
  const std::vector<int>& matching_sensors(const PropertyRef& ref) const;

  const KnowledgeBase& kb_;
  Goal goal_;
  SearchLimits limits_;
  EngineOptions options_;
  std::vector<char> on_path_;
  mutable std::unordered_map<PropertyRef, std::vector<int>, PropertyRefHash> sensor_cache_;
  mutable std::vector<int> scratch_;
  std::vector<Skeleton> skeletons_;
};

}  // namespace cascom::detail
