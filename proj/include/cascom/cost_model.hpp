#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cascom/knowledge_base.hpp"
#include "cascom/solution.hpp"

namespace cascom {

/// Named linear weights over the four cost attributes.
struct CostModel {
  std::string name;
  double w_energy = 0.0;
  double w_bandwidth = 0.0;
  double w_latency = 0.0;
  double w_price = 0.0;

  bool operator==(const CostModel&) const = default;
};

/// "lowest-total" (the default), then "energy-saver" and "cheapest".
std::vector<CostModel> builtin_models();

/// Throws ValidationError unless weights are finite, non-negative and not all zero.
void validate_model(const CostModel& model);

/// One model per non-blank line: `name w_energy w_bandwidth w_latency w_price`.
/// `#` starts a comment.
std::vector<CostModel> parse_cost_models(std::string_view text);
std::vector<CostModel> load_cost_models_file(const std::string& path);

/// Built-in models followed by `custom`; a repeated name is an error.
std::vector<CostModel> model_catalog(const std::vector<CostModel>& custom = {});
const CostModel* find_model(const std::vector<CostModel>& models, std::string_view name);

double weighted_cost(const CostVector& cost, const CostModel& model);

/// Weighted cost summed over the distinct nodes of `s` (a shared node is paid
/// once). Throws UnknownEntityError for ids the KB does not contain.
double solution_cost(const KnowledgeBase& kb, const Solution& s, const CostModel& model);

struct RankedSolution {
  Solution solution;
  double cost = 0.0;
};

/// Sorted by (cost, node count, edge list, root); the head is the default pick.
std::vector<RankedSolution> rank_solutions(const KnowledgeBase& kb,
                                           const std::vector<Solution>& solutions,
                                           const CostModel& model);

}  // namespace cascom
