#pragma once

#include <optional>
#include <vector>

#include <json.hpp>

#include "cascom/advisor.hpp"
#include "cascom/codegen.hpp"
#include "cascom/cost_model.hpp"
#include "cascom/knowledge_base.hpp"
#include "cascom/solution.hpp"
#include "cascom/wizard.hpp"

namespace cascom {

/// A JSON document does not have the expected shape.
class SchemaError : public Error {
 public:
  using Error::Error;
};

nlohmann::json to_json(const PropertyRef& ref);
nlohmann::json to_json(const Solution& s);
nlohmann::json to_json(const TaskDescription& task);
nlohmann::json to_json(const Question& question);
nlohmann::json to_json(const Recommendation& rec);
nlohmann::json to_json(const CostModel& model);
/// [{rank, cost, root, nodes, edges}, ...]
nlohmann::json to_json(const std::vector<RankedSolution>& ranked);
/// {filename: content}
nlohmann::json to_json(const ConfigBundle& bundle);

/// Reads {"answers": {k: v}, "task_id", "model", "extras": [...], "solution_index"}.
/// "model", "extras" and "solution_index" are optional.
WizardScript wizard_script_from_json(const nlohmann::json& doc);

}  // namespace cascom
