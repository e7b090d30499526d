#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "cascom/codegen.hpp"
#include "cascom/cost_model.hpp"
#include "cascom/knowledge_base.hpp"
#include "cascom/qa_filter.hpp"
#include "cascom/solution.hpp"

namespace cascom {

/// A request the wizard cannot satisfy (unknown task, extra not derivable, ...).
class WizardError : public Error {
 public:
  using Error::Error;
};

/// Everything needed to drive the six phases without interaction.
struct WizardScript {
  AnswerSet answers;
  std::string task_id;
  std::string model = "lowest-total";
  std::vector<std::string> extras;  // "property_id" or "property_id/unit"
  std::size_t solution_index = 0;
};

/// An extra output together with its candidate solutions.
struct PlannedExtra {
  PropertyRef property;
  std::vector<Solution> solutions;
};

/// The task `task_id`, provided it survives filtering by `answers`.
const TaskDescription& select_task(const KnowledgeBase& kb, const AnswerSet& answers,
                                   std::string_view task_id);

/// Context derivable at the task's location, without the task's own property.
std::vector<PropertyRef> offered_extras(const KnowledgeBase& kb, const TaskDescription& task);

/// Matches `name` against `offered`; throws WizardError when it is unknown or ambiguous.
PropertyRef resolve_extra(const std::vector<PropertyRef>& offered, std::string_view name);

/// Resolves and plans every requested extra, sorted by property. Throws
/// WizardError for duplicates or extras with no solution within `limits`.
std::vector<PlannedExtra> plan_extras(const KnowledgeBase& kb, const TaskDescription& task,
                                      const std::vector<std::string>& names,
                                      const SearchLimits& limits);

/// Picks the primary solution at `index` of the ranking under `model`, then,
/// for each extra in property order, its best-ranked solution that is wired
/// compatibly with everything chosen so far, and renders the bundle.
ConfigBundle assemble_bundle(const KnowledgeBase& kb, const TaskDescription& task,
                             const std::vector<Solution>& solutions, std::size_t index,
                             const std::vector<PlannedExtra>& extras, const CostModel& model);

/// The whole flow in one call; the same steps the session API takes.
ConfigBundle run_wizard(const KnowledgeBase& kb, const std::vector<CostModel>& models,
                        const WizardScript& script, const SearchLimits& limits = {});

}  // namespace cascom
