#include "cascom/wizard.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "cascom/advisor.hpp"
#include "cascom/planner.hpp"

namespace cascom {

const TaskDescription& select_task(const KnowledgeBase& kb, const AnswerSet& answers,
                                   std::string_view task_id) {
  const TaskDescription* task = kb.find_task(task_id);
  if (!task) throw WizardError("unknown task '" + std::string(task_id) + "'");
  for (const auto& t : filter_tasks(kb, answers)) {
    if (t.id == task->id) return *task;
  }
  throw WizardError("task '" + task->id + "' does not match the given answers");
}

std::vector<PropertyRef> offered_extras(const KnowledgeBase& kb, const TaskDescription& task) {
  std::vector<PropertyRef> out = derivable_context(kb, task.location);
  out.erase(std::remove(out.begin(), out.end(), task.produces), out.end());
  return out;
}

PropertyRef resolve_extra(const std::vector<PropertyRef>& offered, std::string_view name) {
  const auto slash = name.find('/');
  const std::string_view id = name.substr(0, slash);
  std::optional<std::string_view> unit;
  if (slash != std::string_view::npos) unit = name.substr(slash + 1);
  const PropertyRef* match = nullptr;
  for (const auto& ref : offered) {
    if (ref.property_id != id) continue;
    if (unit && ref.unit != *unit) continue;
    if (match) {
      throw WizardError("extra '" + std::string(name) + "' is ambiguous; qualify it with a unit");
    }
    match = &ref;
  }
  if (!match) throw WizardError("extra '" + std::string(name) + "' is not derivable here");
  return *match;
}

std::vector<PlannedExtra> plan_extras(const KnowledgeBase& kb, const TaskDescription& task,
                                      const std::vector<std::string>& names,
                                      const SearchLimits& limits) {
  const std::vector<PropertyRef> offered = offered_extras(kb, task);
  std::vector<PlannedExtra> out;
  for (const auto& name : names) {
    PropertyRef ref = resolve_extra(offered, name);
    if (std::any_of(out.begin(), out.end(),
                    [&](const PlannedExtra& e) { return e.property == ref; })) {
      throw WizardError("extra '" + ref.to_string() + "' requested twice");
    }
    auto solutions = plan(kb, Goal{ref, task.location}, limits);
    if (solutions.empty()) {
      throw WizardError("extra '" + ref.to_string() + "' has no solution within the search limits");
    }
    out.push_back(PlannedExtra{std::move(ref), std::move(solutions)});
  }
  std::sort(out.begin(), out.end(),
            [](const PlannedExtra& a, const PlannedExtra& b) { return a.property < b.property; });
  return out;
}

namespace {

using Wiring = std::map<std::string, std::vector<std::string>>;

bool compatible(const KnowledgeBase& kb, const Solution& s, const Wiring& chosen) {
  for (const auto& id : s.nodes) {
    if (!kb.find_component(id)) continue;
    auto it = chosen.find(id);
    if (it != chosen.end() && it->second != port_producers(s, id)) return false;
  }
  return true;
}

void record(const KnowledgeBase& kb, const Solution& s, Wiring& chosen) {
  for (const auto& id : s.nodes) {
    if (kb.find_component(id)) chosen.emplace(id, port_producers(s, id));
  }
}

}  // namespace

ConfigBundle assemble_bundle(const KnowledgeBase& kb, const TaskDescription& task,
                             const std::vector<Solution>& solutions, std::size_t index,
                             const std::vector<PlannedExtra>& extras, const CostModel& model) {
  auto ranked = rank_solutions(kb, solutions, model);
  if (index >= ranked.size()) {
    throw WizardError("solution index " + std::to_string(index) + " out of range (" +
                      std::to_string(ranked.size()) + " solutions)");
  }
  const Solution& primary = ranked[index].solution;
  Wiring chosen;
  record(kb, primary, chosen);

  std::vector<ExtraOutput> outputs;
  for (const auto& extra : extras) {
    const Solution* pick = nullptr;
    for (const auto& candidate : rank_solutions(kb, extra.solutions, model)) {
      if (compatible(kb, candidate.solution, chosen)) {
        outputs.push_back(ExtraOutput{extra.property, candidate.solution});
        pick = &outputs.back().solution;
        break;
      }
    }
    if (!pick) {
      throw WizardError("extra '" + extra.property.to_string() +
                        "' conflicts with the selected solution");
    }
    record(kb, *pick, chosen);
  }
  return generate_bundle(kb, task, primary, outputs);
}

ConfigBundle run_wizard(const KnowledgeBase& kb, const std::vector<CostModel>& models,
                        const WizardScript& script, const SearchLimits& limits) {
  const CostModel* model = find_model(models, script.model);
  if (!model) throw WizardError("unknown cost model '" + script.model + "'");
  const TaskDescription& task = select_task(kb, script.answers, script.task_id);
  auto solutions = plan(kb, goal_of(task), limits);
  if (solutions.empty()) {
    throw WizardError("task '" + task.id + "' has no solution; see recommendations");
  }
  auto extras = plan_extras(kb, task, script.extras, limits);
  return assemble_bundle(kb, task, solutions, script.solution_index, extras, *model);
}

}  // namespace cascom
