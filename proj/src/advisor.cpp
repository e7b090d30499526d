#include "cascom/advisor.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "cascom/cost_model.hpp"
#include "cascom/planner.hpp"
#include "plan_engine.hpp"

namespace cascom {

bool is_placeholder_id(std::string_view id) { return !id.empty() && id.front() == '?'; }

std::string placeholder_id(const MissingSpec& spec) {
  return detail::placeholder_id(spec.property, spec.location);
}

namespace {

double present_cost(const KnowledgeBase& kb, const Solution& partial) {
  const CostModel equal = builtin_models().front();
  CostVector total;
  for (const auto& id : partial.nodes) {
    const CostVector* cost = nullptr;
    if (const SensorDescription* s = kb.find_sensor(id)) {
      cost = &s->cost;
    } else if (const ComponentDescription* c = kb.find_component(id)) {
      cost = &c->cost;
    } else {
      continue;  // placeholder
    }
    total.energy += cost->energy;
    total.bandwidth += cost->bandwidth;
    total.latency += cost->latency;
    total.price += cost->price;
  }
  return weighted_cost(total, equal);
}

}  // namespace

std::vector<Recommendation> recommend_deployments(const KnowledgeBase& kb, const Goal& goal,
                                                  const SearchLimits& limits) {
  if (!plan(kb, goal, SearchLimits{limits.max_depth, 1}).empty()) return {};

  detail::PlanEngine engine(kb, goal, limits, detail::EngineOptions{true, true});
  std::map<std::size_t, std::vector<std::size_t>> by_missing;
  std::map<std::string, MissingSpec> specs;
  for (std::size_t i = 0; i < engine.skeletons().size(); ++i) {
    auto missing = engine.placeholders(i);
    if (missing.empty()) continue;
    by_missing[missing.size()].push_back(i);
    for (auto& ref : missing) {
      MissingSpec spec{std::move(ref), goal.location};
      specs.emplace(placeholder_id(spec), spec);
    }
  }

  std::vector<Recommendation> out;
  for (const auto& [count, indices] : by_missing) {
    // TODO: a k-best enumeration by present cost would avoid materializing
    // every completion of a level when only the first few are kept.
    std::vector<Recommendation> level;
    for (auto& partial : engine.enumerate(indices, detail::kUnlimited)) {
      Recommendation rec;
      for (const auto& id : partial.nodes) {
        if (is_placeholder_id(id)) rec.missing.push_back(specs.at(id));
      }
      std::sort(rec.missing.begin(), rec.missing.end());
      rec.present_cost = present_cost(kb, partial);
      rec.partial = std::move(partial);
      level.push_back(std::move(rec));
    }
    // enumerate() yields canonical order, so a stable sort keeps it as the tie-break.
    std::stable_sort(level.begin(), level.end(),
                     [](const Recommendation& a, const Recommendation& b) {
                       return a.present_cost < b.present_cost;
                     });
    for (auto& rec : level) {
      if (out.size() >= limits.max_solutions) return out;
      out.push_back(std::move(rec));
    }
  }
  return out;
}

std::vector<PropertyRef> derivable_context(const KnowledgeBase& kb,
                                           const std::optional<std::string>& location) {
  std::set<PropertyRef> available;
  for (const auto& s : kb.sensors()) {
    if (location_matches(s.location, location)) available.insert(s.produces);
  }
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& c : kb.components()) {
      if (available.count(c.output)) continue;
      bool ready = std::all_of(c.inputs.begin(), c.inputs.end(),
                               [&](const PropertyRef& in) { return available.count(in) > 0; });
      if (ready) {
        available.insert(c.output);
        grew = true;
      }
    }
  }
  return {available.begin(), available.end()};
}

}  // namespace cascom
