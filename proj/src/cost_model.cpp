#include "cascom/cost_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace cascom {

std::vector<CostModel> builtin_models() {
  return {
      CostModel{"lowest-total", 1.0, 1.0, 1.0, 1.0},
      CostModel{"energy-saver", 1.0, 0.0, 0.0, 0.0},
      CostModel{"cheapest", 0.0, 0.0, 0.0, 1.0},
  };
}

void validate_model(const CostModel& model) {
  if (!is_identifier(model.name)) {
    throw ValidationError(model.name, "cost model name is not a valid identifier");
  }
  const double weights[] = {model.w_energy, model.w_bandwidth, model.w_latency, model.w_price};
  bool any_positive = false;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) {
      throw ValidationError(model.name, "cost model weights must be finite and >= 0");
    }
    any_positive = any_positive || w > 0.0;
  }
  if (!any_positive) throw ValidationError(model.name, "cost model needs a positive weight");
}

std::vector<CostModel> parse_cost_models(std::string_view text) {
  std::vector<CostModel> models;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    CostModel model;
    if (!(fields >> model.name)) continue;
    std::string trailing;
    if (!(fields >> model.w_energy >> model.w_bandwidth >> model.w_latency >> model.w_price) ||
        (fields >> trailing)) {
      throw Error("cost models line " + std::to_string(line_no) +
                  ": expected 'name w_energy w_bandwidth w_latency w_price'");
    }
    try {
      validate_model(model);
    } catch (const ValidationError& e) {
      throw Error("cost models line " + std::to_string(line_no) + ": " + e.what());
    }
    models.push_back(std::move(model));
  }
  return models;
}

std::vector<CostModel> load_cost_models_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open cost model file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_cost_models(buffer.str());
}

std::vector<CostModel> model_catalog(const std::vector<CostModel>& custom) {
  std::vector<CostModel> models = builtin_models();
  std::set<std::string> names;
  for (const auto& m : models) names.insert(m.name);
  for (const auto& m : custom) {
    validate_model(m);
    if (!names.insert(m.name).second) throw ValidationError(m.name, "duplicate cost model name");
    models.push_back(m);
  }
  return models;
}

const CostModel* find_model(const std::vector<CostModel>& models, std::string_view name) {
  auto it = std::find_if(models.begin(), models.end(),
                         [&](const CostModel& m) { return m.name == name; });
  return it == models.end() ? nullptr : &*it;
}

double weighted_cost(const CostVector& cost, const CostModel& model) {
  return model.w_energy * cost.energy + model.w_bandwidth * cost.bandwidth +
         model.w_latency * cost.latency + model.w_price * cost.price;
}

double solution_cost(const KnowledgeBase& kb, const Solution& s, const CostModel& model) {
  // Attribute totals first, so equal node multisets give bit-identical costs.
  CostVector total;
  std::set<std::string> seen;
  for (const auto& id : s.nodes) {
    if (!seen.insert(id).second) continue;
    const CostVector* cost = nullptr;
    if (const SensorDescription* sensor = kb.find_sensor(id)) {
      cost = &sensor->cost;
    } else if (const ComponentDescription* comp = kb.find_component(id)) {
      cost = &comp->cost;
    } else {
      throw UnknownEntityError(id);
    }
    total.energy += cost->energy;
    total.bandwidth += cost->bandwidth;
    total.latency += cost->latency;
    total.price += cost->price;
  }
  return weighted_cost(total, model);
}

std::vector<RankedSolution> rank_solutions(const KnowledgeBase& kb,
                                           const std::vector<Solution>& solutions,
                                           const CostModel& model) {
  std::vector<RankedSolution> ranked;
  ranked.reserve(solutions.size());
  for (const auto& s : solutions) ranked.push_back({s, solution_cost(kb, s, model)});
  std::sort(ranked.begin(), ranked.end(), [](const RankedSolution& a, const RankedSolution& b) {
    if (a.cost != b.cost) return a.cost < b.cost;
    return canonical_less(a.solution, b.solution);
  });
  return ranked;
}

}  // namespace cascom
