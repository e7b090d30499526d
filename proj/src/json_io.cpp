#include "cascom/json_io.hpp"

#include <cstdint>

namespace cascom {

using nlohmann::json;

json to_json(const PropertyRef& ref) { return {{"property", ref.property_id}, {"unit", ref.unit}}; }

json to_json(const Solution& s) {
  json edges = json::array();
  for (const auto& e : s.edges) edges.push_back(json::array({e.consumer, e.port, e.producer}));
  return {{"root", s.root}, {"nodes", s.nodes}, {"edges", std::move(edges)}};
}

json to_json(const TaskDescription& task) {
  json out = {{"id", task.id},
              {"label", task.label},
              {"produces", to_json(task.produces)},
              {"facets", task.facets}};
  out["location"] = task.location ? json(*task.location) : json(nullptr);
  return out;
}

json to_json(const Question& question) {
  return {{"facet", question.facet_key}, {"text", question.text}, {"options", question.options}};
}

json to_json(const Recommendation& rec) {
  json missing = json::array();
  for (const auto& spec : rec.missing) {
    json item = to_json(spec.property);
    item["location"] = spec.location ? json(*spec.location) : json(nullptr);
    item["placeholder"] = placeholder_id(spec);
    missing.push_back(std::move(item));
  }
  return {{"missing", std::move(missing)},
          {"partial", to_json(rec.partial)},
          {"present_cost", rec.present_cost}};
}

json to_json(const CostModel& model) {
  return {{"name", model.name},
          {"weights",
           {{"energy", model.w_energy},
            {"bandwidth", model.w_bandwidth},
            {"latency", model.w_latency},
            {"price", model.w_price}}}};
}

json to_json(const std::vector<RankedSolution>& ranked) {
  json out = json::array();
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    json item = to_json(ranked[i].solution);
    item["rank"] = i;
    item["cost"] = ranked[i].cost;
    out.push_back(std::move(item));
  }
  return out;
}

json to_json(const ConfigBundle& bundle) {
  json out = json::object();
  for (const auto& file : bundle.files) out[file.filename] = file.content;
  return out;
}

WizardScript wizard_script_from_json(const json& doc) {
  if (!doc.is_object()) throw SchemaError("wizard script must be a JSON object");
  WizardScript script;
  if (doc.contains("answers")) {
    const json& answers = doc.at("answers");
    if (!answers.is_object()) throw SchemaError("answers: expected an object of strings");
    for (const auto& [key, value] : answers.items()) {
      if (!value.is_string()) throw SchemaError("answers." + key + ": expected a string");
      script.answers[key] = value.get<std::string>();
    }
  }
  if (!doc.contains("task_id") || !doc.at("task_id").is_string()) {
    throw SchemaError("task_id: required string");
  }
  script.task_id = doc.at("task_id").get<std::string>();
  if (doc.contains("model")) {
    if (!doc.at("model").is_string()) throw SchemaError("model: expected a string");
    script.model = doc.at("model").get<std::string>();
  }
  if (doc.contains("extras")) {
    const json& extras = doc.at("extras");
    if (!extras.is_array()) throw SchemaError("extras: expected an array of strings");
    for (const auto& item : extras) {
      if (!item.is_string()) throw SchemaError("extras: expected an array of strings");
      script.extras.push_back(item.get<std::string>());
    }
  }
  if (doc.contains("solution_index")) {
    const json& index = doc.at("solution_index");
    if (!index.is_number_integer() || index.get<std::int64_t>() < 0) {
      throw SchemaError("solution_index: expected a non-negative integer");
    }
    script.solution_index = index.get<std::size_t>();
  }
  return script;
}

}  // namespace cascom
