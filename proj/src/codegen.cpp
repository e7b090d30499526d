#include "cascom/codegen.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <queue>
#include <set>

namespace cascom {

namespace {

std::string lowercase(std::string text) {
  for (char& c : text) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return text;
}

std::string xml_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

// Merged dataflow graph of every solution in the bundle.
struct Graph {
  std::set<std::string> sensors;
  std::map<std::string, std::vector<std::string>> wiring;  // component -> producer per port
};

void absorb(const KnowledgeBase& kb, const Solution& s, Graph& graph) {
  for (const auto& id : s.nodes) {
    if (kb.find_sensor(id)) {
      graph.sensors.insert(id);
      continue;
    }
    std::vector<std::string> producers = port_producers(s, id);
    auto [it, inserted] = graph.wiring.emplace(id, producers);
    if (!inserted && it->second != producers) {
      throw CodegenError("component " + id + " is wired differently in two solutions");
    }
  }
}

// Kahn's algorithm over components, smallest ready id first.
std::vector<std::string> topological_components(const Graph& graph) {
  std::map<std::string, std::size_t> pending;
  std::map<std::string, std::vector<std::string>> consumers;
  for (const auto& [id, producers] : graph.wiring) {
    std::set<std::string> deps;
    for (const auto& p : producers) {
      if (graph.wiring.count(p)) deps.insert(p);
    }
    pending[id] = deps.size();
    for (const auto& d : deps) consumers[d].push_back(id);
  }
  std::priority_queue<std::string, std::vector<std::string>, std::greater<>> ready;
  for (const auto& [id, count] : pending) {
    if (count == 0) ready.push(id);
  }
  std::vector<std::string> order;
  while (!ready.empty()) {
    std::string id = ready.top();
    ready.pop();
    order.push_back(id);
    for (const auto& consumer : consumers[id]) {
      if (--pending[consumer] == 0) ready.push(consumer);
    }
  }
  if (order.size() != graph.wiring.size()) throw CodegenError("merged solutions contain a cycle");
  return order;
}

}  // namespace

ConfigBundle generate_bundle(const KnowledgeBase& kb, const TaskDescription& task,
                             const Solution& primary, const std::vector<ExtraOutput>& extras) {
  if (auto report = validate_solution(kb, goal_of(task), primary); !report) {
    throw CodegenError("primary solution is invalid: " + report.violation);
  }

  std::vector<const ExtraOutput*> sorted_extras;
  std::set<std::string> fields{lowercase(task.produces.property_id)};
  for (const auto& extra : extras) {
    if (!fields.insert(lowercase(extra.property.property_id)).second) {
      throw CodegenError("duplicate output property " + extra.property.property_id);
    }
    Goal goal{extra.property, task.location};
    if (auto report = validate_solution(kb, goal, extra.solution); !report) {
      throw CodegenError("solution for extra " + extra.property.to_string() +
                         " is invalid: " + report.violation);
    }
    sorted_extras.push_back(&extra);
  }
  std::sort(sorted_extras.begin(), sorted_extras.end(),
            [](const ExtraOutput* a, const ExtraOutput* b) { return a->property < b->property; });

  Graph graph;
  absorb(kb, primary, graph);
  for (const ExtraOutput* extra : sorted_extras) absorb(kb, extra->solution, graph);
  const std::vector<std::string> components = topological_components(graph);

  const std::string& name = task.id;
  std::string vsd = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  vsd += "<virtual-sensor name=\"" + xml_escape(name) + "\">\n";
  vsd += "  <output-structure>\n";
  auto field = [&](const PropertyRef& ref) {
    vsd += "    <field name=\"" + xml_escape(lowercase(ref.property_id)) + "\" unit=\"" +
           xml_escape(ref.unit) + "\"/>\n";
  };
  field(task.produces);
  for (const ExtraOutput* extra : sorted_extras) field(extra->property);
  vsd += "  </output-structure>\n";
  if (components.empty()) {
    vsd += "  <processing/>\n";
  } else {
    vsd += "  <processing>\n";
    for (const auto& id : components) {
      vsd += "    <processor id=\"" + xml_escape(id) + "\" class=\"" +
             xml_escape(kb.find_component(id)->class_name) + "\"/>\n";
    }
    vsd += "  </processing>\n";
  }
  vsd += "  <sources>\n";
  for (const auto& id : graph.sensors) {
    vsd += "    <source alias=\"" + xml_escape(id) + "\" wrapper=\"" +
           xml_escape(kb.find_sensor(id)->wrapper_type) + "\"/>\n";
  }
  vsd += "  </sources>\n";
  vsd += "</virtual-sensor>\n";

  std::string wrappers;
  for (const auto& id : graph.sensors) {
    const SensorDescription* s = kb.find_sensor(id);
    wrappers += id + "=" + s->wrapper_type + ":" + s->location + "\n";
  }

  std::string plan;
  for (const auto& id : components) {
    plan += "STREAM " + id + " <- " + kb.find_component(id)->class_name + "(";
    const auto& producers = graph.wiring.at(id);
    for (std::size_t p = 0; p < producers.size(); ++p) {
      if (p) plan += ", ";
      plan += producers[p];
    }
    plan += ")\n";
  }
  plan += "OUTPUT " + primary.root + "\n";
  for (const ExtraOutput* extra : sorted_extras) {
    plan += "OUTPUT " + extra->solution.root + " # extra:" + extra->property.property_id + "\n";
  }

  ConfigBundle bundle;
  bundle.name = name;
  bundle.files = {{name + ".vsd.xml", std::move(vsd)},
                  {name + ".wrappers.properties", std::move(wrappers)},
                  {name + ".plan.txt", std::move(plan)}};
  return bundle;
}

void write_bundle(const ConfigBundle& bundle, const std::string& directory) {
  std::filesystem::create_directories(directory);
  for (const auto& file : bundle.files) {
    std::filesystem::path path = std::filesystem::path(directory) / file.filename;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << file.content;
    if (!out) throw Error("cannot write " + path.string());
  }
}

}  // namespace cascom
