#include "cascom/solution.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace cascom {

Goal goal_of(const TaskDescription& task) { return Goal{task.produces, task.location}; }

Solution make_solution(std::string root, std::vector<Edge> edges) {
  Solution s;
  std::set<std::string> nodes{root};
  for (const auto& e : edges) {
    nodes.insert(e.consumer);
    nodes.insert(e.producer);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  s.root = std::move(root);
  s.nodes.assign(nodes.begin(), nodes.end());
  s.edges = std::move(edges);
  return s;
}

bool canonical_less(const Solution& a, const Solution& b) {
  if (a.nodes.size() != b.nodes.size()) return a.nodes.size() < b.nodes.size();
  if (a.edges != b.edges) return a.edges < b.edges;
  return a.root < b.root;
}

std::vector<std::string> port_producers(const Solution& s, const std::string& component) {
  std::vector<std::string> out;
  auto it = std::lower_bound(s.edges.begin(), s.edges.end(), component,
                             [](const Edge& e, const std::string& id) { return e.consumer < id; });
  for (; it != s.edges.end() && it->consumer == component; ++it) {
    if (out.size() <= it->port) out.resize(it->port + 1);
    out[it->port] = it->producer;
  }
  return out;
}

namespace {

ValidityReport fail(std::string message) { return ValidityReport{false, std::move(message)}; }

}  // namespace

ValidityReport validate_solution(const KnowledgeBase& kb, const Goal& goal, const Solution& s) {
  std::set<std::string> nodes;
  for (const auto& id : s.nodes) {
    auto kind = kb.kind_of(id);
    if (!kind) throw UnknownEntityError(id);
    if (*kind == KnowledgeBase::EntityKind::kTask) {
      return fail("node " + id + " is a task, not a sensor or component");
    }
    if (!nodes.insert(id).second) return fail("node " + id + " listed twice");
  }
  if (s.root.empty() || !nodes.count(s.root)) {
    if (!s.root.empty() && !kb.kind_of(s.root)) throw UnknownEntityError(s.root);
    return fail("root '" + s.root + "' is not among the nodes");
  }

  // Port coverage and typing.
  std::map<std::pair<std::string, std::size_t>, std::string> feeds;
  for (const auto& e : s.edges) {
    for (const auto* id : {&e.consumer, &e.producer}) {
      if (!kb.kind_of(*id)) throw UnknownEntityError(*id);
      if (!nodes.count(*id)) {
        return fail("edge (" + e.consumer + "," + std::to_string(e.port) + "," + e.producer +
                    ") references " + *id + " which is not a node");
      }
    }
    const ComponentDescription* consumer = kb.find_component(e.consumer);
    if (!consumer) return fail("edge consumer " + e.consumer + " is not a component");
    if (e.port >= consumer->inputs.size()) {
      return fail("component " + e.consumer + " has no input port " + std::to_string(e.port));
    }
    if (!feeds.emplace(std::make_pair(e.consumer, e.port), e.producer).second) {
      return fail("port " + std::to_string(e.port) + " of " + e.consumer +
                  " has more than one producer");
    }
    const PropertyRef& expected = consumer->inputs[e.port];
    const SensorDescription* sensor = kb.find_sensor(e.producer);
    const ComponentDescription* comp = kb.find_component(e.producer);
    const PropertyRef& produced = sensor ? sensor->produces : comp->output;
    if (produced != expected) {
      return fail("port " + std::to_string(e.port) + " of " + e.consumer + " expects " +
                  expected.to_string() + ", " + e.producer + " produces " + produced.to_string());
    }
  }
  for (const auto& id : nodes) {
    if (const ComponentDescription* c = kb.find_component(id)) {
      for (std::size_t port = 0; port < c->inputs.size(); ++port) {
        if (!feeds.count({id, port})) {
          return fail("port " + std::to_string(port) + " of " + id + " (" +
                      c->inputs[port].to_string() + ") is unsatisfied");
        }
      }
    }
  }

  const SensorDescription* root_sensor = kb.find_sensor(s.root);
  const PropertyRef& root_output =
      root_sensor ? root_sensor->produces : kb.find_component(s.root)->output;
  if (root_output != goal.produces) {
    return fail("root " + s.root + " produces " + root_output.to_string() + ", goal is " +
                goal.produces.to_string());
  }

  for (const auto& id : nodes) {
    if (const SensorDescription* sensor = kb.find_sensor(id)) {
      if (!location_matches(sensor->location, goal.location)) {
        return fail("sensor " + id + " at '" + sensor->location + "' does not match goal location '" +
                    goal.location.value_or("") + "'");
      }
    }
  }

  // Acyclicity and reachability, walking consumer -> producer.
  std::map<std::string, std::vector<std::string>> producers;
  for (const auto& e : s.edges) producers[e.consumer].push_back(e.producer);
  std::map<std::string, int> state;  // 1 = on stack, 2 = done
  std::string cycle_at;
  std::function<bool(const std::string&)> visit = [&](const std::string& id) {
    state[id] = 1;
    for (const auto& p : producers[id]) {
      if (state[p] == 1) {
        cycle_at = p;
        return false;
      }
      if (state[p] == 0 && !visit(p)) return false;
    }
    state[id] = 2;
    return true;
  };
  if (!visit(s.root)) return fail("cycle through node " + cycle_at);
  for (const auto& id : nodes) {
    if (state[id] == 0) {
      // Unreached nodes may still hide a cycle; report reachability first.
      return fail("node " + id + " is not reachable from root " + s.root);
    }
  }
  return {};
}

std::size_t solution_depth(const KnowledgeBase& kb, const Solution& s) {
  std::map<std::string, std::vector<std::string>> producers;
  for (const auto& e : s.edges) producers[e.consumer].push_back(e.producer);
  std::map<std::string, std::size_t> memo;
  std::function<std::size_t(const std::string&)> depth = [&](const std::string& id) {
    if (auto it = memo.find(id); it != memo.end()) return it->second;
    std::size_t deepest = 0;
    if (kb.find_component(id)) {
      for (const auto& p : producers[id]) deepest = std::max(deepest, depth(p));
    }
    return memo[id] = deepest + 1;
  };
  return depth(s.root);
}

}  // namespace cascom
