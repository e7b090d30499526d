#pragma once

// Small random knowledge bases for property tests.

#include <cstdint>
#include <random>
#include <string>

#include "cascom/knowledge_base.hpp"
#include "cascom/solution.hpp"

namespace cascom::testing {

struct RandomKbShape {
  int max_sensors = 8;
  int max_components = 8;
  int max_arity = 2;
  int properties = 5;
  int tasks = 0;
  bool integral_costs = true;  // multiples of 0.25 keep sums exact
};

inline PropertyRef random_property(std::mt19937_64& rng, int properties) {
  std::uniform_int_distribution<int> pick(0, properties - 1);
  return PropertyRef{"P" + std::to_string(pick(rng)), "u"};
}

inline CostVector random_cost(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> quarter(0, 40);
  return CostVector{quarter(rng) * 0.25, quarter(rng) * 0.25, quarter(rng) * 0.25,
                    quarter(rng) * 0.25};
}

inline std::optional<std::string> random_location(std::mt19937_64& rng) {
  switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
    case 0: return std::nullopt;
    case 1: return std::string("x");
    default: return std::string("y");
  }
}

inline KnowledgeBase random_kb(std::mt19937_64& rng, const RandomKbShape& shape = {}) {
  std::uniform_int_distribution<int> n_sensors(0, shape.max_sensors);
  std::uniform_int_distribution<int> n_components(0, shape.max_components);
  std::uniform_int_distribution<int> arity(1, shape.max_arity);
  std::uniform_int_distribution<int> location(0, 2);
  const char* locations[] = {"x", "y", "*"};

  std::vector<SensorDescription> sensors;
  for (int i = 0, n = n_sensors(rng); i < n; ++i) {
    sensors.push_back(SensorDescription{"s" + std::to_string(i),
                                        random_property(rng, shape.properties),
                                        locations[location(rng)], "w", random_cost(rng)});
  }
  std::vector<ComponentDescription> components;
  for (int j = 0, n = n_components(rng); j < n; ++j) {
    ComponentDescription c;
    c.id = "c" + std::to_string(j);
    c.output = random_property(rng, shape.properties);
    for (int k = 0, a = arity(rng); k < a; ++k) {
      PropertyRef in = random_property(rng, shape.properties);
      while (in == c.output) in = random_property(rng, shape.properties);
      c.inputs.push_back(in);
    }
    c.class_name = "Proc" + std::to_string(j);
    c.cost = random_cost(rng);
    components.push_back(std::move(c));
  }
  std::vector<TaskDescription> tasks;
  for (int t = 0; t < shape.tasks; ++t) {
    TaskDescription task;
    task.id = "t" + std::to_string(t);
    task.label = "task " + std::to_string(t);
    task.produces = random_property(rng, shape.properties);
    task.location = random_location(rng);
    std::uniform_int_distribution<int> value(0, 2);
    task.facets["a"] = "v" + std::to_string(value(rng));
    if (value(rng) != 0) task.facets["b"] = "w" + std::to_string(value(rng));
    tasks.push_back(std::move(task));
  }
  return KnowledgeBase(std::move(sensors), std::move(components), std::move(tasks));
}

inline Goal random_goal(std::mt19937_64& rng, int properties = 5) {
  return Goal{random_property(rng, properties), random_location(rng)};
}

}  // namespace cascom::testing
