#include "cascom/synth.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace cascom {

KnowledgeBase synth_kb(std::uint64_t n_sensors, std::uint64_t n_components, std::uint64_t seed) {
  if (n_sensors < 1) throw std::invalid_argument("synth_kb needs at least one sensor");

  const std::uint64_t base_count = std::max<std::uint64_t>(1, n_sensors / 10);
  std::vector<PropertyRef> pool;
  pool.reserve(base_count + n_components);
  for (std::uint64_t k = 0; k < base_count; ++k) pool.push_back({"p0-" + std::to_string(k), "u"});

  std::vector<SensorDescription> sensors;
  sensors.reserve(n_sensors);
  for (std::uint64_t i = 0; i < n_sensors; ++i) {
    SensorDescription s;
    s.id = "sensor-" + std::to_string(i);
    s.produces = pool[i % base_count];
    s.location = "loc-" + std::to_string(i % 5);
    s.wrapper_type = "synthetic";
    s.cost = {1.0 + static_cast<double>(i % 7), 8.0, 10.0, 0.0};
    sensors.push_back(std::move(s));
  }

  SplitMix64 rng(seed);
  std::vector<ComponentDescription> components;
  std::vector<TaskDescription> tasks;
  components.reserve(n_components);
  tasks.reserve(n_components);
  for (std::uint64_t j = 0; j < n_components; ++j) {
    ComponentDescription c;
    c.id = "comp-" + std::to_string(j);
    c.inputs.push_back(pool[rng.below(pool.size())]);
    c.inputs.push_back(pool[rng.below(pool.size())]);
    c.output = {"pc-" + std::to_string(j), "u"};
    c.class_name = "SynthProc" + std::to_string(j);
    c.cost = {0.5, 4.0, 5.0, 0.0};
    pool.push_back(c.output);

    TaskDescription t;
    t.id = "task-" + std::to_string(j);
    t.label = "Produce pc-" + std::to_string(j);
    t.produces = c.output;
    t.facets["group"] = "g" + std::to_string(j % 10);
    tasks.push_back(std::move(t));
    components.push_back(std::move(c));
  }
  return KnowledgeBase(std::move(sensors), std::move(components), std::move(tasks));
}

}  // namespace cascom
