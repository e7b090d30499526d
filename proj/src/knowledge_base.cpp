#include "cascom/knowledge_base.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace cascom {

namespace {

bool is_alpha(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

void check_identifier(const std::string& owner, std::string_view what, const std::string& value) {
  if (!is_identifier(value)) {
    throw ValidationError(owner, std::string(what) + " '" + value + "' is not a valid identifier");
  }
}

void check_property(const std::string& owner, const PropertyRef& ref) {
  check_identifier(owner, "property", ref.property_id);
  if (ref.unit.empty()) {
    throw ValidationError(owner, "property " + ref.property_id + " has an empty unit");
  }
}

void check_cost(const std::string& owner, const CostVector& cost) {
  const std::pair<const char*, double> parts[] = {{"energy", cost.energy},
                                                  {"bandwidth", cost.bandwidth},
                                                  {"latency", cost.latency},
                                                  {"price", cost.price}};
  for (const auto& [name, value] : parts) {
    if (!std::isfinite(value) || value < 0.0) {
      throw ValidationError(owner, std::string("cost ") + name + " must be finite and >= 0");
    }
  }
}

template <typename T>
void sort_by_id(std::vector<T>& items) {
  std::sort(items.begin(), items.end(), [](const T& a, const T& b) { return a.id < b.id; });
}

}  // namespace

bool is_identifier(std::string_view text) {
  if (text.empty() || !is_alpha(text.front())) return false;
  return std::all_of(text.begin() + 1, text.end(),
                     [](char c) { return is_alpha(c) || is_digit(c) || c == '_' || c == '-'; });
}

bool location_matches(std::string_view sensor_location,
                      const std::optional<std::string>& goal_location) {
  return !goal_location || sensor_location == kAnyLocation || sensor_location == *goal_location;
}

KnowledgeBase::KnowledgeBase(std::vector<SensorDescription> sensors,
                             std::vector<ComponentDescription> components,
                             std::vector<TaskDescription> tasks)
    : sensors_(std::move(sensors)), components_(std::move(components)), tasks_(std::move(tasks)) {
  for (const auto& s : sensors_) {
    check_identifier("", "sensor id", s.id);
    check_property(s.id, s.produces);
    if (s.location.empty()) throw ValidationError(s.id, "location must not be empty");
    check_identifier(s.id, "wrapper", s.wrapper_type);
    check_cost(s.id, s.cost);
  }
  for (const auto& c : components_) {
    check_identifier("", "component id", c.id);
    if (c.inputs.empty()) throw ValidationError(c.id, "component needs at least one input");
    for (const auto& in : c.inputs) check_property(c.id, in);
    check_property(c.id, c.output);
    if (std::find(c.inputs.begin(), c.inputs.end(), c.output) != c.inputs.end()) {
      throw ValidationError(c.id, "output " + c.output.to_string() + " is also an input");
    }
    check_identifier(c.id, "class", c.class_name);
    check_cost(c.id, c.cost);
  }
  for (const auto& t : tasks_) {
    check_identifier("", "task id", t.id);
    check_property(t.id, t.produces);
    if (t.label.empty()) throw ValidationError(t.id, "label must not be empty");
    if (t.location && t.location->empty()) throw ValidationError(t.id, "location must not be empty");
    for (const auto& [key, value] : t.facets) {
      check_identifier(t.id, "facet key", key);
      check_identifier(t.id, "facet value", value);
    }
  }

  sort_by_id(sensors_);
  sort_by_id(components_);
  sort_by_id(tasks_);
  build_indexes();

  std::map<std::string, std::set<std::string>> options;
  for (const auto& t : tasks_) {
    for (const auto& [key, value] : t.facets) options[key].insert(value);
  }
  for (auto& [key, values] : options) {
    questions_.push_back(Question{key, "Which " + key + " are you interested in?",
                                  std::vector<std::string>(values.begin(), values.end())});
  }
}

KnowledgeBase::KnowledgeBase(const KnowledgeBase& other)
    : sensors_(other.sensors_),
      components_(other.components_),
      tasks_(other.tasks_),
      questions_(other.questions_) {
  build_indexes();
}

KnowledgeBase& KnowledgeBase::operator=(const KnowledgeBase& other) {
  if (this != &other) {
    KnowledgeBase copy(other);
    *this = std::move(copy);
  }
  return *this;
}

void KnowledgeBase::build_indexes() {
  by_id_.clear();
  sensors_by_property_.clear();
  components_by_output_.clear();
  by_id_.reserve(sensors_.size() + components_.size() + tasks_.size());

  auto add = [this](const std::string& id, EntityKind kind, std::size_t index) {
    if (!by_id_.emplace(id, std::make_pair(kind, index)).second) {
      throw ValidationError(id, "duplicate id");
    }
  };
  for (std::size_t i = 0; i < sensors_.size(); ++i) {
    add(sensors_[i].id, EntityKind::kSensor, i);
    sensors_by_property_[sensors_[i].produces].push_back(&sensors_[i]);
  }
  for (std::size_t i = 0; i < components_.size(); ++i) {
    add(components_[i].id, EntityKind::kComponent, i);
    components_by_output_[components_[i].output].push_back(&components_[i]);
  }
  for (std::size_t i = 0; i < tasks_.size(); ++i) add(tasks_[i].id, EntityKind::kTask, i);
}

std::optional<KnowledgeBase::EntityKind> KnowledgeBase::kind_of(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  if (it == by_id_.end()) return std::nullopt;
  return it->second.first;
}

const SensorDescription* KnowledgeBase::find_sensor(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  if (it == by_id_.end() || it->second.first != EntityKind::kSensor) return nullptr;
  return &sensors_[it->second.second];
}

const ComponentDescription* KnowledgeBase::find_component(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  if (it == by_id_.end() || it->second.first != EntityKind::kComponent) return nullptr;
  return &components_[it->second.second];
}

const TaskDescription* KnowledgeBase::find_task(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  if (it == by_id_.end() || it->second.first != EntityKind::kTask) return nullptr;
  return &tasks_[it->second.second];
}

const Question* KnowledgeBase::find_question(std::string_view facet_key) const {
  auto it = std::lower_bound(
      questions_.begin(), questions_.end(), facet_key,
      [](const Question& q, std::string_view key) { return q.facet_key < key; });
  if (it == questions_.end() || it->facet_key != facet_key) return nullptr;
  return &*it;
}

const std::vector<const SensorDescription*>& KnowledgeBase::sensors_producing(
    const PropertyRef& ref) const {
  static const std::vector<const SensorDescription*> kNone;
  auto it = sensors_by_property_.find(ref);
  return it == sensors_by_property_.end() ? kNone : it->second;
}

const std::vector<const ComponentDescription*>& KnowledgeBase::components_producing(
    const PropertyRef& ref) const {
  static const std::vector<const ComponentDescription*> kNone;
  auto it = components_by_output_.find(ref);
  return it == components_by_output_.end() ? kNone : it->second;
}

std::vector<PropertyRef> KnowledgeBase::vocabulary() const {
  std::set<PropertyRef> refs;
  for (const auto& s : sensors_) refs.insert(s.produces);
  for (const auto& c : components_) {
    refs.insert(c.inputs.begin(), c.inputs.end());
    refs.insert(c.output);
  }
  for (const auto& t : tasks_) refs.insert(t.produces);
  return {refs.begin(), refs.end()};
}

}  // namespace cascom
