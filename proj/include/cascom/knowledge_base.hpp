#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cascom {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A knowledge-base invariant was violated (duplicate id, negative cost, ...).
class ValidationError : public Error {
 public:
  ValidationError(std::string entity_id, const std::string& message)
      : Error(entity_id.empty() ? message : entity_id + ": " + message),
        entity_id_(std::move(entity_id)) {}

  const std::string& entity_id() const { return entity_id_; }

 private:
  std::string entity_id_;
};

/// A node or entity id that the knowledge base does not contain.
class UnknownEntityError : public Error {
 public:
  explicit UnknownEntityError(const std::string& id)
      : Error("unknown entity id '" + id + "'"), id_(id) {}

  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

/// `[A-Za-z][A-Za-z0-9_-]*`
bool is_identifier(std::string_view text);

/// A measured or derived phenomenon together with its unit. Matching is exact.
struct PropertyRef {
  std::string property_id;
  std::string unit;

  auto operator<=>(const PropertyRef&) const = default;
  bool operator==(const PropertyRef&) const = default;

  /// "Temperature/celsius"
  std::string to_string() const { return property_id + "/" + unit; }
};

struct PropertyRefHash {
  std::size_t operator()(const PropertyRef& ref) const noexcept {
    std::size_t h = std::hash<std::string>{}(ref.property_id);
    return h ^ (std::hash<std::string>{}(ref.unit) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  }
};

/// Per-sample cost attributes of a sensor or component.
struct CostVector {
  double energy = 0.0;     // millijoules/sample
  double bandwidth = 0.0;  // bytes/sample
  double latency = 0.0;    // milliseconds
  double price = 0.0;      // currency units

  bool operator==(const CostVector&) const = default;
};

inline constexpr std::string_view kAnyLocation = "*";

struct SensorDescription {
  std::string id;
  PropertyRef produces;
  std::string location;  // "*" matches every goal location
  std::string wrapper_type;
  CostVector cost;

  bool operator==(const SensorDescription&) const = default;
};

struct ComponentDescription {
  std::string id;
  std::vector<PropertyRef> inputs;  // port order is significant
  PropertyRef output;
  std::string class_name;
  CostVector cost;

  bool operator==(const ComponentDescription&) const = default;
};

struct TaskDescription {
  std::string id;
  std::string label;
  PropertyRef produces;
  std::optional<std::string> location;
  std::map<std::string, std::string> facets;

  bool operator==(const TaskDescription&) const = default;
};

struct Question {
  std::string facet_key;
  std::string text;
  std::vector<std::string> options;  // sorted, deduplicated

  bool operator==(const Question&) const = default;
};

/// True when a sensor at `sensor_location` may serve a goal at `goal_location`.
bool location_matches(std::string_view sensor_location,
                      const std::optional<std::string>& goal_location);

/// Immutable registry of sensors, components and tasks.
///
/// Entities are stored sorted by id. Facet questions are derived on
/// construction, one per facet key used by any task. Construction validates
/// every invariant and throws ValidationError on the first violation.
class KnowledgeBase {
 public:
  enum class EntityKind { kSensor, kComponent, kTask };

  KnowledgeBase() = default;
  KnowledgeBase(std::vector<SensorDescription> sensors,
                std::vector<ComponentDescription> components,
                std::vector<TaskDescription> tasks);

  KnowledgeBase(const KnowledgeBase& other);
  KnowledgeBase& operator=(const KnowledgeBase& other);
  KnowledgeBase(KnowledgeBase&&) noexcept = default;
  KnowledgeBase& operator=(KnowledgeBase&&) noexcept = default;

  const std::vector<SensorDescription>& sensors() const { return sensors_; }
  const std::vector<ComponentDescription>& components() const { return components_; }
  const std::vector<TaskDescription>& tasks() const { return tasks_; }
  const std::vector<Question>& questions() const { return questions_; }

  std::optional<EntityKind> kind_of(std::string_view id) const;
  const SensorDescription* find_sensor(std::string_view id) const;
  const ComponentDescription* find_component(std::string_view id) const;
  const TaskDescription* find_task(std::string_view id) const;
  const Question* find_question(std::string_view facet_key) const;

  /// Sensors producing `ref`, ascending by id (no location filtering).
  const std::vector<const SensorDescription*>& sensors_producing(const PropertyRef& ref) const;
  /// Components whose output is `ref`, ascending by id.
  const std::vector<const ComponentDescription*>& components_producing(
      const PropertyRef& ref) const;

  /// Every PropertyRef mentioned anywhere in the KB, sorted.
  std::vector<PropertyRef> vocabulary() const;

  bool operator==(const KnowledgeBase& other) const {
    return sensors_ == other.sensors_ && components_ == other.components_ &&
           tasks_ == other.tasks_;
  }

 private:
  void build_indexes();

  std::vector<SensorDescription> sensors_;
  std::vector<ComponentDescription> components_;
  std::vector<TaskDescription> tasks_;
  std::vector<Question> questions_;

  std::unordered_map<std::string, std::pair<EntityKind, std::size_t>> by_id_;
  std::unordered_map<PropertyRef, std::vector<const SensorDescription*>, PropertyRefHash>
      sensors_by_property_;
  std::unordered_map<PropertyRef, std::vector<const ComponentDescription*>, PropertyRefHash>
      components_by_output_;
};

}  // namespace cascom
