#include "cascom/planner.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <stdexcept>

#include "plan_engine.hpp"

namespace cascom {

namespace detail {

std::string placeholder_id(const PropertyRef& ref, const std::optional<std::string>& location) {
  std::string id = "?" + ref.property_id + "/" + ref.unit;
  if (location) id += "@" + *location;
  return id;
}

namespace {

// Merges `extra` into `into`; false when a component is wired differently.
bool merge_into(Assignment& into, const Assignment& extra) {
  for (const auto& [component, ports] : extra) {
    auto [it, inserted] = into.emplace(component, ports);
    if (!inserted && it->second != ports) return false;
  }
  return true;
}

}  // namespace

PlanEngine::PlanEngine(const KnowledgeBase& kb, Goal goal, SearchLimits limits,
                       EngineOptions options)
    : kb_(kb),
      goal_(std::move(goal)),
      limits_(limits),
      options_(options),
      on_path_(kb.components().size(), 0) {
  if (limits_.max_depth >= 1) skeletons_ = expand(goal_.produces, limits_.max_depth);
}

const std::vector<int>& PlanEngine::matching_sensors(const PropertyRef& ref) const {
  if (!options_.cache_producers) {
    scratch_.clear();
    const auto& all = kb_.sensors();
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (all[i].produces == ref && location_matches(all[i].location, goal_.location)) {
        scratch_.push_back(static_cast<int>(i));
      }
    }
    return scratch_;
  }
  auto it = sensor_cache_.find(ref);
  if (it != sensor_cache_.end()) return it->second;
  std::vector<int> found;
  const SensorDescription* base = kb_.sensors().data();
  for (const SensorDescription* s : kb_.sensors_producing(ref)) {
    if (location_matches(s->location, goal_.location)) found.push_back(static_cast<int>(s - base));
  }
  return sensor_cache_.emplace(ref, std::move(found)).first->second;
}

std::vector<Skeleton> PlanEngine::expand(const PropertyRef& needed, std::size_t budget) {
  std::vector<Skeleton> out;
  bool any_candidate = false;
  if (!matching_sensors(needed).empty()) {
    any_candidate = true;
    out.push_back(Skeleton{kSensorLeaf, {}});
  }

  const ComponentDescription* base = kb_.components().data();
  for (const ComponentDescription* comp : kb_.components_producing(needed)) {
    const int index = static_cast<int>(comp - base);
    if (on_path_[index] || budget < 2) continue;
    any_candidate = true;

    on_path_[index] = 1;
    // AND over ports: combine one child skeleton per port.
    std::vector<std::pair<std::vector<int>, Assignment>> partial{{{}, {}}};
    for (const PropertyRef& input : comp->inputs) {
      std::vector<Skeleton> options = expand(input, budget - 1);
      std::vector<std::pair<std::vector<int>, Assignment>> next;
      for (const auto& [ports, assignment] : partial) {
        for (const Skeleton& option : options) {
          Assignment merged = assignment;
          if (!merge_into(merged, option.assignment)) continue;
          std::vector<int> wired = ports;
          wired.push_back(option.root);
          next.emplace_back(std::move(wired), std::move(merged));
        }
      }
      partial = std::move(next);
      if (partial.empty()) break;
    }
    on_path_[index] = 0;

    for (auto& [ports, assignment] : partial) {
      // The component itself cannot already be inside a child (it was on the path).
      assignment.emplace(index, std::move(ports));
      out.push_back(Skeleton{index, std::move(assignment)});
    }
  }

  if (!any_candidate && options_.allow_placeholders) out.push_back(Skeleton{kPlaceholderLeaf, {}});
  return out;
}

std::vector<PropertyRef> PlanEngine::placeholders(std::size_t index) const {
  const Skeleton& sk = skeletons_.at(index);
  std::set<PropertyRef> found;
  if (sk.root == kPlaceholderLeaf) found.insert(goal_.produces);
  for (const auto& [component, ports] : sk.assignment) {
    const auto& inputs = kb_.components()[component].inputs;
    for (std::size_t p = 0; p < ports.size(); ++p) {
      if (ports[p] == kPlaceholderLeaf) found.insert(inputs[p]);
    }
  }
  return {found.begin(), found.end()};
}

namespace {

// A skeleton flattened into edge templates. Sensor leaves become slots; slots
// needing the same property form a group whose members may share a sensor.
struct Layout {
  std::vector<std::string> fixed_nodes;
  struct EdgeTemplate {
    const std::string* consumer;
    std::size_t port;
    std::string fixed_producer;  // empty when fed by a slot
    int slot;
  };
  std::vector<EdgeTemplate> edges;  // already in (consumer, port) order
  std::string root_fixed;
  int root_slot = -1;
  std::vector<int> slot_group;
  std::vector<std::vector<int>> group_candidates;  // sensor indices, ascending id
  std::size_t min_nodes = 0;
  std::size_t max_nodes = 0;
};

// Lazily walks leaf-slot assignments with exactly `target` distinct sensors,
// in lexicographic order of the chosen sensor ids slot by slot.
class SlotCursor {
 public:
  SlotCursor(const Layout& layout, std::size_t target)
      : layout_(layout),
        target_(target),
        choice_(layout.slot_group.size(), 0),
        use_counts_(layout.group_candidates.size()),
        distinct_(layout.group_candidates.size(), 0),
        remaining_(layout.group_candidates.size(), 0) {
    for (std::size_t g = 0; g < layout.group_candidates.size(); ++g) {
      use_counts_[g].assign(layout.group_candidates[g].size(), 0);
    }
    for (int g : layout.slot_group) ++remaining_[g];
    for (std::size_t g = 0; g < remaining_.size(); ++g) {
      sum_min_ += group_min(g);
      sum_max_ += group_max(g);
    }
  }

  bool next() {
    const std::size_t n = choice_.size();
    if (!started_) {
      started_ = true;
      return search(0, 0);
    }
    if (n == 0) return false;
    std::size_t j = n - 1;
    std::size_t k = choice_[j];
    unapply(j, k);
    return search(j, k + 1);
  }

  const std::vector<std::size_t>& choice() const { return choice_; }

 private:
  std::size_t group_min(std::size_t g) const {
    return distinct_[g] + ((distinct_[g] == 0 && remaining_[g] > 0) ? 1 : 0);
  }
  std::size_t group_max(std::size_t g) const {
    return std::min(layout_.group_candidates[g].size(), distinct_[g] + remaining_[g]);
  }
  bool feasible() const { return sum_min_ <= target_ && target_ <= sum_max_; }

  void apply(std::size_t slot, std::size_t k) {
    const int g = layout_.slot_group[slot];
    sum_min_ -= group_min(g);
    sum_max_ -= group_max(g);
    if (use_counts_[g][k]++ == 0) ++distinct_[g];
    --remaining_[g];
    sum_min_ += group_min(g);
    sum_max_ += group_max(g);
  }

  void unapply(std::size_t slot, std::size_t k) {
    const int g = layout_.slot_group[slot];
    sum_min_ -= group_min(g);
    sum_max_ -= group_max(g);
    if (--use_counts_[g][k] == 0) --distinct_[g];
    ++remaining_[g];
    sum_min_ += group_min(g);
    sum_max_ += group_max(g);
  }

  bool search(std::size_t j, std::size_t start) {
    const std::size_t n = choice_.size();
    if (j == 0 && start == 0 && n == 0) return feasible();
    while (true) {
      if (j == n) return true;
      const std::size_t options = layout_.group_candidates[layout_.slot_group[j]].size();
      bool placed = false;
      for (std::size_t k = start; k < options; ++k) {
        apply(j, k);
        if (feasible()) {
          choice_[j] = k;
          placed = true;
          break;
        }
        unapply(j, k);
      }
      if (placed) {
        ++j;
        start = 0;
        continue;
      }
      if (j == 0) return false;
      --j;
      unapply(j, choice_[j]);
      start = choice_[j] + 1;
    }
  }

  const Layout& layout_;
  std::size_t target_;
  std::vector<std::size_t> choice_;
  std::vector<std::vector<std::size_t>> use_counts_;
  std::vector<std::size_t> distinct_;
  std::vector<std::size_t> remaining_;
  std::size_t sum_min_ = 0;
  std::size_t sum_max_ = 0;
  bool started_ = false;
};

Solution materialize(const KnowledgeBase& kb, const Layout& layout,
                     const std::vector<std::size_t>& choice) {
  auto sensor_for = [&](int slot) -> const std::string& {
    const auto& candidates = layout.group_candidates[layout.slot_group[slot]];
    return kb.sensors()[candidates[choice[slot]]].id;
  };
  Solution s;
  s.root = layout.root_slot >= 0 ? sensor_for(layout.root_slot) : layout.root_fixed;
  s.edges.reserve(layout.edges.size());
  std::vector<std::string> nodes = layout.fixed_nodes;
  for (std::size_t slot = 0; slot < choice.size(); ++slot) nodes.push_back(sensor_for(slot));
  for (const auto& e : layout.edges) {
    s.edges.push_back(Edge{*e.consumer, e.port,
                           e.slot >= 0 ? sensor_for(e.slot) : e.fixed_producer});
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  s.nodes = std::move(nodes);
  return s;
}

}  // namespace

std::vector<Solution> PlanEngine::enumerate(const std::vector<std::size_t>& skeleton_indices,
                                            std::size_t limit) const {
  std::vector<Layout> layouts;
  layouts.reserve(skeleton_indices.size());
  const auto& components = kb_.components();

  for (std::size_t index : skeleton_indices) {
    const Skeleton& sk = skeletons_.at(index);
    Layout layout;
    std::map<PropertyRef, int> groups;
    std::set<std::string> placeholder_nodes;
    auto add_slot = [&](const PropertyRef& ref) {
      auto [it, inserted] = groups.emplace(ref, static_cast<int>(groups.size()));
      if (inserted) layout.group_candidates.push_back(matching_sensors(ref));
      layout.slot_group.push_back(it->second);
      return static_cast<int>(layout.slot_group.size()) - 1;
    };

    if (sk.root == kSensorLeaf) {
      layout.root_slot = add_slot(goal_.produces);
    } else if (sk.root == kPlaceholderLeaf) {
      layout.root_fixed = placeholder_id(goal_.produces, goal_.location);
      placeholder_nodes.insert(layout.root_fixed);
    } else {
      layout.root_fixed = components[sk.root].id;
    }
    for (const auto& [component, ports] : sk.assignment) {
      const ComponentDescription& comp = components[component];
      layout.fixed_nodes.push_back(comp.id);
      for (std::size_t p = 0; p < ports.size(); ++p) {
        Layout::EdgeTemplate e{&comp.id, p, {}, -1};
        if (ports[p] == kSensorLeaf) {
          e.slot = add_slot(comp.inputs[p]);
        } else if (ports[p] == kPlaceholderLeaf) {
          e.fixed_producer = placeholder_id(comp.inputs[p], goal_.location);
          placeholder_nodes.insert(e.fixed_producer);
        } else {
          e.fixed_producer = components[ports[p]].id;
        }
        layout.edges.push_back(std::move(e));
      }
    }
    layout.fixed_nodes.insert(layout.fixed_nodes.end(), placeholder_nodes.begin(),
                              placeholder_nodes.end());

    std::vector<std::size_t> slots_per_group(layout.group_candidates.size(), 0);
    for (int g : layout.slot_group) ++slots_per_group[g];
    layout.min_nodes = layout.max_nodes = layout.fixed_nodes.size();
    for (std::size_t g = 0; g < slots_per_group.size(); ++g) {
      layout.min_nodes += 1;
      layout.max_nodes += std::min(slots_per_group[g], layout.group_candidates[g].size());
    }
    layouts.push_back(std::move(layout));
  }

  std::vector<Solution> out;
  if (layouts.empty() || limit == 0) return out;

  std::size_t level = layouts.front().min_nodes;
  std::size_t top = 0;
  for (const auto& layout : layouts) {
    level = std::min(level, layout.min_nodes);
    top = std::max(top, layout.max_nodes);
  }

  for (; level <= top && out.size() < limit; ++level) {
    struct Head {
      Solution solution;
      std::size_t cursor;
    };
    auto later = [](const Head& a, const Head& b) {
      if (a.solution.edges != b.solution.edges) return b.solution.edges < a.solution.edges;
      return b.solution.root < a.solution.root;
    };
    std::vector<SlotCursor> cursors;
    std::vector<const Layout*> owners;
    for (const auto& layout : layouts) {
      if (layout.min_nodes <= level && level <= layout.max_nodes) {
        cursors.emplace_back(layout, level - layout.fixed_nodes.size());
        owners.push_back(&layout);
      }
    }
    std::priority_queue<Head, std::vector<Head>, decltype(later)> heap(later);
    for (std::size_t c = 0; c < cursors.size(); ++c) {
      if (cursors[c].next()) heap.push(Head{materialize(kb_, *owners[c], cursors[c].choice()), c});
    }
    while (!heap.empty() && out.size() < limit) {
      Head head = heap.top();
      heap.pop();
      const std::size_t c = head.cursor;
      out.push_back(std::move(head.solution));
      if (cursors[c].next()) heap.push(Head{materialize(kb_, *owners[c], cursors[c].choice()), c});
    }
  }
  return out;
}

}  // namespace detail

std::vector<Solution> plan(const KnowledgeBase& kb, const Goal& goal, const SearchLimits& limits,
                           const PlannerOptions& options) {
  if (limits.max_depth < 1 || limits.max_solutions < 1) {
    throw std::invalid_argument("search limits must be at least 1");
  }
  detail::PlanEngine engine(kb, goal, limits,
                            detail::EngineOptions{false, options.cache_producers});
  std::vector<std::size_t> all(engine.skeletons().size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return engine.enumerate(all, limits.max_solutions);
}

}  // namespace cascom
