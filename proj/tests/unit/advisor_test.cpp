#include <doctest.h>

#include <algorithm>
#include <random>

#include "cascom/advisor.hpp"
#include "cascom/planner.hpp"
#include "random_kb.hpp"
#include "test_data.hpp"

using namespace cascom;

namespace {

const Goal kComfort{{"ComfortIndex", "index"}, "room-a"};

// Adds one concrete sensor per missing spec and rewires the partial solution
// to use them.
std::pair<KnowledgeBase, Solution> fill_placeholders(const KnowledgeBase& kb,
                                                     const Recommendation& rec) {
  auto sensors = kb.sensors();
  std::map<std::string, std::string> rename;
  int n = 0;
  for (const auto& m : rec.missing) {
    std::string id = "deployed" + std::to_string(n++);
    sensors.push_back({id, m.property, m.location.value_or("*"), "new", {}});
    rename[placeholder_id(m)] = id;
  }
  auto mapped = [&](const std::string& id) {
    auto it = rename.find(id);
    return it == rename.end() ? id : it->second;
  };
  std::vector<Edge> edges;
  for (const auto& e : rec.partial.edges) edges.push_back({e.consumer, e.port, mapped(e.producer)});
  return {KnowledgeBase(sensors, kb.components(), kb.tasks()),
          make_solution(mapped(rec.partial.root), edges)};
}

}  // namespace

TEST_CASE("placeholder ids") {
  CHECK(placeholder_id({{"Humidity", "percent"}, "room-a"}) == "?Humidity/percent@room-a");
  CHECK(placeholder_id({{"X", "u"}, std::nullopt}) == "?X/u");
  CHECK(is_placeholder_id("?X/u"));
  CHECK_FALSE(is_placeholder_id("t1"));
}

TEST_CASE("D2 comfort needs a humidity sensor") {
  auto recs = recommend_deployments(testing::load_d2(), kComfort, {});
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].missing == std::vector<MissingSpec>{{{"Humidity", "percent"}, "room-a"}});
  CHECK(recs[0].partial ==
        make_solution("comfort",
                      {{"comfort", 0, "t1"}, {"comfort", 1, "?Humidity/percent@room-a"}}));
  CHECK(recs[0].present_cost == 29.5);
}

TEST_CASE("no advice when planning already succeeds") {
  CHECK(recommend_deployments(testing::load_d1(), kComfort, {}).empty());
}

TEST_CASE("empty KB gets a bare placeholder") {
  Goal goal{{"X", "u"}, "lab"};
  auto recs = recommend_deployments(KnowledgeBase(), goal, {});
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].missing == std::vector<MissingSpec>{{{"X", "u"}, "lab"}});
  CHECK(recs[0].partial == make_solution("?X/u@lab", {}));
  CHECK(recs[0].present_cost == 0.0);
}

TEST_CASE("derivable context") {
  KnowledgeBase d1 = testing::load_d1();
  CHECK(derivable_context(d1, std::string("room-a")) ==
        std::vector<PropertyRef>{{"ComfortIndex", "index"},
                                 {"Humidity", "percent"},
                                 {"Temperature", "celsius"}});
  CHECK(derivable_context(testing::load_d2(), std::string("room-a")) ==
        std::vector<PropertyRef>{{"Temperature", "celsius"}});
  CHECK(derivable_context(KnowledgeBase(), std::nullopt).empty());
  CHECK(derivable_context(d1, std::string("room-b")).empty());
  CHECK(derivable_context(d1, std::nullopt).size() == 3);
}

TEST_CASE("recommendations are ordered by missing count then present cost") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 100; ++i) {
    KnowledgeBase kb = testing::random_kb(rng);
    Goal goal = testing::random_goal(rng);
    auto recs = recommend_deployments(kb, goal, {4, 64});
    for (std::size_t j = 1; j < recs.size(); ++j) {
      const auto& a = recs[j - 1];
      const auto& b = recs[j];
      REQUIRE(a.missing.size() <= b.missing.size());
      if (a.missing.size() == b.missing.size()) REQUIRE(a.present_cost <= b.present_cost);
    }
  }
}

TEST_CASE("deploying the recommended sensors makes the goal plannable") {
  std::mt19937_64 rng(37);
  int checked = 0;
  for (int i = 0; i < 150; ++i) {
    KnowledgeBase kb = testing::random_kb(rng);
    Goal goal = testing::random_goal(rng);
    auto recs = recommend_deployments(kb, goal, {4, 16});
    if (!plan(kb, goal, {4, 1}).empty()) {
      REQUIRE(recs.empty());
      continue;
    }
    REQUIRE_FALSE(recs.empty());
    for (const auto& rec : recs) {
      REQUIRE_FALSE(rec.missing.empty());
      REQUIRE(std::is_sorted(rec.missing.begin(), rec.missing.end()));
      auto [extended, filled] = fill_placeholders(kb, rec);
      REQUIRE(validate_solution(extended, goal, filled));
      REQUIRE_FALSE(plan(extended, goal, {4, 1}).empty());
      ++checked;
    }
  }
  CHECK(checked > 50);
}

TEST_CASE("adding a sensor never shrinks the derivable context") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 100; ++i) {
    KnowledgeBase kb = testing::random_kb(rng);
    auto location = testing::random_location(rng);
    auto before = derivable_context(kb, location);
    auto sensors = kb.sensors();
    sensors.push_back({"extra", testing::random_property(rng, 5), "*", "w", {}});
    auto after = derivable_context(KnowledgeBase(sensors, kb.components(), kb.tasks()), location);
    REQUIRE(std::includes(after.begin(), after.end(), before.begin(), before.end()));
  }
}
