#include <doctest.h>

#include <random>

#include "cascom/qa_filter.hpp"
#include "random_kb.hpp"
#include "test_data.hpp"

using namespace cascom;

namespace {

std::vector<std::string> ids(const std::vector<TaskDescription>& tasks) {
  std::vector<std::string> out;
  for (const auto& t : tasks) out.push_back(t.id);
  return out;
}

TaskDescription task(std::string id, std::map<std::string, std::string> facets) {
  return TaskDescription{std::move(id), "task", {"A", "u"}, std::nullopt, std::move(facets)};
}

}  // namespace

TEST_CASE("D1 filtering") {
  KnowledgeBase kb = testing::load_d1();
  CHECK(ids(filter_tasks(kb, {})) == std::vector<std::string>{"taskComfort", "taskTemp"});
  CHECK(ids(filter_tasks(kb, {{"phenomenon", "comfort"}})) ==
        std::vector<std::string>{"taskComfort"});
  CHECK(ids(filter_tasks(kb, {{"domain", "building"}})).size() == 2);
}

TEST_CASE("D1 asks about phenomenon, then nothing") {
  KnowledgeBase kb = testing::load_d1();
  auto q = next_question(kb, {});
  REQUIRE(q);
  CHECK(q->facet_key == "phenomenon");
  CHECK_FALSE(next_question(kb, {{"phenomenon", "temperature"}}));
}

TEST_CASE("unknown keys and values are rejected") {
  KnowledgeBase kb = testing::load_d1();
  CHECK_THROWS_AS(validate_answers(kb, {{"colour", "red"}}), QaError);
  CHECK_THROWS_AS(validate_answers(kb, {{"domain", "garden"}}), QaError);
  CHECK_THROWS_AS(filter_tasks(kb, {{"domain", "garden"}}), QaError);
  CHECK_NOTHROW(validate_answers(kb, {{"domain", "building"}}));
}

TEST_CASE("a task without an answered facet is excluded") {
  KnowledgeBase kb({}, {}, {task("a", {{"k", "v1"}}), task("b", {})});
  CHECK(ids(filter_tasks(kb, {{"k", "v1"}})) == std::vector<std::string>{"a"});
  CHECK(ids(filter_tasks(kb, {})).size() == 2);
}

TEST_CASE("next question minimizes the worst case") {
  // "wide" splits 4 tasks 1/1/1/1, "half" 2/2, "lopsided" 3/1.
  KnowledgeBase kb({}, {},
                   {task("t1", {{"wide", "a"}, {"half", "x"}, {"lopsided", "p"}}),
                    task("t2", {{"wide", "b"}, {"half", "x"}, {"lopsided", "p"}}),
                    task("t3", {{"wide", "c"}, {"half", "y"}, {"lopsided", "p"}}),
                    task("t4", {{"wide", "d"}, {"half", "y"}, {"lopsided", "q"}})});
  CHECK(next_question(kb, {})->facet_key == "wide");
  auto q = next_question(kb, {{"half", "x"}});
  REQUIRE(q);
  CHECK(q->facet_key == "wide");
}

TEST_CASE("ties break on the smaller facet key") {
  KnowledgeBase kb({}, {},
                   {task("t1", {{"beta", "v1"}, {"alpha", "v1"}}),
                    task("t2", {{"beta", "v2"}, {"alpha", "v2"}})});
  CHECK(next_question(kb, {})->facet_key == "alpha");
}

TEST_CASE("a key needs two distinct values among the remaining tasks") {
  KnowledgeBase kb({}, {},
                   {task("t1", {{"k", "v1"}}), task("t2", {{"k", "v1"}}), task("t3", {})});
  CHECK_FALSE(next_question(kb, {}));
  KnowledgeBase kb2({}, {},
                    {task("t1", {{"k", "v1"}}), task("t2", {{"k", "v2"}}), task("t3", {})});
  REQUIRE(next_question(kb2, {}));
}

TEST_CASE("adding an answer never grows the candidate set") {
  std::mt19937_64 rng(99);
  testing::RandomKbShape shape;
  shape.tasks = 8;
  for (int i = 0; i < 200; ++i) {
    KnowledgeBase kb = testing::random_kb(rng, shape);
    AnswerSet answers;
    std::size_t previous = filter_tasks(kb, answers).size();
    for (const auto& q : kb.questions()) {
      answers[q.facet_key] =
          q.options[std::uniform_int_distribution<std::size_t>(0, q.options.size() - 1)(rng)];
      std::size_t now = filter_tasks(kb, answers).size();
      REQUIRE(now <= previous);
      previous = now;
    }
  }
}
