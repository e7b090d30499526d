#include <doctest.h>

#include "cascom/solution.hpp"
#include "test_data.hpp"

using namespace cascom;

namespace {

const Goal kComfort{{"ComfortIndex", "index"}, "room-a"};

Solution comfort_solution() {
  return make_solution("comfort", {{"comfort", 1, "h1"}, {"comfort", 0, "t1"}});
}

}  // namespace

TEST_CASE("make_solution sorts edges and derives nodes") {
  Solution s = comfort_solution();
  CHECK(s.nodes == std::vector<std::string>{"comfort", "h1", "t1"});
  REQUIRE(s.edges.size() == 2);
  CHECK(s.edges[0] == Edge{"comfort", 0, "t1"});
  CHECK(port_producers(s, "comfort") == std::vector<std::string>{"t1", "h1"});
  CHECK(port_producers(s, "t1").empty());
}

TEST_CASE("canonical order compares size, then edges, then root") {
  Solution bare = make_solution("t1", {});
  CHECK(canonical_less(bare, comfort_solution()));
  CHECK_FALSE(canonical_less(comfort_solution(), bare));
  CHECK(canonical_less(make_solution("a", {}), make_solution("b", {})));
  CHECK(canonical_less(make_solution("c", {{"c", 0, "a"}}), make_solution("c", {{"c", 0, "b"}})));
}

TEST_CASE("valid solutions pass") {
  KnowledgeBase kb = testing::load_d1();
  CHECK(validate_solution(kb, kComfort, comfort_solution()));
  CHECK(validate_solution(kb, {{"Temperature", "celsius"}, "room-a"}, make_solution("t1", {})));
  CHECK(solution_depth(kb, comfort_solution()) == 2);
  CHECK(solution_depth(kb, make_solution("t1", {})) == 1);
}

TEST_CASE("each broken invariant is reported") {
  KnowledgeBase kb = testing::load_d1();
  SUBCASE("unsatisfied port") {
    auto r = validate_solution(kb, kComfort, make_solution("comfort", {{"comfort", 0, "t1"}}));
    CHECK_FALSE(r);
    CHECK(r.violation.find("unsatisfied") != std::string::npos);
  }
  SUBCASE("wrong property on a port") {
    auto r = validate_solution(kb, kComfort,
                               make_solution("comfort", {{"comfort", 0, "h1"}, {"comfort", 1, "t1"}}));
    CHECK_FALSE(r);
    CHECK(r.violation.find("expects") != std::string::npos);
  }
  SUBCASE("root of the wrong property") {
    CHECK_FALSE(validate_solution(kb, kComfort, make_solution("t1", {})));
  }
  SUBCASE("location mismatch") {
    Goal elsewhere{{"ComfortIndex", "index"}, "room-b"};
    auto r = validate_solution(kb, elsewhere, comfort_solution());
    CHECK_FALSE(r);
    CHECK(r.violation.find("location") != std::string::npos);
    Goal anywhere{{"ComfortIndex", "index"}, std::nullopt};
    CHECK(validate_solution(kb, anywhere, comfort_solution()));
  }
  SUBCASE("unreachable node") {
    Solution s = comfort_solution();
    s.root = "t1";
    auto r = validate_solution(kb, {{"Temperature", "celsius"}, "room-a"}, s);
    CHECK_FALSE(r);
  }
  SUBCASE("port out of range") {
    Solution s = make_solution("comfort",
                               {{"comfort", 0, "t1"}, {"comfort", 1, "h1"}, {"comfort", 2, "h1"}});
    CHECK_FALSE(validate_solution(kb, kComfort, s));
  }
  SUBCASE("two producers on one port") {
    Solution s = make_solution("comfort",
                               {{"comfort", 0, "t1"}, {"comfort", 1, "h1"}, {"comfort", 1, "t1"}});
    CHECK_FALSE(validate_solution(kb, kComfort, s));
  }
  SUBCASE("task as a node") {
    CHECK_FALSE(validate_solution(kb, kComfort, make_solution("taskComfort", {})));
  }
  SUBCASE("unknown ids throw") {
    CHECK_THROWS_AS(validate_solution(kb, kComfort, make_solution("ghost", {})),
                    UnknownEntityError);
    CHECK_THROWS_AS(validate_solution(kb, kComfort,
                                      make_solution("comfort", {{"comfort", 0, "?T/celsius"},
                                                                {"comfort", 1, "h1"}})),
                    UnknownEntityError);
  }
}

TEST_CASE("cycles are detected") {
  // a consumes B and outputs A; b consumes A and outputs B.
  std::vector<ComponentDescription> comps{
      {"a", {{"B", "u"}}, {"A", "u"}, "CalcA", {}},
      {"b", {{"A", "u"}}, {"B", "u"}, "CalcB", {}},
      {"top", {{"A", "u"}}, {"C", "u"}, "Top", {}},
  };
  KnowledgeBase kb({}, comps, {});
  Solution s = make_solution("top", {{"top", 0, "a"}, {"a", 0, "b"}, {"b", 0, "a"}});
  auto r = validate_solution(kb, {{"C", "u"}, std::nullopt}, s);
  CHECK_FALSE(r);
  CHECK(r.violation.find("cycle") != std::string::npos);
}
