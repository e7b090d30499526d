#include <doctest.h>

#include <stdexcept>

#include "cascom/planner.hpp"
#include "cascom/skb_format.hpp"
#include "cascom/synth.hpp"

using namespace cascom;

TEST_CASE("SplitMix64 matches the reference sequence") {
  SplitMix64 rng(1234567);
  CHECK(rng.next() == 6457827717110365317ULL);
  CHECK(rng.next() == 3203168211198807973ULL);
  CHECK(rng.next() == 9817491932198370423ULL);
}

TEST_CASE("small synthetic KB matches hand-computed wiring") {
  KnowledgeBase kb = synth_kb(10, 3, 42);
  REQUIRE(kb.sensors().size() == 10);
  REQUIRE(kb.components().size() == 3);
  REQUIRE(kb.tasks().size() == 3);

  const auto* s7 = kb.find_sensor("sensor-7");
  REQUIRE(s7);
  CHECK(s7->produces == PropertyRef{"p0-0", "u"});
  CHECK(s7->location == "loc-2");
  CHECK(s7->wrapper_type == "synthetic");
  CHECK(s7->cost == CostVector{1.0, 8.0, 10.0, 0.0});

  const auto* c0 = kb.find_component("comp-0");
  const auto* c1 = kb.find_component("comp-1");
  const auto* c2 = kb.find_component("comp-2");
  REQUIRE((c0 && c1 && c2));
  CHECK(c0->inputs == std::vector<PropertyRef>{{"p0-0", "u"}, {"p0-0", "u"}});
  CHECK(c1->inputs == std::vector<PropertyRef>{{"p0-0", "u"}, {"p0-0", "u"}});
  CHECK(c2->inputs == std::vector<PropertyRef>{{"pc-0", "u"}, {"p0-0", "u"}});
  CHECK(c2->output == PropertyRef{"pc-2", "u"});
  CHECK(c2->class_name == "SynthProc2");
  CHECK(c2->cost == CostVector{0.5, 4.0, 5.0, 0.0});

  const auto* t2 = kb.find_task("task-2");
  REQUIRE(t2);
  CHECK(t2->produces == PropertyRef{"pc-2", "u"});
  CHECK_FALSE(t2->location);
  CHECK(t2->facets.at("group") == "g2");
}

TEST_CASE("draws use the whole producible pool") {
  KnowledgeBase kb = synth_kb(30, 5, 7);
  CHECK(kb.find_component("comp-1")->inputs ==
        std::vector<PropertyRef>{{"p0-2", "u"}, {"pc-0", "u"}});
  CHECK(kb.find_component("comp-4")->inputs ==
        std::vector<PropertyRef>{{"pc-3", "u"}, {"p0-0", "u"}});
}

TEST_CASE("generation is deterministic and seed dependent") {
  CHECK(serialize_kb(synth_kb(40, 25, 3)) == serialize_kb(synth_kb(40, 25, 3)));
  CHECK(serialize_kb(synth_kb(40, 25, 3)) != serialize_kb(synth_kb(40, 25, 4)));
}

TEST_CASE("zero sensors is rejected") {
  CHECK_THROWS_AS(synth_kb(0, 5, 1), std::invalid_argument);
  CHECK_NOTHROW(synth_kb(1, 0, 1));
}

TEST_CASE("minimal and full-scale shapes") {
  KnowledgeBase one = synth_kb(1, 0, 0);
  REQUIRE(one.sensors().size() == 1);
  CHECK(one.sensors()[0].produces == PropertyRef{"p0-0", "u"});
  CHECK(one.components().empty());

  KnowledgeBase big = synth_kb(10000, 10000, 42);
  CHECK(big.sensors().size() == 10000);
  CHECK(big.components().size() == 10000);
  CHECK(plan(big, {{"pc-9999", "u"}, std::nullopt}, {8, 1}).size() == 1);
}
