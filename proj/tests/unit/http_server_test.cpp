#include <doctest.h>

#include <httplib.h>

#include <thread>

#include "cascom/http_server.hpp"
#include "test_data.hpp"

using namespace cascom;
using nlohmann::json;

TEST_CASE("session API over a real socket") {
  SessionService service(std::make_shared<const KnowledgeBase>(testing::load_d1()),
                         builtin_models());
  HttpServer server(service);
  int port = server.bind("127.0.0.1", 0);
  REQUIRE(port > 0);
  std::thread loop([&] { server.listen(); });
  server.wait_until_ready();

  httplib::Client client("127.0.0.1", port);
  auto created = client.Post("/sessions", "", "application/json");
  REQUIRE(created);
  CHECK(created->status == 201);
  CHECK(created->get_header_value("Content-Type") == "application/json");
  const std::string base = "/sessions/" + json::parse(created->body)["id"].get<std::string>();

  auto answered = client.Post(base + "/answers", R"({"facet":"phenomenon","value":"comfort"})",
                              "application/json");
  REQUIRE(answered);
  CHECK(answered->status == 200);
  auto chosen = client.Post(base + "/task", R"({"taskId":"taskComfort"})", "application/json");
  REQUIRE(chosen);
  CHECK(json::parse(chosen->body)["phase"] == "SOLUTIONS_READY");

  auto ranked = client.Get(base + "/solutions?model=energy-saver");
  REQUIRE(ranked);
  CHECK(json::parse(ranked->body)["solutions"][0]["cost"] == 3.5);

  auto selected = client.Post(base + "/select", R"({"index":0})", "application/json");
  REQUIRE(selected);
  CHECK(selected->status == 200);
  auto bundle = client.Get(base + "/bundle");
  REQUIRE(bundle);
  CHECK(json::parse(bundle->body)["taskComfort.plan.txt"] ==
        "STREAM comfort <- ComfortCalc(t1, h1)\nOUTPUT comfort\n");

  auto missing = client.Get("/sessions/unknown/bundle");
  REQUIRE(missing);
  CHECK(missing->status == 404);
  CHECK(json::parse(missing->body).contains("error"));
  auto malformed = client.Post(base + "/answers", "{", "application/json");
  REQUIRE(malformed);
  CHECK(malformed->status == 400);

  server.stop();
  loop.join();
}
