#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <sstream>

#include "cascom/cli.hpp"
#include "test_data.hpp"

using namespace cascom;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "cascom_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"plan", "--kb", testing::data_path("d1.skb")}).code == 2);
  CHECK(run({"synth", "--sensors", "0", "--components", "1", "--seed", "1", "--out",
             scratch("zero.skb").string()})
            .code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("validate") {
  auto ok = run({"validate", testing::data_path("d1.skb")});
  CHECK(ok.code == 0);
  fs::path broken = scratch("broken.skb");
  std::ofstream(broken) << "@prefix s: <skb:> .\ns:x a s:Sensor ;\n  s:unit \"u\"\n";
  auto bad = run({"validate", broken.string()});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("line") != std::string::npos);
  CHECK(run({"validate", scratch("absent.skb").string()}).code == 1);
}

TEST_CASE("plan prints ranked solutions or recommendations") {
  auto ok = run({"plan", "--kb", testing::data_path("d1.skb"), "--task", "taskComfort", "--model",
                 "energy-saver"});
  REQUIRE(ok.code == 0);
  auto doc = nlohmann::json::parse(ok.out);
  CHECK(doc["solutions"][0]["cost"] == 3.5);

  auto none = run({"plan", "--kb", testing::data_path("d2.skb"), "--task", "taskComfort"});
  CHECK(none.code == 0);
  auto recs = nlohmann::json::parse(none.out);
  CHECK(recs["solutions"].empty());
  CHECK(recs["recommendations"].size() == 1);

  CHECK(run({"plan", "--kb", testing::data_path("d1.skb"), "--task", "taskNope"}).code == 1);
  CHECK(run({"plan", "--kb", testing::data_path("d1.skb"), "--task", "taskComfort", "--model",
             "fastest"})
            .code == 2);
}

TEST_CASE("wizard writes the golden bundle") {
  fs::path out = scratch("bundle");
  fs::remove_all(out);
  auto r = run({"wizard", "--kb", testing::data_path("d1.skb"), "--script",
                testing::data_path("comfort.json"), "--out", out.string()});
  REQUIRE(r.code == 0);
  for (const char* name :
       {"taskComfort.vsd.xml", "taskComfort.wrappers.properties", "taskComfort.plan.txt"}) {
    CHECK(testing::read_file((out / name).string()) ==
          testing::read_file(testing::data_path(std::string("golden/") + name)));
  }
}

TEST_CASE("synth then bench") {
  fs::path kb = scratch("synth.skb");
  REQUIRE(run({"synth", "--sensors", "50", "--components", "30", "--seed", "7", "--out",
               kb.string()})
              .code == 0);
  CHECK(run({"validate", kb.string()}).code == 0);
  auto bench = run({"bench", "--kb", kb.string(), "--goal", "pc-29"});
  REQUIRE(bench.code == 0);
  auto doc = nlohmann::json::parse(bench.out);
  CHECK(doc["solutions"].get<int>() > 0);
  CHECK(doc["components"] == 30);
  CHECK(doc.contains("plan_ms"));
  CHECK(run({"bench", "--kb", kb.string(), "--goal", "nothing"}).code == 2);
}
