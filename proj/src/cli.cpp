#include "cascom/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cascom/advisor.hpp"
#include "cascom/http_server.hpp"
#include "cascom/json_io.hpp"
#include "cascom/planner.hpp"
#include "cascom/session_service.hpp"
#include "cascom/skb_format.hpp"
#include "cascom/synth.hpp"
#include "cascom/wizard.hpp"

namespace cascom {

namespace {

using nlohmann::json;
using Millis = std::chrono::duration<double, std::milli>;

struct UsageError : Error {
  using Error::Error;
};

std::vector<CostModel> load_models(const std::string& path) {
  return model_catalog(path.empty() ? std::vector<CostModel>{} : load_cost_models_file(path));
}

PropertyRef resolve_goal_property(const KnowledgeBase& kb, const std::string& name) {
  const auto slash = name.find('/');
  const std::string id = name.substr(0, slash);
  std::optional<PropertyRef> match;
  for (const auto& ref : kb.vocabulary()) {
    if (ref.property_id != id) continue;
    if (slash != std::string::npos && ref.unit != name.substr(slash + 1)) continue;
    if (match) throw UsageError("goal '" + name + "' is ambiguous; use <property>/<unit>");
    match = ref;
  }
  if (!match) {
    if (slash == std::string::npos) throw UsageError("goal '" + name + "' is unknown to the KB");
    return PropertyRef{id, name.substr(slash + 1)};
  }
  return *match;
}

int cmd_validate(const std::string& path, std::ostream& out) {
  KnowledgeBase kb = load_kb_file(path);
  out << "ok: " << kb.sensors().size() << " sensors, " << kb.components().size()
      << " components, " << kb.tasks().size() << " tasks, " << kb.questions().size()
      << " questions\n";
  return 0;
}

int cmd_plan(const std::string& kb_path, const std::string& task_id, const std::string& model_name,
             const std::string& models_path, const SearchLimits& limits, std::ostream& out) {
  KnowledgeBase kb = load_kb_file(kb_path);
  auto models = load_models(models_path);
  const CostModel* model = find_model(models, model_name);
  if (!model) throw UsageError("unknown cost model '" + model_name + "'");
  const TaskDescription* task = kb.find_task(task_id);
  if (!task) throw WizardError("unknown task '" + task_id + "'");
  const Goal goal = goal_of(*task);
  auto ranked = rank_solutions(kb, plan(kb, goal, limits), *model);

  json doc = {{"task", task->id},
              {"goal", to_json(goal.produces)},
              {"model", model->name},
              {"solutions", to_json(ranked)}};
  doc["goal"]["location"] = goal.location ? json(*goal.location) : json(nullptr);
  if (ranked.empty()) {
    json recs = json::array();
    for (const auto& rec : recommend_deployments(kb, goal, limits)) recs.push_back(to_json(rec));
    doc["recommendations"] = std::move(recs);
  }
  out << doc.dump(2) << "\n";
  return 0;
}

int cmd_wizard(const std::string& kb_path, const std::string& script_path,
               const std::string& out_dir, const std::string& models_path,
               const SearchLimits& limits, std::ostream& out) {
  KnowledgeBase kb = load_kb_file(kb_path);
  auto models = load_models(models_path);
  std::ifstream in(script_path);
  if (!in) throw Error("cannot open wizard script '" + script_path + "'");
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded()) throw SchemaError("wizard script is not valid JSON");
  ConfigBundle bundle = run_wizard(kb, models, wizard_script_from_json(doc), limits);
  write_bundle(bundle, out_dir);
  for (const auto& file : bundle.files) out << out_dir << "/" << file.filename << "\n";
  return 0;
}

int cmd_serve(const std::string& kb_path, int port, const std::string& models_path,
              const SearchLimits& limits, double expiry_minutes, std::ostream& out,
              std::ostream& err) {
  auto kb = std::make_shared<const KnowledgeBase>(load_kb_file(kb_path));
  SessionService::Options options;
  options.limits = limits;
  options.idle_expiry = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::duration<double, std::ratio<60>>(expiry_minutes));
  SessionService service(kb, load_models(models_path), options);
  HttpServer server(service);
  int bound = server.bind("0.0.0.0", port);
  if (bound < 0) {
    err << "cannot bind port " << port << "\n";
    return 1;
  }
  out << "listening on port " << bound << std::endl;
  return server.listen() ? 0 : 1;
}

int cmd_synth(std::uint64_t sensors, std::uint64_t components, std::uint64_t seed,
              const std::string& path, std::ostream& out) {
  if (sensors < 1) throw UsageError("--sensors must be at least 1");
  KnowledgeBase kb = synth_kb(sensors, components, seed);
  save_kb_file(kb, path);
  out << "wrote " << path << "\n";
  return 0;
}

int cmd_bench(const std::string& kb_path, const std::string& goal_name,
              const std::optional<std::string>& location, const SearchLimits& limits,
              std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  KnowledgeBase kb = load_kb_file(kb_path);
  const auto loaded = std::chrono::steady_clock::now();
  Goal goal{resolve_goal_property(kb, goal_name), location};
  auto solutions = plan(kb, goal, limits);
  const auto planned = std::chrono::steady_clock::now();

  json doc = {{"load_ms", Millis(loaded - start).count()},
              {"plan_ms", Millis(planned - loaded).count()},
              {"total_ms", Millis(planned - start).count()},
              {"goal", to_json(goal.produces)},
              {"solutions", solutions.size()},
              {"sensors", kb.sensors().size()},
              {"components", kb.components().size()}};
  out << doc.dump(2) << "\n";
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Composes sensors and processing components into middleware configurations",
               "cascom"};
  app.require_subcommand(1);

  SearchLimits limits;
  std::string kb_path, task_id, model_name = "lowest-total", models_path, script_path, out_dir,
                       out_path, goal_name, location;
  int port = 8080;
  double expiry_minutes = 30.0;
  std::uint64_t n_sensors = 0, n_components = 0, seed = 0;

  auto add_limits = [&](CLI::App* cmd) {
    cmd->add_option("--limit-depth", limits.max_depth, "Maximum component-chain depth")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--limit-solutions", limits.max_solutions, "Maximum solutions to return")
        ->check(CLI::PositiveNumber);
  };

  auto* validate = app.add_subcommand("validate", "Check an SKB knowledge base");
  validate->add_option("kb", kb_path, "SKB file")->required();

  auto* plan_cmd = app.add_subcommand("plan", "Print ranked solutions for a task as JSON");
  plan_cmd->add_option("--kb", kb_path, "SKB file")->required();
  plan_cmd->add_option("--task", task_id, "Task id")->required();
  plan_cmd->add_option("--model", model_name, "Cost model name");
  plan_cmd->add_option("--models", models_path, "Extra cost models file");
  add_limits(plan_cmd);

  auto* wizard = app.add_subcommand("wizard", "Run the wizard from a script and write the bundle");
  wizard->add_option("--kb", kb_path, "SKB file")->required();
  wizard->add_option("--script", script_path, "Wizard script (JSON)")->required();
  wizard->add_option("--out", out_dir, "Output directory")->required();
  wizard->add_option("--models", models_path, "Extra cost models file");
  add_limits(wizard);

  auto* serve = app.add_subcommand("serve", "Serve the wizard session API over HTTP");
  serve->add_option("--kb", kb_path, "SKB file")->required();
  serve->add_option("--port", port, "TCP port")->check(CLI::Range(0, 65535));
  serve->add_option("--models", models_path, "Extra cost models file");
  serve->add_option("--session-expiry", expiry_minutes, "Idle session expiry in minutes")
      ->check(CLI::PositiveNumber);
  add_limits(serve);

  auto* synth = app.add_subcommand("synth", "Write a synthetic knowledge base");
  synth->add_option("--sensors", n_sensors, "Sensor count")->required();
  synth->add_option("--components", n_components, "Component count")->required();
  synth->add_option("--seed", seed, "SplitMix64 seed")->required();
  synth->add_option("--out", out_path, "Output SKB file")->required();

  auto* bench = app.add_subcommand("bench", "Time loading a KB and planning one goal");
  bench->add_option("--kb", kb_path, "SKB file")->required();
  bench->add_option("--goal", goal_name, "Goal property id (or id/unit)")->required();
  bench->add_option("--location", location, "Goal location");
  add_limits(bench);

  std::vector<const char*> argv{"cascom"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*validate) return cmd_validate(kb_path, out);
    if (*plan_cmd) return cmd_plan(kb_path, task_id, model_name, models_path, limits, out);
    if (*wizard) return cmd_wizard(kb_path, script_path, out_dir, models_path, limits, out);
    if (*serve) return cmd_serve(kb_path, port, models_path, limits, expiry_minutes, out, err);
    if (*synth) return cmd_synth(n_sensors, n_components, seed, out_path, out);
    if (*bench) {
      std::optional<std::string> loc;
      if (!location.empty()) loc = location;
      return cmd_bench(kb_path, goal_name, loc, limits, out);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace cascom
