#include "cascom/session_service.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <random>

#include "cascom/advisor.hpp"
#include "cascom/json_io.hpp"
#include "cascom/planner.hpp"

namespace cascom {

using nlohmann::json;

std::string_view phase_name(Phase phase) {
  switch (phase) {
    case Phase::kAnswering: return "ANSWERING";
    case Phase::kTaskSelected: return "TASK_SELECTED";
    case Phase::kSolutionsReady: return "SOLUTIONS_READY";
    case Phase::kNoSolution: return "NO_SOLUTION";
    case Phase::kExtrasSelected: return "EXTRAS_SELECTED";
    case Phase::kBundleReady: return "BUNDLE_READY";
  }
  return "UNKNOWN";
}

namespace {

struct HttpError {
  int status;
  std::string message;
  std::string field;
};

[[noreturn]] void conflict(const std::string& action, Phase phase) {
  throw HttpError{409, action + " is not allowed in phase " + std::string(phase_name(phase)), ""};
}

void require_phase(const std::string& action, Phase phase, std::initializer_list<Phase> allowed) {
  if (std::find(allowed.begin(), allowed.end(), phase) == allowed.end()) conflict(action, phase);
}

json parse_body(std::string_view body) {
  json doc = json::parse(body, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) throw HttpError{400, "body must be a JSON object", ""};
  return doc;
}

std::string string_field(const json& body, const std::string& field) {
  if (!body.contains(field) || !body.at(field).is_string()) {
    throw HttpError{400, field + ": required string", field};
  }
  return body.at(field).get<std::string>();
}

std::string new_session_id() {
  static std::mutex mutex;
  static std::mt19937_64 rng{std::random_device{}()};
  std::lock_guard lock(mutex);
  char buf[33];
  std::snprintf(buf, sizeof(buf), "%016llx%016llx", static_cast<unsigned long long>(rng()),
                static_cast<unsigned long long>(rng()));
  return buf;
}

ServiceResponse error_response(const HttpError& e) {
  json body = {{"error", e.message}, {"status", e.status}};
  if (!e.field.empty()) body["field"] = e.field;
  return {e.status, std::move(body)};
}

}  // namespace

SessionService::SessionService(std::shared_ptr<const KnowledgeBase> kb,
                               std::vector<CostModel> models)
    : SessionService(std::move(kb), std::move(models), Options{}) {}

SessionService::SessionService(std::shared_ptr<const KnowledgeBase> kb,
                               std::vector<CostModel> models, Options options)
    : kb_(std::move(kb)), models_(std::move(models)), options_(options) {
  if (models_.empty()) models_ = builtin_models();
}

ServiceResponse SessionService::handle(std::string_view method, std::string_view path,
                                       const std::map<std::string, std::string>& query,
                                       std::string_view body) {
  try {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (start < path.size()) {
      if (path[start] == '/') {
        ++start;
        continue;
      }
      std::size_t end = path.find('/', start);
      if (end == std::string_view::npos) end = path.size();
      parts.push_back(path.substr(start, end - start));
      start = end;
    }
    if (parts.empty() || parts[0] != "sessions" || parts.size() > 3) {
      throw HttpError{404, "no such endpoint", ""};
    }
    if (parts.size() == 1) {
      if (method != "POST") throw HttpError{404, "no such endpoint", ""};
      return create_session();
    }
    std::shared_ptr<Session> session = find_session(std::string(parts[1]));
    if (!session) throw HttpError{404, "unknown session", ""};
    std::lock_guard lock(session->mutex);
    session->last_used = Clock::now();
    return dispatch(*session, method, parts.size() == 3 ? parts[2] : "", query, body);
  } catch (const HttpError& e) {
    return error_response(e);
  } catch (const SchemaError& e) {
    return error_response({400, e.what(), ""});
  } catch (const QaError& e) {
    return error_response({422, e.what(), ""});
  } catch (const WizardError& e) {
    return error_response({422, e.what(), ""});
  } catch (const Error& e) {
    return error_response({422, e.what(), ""});
  } catch (const std::exception& e) {
    return error_response({500, e.what(), ""});
  }
}

ServiceResponse SessionService::create_session() {
  const auto now = Clock::now();
  expire_idle(now);
  auto session = std::make_shared<Session>();
  session->id = new_session_id();
  session->model = models_.front().name;
  session->last_used = now;
  {
    std::lock_guard lock(sessions_mutex_);
    sessions_[session->id] = session;
  }
  return {201, {{"id", session->id}, {"phase", phase_name(session->phase)}}};
}

std::shared_ptr<SessionService::Session> SessionService::find_session(const std::string& id) {
  std::lock_guard lock(sessions_mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) return nullptr;
  std::shared_ptr<Session> session = it->second;
  std::unique_lock session_lock(session->mutex, std::try_to_lock);
  // A session busy with a request is not idle.
  if (session_lock.owns_lock() && Clock::now() - session->last_used > options_.idle_expiry) {
    sessions_.erase(it);
    return nullptr;
  }
  return session;
}

void SessionService::expire_idle(Clock::time_point now) {
  std::lock_guard lock(sessions_mutex_);
  for (auto it = sessions_.begin(); it != sessions_.end();) {
    std::unique_lock session_lock(it->second->mutex, std::try_to_lock);
    if (session_lock.owns_lock() && now - it->second->last_used > options_.idle_expiry) {
      session_lock.unlock();
      it = sessions_.erase(it);
    } else {
      ++it;
    }
  }
}

std::size_t SessionService::session_count() const {
  std::lock_guard lock(sessions_mutex_);
  return sessions_.size();
}

ServiceResponse SessionService::dispatch(Session& s, std::string_view method,
                                         std::string_view action,
                                         const std::map<std::string, std::string>& query,
                                         std::string_view body) {
  if (method == "GET") {
    if (action.empty()) return snapshot(s);
    if (action == "question") return get_question(s);
    if (action == "tasks") return get_tasks(s);
    if (action == "recommendations") return get_recommendations(s);
    if (action == "extras") return get_extras(s);
    if (action == "solutions") return get_solutions(s, query);
    if (action == "bundle") return get_bundle(s);
  } else if (method == "POST") {
    if (action == "answers") return post_answer(s, parse_body(body));
    if (action == "task") return post_task(s, parse_body(body));
    if (action == "extras") return post_extras(s, parse_body(body));
    if (action == "select") return post_select(s, parse_body(body));
  }
  throw HttpError{404, "no such endpoint", ""};
}

const CostModel& SessionService::model_or_throw(std::string_view name) const {
  const CostModel* model = find_model(models_, name);
  if (!model) throw HttpError{422, "unknown cost model '" + std::string(name) + "'", "model"};
  return *model;
}

ServiceResponse SessionService::snapshot(const Session& s) const {
  json extras = json::array();
  for (const auto& e : s.extras) extras.push_back(to_json(e.property));
  return {200,
          {{"id", s.id},
           {"phase", phase_name(s.phase)},
           {"answers", s.answers},
           {"task", s.task ? json(s.task->id) : json(nullptr)},
           {"model", s.model},
           {"solutions", s.solutions.size()},
           {"extras", std::move(extras)},
           {"bundle", s.bundle ? json(s.bundle->name) : json(nullptr)}}};
}

ServiceResponse SessionService::get_question(const Session& s) const {
  auto question = next_question(*kb_, s.answers);
  return {200,
          {{"question", question ? to_json(*question) : json(nullptr)},
           {"remaining", filter_tasks(*kb_, s.answers).size()},
           {"phase", phase_name(s.phase)}}};
}

ServiceResponse SessionService::post_answer(Session& s, const json& body) {
  require_phase("answering", s.phase, {Phase::kAnswering});
  const std::string facet = string_field(body, "facet");
  const std::string value = string_field(body, "value");
  AnswerSet updated = s.answers;
  updated[facet] = value;
  validate_answers(*kb_, updated);
  s.answers = std::move(updated);
  return {200,
          {{"remaining", filter_tasks(*kb_, s.answers).size()},
           {"phase", phase_name(s.phase)}}};
}

ServiceResponse SessionService::get_tasks(const Session& s) const {
  json tasks = json::array();
  for (const auto& t : filter_tasks(*kb_, s.answers)) tasks.push_back(to_json(t));
  return {200, {{"tasks", std::move(tasks)}, {"phase", phase_name(s.phase)}}};
}

ServiceResponse SessionService::post_task(Session& s, const json& body) {
  require_phase("selecting a task", s.phase, {Phase::kAnswering});
  const std::string task_id = string_field(body, "taskId");
  const TaskDescription& task = select_task(*kb_, s.answers, task_id);
  s.task = task;
  s.phase = Phase::kTaskSelected;
  s.solutions = plan(*kb_, goal_of(task), options_.limits);
  if (s.solutions.empty()) {
    s.phase = Phase::kNoSolution;
    return {200, {{"phase", phase_name(s.phase)}, {"task", task.id}}};
  }
  s.phase = Phase::kSolutionsReady;
  return {200,
          {{"phase", phase_name(s.phase)},
           {"task", task.id},
           {"model", s.model},
           {"solutions", to_json(rank_solutions(*kb_, s.solutions, model_or_throw(s.model)))}}};
}

ServiceResponse SessionService::get_recommendations(const Session& s) const {
  require_phase("listing recommendations", s.phase, {Phase::kNoSolution});
  json out = json::array();
  for (const auto& rec : recommend_deployments(*kb_, goal_of(*s.task), options_.limits)) {
    out.push_back(to_json(rec));
  }
  return {200, {{"recommendations", std::move(out)}, {"phase", phase_name(s.phase)}}};
}

ServiceResponse SessionService::get_extras(const Session& s) const {
  require_phase("listing extras", s.phase,
                {Phase::kSolutionsReady, Phase::kExtrasSelected, Phase::kBundleReady});
  json offered = json::array();
  for (const auto& ref : offered_extras(*kb_, *s.task)) offered.push_back(to_json(ref));
  json selected = json::array();
  for (const auto& e : s.extras) selected.push_back(to_json(e.property));
  return {200,
          {{"extras", std::move(offered)},
           {"selected", std::move(selected)},
           {"phase", phase_name(s.phase)}}};
}

ServiceResponse SessionService::post_extras(Session& s, const json& body) {
  require_phase("selecting extras", s.phase, {Phase::kSolutionsReady, Phase::kExtrasSelected});
  if (!body.contains("properties") || !body.at("properties").is_array()) {
    throw HttpError{400, "properties: required array of strings", "properties"};
  }
  std::vector<std::string> names;
  for (const auto& item : body.at("properties")) {
    if (!item.is_string()) throw HttpError{400, "properties: expected strings", "properties"};
    names.push_back(item.get<std::string>());
  }
  s.extras = plan_extras(*kb_, *s.task, names, options_.limits);
  s.phase = Phase::kExtrasSelected;
  json attached = json::array();
  for (const auto& e : s.extras) {
    json item = to_json(e.property);
    item["solutions"] = e.solutions.size();
    attached.push_back(std::move(item));
  }
  return {200, {{"extras", std::move(attached)}, {"phase", phase_name(s.phase)}}};
}

ServiceResponse SessionService::get_solutions(
    const Session& s, const std::map<std::string, std::string>& query) const {
  require_phase("listing solutions", s.phase,
                {Phase::kSolutionsReady, Phase::kExtrasSelected, Phase::kBundleReady});
  auto it = query.find("model");
  const CostModel& model = model_or_throw(it == query.end() ? s.model : it->second);
  return {200,
          {{"model", model.name},
           {"solutions", to_json(rank_solutions(*kb_, s.solutions, model))},
           {"phase", phase_name(s.phase)}}};
}

ServiceResponse SessionService::post_select(Session& s, const json& body) {
  require_phase("selecting a solution", s.phase,
                {Phase::kSolutionsReady, Phase::kExtrasSelected});
  if (!body.contains("index") || !body.at("index").is_number_integer() ||
      body.at("index").get<std::int64_t>() < 0) {
    throw HttpError{400, "index: required non-negative integer", "index"};
  }
  std::string model_name = s.model;
  if (body.contains("model")) model_name = string_field(body, "model");
  const CostModel& model = model_or_throw(model_name);
  ConfigBundle bundle = assemble_bundle(*kb_, *s.task, s.solutions,
                                        body.at("index").get<std::size_t>(), s.extras, model);
  s.model = model.name;
  s.bundle = std::move(bundle);
  s.phase = Phase::kBundleReady;
  json files = json::array();
  for (const auto& f : s.bundle->files) files.push_back(f.filename);
  return {200,
          {{"phase", phase_name(s.phase)}, {"bundle", s.bundle->name}, {"files", std::move(files)}}};
}

ServiceResponse SessionService::get_bundle(const Session& s) const {
  require_phase("fetching the bundle", s.phase, {Phase::kBundleReady});
  return {200, to_json(*s.bundle)};
}

}  // namespace cascom
