#pragma once

#include <chrono>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cascom/codegen.hpp"
#include "cascom/cost_model.hpp"
#include "cascom/knowledge_base.hpp"
#include "cascom/qa_filter.hpp"
#include "cascom/solution.hpp"
#include "cascom/wizard.hpp"

namespace cascom {

enum class Phase {
  kAnswering,
  kTaskSelected,
  kSolutionsReady,
  kNoSolution,
  kExtrasSelected,
  kBundleReady,
};

/// "ANSWERING", "TASK_SELECTED", ...
std::string_view phase_name(Phase phase);

struct ServiceResponse {
  int status = 200;
  nlohmann::json body;
};

/// The wizard as a per-session state machine behind a JSON API.
///
///   POST /sessions                          -> 201 {id, phase}
///   GET  /sessions/{id}                     -> session snapshot
///   GET  /sessions/{id}/question            -> {question|null, remaining}
///   POST /sessions/{id}/answers  {facet, value}
///   GET  /sessions/{id}/tasks
///   POST /sessions/{id}/task     {taskId}   -> SOLUTIONS_READY | NO_SOLUTION
///   GET  /sessions/{id}/recommendations     (NO_SOLUTION only)
///   GET  /sessions/{id}/extras
///   POST /sessions/{id}/extras   {properties: [...]}
///   GET  /sessions/{id}/solutions?model=<name>
///   POST /sessions/{id}/select   {index, model}
///   GET  /sessions/{id}/bundle              -> {filename: content}
///
/// Errors: 404 unknown session or endpoint, 409 wrong phase, 400 malformed
/// body, 422 semantically invalid request. Requests for one session are
/// serialized; distinct sessions proceed in parallel.
class SessionService {
 public:
  using Clock = std::chrono::steady_clock;

  struct Options {
    std::chrono::milliseconds idle_expiry = std::chrono::minutes(30);
    SearchLimits limits;
  };

  SessionService(std::shared_ptr<const KnowledgeBase> kb, std::vector<CostModel> models);
  SessionService(std::shared_ptr<const KnowledgeBase> kb, std::vector<CostModel> models,
                 Options options);

  ServiceResponse handle(std::string_view method, std::string_view path,
                         const std::map<std::string, std::string>& query, std::string_view body);

  /// Drops sessions idle since before `now - idle_expiry`.
  void expire_idle(Clock::time_point now);
  std::size_t session_count() const;

 private:
  struct Session {
    std::mutex mutex;
    std::string id;
    Phase phase = Phase::kAnswering;
    AnswerSet answers;
    std::optional<TaskDescription> task;
    std::vector<Solution> solutions;
    std::vector<PlannedExtra> extras;
    std::string model;
    std::optional<ConfigBundle> bundle;
    Clock::time_point last_used;
  };

  ServiceResponse create_session();
  ServiceResponse dispatch(Session& session, std::string_view method, std::string_view action,
                           const std::map<std::string, std::string>& query,
                           std::string_view body);
  std::shared_ptr<Session> find_session(const std::string& id);

  ServiceResponse snapshot(const Session& s) const;
  ServiceResponse get_question(const Session& s) const;
  ServiceResponse post_answer(Session& s, const nlohmann::json& body);
  ServiceResponse get_tasks(const Session& s) const;
  ServiceResponse post_task(Session& s, const nlohmann::json& body);
  ServiceResponse get_recommendations(const Session& s) const;
  ServiceResponse get_extras(const Session& s) const;
  ServiceResponse post_extras(Session& s, const nlohmann::json& body);
  ServiceResponse get_solutions(const Session& s, const std::map<std::string, std::string>& query) const;
  ServiceResponse post_select(Session& s, const nlohmann::json& body);
  ServiceResponse get_bundle(const Session& s) const;

  const CostModel& model_or_throw(std::string_view name) const;

  std::shared_ptr<const KnowledgeBase> kb_;
  std::vector<CostModel> models_;
  Options options_;

  mutable std::mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
};

}  // namespace cascom
