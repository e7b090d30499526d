#include "cascom/qa_filter.hpp"

#include <algorithm>

namespace cascom {

void validate_answers(const KnowledgeBase& kb, const AnswerSet& answers) {
  for (const auto& [key, value] : answers) {
    const Question* q = kb.find_question(key);
    if (!q) throw QaError("unknown facet '" + key + "'");
    if (!std::binary_search(q->options.begin(), q->options.end(), value)) {
      throw QaError("'" + value + "' is not an option of facet '" + key + "'");
    }
  }
}

namespace {

bool consistent(const TaskDescription& task, const AnswerSet& answers) {
  return std::all_of(answers.begin(), answers.end(), [&](const auto& answer) {
    auto it = task.facets.find(answer.first);
    return it != task.facets.end() && it->second == answer.second;
  });
}

}  // namespace

std::vector<TaskDescription> filter_tasks(const KnowledgeBase& kb, const AnswerSet& answers) {
  validate_answers(kb, answers);
  std::vector<TaskDescription> out;
  for (const auto& task : kb.tasks()) {
    if (consistent(task, answers)) out.push_back(task);
  }
  return out;
}

std::optional<Question> next_question(const KnowledgeBase& kb, const AnswerSet& answers) {
  std::vector<TaskDescription> remaining = filter_tasks(kb, answers);
  if (remaining.size() <= 1) return std::nullopt;

  const Question* best = nullptr;
  std::size_t best_worst = 0;
  for (const auto& q : kb.questions()) {  // ascending facet_key
    if (answers.count(q.facet_key)) continue;
    std::map<std::string, std::size_t> groups;
    for (const auto& task : remaining) {
      auto it = task.facets.find(q.facet_key);
      if (it != task.facets.end()) ++groups[it->second];
    }
    if (groups.size() < 2) continue;
    std::size_t worst = 0;
    for (const auto& [value, count] : groups) worst = std::max(worst, count);
    if (!best || worst < best_worst) {
      best = &q;
      best_worst = worst;
    }
  }
  if (!best) return std::nullopt;
  return *best;
}

}  // namespace cascom
