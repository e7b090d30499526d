#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cascom/knowledge_base.hpp"

namespace cascom {

/// Accumulated facet answers: facet_key -> facet_value.
using AnswerSet = std::map<std::string, std::string>;

/// An answer names a facet key or value the KB does not offer.
class QaError : public Error {
 public:
  using Error::Error;
};

/// Throws QaError unless every answer is a known facet key with one of its options.
void validate_answers(const KnowledgeBase& kb, const AnswerSet& answers);

/// Tasks whose facets agree with every answer, ordered by id. A task lacking
/// an answered facet is excluded.
std::vector<TaskDescription> filter_tasks(const KnowledgeBase& kb, const AnswerSet& answers);

/// The unanswered question whose worst-case answer leaves the fewest tasks,
/// considering only keys that split the remaining tasks into at least two
/// non-empty groups. Ties go to the smaller facet key. nullopt when nothing
/// discriminates (including when at most one task remains).
std::optional<Question> next_question(const KnowledgeBase& kb, const AnswerSet& answers);

}  // namespace cascom
