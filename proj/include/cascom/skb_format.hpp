#pragma once

#include <string>
#include <string_view>

#include "cascom/knowledge_base.hpp"

namespace cascom {

/// Error raised while reading an SKB document. Line and column are 1-based
/// and point at the offending token (or just past the last token at EOF).
class SkbError : public Error {
 public:
  enum class Kind { kSyntax, kDuplicateId, kUnknownPredicate, kInvalid };

  SkbError(Kind kind, int line, int column, std::string token, std::string entity_id,
           const std::string& message);

  Kind kind() const { return kind_; }
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& token() const { return token_; }
  const std::string& entity_id() const { return entity_id_; }

 private:
  Kind kind_;
  int line_;
  int column_;
  std::string token_;
  std::string entity_id_;
};

/// Parses an SKB document (the Turtle subset described in the README) into a
/// validated knowledge base. The empty document yields an empty KB.
KnowledgeBase parse_kb(std::string_view text);

/// Canonical SKB rendering: sensors, then components, then tasks, each sorted
/// by id, predicates in grammar order, two-space indentation, one trailing
/// newline. Parsing the result yields an equal KB.
std::string serialize_kb(const KnowledgeBase& kb);

/// Shortest round-tripping decimal form that always carries a '.' or exponent.
std::string format_number(double value);

KnowledgeBase load_kb_file(const std::string& path);
void save_kb_file(const KnowledgeBase& kb, const std::string& path);

}  // namespace cascom
