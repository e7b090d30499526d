#include "cascom/skb_format.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace cascom {

namespace {

constexpr std::string_view kPrefixLine = "@prefix s: <skb:> .";

std::string describe(int line, int column, const std::string& token, const std::string& entity,
                     const std::string& message) {
  std::ostringstream out;
  out << "line " << line << ", column " << column << ": " << message;
  if (!token.empty()) out << " (at '" << token << "')";
  if (!entity.empty()) out << " [entity " << entity << "]";
  return out.str();
}

enum class Tok { kEof, kPrefixKeyword, kName, kIri, kA, kString, kNumber, kSemicolon, kDot };

struct Token {
  Tok type = Tok::kEof;
  std::string text;  // raw spelling, or decoded value for strings
  int line = 1;
  int column = 1;
  int end_line = 1;
  int end_column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_blank();
    Token tok;
    tok.line = line_;
    tok.column = column_;
    if (pos_ >= text_.size()) {
      tok.type = Tok::kEof;
    } else {
      char c = text_[pos_];
      if (c == ';') {
        advance();
        tok.type = Tok::kSemicolon;
        tok.text = ";";
      } else if (c == '.') {
        advance();
        tok.type = Tok::kDot;
        tok.text = ".";
      } else if (c == '"') {
        lex_string(tok);
      } else if (c == '<') {
        lex_iri(tok);
      } else if (c == '@') {
        lex_keyword(tok);
      } else if (c == '+' || c == '-' || (c >= '0' && c <= '9')) {
        lex_number(tok);
      } else if (is_name_char(c)) {
        lex_name(tok);
      } else {
        std::string bad(1, c);
        fail(tok.line, tok.column, bad, "unexpected character");
      }
    }
    tok.end_line = line_;
    tok.end_column = column_;
    return tok;
  }

  [[noreturn]] void fail(int line, int column, const std::string& token,
                         const std::string& message) const {
    throw SkbError(SkbError::Kind::kSyntax, line, column, token, "", message);
  }

 private:
  static bool is_name_char(char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
           c == '_' || c == '-';
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_blank() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  void lex_string(Token& tok) {
    tok.type = Tok::kString;
    advance();  // opening quote
    while (true) {
      if (pos_ >= text_.size() || text_[pos_] == '\n') {
        fail(tok.line, tok.column, "\"" + tok.text, "unterminated string literal");
      }
      char c = text_[pos_];
      if (c == '"') {
        advance();
        return;
      }
      if (c == '\\') {
        int esc_line = line_, esc_column = column_;
        advance();
        if (pos_ >= text_.size()) fail(esc_line, esc_column, "\\", "unterminated escape");
        switch (text_[pos_]) {
          case '"': tok.text += '"'; break;
          case '\\': tok.text += '\\'; break;
          case 'n': tok.text += '\n'; break;
          case 'r': tok.text += '\r'; break;
          case 't': tok.text += '\t'; break;
          default:
            fail(esc_line, esc_column, std::string("\\") + text_[pos_], "unsupported escape");
        }
        advance();
        continue;
      }
      tok.text += c;
      advance();
    }
  }

  void lex_iri(Token& tok) {
    tok.type = Tok::kIri;
    while (pos_ < text_.size() && text_[pos_] != '>' && text_[pos_] != '\n') {
      tok.text += text_[pos_];
      advance();
    }
    if (pos_ >= text_.size() || text_[pos_] != '>') {
      fail(tok.line, tok.column, tok.text, "unterminated IRI");
    }
    tok.text += '>';
    advance();
  }

  void lex_keyword(Token& tok) {
    tok.text += '@';
    advance();
    while (pos_ < text_.size() && is_name_char(text_[pos_])) {
      tok.text += text_[pos_];
      advance();
    }
    if (tok.text != "@prefix") fail(tok.line, tok.column, tok.text, "unknown directive");
    tok.type = Tok::kPrefixKeyword;
  }

  void lex_number(Token& tok) {
    tok.type = Tok::kNumber;
    auto take_digits = [&] {
      std::size_t start = pos_;
      while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') {
        tok.text += text_[pos_];
        advance();
      }
      return pos_ - start;
    };
    if (text_[pos_] == '+' || text_[pos_] == '-') {
      tok.text += text_[pos_];
      advance();
    }
    std::size_t digits = take_digits();
    if (pos_ + 1 < text_.size() && text_[pos_] == '.' && text_[pos_ + 1] >= '0' &&
        text_[pos_ + 1] <= '9') {
      tok.text += '.';
      advance();
      digits += take_digits();
    }
    if (digits == 0) fail(tok.line, tok.column, tok.text, "malformed number");
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      tok.text += text_[pos_];
      advance();
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
        tok.text += text_[pos_];
        advance();
      }
      if (take_digits() == 0) fail(tok.line, tok.column, tok.text, "malformed exponent");
    }
    if (pos_ < text_.size() && is_name_char(text_[pos_])) {
      fail(tok.line, tok.column, tok.text + text_[pos_], "malformed number");
    }
  }

  void lex_name(Token& tok) {
    while (pos_ < text_.size() && (is_name_char(text_[pos_]) || text_[pos_] == ':')) {
      tok.text += text_[pos_];
      advance();
    }
    if (tok.text == "a") {
      tok.type = Tok::kA;
      return;
    }
    if (tok.text.find(':') == std::string::npos) {
      fail(tok.line, tok.column, tok.text, "expected a prefixed name");
    }
    tok.type = Tok::kName;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

enum class EntityType { kSensor, kComponent, kTask };

struct RawEntity {
  EntityType type;
  std::string id;
  int line;
  int column;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text) { shift(); }

  KnowledgeBase parse() {
    while (current_.type != Tok::kEof) {
      if (current_.type == Tok::kPrefixKeyword) {
        parse_prefix();
      } else {
        parse_statement();
      }
    }
    try {
      return KnowledgeBase(std::move(sensors_), std::move(components_), std::move(tasks_));
    } catch (const ValidationError& e) {
      auto it = positions_.find(e.entity_id());
      int line = it == positions_.end() ? 1 : it->second.first;
      int column = it == positions_.end() ? 1 : it->second.second;
      throw SkbError(SkbError::Kind::kInvalid, line, column, "", e.entity_id(), e.what());
    }
  }

 private:
  void shift() {
    previous_ = current_;
    current_ = lexer_.next();
  }

  [[noreturn]] void fail_at(const Token& tok, const std::string& message,
                            SkbError::Kind kind = SkbError::Kind::kSyntax) const {
    if (tok.type == Tok::kEof) {
      throw SkbError(kind, previous_.end_line, previous_.end_column, "end of input", entity_,
                     message);
    }
    throw SkbError(kind, tok.line, tok.column, tok.text, entity_, message);
  }

  Token expect(Tok type, const char* what) {
    if (current_.type != type) fail_at(current_, std::string("expected ") + what);
    Token tok = current_;
    shift();
    return tok;
  }

  void parse_prefix() {
    Token kw = current_;
    shift();
    Token name = expect(Tok::kName, "prefix name");
    Token iri = expect(Tok::kIri, "IRI");
    expect(Tok::kDot, "'.'");
    if (name.text != "s:" || iri.text != "<skb:>") {
      throw SkbError(SkbError::Kind::kSyntax, kw.line, kw.column, name.text + " " + iri.text, "",
                     "only the declaration '" + std::string(kPrefixLine) + "' is supported");
    }
    prefix_declared_ = true;
  }

  // Local part of an `s:<local>` name.
  std::string local_name(const Token& tok) {
    auto colon = tok.text.find(':');
    if (tok.text.substr(0, colon) != "s") fail_at(tok, "unknown prefix");
    if (!prefix_declared_) fail_at(tok, "prefix 's' used before its @prefix declaration");
    std::string local = tok.text.substr(colon + 1);
    if (!is_identifier(local)) fail_at(tok, "malformed local name");
    return local;
  }

  void parse_statement() {
    Token subject = expect(Tok::kName, "subject or @prefix");
    entity_.clear();
    std::string id = local_name(subject);
    entity_ = id;
    expect(Tok::kA, "'a'");
    Token type_tok = expect(Tok::kName, "entity type");
    std::string type = local_name(type_tok);

    if (!seen_ids_.insert(id).second) {
      throw SkbError(SkbError::Kind::kDuplicateId, subject.line, subject.column, subject.text, id,
                     "duplicate id");
    }
    positions_[id] = {subject.line, subject.column};

    if (type == "Sensor") {
      parse_sensor(id);
    } else if (type == "Component") {
      parse_component(id);
    } else if (type == "Task") {
      parse_task(id);
    } else {
      fail_at(type_tok, "unknown entity type (expected s:Sensor, s:Component or s:Task)");
    }
    entity_.clear();
  }

  // Iterates `; predicate objects` pairs until the closing '.'. A trailing ';'
  // before '.' is accepted as in Turtle.
  template <typename Fn>
  void for_each_predicate(Fn&& handle) {
    expect(Tok::kSemicolon, "';'");
    while (true) {
      if (current_.type == Tok::kDot) {
        shift();
        return;
      }
      Token pred = expect(Tok::kName, "predicate");
      std::string name = local_name(pred);
      handle(name, pred);
      if (current_.type == Tok::kSemicolon) {
        shift();
        continue;
      }
      if (current_.type == Tok::kDot) {
        shift();
        return;
      }
      fail_at(current_, "expected ';' or '.'");
    }
  }

  std::string string_object() { return expect(Tok::kString, "string literal").text; }

  double number_object() {
    Token tok = expect(Tok::kNumber, "number");
    double value = 0.0;
    const char* begin = tok.text.data();
    if (*begin == '+') ++begin;
    auto [ptr, ec] = std::from_chars(begin, tok.text.data() + tok.text.size(), value);
    if (ec != std::errc() || ptr != tok.text.data() + tok.text.size()) {
      fail_at(tok, "number out of range");
    }
    return value;
  }

  PropertyRef property_object() {
    Token name = expect(Tok::kName, "property name");
    PropertyRef ref;
    ref.property_id = local_name(name);
    ref.unit = string_object();
    return ref;
  }

  void once(std::unordered_set<std::string>& seen, const std::string& name, const Token& pred) {
    if (!seen.insert(name).second) {
      fail_at(pred, "predicate s:" + name + " given more than once", SkbError::Kind::kInvalid);
    }
  }

  bool handle_cost(const std::string& name, CostVector& cost) {
    if (name == "costEnergy") {
      cost.energy = number_object();
    } else if (name == "costBandwidth") {
      cost.bandwidth = number_object();
    } else if (name == "costLatency") {
      cost.latency = number_object();
    } else if (name == "costPrice") {
      cost.price = number_object();
    } else {
      return false;
    }
    return true;
  }

  void require(const std::unordered_set<std::string>& seen,
               std::initializer_list<const char*> names, const std::string& id) {
    for (const char* name : names) {
      if (!seen.count(name)) {
        const auto& [line, column] = positions_[id];
        throw SkbError(SkbError::Kind::kInvalid, line, column, "", id,
                       std::string("missing required predicate s:") + name);
      }
    }
  }

  [[noreturn]] void unknown_predicate(const Token& pred) {
    fail_at(pred, "unknown predicate", SkbError::Kind::kUnknownPredicate);
  }

  void parse_sensor(const std::string& id) {
    SensorDescription s;
    s.id = id;
    std::unordered_set<std::string> seen;
    for_each_predicate([&](const std::string& name, const Token& pred) {
      once(seen, name, pred);
      if (name == "measures") {
        s.produces.property_id = local_name(expect(Tok::kName, "property name"));
      } else if (name == "unit") {
        s.produces.unit = string_object();
      } else if (name == "location") {
        s.location = string_object();
      } else if (name == "wrapper") {
        s.wrapper_type = string_object();
      } else if (!handle_cost(name, s.cost)) {
        unknown_predicate(pred);
      }
    });
    require(seen,
            {"measures", "unit", "location", "wrapper", "costEnergy", "costBandwidth",
             "costLatency", "costPrice"},
            id);
    sensors_.push_back(std::move(s));
  }

  void parse_component(const std::string& id) {
    ComponentDescription c;
    c.id = id;
    std::unordered_set<std::string> seen;
    for_each_predicate([&](const std::string& name, const Token& pred) {
      if (name == "input") {
        seen.insert(name);
        c.inputs.push_back(property_object());
        return;
      }
      once(seen, name, pred);
      if (name == "output") {
        c.output = property_object();
      } else if (name == "class") {
        c.class_name = string_object();
      } else if (!handle_cost(name, c.cost)) {
        unknown_predicate(pred);
      }
    });
    require(seen,
            {"input", "output", "class", "costEnergy", "costBandwidth", "costLatency",
             "costPrice"},
            id);
    components_.push_back(std::move(c));
  }

  void parse_task(const std::string& id) {
    TaskDescription t;
    t.id = id;
    std::unordered_set<std::string> seen;
    for_each_predicate([&](const std::string& name, const Token& pred) {
      if (name == "facet") {
        Token value = expect(Tok::kString, "\"key=value\" literal");
        auto eq = value.text.find('=');
        if (eq == std::string::npos) fail_at(value, "facet must have the form key=value");
        std::string key = value.text.substr(0, eq);
        if (!t.facets.emplace(key, value.text.substr(eq + 1)).second) {
          fail_at(value, "facet '" + key + "' given more than once", SkbError::Kind::kInvalid);
        }
        return;
      }
      once(seen, name, pred);
      if (name == "produces") {
        t.produces = property_object();
      } else if (name == "location") {
        t.location = string_object();
      } else if (name == "label") {
        t.label = string_object();
      } else {
        unknown_predicate(pred);
      }
    });
    require(seen, {"produces", "label"}, id);
    tasks_.push_back(std::move(t));
  }

  Lexer lexer_;
  Token current_;
  Token previous_;
  bool prefix_declared_ = false;
  std::string entity_;
  std::unordered_set<std::string> seen_ids_;
  std::unordered_map<std::string, std::pair<int, int>> positions_;
  std::vector<SensorDescription> sensors_;
  std::vector<ComponentDescription> components_;
  std::vector<TaskDescription> tasks_;
};

void append_string(std::string& out, std::string_view value) {
  out += '"';
  for (char c : value) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
}

void append_costs(std::string& out, const CostVector& cost) {
  out += "  s:costEnergy " + format_number(cost.energy) + " ;\n";
  out += "  s:costBandwidth " + format_number(cost.bandwidth) + " ;\n";
  out += "  s:costLatency " + format_number(cost.latency) + " ;\n";
  out += "  s:costPrice " + format_number(cost.price) + " .\n";
}

void append_property(std::string& out, const PropertyRef& ref) {
  out += "s:" + ref.property_id + " ";
  append_string(out, ref.unit);
}

}  // namespace

SkbError::SkbError(Kind kind, int line, int column, std::string token, std::string entity_id,
                   const std::string& message)
    : Error(describe(line, column, token, entity_id, message)),
      kind_(kind),
      line_(line),
      column_(column),
      token_(std::move(token)),
      entity_id_(std::move(entity_id)) {}

KnowledgeBase parse_kb(std::string_view text) { return Parser(text).parse(); }

std::string format_number(double value) {
  if (value == 0.0) return "0.0";  // also folds -0.0
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  std::string out(buf, ptr);
  if (out.find_first_of(".e") == std::string::npos) out += ".0";
  return out;
}

std::string serialize_kb(const KnowledgeBase& kb) {
  std::string out(kPrefixLine);
  out += '\n';
  for (const auto& s : kb.sensors()) {
    out += "\ns:" + s.id + " a s:Sensor ;\n";
    out += "  s:measures s:" + s.produces.property_id + " ;\n";
    out += "  s:unit ";
    append_string(out, s.produces.unit);
    out += " ;\n  s:location ";
    append_string(out, s.location);
    out += " ;\n  s:wrapper ";
    append_string(out, s.wrapper_type);
    out += " ;\n";
    append_costs(out, s.cost);
  }
  for (const auto& c : kb.components()) {
    out += "\ns:" + c.id + " a s:Component ;\n";
    for (const auto& in : c.inputs) {
      out += "  s:input ";
      append_property(out, in);
      out += " ;\n";
    }
    out += "  s:output ";
    append_property(out, c.output);
    out += " ;\n  s:class ";
    append_string(out, c.class_name);
    out += " ;\n";
    append_costs(out, c.cost);
  }
  for (const auto& t : kb.tasks()) {
    out += "\ns:" + t.id + " a s:Task ;\n";
    out += "  s:produces ";
    append_property(out, t.produces);
    out += " ;\n";
    if (t.location) {
      out += "  s:location ";
      append_string(out, *t.location);
      out += " ;\n";
    }
    for (const auto& [key, value] : t.facets) {
      out += "  s:facet ";
      append_string(out, key + "=" + value);
      out += " ;\n";
    }
    out += "  s:label ";
    append_string(out, t.label);
    out += " .\n";
  }
  return out;
}

KnowledgeBase load_kb_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open knowledge base file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_kb(buffer.str());
}

void save_kb_file(const KnowledgeBase& kb, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write knowledge base file '" + path + "'");
  out << serialize_kb(kb);
  if (!out) throw Error("failed writing knowledge base file '" + path + "'");
}

}  // namespace cascom
