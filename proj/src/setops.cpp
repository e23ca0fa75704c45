#include "cvop/setops.hpp"

#include <cctype>

namespace cvop {

namespace {

enum class Tok { Name, Number, Plus, Times, Cap, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  size_t pos;
};

[[noreturn]] void parse_error(size_t pos, const std::string& what) {
  fail(ErrorKind::InvalidArgument, "setops: at offset " + std::to_string(pos) + ": " + what);
}

std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  size_t i = 0;
  auto starts = [&](const char* u) { return s.compare(i, std::char_traits<char>::length(u), u) == 0; };
  while (i < s.size()) {
    const unsigned char ch = static_cast<unsigned char>(s[i]);
    if (std::isspace(ch)) {
      ++i;
    } else if (std::isalpha(ch) || ch == '_') {
      size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Tok::Name, s.substr(i, j - i), i});
      i = j;
    } else if (std::isdigit(ch) || ch == '.') {
      size_t used = 0;
      try {
        std::stod(s.substr(i), &used);
      } catch (const std::exception&) {
        parse_error(i, "bad number");
      }
      out.push_back({Tok::Number, s.substr(i, used), i});
      i += used;
    } else if (ch == '+') {
      out.push_back({Tok::Plus, "+", i++});
    } else if (ch == '*') {
      out.push_back({Tok::Times, "*", i++});
    } else if (ch == '&') {
      out.push_back({Tok::Cap, "&", i++});
    } else if (ch == '(') {
      out.push_back({Tok::LParen, "(", i++});
    } else if (ch == ')') {
      out.push_back({Tok::RParen, ")", i++});
    } else if (starts("⊕")) {
      out.push_back({Tok::Plus, "⊕", i});
      i += 3;
    } else if (starts("⊙")) {
      out.push_back({Tok::Times, "⊙", i});
      i += 3;
    } else if (starts("∩")) {
      out.push_back({Tok::Cap, "∩", i});
      i += 3;
    } else {
      parse_error(i, "unexpected character");
    }
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class Parser {
 public:
  Parser(const std::string& expr, const std::map<std::string, UpperSet>& sets, const PolyCone& order)
      : toks_(tokenize(expr)), sets_(sets), order_(order) {}

  SetopsResult top() {
    SetopsResult r;
    if (peek().kind == Tok::Name && peek().text == "selfbounded") {
      next();
      expect(Tok::LParen, "'('");
      UpperSet a = inter();
      expect(Tok::RParen, "')'");
      r.check = is_self_bounded_set(a);
      r.checked = std::move(a);
    } else {
      r.set = inter();
    }
    if (peek().kind != Tok::End) parse_error(peek().pos, "unexpected trailing input");
    return r;
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  const Token& next() { return toks_[i_++]; }
  void expect(Tok k, const char* what) {
    if (peek().kind != k) parse_error(peek().pos, std::string("expected ") + what);
    next();
  }

  UpperSet inter() {
    UpperSet a = sum();
    while (peek().kind == Tok::Cap) {
      next();
      a = intersect(a, sum());
    }
    return a;
  }

  UpperSet sum() {
    UpperSet a = prod();
    while (peek().kind == Tok::Plus) {
      next();
      a = oplus(a, prod());
    }
    return a;
  }

  UpperSet prod() {
    if (peek().kind == Tok::Number) {
      const Token& t = next();
      const double alpha = std::stod(t.text);
      if (peek().kind != Tok::Times) parse_error(peek().pos, "expected '*' or '⊙' after a scalar");
      next();
      return odot(alpha, prod(), order_);
    }
    return atom();
  }

  UpperSet atom() {
    const Token& t = next();
    if (t.kind == Tok::LParen) {
      UpperSet a = inter();
      expect(Tok::RParen, "')'");
      return a;
    }
    if (t.kind == Tok::Name) {
      if (t.text == "selfbounded") parse_error(t.pos, "selfbounded() is only allowed outermost");
      const auto it = sets_.find(t.text);
      if (it == sets_.end()) parse_error(t.pos, "unknown set \"" + t.text + "\"");
      return it->second;
    }
    parse_error(t.pos, "expected a set name, a scalar or '('");
  }

  std::vector<Token> toks_;
  size_t i_ = 0;
  const std::map<std::string, UpperSet>& sets_;
  const PolyCone& order_;
};

}  // namespace

SetopsInput setops_from_json(const Json& j) {
  if (!j.is_object()) schema_error("", "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "schema" && it.key() != "order" && it.key() != "sets" && it.key() != "expr")
      schema_error("/" + it.key(), "unknown field");
  if (j.contains("schema") && j["schema"] != "cvop.setops/v1") schema_error("/schema", "unsupported schema version");
  SetopsInput in;
  const Json& sets = require_field(j, "sets", "");
  if (!sets.is_object() || sets.empty()) schema_error("/sets", "expected a nonempty object");
  int dim = -1;
  for (auto it = sets.begin(); it != sets.end(); ++it) {
    UpperSet a = upper_set_from_json(it.value(), "/sets/" + it.key());
    if (dim >= 0 && a.dim() != dim) schema_error("/sets/" + it.key(), "dimension differs from the other sets");
    dim = a.dim();
    in.sets.emplace(it.key(), std::move(a));
  }
  in.order = j.contains("order") ? cone_from_json(j["order"], "/order", dim) : PolyCone::orthant(dim);
  const Json& e = require_field(j, "expr", "");
  if (!e.is_string()) schema_error("/expr", "expected a string");
  in.expr = e.get<std::string>();
  return in;
}

SetopsResult evaluate_setops(const std::string& expr, const std::map<std::string, UpperSet>& sets,
                             const PolyCone& order) {
  return Parser(expr, sets, order).top();
}

Json to_json(const SetopsResult& r) {
  Json j;
  j["schema"] = "cvop.setops_result/v1";
  if (r.set) j["result"] = to_json(*r.set);
  if (r.check) {
    j["self_bounded"] = r.check->self_bounded;
    j["anchor"] = r.check->anchor ? to_json(*r.check->anchor) : Json(nullptr);
    j["checked"] = to_json(*r.checked);
  }
  return j;
}

}  // namespace cvop
