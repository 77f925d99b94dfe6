#include <cctype>
#include <string>

#include "epiplan/formula.hpp"

namespace epiplan {

namespace {

struct Parser {
  const std::string& text;
  const Universe& uni;
  size_t pos = 0;

  explicit Parser(const std::string& t, const Universe& u) : text(t), uni(u) {}

  [[noreturn]] void fail(const std::string& msg) {
    throw InputError("formula syntax error at position " +
                     std::to_string(pos) + ": " + msg);
  }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }

  bool eat(const std::string& tok) {
    skip_ws();
    if (text.compare(pos, tok.size(), tok) == 0) {
      pos += tok.size();
      return true;
    }
    return false;
  }

  void expect(const std::string& tok) {
    if (!eat(tok)) fail("expected '" + tok + "'");
  }

  bool peek(char c) {
    skip_ws();
    return pos < text.size() && text[pos] == c;
  }

  // identifiers may start with a digit too (the grammar has no numeric
  // literals, and purely numeric agent names like "0" are legal)
  std::string ident() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) ||
            text[pos] == '_'))
      ++pos;
    if (start == pos) fail("expected identifier");
    return text.substr(start, pos - start);
  }

  FormulaPtr phi() { return iff(); }

  FormulaPtr iff() {
    FormulaPtr f = imp();
    while (eat("<->")) f = f_iff(f, imp());
    return f;
  }

  FormulaPtr imp() {
    FormulaPtr f = or_();
    if (eat("->")) return f_implies(f, imp());
    return f;
  }

  FormulaPtr or_() {
    FormulaPtr f = and_();
    while (true) {
      skip_ws();
      // don't swallow the '|' ... there is no other token starting with '|'
      if (eat("|")) f = f_or(f, and_());
      else return f;
    }
  }

  FormulaPtr and_() {
    FormulaPtr f = unary();
    while (eat("&")) f = f_and(f, unary());
    return f;
  }

  FormulaPtr unary() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of input");
    if (eat("~")) return f_not(unary());
    if (eat("(")) {
      FormulaPtr f = phi();
      expect(")");
      return f;
    }
    // modalities: K[...] / M[...] / C[{...}] — only when '[' follows directly
    char c = text[pos];
    if ((c == 'K' || c == 'M') && pos + 1 < text.size() && text[pos + 1] == '[') {
      pos += 2;
      std::string name = ident();
      int agent = uni.find_agent(name);
      if (agent < 0) throw InputError("unknown agent: " + name);
      expect("]");
      FormulaPtr body = unary();
      return c == 'K' ? f_knows(agent, body) : f_possible(agent, body);
    }
    if (c == 'C' && pos + 2 < text.size() && text[pos + 1] == '[' &&
        text[pos + 2] == '{') {
      pos += 3;
      std::vector<int> group;
      while (true) {
        std::string name = ident();
        int agent = uni.find_agent(name);
        if (agent < 0) throw InputError("unknown agent: " + name);
        group.push_back(agent);
        if (!eat(",")) break;
      }
      expect("}");
      expect("]");
      return f_common(std::move(group), unary());
    }
    std::string name = ident();
    if (name == "true") return f_true();
    if (name == "false") return f_false();
    int atom = uni.find_atom(name);
    if (atom < 0) throw InputError("unknown atom: " + name);
    return f_atom(atom);
  }
};

}  // namespace

FormulaPtr parse_formula(const std::string& text, const Universe& uni) {
  Parser p(text, uni);
  FormulaPtr f = p.phi();
  p.skip_ws();
  if (p.pos != text.size())
    throw InputError("formula syntax error at position " +
                     std::to_string(p.pos) + ": trailing input");
  return f;
}

}  // namespace epiplan
