#include "mrb/expression.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "format.hpp"
#include "mrb/errors.hpp"

namespace mrb {

namespace {

enum class Tok { name, slash, star, plus, minus, dot, colon, lparen, rparen, lbracket, rbracket, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

bool name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < text.size();) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      column = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      ++column;
      continue;
    }
    if (name_char(c)) {
      std::size_t j = i;
      while (j < text.size() && name_char(text[j])) ++j;
      out.push_back({Tok::name, std::string(text.substr(i, j - i)), line, column});
      column += j - i;
      i = j;
      continue;
    }
    Tok kind;
    switch (c) {
      case '/': kind = Tok::slash; break;
      case '*': kind = Tok::star; break;
      case '+': kind = Tok::plus; break;
      case '-': kind = Tok::minus; break;
      case '.': kind = Tok::dot; break;
      case ':': kind = Tok::colon; break;
      case '(': kind = Tok::lparen; break;
      case ')': kind = Tok::rparen; break;
      case '[': kind = Tok::lbracket; break;
      case ']': kind = Tok::rbracket; break;
      default: throw ParseError(std::string("unexpected character '") + c + "'", line, column);
    }
    out.push_back({kind, std::string(1, c), line, column});
    ++i;
    ++column;
  }
  out.push_back({Tok::end, "", line, column});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  ExpressionAst expression() {
    ExpressionAst ast;
    bool negative = false;
    if (peek().kind == Tok::minus) {
      negative = true;
      next();
    }
    ast.terms.push_back(term(negative));
    while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
      negative = next().kind == Tok::minus;
      ast.terms.push_back(term(negative));
    }
    if (peek().kind == Tok::colon) {
      next();
      std::string gen = expect_name("generator");
      for (auto& t : ast.terms)
        if (!t.word.generator) t.word.generator = gen;
    }
    if (peek().kind != Tok::end) fail("unexpected '" + peek().text + "'");
    return ast;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, peek().line, peek().column);
  }

  std::string expect_name(const char* what) {
    if (peek().kind != Tok::name) fail(std::string("expected ") + what);
    return next().text;
  }

  void expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(std::string("expected ") + what);
    next();
  }

  // Consumes a rational at the cursor if the tokens form one.
  std::optional<Scalar> rational() {
    if (peek().kind != Tok::name || !all_digits(peek().text)) return std::nullopt;
    std::string text = peek().text;
    std::size_t used = 1;
    if (peek(1).kind == Tok::slash) {
      if (peek(2).kind != Tok::name || !all_digits(peek(2).text)) {
        pos_ += 2;
        fail("expected denominator");
      }
      text += "/" + peek(2).text;
      used = 3;
    }
    const Tok after = peek(used).kind;
    const bool is_coefficient = after == Tok::star;
    const bool is_scalar = after == Tok::end || after == Tok::plus || after == Tok::minus || after == Tok::colon;
    if (!is_coefficient && !is_scalar && used == 1) return std::nullopt;  // a numeric basis label
    const Token& start = peek();
    Scalar value;
    try {
      value = parse_scalar(text);
    } catch (const InputError&) {
      throw ParseError("malformed rational '" + text + "'", start.line, start.column);
    }
    pos_ += used;
    if (!is_coefficient && !is_scalar) fail("expected '*' after coefficient");
    return value;
  }

  ExpressionTerm term(bool negative) {
    ExpressionTerm t;
    t.coefficient = negative ? -1 : 1;
    const std::size_t column = peek().column;
    if (auto r = rational()) {
      t.coefficient *= *r;
      if (peek().kind != Tok::star) {
        // Bare scalar: coefficient times the unit word.
        t.word.slots.push_back({{}, column});
        t.word.column = column;
        return t;
      }
      next();
    }
    if (peek().kind == Tok::lparen) {
      next();
      t.word = word();
      if (peek().kind == Tok::colon) {
        next();
        t.word.generator = expect_name("generator");
      }
      expect(Tok::rparen, "')'");
    } else {
      t.word = word();
    }
    return t;
  }

  ExpressionWord word() {
    ExpressionWord w;
    w.column = peek().column;
    bool dotted = false, lettered = false;
    ExpressionSlot slot{{}, peek().column};
    auto close_slot = [&] {
      w.slots.push_back(std::move(slot));
      slot = {{}, peek().column};
    };
    while (true) {
      const Token& t = peek();
      if (t.kind == Tok::name && t.text == "Q" && peek(1).kind == Tok::lbracket) {
        if (dotted) fail("operator letter inside an operated word");
        lettered = true;
        next();
        next();
        std::string label = expect_name("operator label");
        expect(Tok::rbracket, "']'");
        close_slot();
        w.ops.push_back(std::move(label));
      } else if (t.kind == Tok::name) {
        slot.factors.push_back(next().text);
      } else if (t.kind == Tok::dot) {
        if (lettered) fail("'.' inside an operator word");
        if (slot.factors.empty()) fail("expected basis label");
        dotted = true;
        next();
        close_slot();
        w.ops.push_back(expect_name("operator label"));
        expect(Tok::dot, "'.'");
        slot.column = peek().column;
        if (peek().kind != Tok::name) fail("expected basis label");
      } else {
        break;
      }
    }
    if (slot.factors.empty() && w.slots.empty() && w.ops.empty()) fail("expected word");
    w.slots.push_back(std::move(slot));
    w.syntax = dotted ? ExpressionWord::Syntax::operated_word : ExpressionWord::Syntax::operator_word;
    return w;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

std::string word_string(const ExpressionWord& w) {
  const bool dotted = w.syntax == ExpressionWord::Syntax::operated_word;
  auto slot_text = [](const ExpressionSlot& s) {
    std::string out;
    for (const auto& f : s.factors) out += (out.empty() ? "" : " ") + f;
    return out;
  };
  std::string out = slot_text(w.slots[0]);
  for (std::size_t k = 0; k < w.ops.size(); ++k) {
    std::string piece = dotted ? ". " + w.ops[k] + " . " : "Q[" + w.ops[k] + "]";
    std::string next = slot_text(w.slots[k + 1]);
    if (!dotted) {
      if (!out.empty()) out += " ";
      out += piece;
      if (!next.empty()) out += " " + next;
    } else {
      out += " " + piece + next;
    }
  }
  if (out.empty()) out = "1";
  if (w.generator) out = "(" + out + " : " + *w.generator + ")";
  return out;
}

Vector slot_value(const ExpressionSlot& s, const AlgebraPresentation& alg) {
  Vector v = alg.unit;
  for (const auto& f : s.factors) {
    std::size_t i;
    try {
      i = alg.basis_index(f);
    } catch (const UnknownLabel& e) {
      throw UnknownLabel(std::string(e.what()) + " (column " + std::to_string(s.column) + ")");
    }
    v = alg.multiply(v, unit_vector(alg.dim, i));
  }
  return v;
}

std::vector<std::size_t> op_indices(const ExpressionWord& w, const MrbInstance& inst) {
  std::vector<std::size_t> out;
  for (const auto& label : w.ops) out.push_back(inst.operators().index_of(label));
  return out;
}

std::vector<Vector> slot_values(const ExpressionWord& w, const AlgebraPresentation& alg) {
  std::vector<Vector> out;
  for (const auto& s : w.slots) out.push_back(slot_value(s, alg));
  return out;
}

}  // namespace

std::vector<std::string> ExpressionAst::generators() const {
  std::set<std::string> names;
  for (const auto& t : terms)
    if (t.word.generator) names.insert(*t.word.generator);
  return {names.begin(), names.end()};
}

ExpressionAst parse_expression(std::string_view text) { return Parser(tokenize(text)).expression(); }

std::string to_string(const ExpressionAst& ast) {
  std::string out;
  for (const auto& t : ast.terms) {
    if (sgn(t.coefficient) == 0) continue;
    const auto& w = t.word;
    if (!w.generator && w.ops.empty() && w.slots[0].factors.empty()) {
      const bool first = out.empty();
      if (sgn(t.coefficient) < 0)
        out += first ? "-" : " - ";
      else if (!first)
        out += " + ";
      out += Scalar(abs(t.coefficient)).get_str();
      continue;
    }
    detail::append_term(out, t.coefficient, word_string(w));
  }
  return out.empty() ? "0" : out;
}

OpElement to_op_element(const ExpressionAst& ast, const OperatorRing& ring) {
  const auto& inst = ring.instance();
  OpElement out;
  for (const auto& t : ast.terms) {
    if (t.word.generator) throw InputError("operator expression term names a generator");
    if (t.word.syntax == ExpressionWord::Syntax::operated_word)
      throw InputError("operated word where an operator word was expected");
    out += t.coefficient * ring.pure(slot_values(t.word, inst.algebra()), op_indices(t.word, inst));
  }
  return out;
}

FreeModuleElement to_module_element(const ExpressionAst& ast, const OperatorRing& ring,
                                    const std::vector<std::string>& generators) {
  const auto& inst = ring.instance();
  FreeModuleElement out;
  for (const auto& t : ast.terms) {
    if (!t.word.generator) throw InputError("module expression term lacks a generator");
    if (t.word.syntax == ExpressionWord::Syntax::operated_word)
      throw InputError("operated word where an operator word was expected");
    const std::size_t x = label_index(generators, *t.word.generator, "generator");
    OpElement e = ring.pure(slot_values(t.word, inst.algebra()), op_indices(t.word, inst));
    for (const auto& [w, c] : e.terms()) out.add({w, x}, t.coefficient * c);
  }
  return out;
}

OperatedElement to_operated_element(const ExpressionAst& ast, const OperatedFree& free) {
  const auto& inst = free.instance();
  OperatedElement out;
  for (const auto& t : ast.terms) {
    if (!t.word.generator) throw InputError("operated expression term lacks a generator");
    if (t.word.syntax == ExpressionWord::Syntax::operator_word && !t.word.ops.empty())
      throw InputError("operator word where an operated word was expected");
    const std::size_t x = free.generator_index(*t.word.generator);
    out += t.coefficient * free.pure(slot_values(t.word, inst.algebra()), op_indices(t.word, inst), x);
  }
  return out;
}

}  // namespace mrb
