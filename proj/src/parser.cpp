#include <cctype>
#include <charconv>

#include "mvcurl/document.hpp"

namespace mvcurl {
namespace {

enum class Tok { Ident, Number, Plus, Minus, Star, Slash, Caret, Wedge, LParen, RParen, LBracket, RBracket, Comma, Equals, Newline, End };

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::Newline: return "end of line";
    case Tok::End: return "end of input";
    default: return "'" + t.text + "'";
  }
}

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  int depth = 0;
  auto advance = [&](std::size_t k) {
    i += k;
    col += k;
  };
  while (i < text.size()) {
    const char c = text[i];
    const SourceSpan span{line, col};
    if (c == '\n') {
      if (depth == 0) out.push_back({Tok::Newline, "\n", span});
      ++i;
      ++line;
      col = 1;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j + 1 < text.size() && text[j] == '.' && std::isdigit(static_cast<unsigned char>(text[j + 1]))) {
        ++j;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      }
      out.push_back({Tok::Number, std::string(text.substr(i, j - i)), span});
      advance(j - i);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      out.push_back({Tok::Ident, std::string(text.substr(i, j - i)), span});
      advance(j - i);
      continue;
    }
    Tok kind;
    std::size_t len = 1;
    switch (c) {
      case '+': kind = Tok::Plus; break;
      case '-': kind = Tok::Minus; break;
      case '*': kind = Tok::Star; break;
      case '/': kind = Tok::Slash; break;
      case '^':
        if (i + 1 < text.size() && text[i + 1] == '^') {
          kind = Tok::Wedge;
          len = 2;
        } else {
          kind = Tok::Caret;
        }
        break;
      case '(': kind = Tok::LParen; ++depth; break;
      case ')': kind = Tok::RParen; depth = std::max(0, depth - 1); break;
      case '[': kind = Tok::LBracket; ++depth; break;
      case ']': kind = Tok::RBracket; depth = std::max(0, depth - 1); break;
      case ',': kind = Tok::Comma; break;
      case '=': kind = Tok::Equals; break;
      default: throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
    out.push_back({kind, std::string(text.substr(i, len)), span});
    advance(len);
  }
  out.push_back({Tok::End, "", {line, col}});
  return out;
}

Rational parse_number(const Token& t) {
  const auto dot = t.text.find('.');
  if (dot == std::string::npos) return Rational(mpz_class(t.text, 10));
  std::string digits = t.text.substr(0, dot) + t.text.substr(dot + 1);
  mpz_class den = 1;
  for (std::size_t k = dot + 1; k < t.text.size(); ++k) den *= 10;
  Rational q(mpz_class(digits, 10), den);
  q.canonicalize();
  return q;
}

// Index of a basis symbol e<i> / d<i> (1-based), 0 if `name` is not one.
std::size_t basis_index(std::string_view name, char prefix) {
  if (name.size() < 2 || name[0] != prefix) return 0;
  std::size_t value = 0;
  auto [p, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), value);
  if (ec != std::errc{} || p != name.data() + name.size()) return 0;
  return value;
}

class Parser {
public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  Document document();
  SyntaxNode standalone_expression() {
    auto node = additive();
    skip_newlines();
    expect(Tok::End, "end of input");
    return node;
  }

private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_++]; }
  bool at(Tok k) const { return peek().kind == k; }
  void skip_newlines() {
    while (at(Tok::Newline)) ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg, const Token& t) const { throw ParseError(msg, t.span.line, t.span.column); }
  const Token& expect(Tok k, const char* what) {
    if (!at(k)) fail(std::string("expected ") + what + ", found " + describe(peek()), peek());
    return take();
  }

  SyntaxNode additive();
  SyntaxNode wedge();
  SyntaxNode term();
  SyntaxNode unary();
  SyntaxNode power();
  SyntaxNode primary();

  StructureConstants lie(const Document& doc, const Token& name);

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

SyntaxNode binary(SyntaxNode::Op op, const Token& t, SyntaxNode lhs, SyntaxNode rhs) {
  SyntaxNode n;
  n.op = op;
  n.span = t.span;
  n.children.push_back(std::move(lhs));
  n.children.push_back(std::move(rhs));
  return n;
}

SyntaxNode Parser::additive() {
  auto lhs = wedge();
  while (at(Tok::Plus) || at(Tok::Minus)) {
    const Token& t = take();
    auto op = t.kind == Tok::Plus ? SyntaxNode::Op::Add : SyntaxNode::Op::Subtract;
    lhs = binary(op, t, std::move(lhs), wedge());
  }
  return lhs;
}

SyntaxNode Parser::wedge() {
  auto lhs = term();
  while (at(Tok::Wedge)) {
    const Token& t = take();
    lhs = binary(SyntaxNode::Op::Wedge, t, std::move(lhs), term());
  }
  return lhs;
}

SyntaxNode Parser::term() {
  auto lhs = unary();
  for (;;) {
    if (at(Tok::Star) || at(Tok::Slash)) {
      const Token& t = take();
      auto op = t.kind == Tok::Star ? SyntaxNode::Op::Multiply : SyntaxNode::Op::Divide;
      lhs = binary(op, t, std::move(lhs), unary());
    } else if (at(Tok::Ident) || at(Tok::Number) || at(Tok::LParen)) {
      const Token& t = peek();
      lhs = binary(SyntaxNode::Op::Multiply, t, std::move(lhs), unary());
    } else {
      return lhs;
    }
  }
}

SyntaxNode Parser::unary() {
  if (at(Tok::Minus)) {
    const Token& t = take();
    SyntaxNode n;
    n.op = SyntaxNode::Op::Negate;
    n.span = t.span;
    n.children.push_back(unary());
    return n;
  }
  return power();
}

SyntaxNode Parser::power() {
  auto base = primary();
  if (!at(Tok::Caret)) return base;
  const Token& caret = take();
  bool negative = false;
  if (at(Tok::Minus)) {
    take();
    negative = true;
  }
  const Token& e = expect(Tok::Number, "integer exponent");
  if (e.text.find('.') != std::string::npos) fail("exponent must be an integer", e);
  if (e.text.size() > 3) fail("exponent too large", e);
  SyntaxNode n;
  n.op = SyntaxNode::Op::Power;
  n.span = caret.span;
  n.exponent = std::stol(e.text) * (negative ? -1 : 1);
  n.children.push_back(std::move(base));
  return n;
}

SyntaxNode Parser::primary() {
  const Token& t = peek();
  SyntaxNode n;
  n.span = t.span;
  switch (t.kind) {
    case Tok::Number:
      take();
      n.op = SyntaxNode::Op::Number;
      n.number = parse_number(t);
      return n;
    case Tok::Ident:
      take();
      n.op = SyntaxNode::Op::Name;
      n.name = t.text;
      return n;
    case Tok::LParen: {
      take();
      auto inner = additive();
      expect(Tok::RParen, "')'");
      return inner;
    }
    default:
      fail("expected an expression, found " + describe(t), t);
  }
}

class Evaluator {
public:
  explicit Evaluator(const Document& doc) : doc_(doc), chart_(doc.chart()) {}

  ExprValue eval(const SyntaxNode& node) const;

private:
  [[noreturn]] static void fail(const std::string& msg, const SyntaxNode& n) {
    throw ParseError(msg, n.span.line, n.span.column);
  }
  static const RationalFunc* scalar(const ExprValue& v) { return std::get_if<RationalFunc>(&v); }
  ExprValue normalize(ExprValue v) const;
  ExprValue name(const SyntaxNode& n) const;

  const Document& doc_;
  ChartPtr chart_;
};

std::string describe(const ExprValue& v) {
  if (std::holds_alternative<RationalFunc>(v)) return "a scalar";
  if (const auto* m = std::get_if<Multivector>(&v)) return "a grade-" + std::to_string(m->grade()) + " multivector";
  return "a degree-" + std::to_string(std::get<DifferentialForm>(v).grade()) + " form";
}

ExprValue Evaluator::normalize(ExprValue v) const {
  if (const auto* m = std::get_if<Multivector>(&v); m && m->grade() == 0) return m->as_scalar();
  if (const auto* w = std::get_if<DifferentialForm>(&v); w && w->grade() == 0) return w->as_scalar();
  return v;
}

ExprValue Evaluator::name(const SyntaxNode& n) const {
  const auto& coords = chart_->names();
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (coords[i] == n.name) return chart_->coordinate(i);
  for (char prefix : {'e', 'd'}) {
    if (std::size_t i = basis_index(n.name, prefix)) {
      if (i > chart_->dim()) fail("basis symbol '" + n.name + "' outside the chart", n);
      if (prefix == 'e') return Multivector::basis(chart_, i - 1);
      return DifferentialForm::basis(chart_, i - 1);
    }
  }
  const Binding* b = doc_.find(n.name);
  if (!b) fail("unknown identifier '" + n.name + "'", n);
  switch (b->kind) {
    case BindingKind::Function: return std::get<RationalFunc>(b->value);
    case BindingKind::Multivector: return normalize(std::get<Multivector>(b->value));
    case BindingKind::Form: return normalize(std::get<DifferentialForm>(b->value));
    default: fail(std::string(keyword(b->kind)) + " binding '" + n.name + "' cannot be used in an expression", n);
  }
}

ExprValue Evaluator::eval(const SyntaxNode& n) const {
  using Op = SyntaxNode::Op;
  switch (n.op) {
    case Op::Number: return chart_->constant(n.number);
    case Op::Name: return name(n);
    case Op::Negate:
      return std::visit([](const auto& v) -> ExprValue { return -v; }, eval(n.children[0]));
    case Op::Power: {
      auto base = eval(n.children[0]);
      const auto* f = scalar(base);
      if (!f) fail("'^' needs a scalar base; use '^^' for the wedge", n);
      if (n.exponent < 0 && f->is_zero()) fail("division by zero", n);
      RationalFunc b = n.exponent < 0 ? f->inverse() : *f;
      RationalFunc r = chart_->one();
      for (long k = 0; k < std::abs(n.exponent); ++k) r *= b;
      return r;
    }
    default: break;
  }

  auto lhs = eval(n.children[0]);
  auto rhs = eval(n.children[1]);
  const auto* fl = scalar(lhs);
  const auto* fr = scalar(rhs);
  switch (n.op) {
    case Op::Add:
    case Op::Subtract: {
      const bool sub = n.op == Op::Subtract;
      if (fl && fr) return sub ? *fl - *fr : *fl + *fr;
      if (lhs.index() == rhs.index()) {
        return std::visit(
            [&](const auto& a) -> ExprValue {
              using T = std::decay_t<decltype(a)>;
              const auto& b = std::get<T>(rhs);
              if constexpr (std::is_same_v<T, RationalFunc>) {
                return a;
              } else {
                if (a.grade() != b.grade()) fail("cannot add " + describe(lhs) + " and " + describe(rhs), n);
                return normalize(sub ? a - b : a + b);
              }
            },
            lhs);
      }
      fail("cannot add " + describe(lhs) + " and " + describe(rhs), n);
    }
    case Op::Multiply:
    case Op::Wedge:
      if (fl) return normalize(std::visit([&](const auto& b) -> ExprValue { return *fl * b; }, rhs));
      if (fr) return normalize(std::visit([&](const auto& a) -> ExprValue { return a * *fr; }, lhs));
      if (n.op == Op::Multiply) fail("product of " + describe(lhs) + " and " + describe(rhs) + "; use '^^' for the wedge", n);
      if (lhs.index() != rhs.index()) fail("wedge of mixed kinds: " + describe(lhs) + " and " + describe(rhs), n);
      if (const auto* a = std::get_if<Multivector>(&lhs)) return normalize(mvcurl::wedge(*a, std::get<Multivector>(rhs)));
      return normalize(mvcurl::wedge(std::get<DifferentialForm>(lhs), std::get<DifferentialForm>(rhs)));
    case Op::Divide:
      if (!fr) fail("division by " + describe(rhs) + "; only scalars divide", n);
      if (fr->is_zero()) fail("division by zero", n);
      return normalize(std::visit([&](const auto& a) -> ExprValue { return a * fr->inverse(); }, lhs));
    default: break;
  }
  fail("malformed expression", n);
}

BindingValue convert(const ExprValue& v, BindingKind kind, const Document& doc, const Token& at) {
  const auto& chart = doc.chart();
  auto mismatch = [&](const char* wanted) -> ParseError {
    return ParseError(std::string(keyword(kind)) + " binding needs " + wanted + ", got " + describe(v), at.span.line,
                      at.span.column);
  };
  const auto* f = std::get_if<RationalFunc>(&v);
  switch (kind) {
    case BindingKind::Function:
      if (!f) throw mismatch("a scalar");
      return *f;
    case BindingKind::Multivector:
      if (f) return Multivector::scalar(chart, *f);
      if (const auto* m = std::get_if<Multivector>(&v)) return *m;
      throw mismatch("a multivector");
    case BindingKind::Form:
      if (f) return DifferentialForm::scalar(chart, *f);
      if (const auto* w = std::get_if<DifferentialForm>(&v)) return *w;
      throw mismatch("a form");
    case BindingKind::Volume: {
      RationalFunc density;
      if (f) {
        density = *f;
      } else if (const auto* w = std::get_if<DifferentialForm>(&v); w && w->grade() == static_cast<int>(chart->dim())) {
        density = w->coefficient(IndexSet::full(chart->dim()));
      } else {
        throw mismatch("a density or a top-degree form");
      }
      if (density.is_zero()) throw ParseError("volume density must be non-zero", at.span.line, at.span.column);
      return VolumeForm(chart, density);
    }
    case BindingKind::Lie: break;
  }
  throw mismatch("a bracket table");
}

StructureConstants Parser::lie(const Document& doc, const Token& name) {
  const std::size_t n = doc.chart()->dim();
  if (at(Tok::Number) && peek().text == "0") {
    take();
    return StructureConstants(n);
  }
  std::vector<StructureConstants::Bracket> brackets;
  Evaluator ev(doc);
  for (;;) {
    expect(Tok::LBracket, "'[' or 0");
    std::size_t idx[2];
    for (int k = 0; k < 2; ++k) {
      const Token& t = expect(Tok::Ident, "basis symbol e<i>");
      idx[k] = basis_index(t.text, 'e');
      if (idx[k] == 0 || idx[k] > n) fail("expected basis symbol e1..e" + std::to_string(n) + ", found " + describe(t), t);
      if (k == 0) expect(Tok::Comma, "','");
    }
    expect(Tok::RBracket, "']'");
    expect(Tok::Equals, "'='");
    const Token& vt = peek();
    auto node = additive();
    auto value = ev.eval(node);
    std::vector<Rational> comps(n);
    auto bad = [&] { fail("bracket value must be a constant vector", vt); };
    if (const auto* f = std::get_if<RationalFunc>(&value)) {
      if (!f->is_zero()) bad();
    } else if (const auto* m = std::get_if<Multivector>(&value); m && m->grade() == 1) {
      for (const auto& [blade, c] : m->terms()) {
        if (!c.is_constant()) bad();
        comps[blade.indices()[0]] = c.numerator().constant_term();
      }
    } else {
      bad();
    }
    brackets.push_back({idx[0] - 1, idx[1] - 1, std::move(comps)});
    if (!at(Tok::Comma)) break;
    take();
    skip_newlines();
  }
  try {
    return StructureConstants(n, brackets);
  } catch (const ValidationError& e) {
    fail(std::string("lie binding '") + name.text + "': " + e.what(), name);
  }
}

Document Parser::document() {
  skip_newlines();
  const Token& head = peek();
  if (!(head.kind == Tok::Ident && head.text == "chart")) fail("expected chart declaration", head);
  take();
  std::vector<std::string> names;
  while (at(Tok::Ident)) {
    const Token& t = take();
    if (is_reserved_name(t.text)) fail("coordinate name '" + t.text + "' is reserved", t);
    for (const auto& existing : names)
      if (existing == t.text) fail("duplicate coordinate '" + t.text + "'", t);
    names.push_back(t.text);
  }
  if (names.empty()) fail("chart needs at least one coordinate", peek());
  if (names.size() > kMaxVars) fail("chart has more than " + std::to_string(kMaxVars) + " coordinates", head);
  if (!at(Tok::End)) expect(Tok::Newline, "end of line");

  Document doc(make_chart(std::move(names)));
  for (;;) {
    skip_newlines();
    if (at(Tok::End)) break;
    const Token& kw = expect(Tok::Ident, "binding keyword");
    if (kw.text == "chart") fail("only one chart declaration is allowed", kw);
    auto kind = kind_from_keyword(kw.text);
    if (!kind) fail("expected binding keyword (func, mv, form, volume, lie), found " + describe(kw), kw);
    const Token& name = expect(Tok::Ident, "binding name");
    expect(Tok::Equals, "'='");
    BindingValue value = *kind == BindingKind::Lie
                             ? BindingValue(lie(doc, name))
                             : convert(Evaluator(doc).eval(additive()), *kind, doc, name);
    if (!at(Tok::End)) expect(Tok::Newline, "end of line");
    try {
      doc.add({name.text, *kind, std::move(value)});
    } catch (const ValidationError& e) {
      fail(e.what(), name);
    }
  }
  return doc;
}

}  // namespace

Document parse(std::string_view text) { return Parser(text).document(); }

ExprValue parse_expression(std::string_view text, const Document& context) {
  return Evaluator(context).eval(Parser(text).standalone_expression());
}

}  // namespace mvcurl
