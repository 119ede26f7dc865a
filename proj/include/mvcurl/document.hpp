#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mvcurl/poisson.hpp"

namespace mvcurl {

enum class BindingKind { Function, Multivector, Form, Volume, Lie };

// DSL keyword for a kind: func, mv, form, volume, lie.
std::string_view keyword(BindingKind kind);
std::optional<BindingKind> kind_from_keyword(std::string_view word);

using BindingValue = std::variant<RationalFunc, Multivector, DifferentialForm, VolumeForm, StructureConstants>;

struct Binding {
  std::string name;
  BindingKind kind;
  BindingValue value;

  friend bool operator==(const Binding&, const Binding&) = default;
};

// A chart plus ordered, uniquely named, well-typed bindings.
class Document {
public:
  explicit Document(ChartPtr chart);

  const ChartPtr& chart() const noexcept { return chart_; }
  const std::vector<Binding>& bindings() const noexcept { return bindings_; }

  // ValidationError on a duplicate or reserved name, or a value that does not
  // match the kind or chart.
  void add(Binding binding);

  const Binding* find(std::string_view name) const;
  const Binding& get(std::string_view name) const;
  const Binding* first_of(BindingKind kind) const;

  friend bool operator==(const Document& a, const Document& b) {
    return *a.chart_ == *b.chart_ && a.bindings_ == b.bindings_;
  }

private:
  ChartPtr chart_;
  std::vector<Binding> bindings_;
};

// Names that cannot be used for coordinates or bindings: keywords and the
// basis symbols e<i>, d<i>.
bool is_reserved_name(std::string_view name);

struct SourceSpan {
  std::size_t line = 1;
  std::size_t column = 1;
};

// Expression tree of the DSL right-hand sides.
struct SyntaxNode {
  enum class Op { Number, Name, Negate, Add, Subtract, Multiply, Divide, Power, Wedge };

  Op op = Op::Number;
  SourceSpan span;
  Rational number;    // Number
  std::string name;   // Name
  long exponent = 0;  // Power
  std::vector<SyntaxNode> children;
};

// document := chart_decl binding* ; one statement per line, '#' comments.
// ParseError (with line/column) on malformed or ill-typed input.
Document parse(std::string_view text);

// Parses and evaluates one expression against a document's chart and
// bindings; the result is a scalar, multivector or form.
using ExprValue = std::variant<RationalFunc, Multivector, DifferentialForm>;
ExprValue parse_expression(std::string_view text, const Document& context);

}  // namespace mvcurl
