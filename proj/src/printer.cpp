#include "mvcurl/printer.hpp"

#include <sstream>

namespace mvcurl {
namespace {

std::string monomial_text(const Monomial& m, const Chart& chart) {
  std::string out;
  for (std::size_t i = 0; i < chart.dim(); ++i) {
    const auto e = m.exponent(i);
    if (e == 0) continue;
    if (!out.empty()) out += '*';
    out += chart.names()[i];
    if (e > 1) out += '^' + std::to_string(e);
  }
  return out;
}

// |c| * m without sign.
std::string term_magnitude(const Rational& c, const Monomial& m, const Chart& chart) {
  const Rational a = abs(c);
  if (m.is_one()) return a.get_str();
  if (a == 1) return monomial_text(m, chart);
  return a.get_str() + "*" + monomial_text(m, chart);
}

bool single_variable(const Polynomial& p) {
  if (p.size() != 1) return false;
  const auto& [m, c] = p.terms().front();
  if (c != 1) return false;
  int vars = 0;
  for (std::size_t i = 0; i < p.nvars(); ++i) vars += m.exponent(i) != 0;
  return vars == 1;
}

// Coefficient in front of a blade: returns the sign separately so that the
// caller can join terms with " + " / " - ".
std::pair<bool, std::string> coefficient_text(const RationalFunc& f, const Chart& chart) {
  const auto& num = f.numerator();
  if (f.is_polynomial() && num.size() == 1) {
    const auto& [m, c] = num.terms().front();
    const bool negative = c < 0;
    if (m.is_one() && abs(c) == 1) return {negative, ""};
    return {negative, term_magnitude(c, m, chart) + "*"};
  }
  return {false, "(" + print_canonical(f, chart) + ")*"};
}

template <class Kind>
std::string blade_sum_text(const BladeSum<Kind>& a, const char* symbol) {
  const Chart& chart = *a.chart();
  if (a.grade() == 0) return print_canonical(a.as_scalar(), chart);
  if (a.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [blade, f] : a.terms()) {
    auto [negative, coeff] = coefficient_text(f, chart);
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    out += coeff;
    bool first_index = true;
    for (auto i : blade.indices()) {
      if (!first_index) out += "^^";
      first_index = false;
      out += symbol + std::to_string(i + 1);
    }
  }
  return out;
}

template <class Kind>
std::string typed_text(const BladeSum<Kind>& a, const char* symbol) {
  if (!a.is_zero() || a.grade() == 0) return blade_sum_text(a, symbol);
  const int n = static_cast<int>(a.chart()->dim());
  std::string out = "0*";
  for (int i = 1; i <= a.grade(); ++i) {
    if (i > 1) out += "^^";
    out += symbol + std::to_string(a.grade() <= n ? i : 1);
  }
  return out;
}

}  // namespace

std::string print_canonical(const Polynomial& p, const Chart& chart) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    if (first) {
      if (c < 0) out += '-';
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    out += term_magnitude(c, m, chart);
  }
  return out;
}

std::string print_canonical(const RationalFunc& f, const Chart& chart) {
  const auto& num = f.numerator();
  const auto& den = f.denominator();
  std::string n = print_canonical(num, chart);
  if (den.is_one()) return n;
  if (num.size() > 1) n = "(" + n + ")";
  std::string d = print_canonical(den, chart);
  if (!single_variable(den)) d = "(" + d + ")";
  return n + "/" + d;
}

std::string print_canonical(const Multivector& a) { return blade_sum_text(a, "e"); }

std::string print_canonical(const DifferentialForm& omega) { return blade_sum_text(omega, "d"); }

std::string print_canonical(const VolumeForm& v) { return print_canonical(v.density(), *v.chart()); }

std::string print_canonical(const StructureConstants& c) {
  if (c.is_abelian()) return "0";
  const std::size_t n = c.dim();
  auto chart = make_chart(n);
  std::string out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      Multivector value(chart, 1);
      for (std::size_t k = 0; k < n; ++k) value.add(IndexSet::single(k), chart->constant(c(i, j, k)));
      if (value.is_zero()) continue;
      if (!out.empty()) out += ", ";
      out += "[e" + std::to_string(i + 1) + ",e" + std::to_string(j + 1) + "] = " + print_canonical(value);
    }
  }
  return out;
}

std::string print_canonical(const Document& doc) {
  std::ostringstream out;
  out << "chart";
  for (const auto& n : doc.chart()->names()) out << ' ' << n;
  out << '\n';
  for (const auto& b : doc.bindings()) {
    out << keyword(b.kind) << ' ' << b.name << " = ";
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, RationalFunc>) {
            out << print_canonical(v, *doc.chart());
          } else if constexpr (std::is_same_v<T, Multivector>) {
            out << typed_text(v, "e");
          } else if constexpr (std::is_same_v<T, DifferentialForm>) {
            out << typed_text(v, "d");
          } else {
            out << print_canonical(v);
          }
        },
        b.value);
    out << '\n';
  }
  return out.str();
}

}  // namespace mvcurl
