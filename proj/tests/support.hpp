#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "mvcurl/cohomology.hpp"
#include "mvcurl/document.hpp"
#include "mvcurl/cli.hpp"
#include "mvcurl/identities.hpp"
#include "mvcurl/json_io.hpp"
#include "mvcurl/printer.hpp"

namespace testing_support {

using namespace mvcurl;

inline Document workspace(std::vector<std::string> names) { return Document(make_chart(std::move(names))); }

inline RationalFunc fn(const Document& d, std::string_view text) {
  auto v = parse_expression(text, d);
  if (auto* f = std::get_if<RationalFunc>(&v)) return *f;
  throw std::runtime_error("not a scalar: " + std::string(text));
}

inline Multivector mv(const Document& d, std::string_view text) {
  auto v = parse_expression(text, d);
  if (auto* f = std::get_if<RationalFunc>(&v)) return Multivector::scalar(d.chart(), *f);
  if (auto* m = std::get_if<Multivector>(&v)) return *m;
  throw std::runtime_error("not a multivector: " + std::string(text));
}

inline DifferentialForm form(const Document& d, std::string_view text) {
  auto v = parse_expression(text, d);
  if (auto* f = std::get_if<RationalFunc>(&v)) return DifferentialForm::scalar(d.chart(), *f);
  if (auto* w = std::get_if<DifferentialForm>(&v)) return *w;
  throw std::runtime_error("not a form: " + std::string(text));
}

inline VolumeForm volume(const Document& d, std::string_view density) { return VolumeForm(d.chart(), fn(d, density)); }

// ---- oracles written directly from coordinate formulas ----

inline RationalFunc coeff(const Multivector& a, std::initializer_list<std::size_t> one_based) {
  IndexSet s;
  for (auto i : one_based) s = s | IndexSet::single(i - 1);
  return a.coefficient(s);
}

// π^{ij} for any i, j (antisymmetric extension), zero-based.
inline RationalFunc pi_entry(const Multivector& pi, std::size_t i, std::size_t j) {
  if (i == j) return pi.chart()->zero();
  const IndexSet s = IndexSet::single(i) | IndexSet::single(j);
  return i < j ? pi.coefficient(s) : -pi.coefficient(s);
}

// {f, g} = Σ_{i,j} π^{ij} ∂_i f ∂_j g.
inline RationalFunc poisson_bracket(const Multivector& pi, const RationalFunc& f, const RationalFunc& g) {
  const std::size_t n = pi.chart()->dim();
  RationalFunc out = pi.chart()->zero();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out += pi_entry(pi, i, j) * f.derivative(i) * g.derivative(j);
  return out;
}

// Brute force: every cyclic Jacobi sum on coordinate functions vanishes.
inline bool jacobi_by_brackets(const Multivector& pi) {
  const auto& chart = pi.chart();
  const std::size_t n = chart->dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        auto xi = chart->coordinate(i), xj = chart->coordinate(j), xk = chart->coordinate(k);
        auto s = poisson_bracket(pi, xi, poisson_bracket(pi, xj, xk)) + poisson_bracket(pi, xj, poisson_bracket(pi, xk, xi)) +
                 poisson_bracket(pi, xk, poisson_bracket(pi, xi, xj));
        if (!s.is_zero()) return false;
      }
  return true;
}

// div X = (1/f) Σ ∂_i(f X^i) for V = f dx^1 ∧ ... ∧ dx^n.
inline RationalFunc divergence_oracle(const RationalFunc& f, const Multivector& x) {
  const std::size_t n = x.chart()->dim();
  RationalFunc s = x.chart()->zero();
  for (std::size_t i = 0; i < n; ++i) s += (f * x.coefficient(IndexSet::single(i))).derivative(i);
  return s / f;
}

// [X, Y]^i = X^j ∂_j Y^i − Y^j ∂_j X^i.
inline Multivector lie_bracket_oracle(const Multivector& x, const Multivector& y) {
  const auto& chart = x.chart();
  const std::size_t n = chart->dim();
  Multivector out(chart, 1);
  for (std::size_t i = 0; i < n; ++i) {
    RationalFunc c = chart->zero();
    for (std::size_t j = 0; j < n; ++j) {
      c += x.coefficient(IndexSet::single(j)) * y.coefficient(IndexSet::single(i)).derivative(j);
      c -= y.coefficient(IndexSet::single(j)) * x.coefficient(IndexSet::single(i)).derivative(j);
    }
    out.add(IndexSet::single(i), c);
  }
  return out;
}

inline RationalFunc apply_oracle(const Multivector& x, const RationalFunc& f) {
  RationalFunc s = x.chart()->zero();
  for (std::size_t i = 0; i < x.chart()->dim(); ++i) s += x.coefficient(IndexSet::single(i)) * f.derivative(i);
  return s;
}

// Nambu-type Poisson bivectors on R^3: π^{12} = g ∂_3 C, π^{23} = g ∂_1 C,
// π^{31} = g ∂_2 C satisfy Jacobi for every C and g.
inline Multivector nambu_poisson(const ChartPtr& chart, const RationalFunc& c, const RationalFunc& g) {
  Multivector pi(chart, 2);
  pi.add(IndexSet::single(0) | IndexSet::single(1), g * c.derivative(2));
  pi.add(IndexSet::single(1) | IndexSet::single(2), g * c.derivative(0));
  pi.add(IndexSet::single(0) | IndexSet::single(2), -(g * c.derivative(1)));
  return pi;
}

// Random Poisson bivector from the families: planar h ∂1∧∂2, Nambu type in
// dimension 3, Lie-Poisson.
inline Multivector random_poisson(RandomObjects& rng, const ChartPtr& chart) {
  const std::size_t n = chart->dim();
  const int family = rng.integer(0, 2);
  if (n == 2 || family == 0) {
    Multivector pi(chart, 2);
    pi.add(IndexSet::single(0) | IndexSet::single(1), rng.polynomial(n));
    return pi;
  }
  if (n == 3 && family == 1) return nambu_poisson(chart, rng.polynomial(3), rng.polynomial(3));
  return lie_poisson(chart, rng.lie_algebra(n));
}

// ---- constructed instances for the closure properties ----

inline RationalFunc random_function(RandomObjects& rng, std::size_t n) { return rng.polynomial(n); }
inline RationalFunc random_nonzero(RandomObjects& rng, std::size_t n) { return rng.nonzero_polynomial(n); }

// a0 + a1 t + a2 t^2 with random integer coefficients.
inline RationalFunc random_quadratic_of(RandomObjects& rng, const RationalFunc& t) {
  const auto& one = RationalFunc::constant(t.nvars(), 1);
  return RationalFunc::constant(t.nvars(), rng.integer(-3, 3)) * one +
         RationalFunc::constant(t.nvars(), rng.integer(-3, 3)) * t +
         RationalFunc::constant(t.nvars(), rng.integer(-3, 3)) * t * t;
}

// m-multiplier multivector of grade g: (1/m) D_V(C) for random C of grade g+1.
inline Multivector multiplier_multivector(RandomObjects& rng, const VolumeForm& v, const RationalFunc& m, int g) {
  for (int attempt = 0; attempt < 20; ++attempt) {
    auto a = m.inverse() * curl(v, rng.multivector(v.chart(), g + 1));
    if (!a.is_zero()) return a;
  }
  return m.inverse() * Multivector::blade(v.chart(), IndexSet::full(static_cast<std::size_t>(g)), v.chart()->one()) *
         v.density().inverse();
}

// Bracket of two m-multiplier multivectors is again one.
inline bool bracket_closure_instance(RandomObjects& rng) {
  const auto n = static_cast<std::size_t>(rng.integer(2, 4));
  auto chart = make_chart(n);
  auto v = rng.volume(chart);
  auto m = random_nonzero(rng, n);
  const int top = static_cast<int>(std::min<std::size_t>(n - 1, 2));
  auto a = multiplier_multivector(rng, v, m, rng.integer(1, top));
  auto b = multiplier_multivector(rng, v, m, rng.integer(1, top));
  if (!last_multiplier_residual(v, m, a).is_zero() || !last_multiplier_residual(v, m, b).is_zero()) return false;
  return last_multiplier_residual(v, m, schouten(a, b)).is_zero();
}

// For exact A and B: A ∧ B exact iff [A, B] = 0. Returns the common verdict
// or nullopt when the two sides disagree.
inline std::optional<bool> wedge_criterion_instance(RandomObjects& rng) {
  const auto n = static_cast<std::size_t>(rng.integer(2, 4));
  auto chart = make_chart(n);
  Multivector a, b;
  VolumeForm v = VolumeForm::standard(chart);
  switch (rng.integer(0, 2)) {
    case 0: {
      v = rng.volume(chart);
      const int top = static_cast<int>(n) - 1;
      a = curl(v, rng.multivector(chart, rng.integer(2, top + 1)));
      b = curl(v, rng.multivector(chart, rng.integer(2, top + 1)));
      break;
    }
    case 1: {
      // constant coefficients under the unit density
      auto constant_mv = [&](int g) {
        Multivector c(chart, g);
        for (std::uint32_t bits = 0; bits < (1u << n); ++bits)
          if (std::popcount(bits) == g) c.add(IndexSet{bits}, chart->constant(rng.integer(-2, 2)));
        return c;
      };
      a = constant_mv(rng.integer(1, static_cast<int>(n)));
      b = constant_mv(rng.integer(1, static_cast<int>(n)));
      break;
    }
    default: {
      v = rng.volume(chart);
      a = curl(v, rng.multivector(chart, 2));
      b = a;
      break;
    }
  }
  if (!is_exact(v, a) || !is_exact(v, b)) return std::nullopt;
  const bool wedge_exact = is_exact(v, wedge(a, b));
  const bool commute = schouten(a, b).is_zero();
  if (wedge_exact != commute) return std::nullopt;
  return commute;
}

// For exact A: f A exact iff f is a Casimir of A. Returns the common verdict.
inline std::optional<bool> casimir_exactness_instance(RandomObjects& rng) {
  auto chart = make_chart(3);
  auto v = VolumeForm::standard(chart);
  Multivector a;
  RationalFunc f;
  if (rng.coin()) {
    StructureConstants so3(3, {{0, 1, {0, 0, 1}}, {1, 2, {1, 0, 0}}, {2, 0, {0, 1, 0}}});
    a = chart->constant(rng.integer(1, 3)) * lie_poisson(chart, so3);
    const auto c = chart->coordinate(0) * chart->coordinate(0) + chart->coordinate(1) * chart->coordinate(1) +
                   chart->coordinate(2) * chart->coordinate(2);
    f = rng.coin() ? random_quadratic_of(rng, c) : random_function(rng, 3);
  } else {
    v = rng.volume(chart);
    a = curl(v, rng.multivector(chart, rng.integer(2, 3)));
    f = random_function(rng, 3);
  }
  if (!is_exact(v, a)) return std::nullopt;
  const bool exact = is_exact(v, f * a);
  const bool casimir = schouten(a, Multivector::scalar(chart, f)).is_zero();
  if (exact != casimir) return std::nullopt;
  return exact;
}

// Multipliers m and m·φ(first integrals) of X = (1/m) W with W divergence
// free: their ratio is a first integral, and first integral × multiplier is
// a multiplier.
inline bool multiplier_ratio_instance(RandomObjects& rng) {
  const auto n = static_cast<std::size_t>(rng.integer(2, 3));
  auto chart = make_chart(n);
  auto v = VolumeForm::standard(chart);
  auto nonconstant = [&] {
    for (;;) {
      auto p = rng.nonzero_polynomial(n);
      if (!p.is_constant()) return RationalFunc(p);
    }
  };
  Multivector w(chart, 1);
  std::vector<RationalFunc> integrals;
  if (n == 2) {
    auto h = nonconstant();
    w.add(IndexSet::single(0), h.derivative(1));
    w.add(IndexSet::single(1), -h.derivative(0));
    integrals = {h};
  } else {
    auto h1 = nonconstant(), h2 = nonconstant();
    for (std::size_t i = 0; i < 3; ++i) {
      const std::size_t j = (i + 1) % 3, k = (i + 2) % 3;
      w.add(IndexSet::single(i), h1.derivative(j) * h2.derivative(k) - h1.derivative(k) * h2.derivative(j));
    }
    integrals = {h1, h2};
  }
  if (w.is_zero()) return true;
  auto m = random_nonzero(rng, n);
  auto x = m.inverse() * w;
  RationalFunc phi = random_quadratic_of(rng, integrals[0]);
  if (integrals.size() > 1) phi += random_quadratic_of(rng, integrals[1]);
  if (phi.is_zero()) phi = chart->one();
  const auto m2 = m * phi;
  if (!is_last_multiplier(v, m, x).value() || !is_last_multiplier(v, m2, x).value()) return false;
  if (!first_integral_check(x, m2 / m)) return false;
  auto f = random_quadratic_of(rng, integrals.back());
  if (f.is_zero()) return true;
  return first_integral_check(x, f) && is_last_multiplier(v, f * m, x).value();
}

// ---- golden corpus ----

inline std::filesystem::path golden_dir() { return MVCURL_GOLDEN_DIR; }

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Documents of the corpus, sorted by name.
inline std::vector<std::filesystem::path> golden_documents(const std::string& sub = "") {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(golden_dir() / sub))
    if (e.path().extension() == ".mv") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

// One entry of golden/cli_matrix.txt: "$ args", expected stdout, "? code".
struct CliCase {
  std::vector<std::string> args;
  std::string expected_out;
  int expected_code = 0;
};

inline std::vector<CliCase> cli_matrix() {
  std::istringstream in(read_file(golden_dir() / "cli_matrix.txt"));
  std::vector<CliCase> cases;
  std::string line;
  CliCase* cur = nullptr;
  while (std::getline(in, line)) {
    if (line.rfind("$ ", 0) == 0) {
      cases.emplace_back();
      cur = &cases.back();
      std::istringstream words(line.substr(2));
      std::string w;
      bool input_next = false;
      while (words >> w) {
        cur->args.push_back(input_next ? (golden_dir() / w).string() : w);
        input_next = w == "--input";
      }
    } else if (cur && line.rfind("? ", 0) == 0) {
      cur->expected_code = std::stoi(line.substr(2));
      cur = nullptr;
    } else if (cur) {
      cur->expected_out += line + "\n";
    }
  }
  return cases;
}

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

inline CliResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli_run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace testing_support
