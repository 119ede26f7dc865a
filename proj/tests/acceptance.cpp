// Acceptance run: one PASS/FAIL line per criterion; non-zero exit on any failure.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>

#include "support.hpp"

using namespace testing_support;

namespace {

struct Verdict {
  bool ok = true;
  std::string detail;
};

class Tally {
public:
  void expect(bool condition, const std::string& what) {
    ++checks_;
    if (!condition && failures_++ == 0) first_ = what;
  }
  Verdict verdict(const std::string& summary) const {
    if (failures_ == 0) return {true, summary + " (" + std::to_string(checks_) + " checks)"};
    return {false, std::to_string(failures_) + "/" + std::to_string(checks_) + " checks failed, first: " + first_};
  }

private:
  std::size_t checks_ = 0, failures_ = 0;
  std::string first_;
};

std::vector<Multivector> scalars(const ChartPtr& chart, const std::vector<RationalFunc>& fs) {
  std::vector<Multivector> out;
  for (const auto& f : fs) out.push_back(Multivector::scalar(chart, f));
  return out;
}

bool same_span(const std::vector<Multivector>& a, const std::vector<Multivector>& b) {
  return span_contains(a, b) && span_contains(b, a) && span_rank(a) == span_rank(b);
}

Verdict identity_suite() {
  auto report = run_identity_suite(kDefaultSeed, 200);
  Tally t;
  for (const auto& o : report.outcomes) t.expect(o.failures == 0 && o.cases == 200, o.name + ": " + o.first_failure);
  t.expect(report.seconds < 60.0, "runtime " + std::to_string(report.seconds) + " s");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f s", report.seconds);
  return t.verdict(std::to_string(report.outcomes.size()) + " identities x 200 cases, seed " + std::to_string(kDefaultSeed) +
                   ", " + buf);
}

Verdict three_routes() {
  RandomObjects rng(kDefaultSeed + 2);
  Tally t;
  int positive = 0;
  for (int it = 0; it < 100; ++it) {
    const auto n = static_cast<std::size_t>(rng.integer(2, 4));
    auto chart = make_chart(n);
    auto v = rng.volume(chart);
    RationalFunc m(rng.nonzero_polynomial(n), rng.nonzero_polynomial(n));
    const int grade = rng.integer(1, static_cast<int>(n));
    Multivector a(chart, grade);
    bool constructed = grade < static_cast<int>(n) && rng.coin();
    if (constructed) a = m.inverse() * curl(v, rng.multivector(chart, grade + 1));
    if (a.is_zero()) {
      constructed = false;
      a = rng.multivector(chart, grade);
    }
    if (a.is_zero()) a = Multivector::blade(chart, IndexSet::full(static_cast<std::size_t>(grade)), chart->one());
    auto verdict = is_last_multiplier(v, m, a);
    t.expect(verdict.unanimous(), "disagreement at triple " + std::to_string(it));
    // independent oracle: the curl of m A computed on its own
    t.expect(verdict.curl_route == curl(v, m * a).is_zero(), "curl oracle at triple " + std::to_string(it));
    if (constructed) t.expect(verdict.curl_route, "constructed multiplier rejected at " + std::to_string(it));
    positive += verdict.curl_route;
  }
  t.expect(positive > 0 && positive < 100, "both verdicts occur");
  return t.verdict("100 triples unanimous, " + std::to_string(positive) + " multipliers");
}

Verdict reciprocal_multiplier() {
  auto d = workspace({"x", "y"});
  auto v = VolumeForm::standard(d.chart());
  Tally t;
  for (const char* text : {"x^2 + y^2 + 1", "x", "x*y + 3", "y^3 - x", "2 + x^2*y"}) {
    auto h = fn(d, text);
    auto pi = h * mv(d, "e1^^e2");
    auto m = h.inverse();
    auto r = lm_system_residuals(v, m, pi);
    t.expect(r.size() == 2 && r[0].is_zero() && r[1].is_zero(), std::string("residuals for h = ") + text);
    // coordinate residuals: π_m^1 = ∂_y(m h), π_m^2 = −∂_x(m h)
    auto mh = m * h;
    t.expect(mh.derivative(1).is_zero() && mh.derivative(0).is_zero(), std::string("oracle for h = ") + text);
    auto scaled = m * pi;
    t.expect(scaled == mv(d, "e1^^e2"), std::string("m π constant for h = ") + text);
    t.expect(curl(v, scaled).is_zero(), std::string("m π exact for h = ") + text);
    auto sol = lm_solve(v, pi, AnsatzSpace::with_denominator(d.chart(), 0, h));
    t.expect(sol.size() == 1, std::string("solution dimension for h = ") + text);
    t.expect(sol.size() == 1 && same_span(scalars(d.chart(), sol), scalars(d.chart(), {m})),
             std::string("solution span for h = ") + text);
  }
  return t.verdict("five h, residuals (0,0), m π = e1^^e2, 1-dimensional solution");
}

Verdict planar_cases() {
  auto d = workspace({"x", "y"});
  auto v = VolumeForm::standard(d.chart());
  Tally t;
  for (int c : {1, 2}) {
    auto ii = lie_poisson(d.chart(), StructureConstants(2, {{0, 1, {c, 0}}}));
    t.expect(same_span(scalars(d.chart(), lm_solve(v, ii, AnsatzSpace::with_denominator(d.chart(), 1, fn(d, "x")))),
                       {mv(d, "1/x")}),
             "case II, c = " + std::to_string(c));
    auto iii = lie_poisson(d.chart(), StructureConstants(2, {{0, 1, {0, c}}}));
    t.expect(same_span(scalars(d.chart(), lm_solve(v, iii, AnsatzSpace::with_denominator(d.chart(), 1, fn(d, "y")))),
                       {mv(d, "1/y")}),
             "case III, c = " + std::to_string(c));
    for (int c2 : {1, 2}) {
      auto i = lie_poisson(d.chart(), StructureConstants(2, {{0, 1, {c, c2}}}));
      t.expect(lm_solve(v, i, AnsatzSpace::polynomial(d.chart(), 3)).empty(),
               "case I, c = (" + std::to_string(c) + ", " + std::to_string(c2) + ")");
    }
  }
  return t.verdict("II: span{1/x}, III: span{1/y}, I: zero in degree <= 3");
}

Verdict planar_residual_formula() {
  auto d = workspace({"x", "y"});
  auto v = VolumeForm::standard(d.chart());
  const std::vector<std::tuple<const char*, int, int>> cases{
      {"x*y", 1, 1},      {"1/(1+x^2)", 1, 2},  {"x - y^2", 2, 1},   {"1/x", 2, 2},   {"x^3 + y", 1, 0},
      {"1/(x+y)", 0, 1},  {"3", 2, 1},          {"x^2*y^2 - 1", -1, 2}, {"y/x", 1, -2}, {"(x-1)/(y+2)", 2, 2}};
  Tally t;
  for (const auto& [text, c1, c2] : cases) {
    auto pi = lie_poisson(d.chart(), StructureConstants(2, {{0, 1, {c1, c2}}}));
    auto m = fn(d, text);
    auto k1 = d.chart()->constant(c1), k2 = d.chart()->constant(c2);
    auto h = k1 * fn(d, "x") + k2 * fn(d, "y");
    auto r = lm_system_residuals(v, m, pi);
    t.expect(r.size() == 2 && r[0] == k2 * m + m.derivative(1) * h, std::string("first component, m = ") + text);
    t.expect(r.size() == 2 && r[1] == -(k1 * m) - m.derivative(0) * h, std::string("second component, m = ") + text);
  }
  return t.verdict("10 (m, c) choices match the printed expressions");
}

Verdict modular_routes() {
  RandomObjects rng(kDefaultSeed + 6);
  Tally t;
  for (int it = 0; it < 50; ++it) {
    auto chart = make_chart(static_cast<std::size_t>(rng.integer(2, 4)));
    auto pi = rng.multivector(chart, 2);
    t.expect(modular_field(VolumeForm::standard(chart), pi) == modular_field_coordinate(pi), "dual route " + std::to_string(it));
  }
  for (int it = 0; it < 50; ++it) {
    auto chart = make_chart(static_cast<std::size_t>(rng.integer(2, 4)));
    auto pi = random_poisson(rng, chart);
    t.expect(jacobi_by_brackets(pi), "generated bivector is not Poisson");
    auto v = rng.coin() ? VolumeForm::standard(chart) : rng.volume(chart);
    RationalFunc f = rng.polynomial(chart->dim());
    auto af = hamiltonian_field(pi, f);
    t.expect(divergence_oracle(v.density(), af) == apply_oracle(modular_field(v, pi), f), "div A_f " + std::to_string(it));
  }
  return t.verdict("50 bivectors, 50 (Poisson, f) pairs");
}

Verdict closure_properties() {
  RandomObjects rng(kDefaultSeed + 7);
  Tally t;
  for (int it = 0; it < 30; ++it) t.expect(bracket_closure_instance(rng), "bracket closure " + std::to_string(it));
  int yes = 0;
  for (int it = 0; it < 40; ++it) {
    auto r = wedge_criterion_instance(rng);
    t.expect(r.has_value(), "wedge criterion " + std::to_string(it));
    yes += r.value_or(false);
  }
  t.expect(yes > 0 && yes < 40, "wedge criterion: both verdicts occur");
  yes = 0;
  for (int it = 0; it < 40; ++it) {
    auto r = casimir_exactness_instance(rng);
    t.expect(r.has_value(), "casimir exactness " + std::to_string(it));
    yes += r.value_or(false);
  }
  t.expect(yes > 0 && yes < 40, "casimir exactness: both verdicts occur");
  for (int it = 0; it < 30; ++it) t.expect(multiplier_ratio_instance(rng), "multiplier ratio " + std::to_string(it));
  return t.verdict("bracket closure 30, wedge criterion 40, casimir exactness 40, ratios 30");
}

Verdict nambu() {
  Tally t;
  for (std::size_t n : {2u, 3u}) {
    auto d = workspace(n == 2 ? std::vector<std::string>{"x", "y"} : std::vector<std::string>{"x", "y", "z"});
    for (const char* text : {"1", "1 + x^2", "1 + x^2 + y^2"}) {
      auto f = fn(d, text);
      auto a = Multivector::blade(d.chart(), IndexSet::full(n), f.inverse());
      auto c = curl(VolumeForm(d.chart(), f), a);
      t.expect(c.is_zero() && c.grade() == static_cast<int>(n) - 1, std::string("f = ") + text);
    }
  }
  return t.verdict("A_V exact for 3 densities at n = 2, 3");
}

Verdict so3_battery() {
  auto d = workspace({"x1", "x2", "x3"});
  auto v = VolumeForm::standard(d.chart());
  auto pi = lie_poisson(d.chart(), StructureConstants(3, {{0, 1, {0, 0, 1}}, {1, 2, {1, 0, 0}}, {2, 0, {0, 1, 0}}}));
  Tally t;
  t.expect(pi == mv(d, "x3*e1^^e2 + x1*e2^^e3 + x2*e3^^e1"), "lie-poisson bivector");
  t.expect(jacobi_residual(pi).is_zero() && jacobi_by_brackets(pi), "jacobi");
  t.expect(modular_field(v, pi).is_zero(), "modular field");
  auto cas = casimir_solve(pi, AnsatzSpace::polynomial(d.chart(), 2));
  t.expect(cas.size() == 2, "casimir dimension");
  t.expect(span_contains(scalars(d.chart(), cas), std::vector<Multivector>{mv(d, "x1^2 + x2^2 + x3^2")}), "quadratic casimir");
  for (const auto& f : cas)
    for (std::size_t i = 0; i < 3; ++i) t.expect(poisson_bracket(pi, f, d.chart()->coordinate(i)).is_zero(), "bracket oracle");
  auto r = truncated_exact_cohomology(v, pi, 0, 2);
  t.expect(r.dim_kernel == 2, "H0 kernel");
  RandomObjects rng(kDefaultSeed + 9);
  for (int it = 0; it < 40; ++it) {
    auto a = rng.multivector(d.chart(), rng.integer(0, 3));
    t.expect(lichnerowicz_delta(pi, lichnerowicz_delta(pi, a)).is_zero(), "delta squared");
  }
  return t.verdict("jacobi 0, modular 0, casimirs dim 2, H0 kernel 2, delta^2 = 0");
}

Verdict truncated_cohomology() {
  Tally t;
  auto d = workspace({"x", "y"});
  auto v = VolumeForm::standard(d.chart());
  auto r = truncated_exact_cohomology(v, mv(d, "e1^^e2"), 0, 3);
  t.expect(r.truncated_h_dim == 1 && r.dim_kernel == 1, "symplectic H0");
  auto s = workspace({"x1", "x2", "x3"});
  const std::vector<std::pair<VolumeForm, Multivector>> cases{
      {v, mv(d, "e1^^e2")},
      {VolumeForm::standard(s.chart()), mv(s, "x3*e1^^e2 - x2*e1^^e3 + x1*e2^^e3")},
      {VolumeForm::standard(s.chart()), mv(s, "x3*e1^^e2")},
      {VolumeForm::standard(s.chart()), wedge(mv(s, "e3"), mv(s, "x2*e1 - x1*e2"))}};
  int reports = 0;
  for (const auto& [vol, pi] : cases) {
    const int n = static_cast<int>(vol.chart()->dim());
    for (int k = 0; k <= n; ++k) {
      for (unsigned deg = 0; deg <= 2; ++deg) {
        if (n == 3 && deg == 2 && k > 1) continue;
        auto rep = truncated_exact_cohomology(vol, pi, k, deg);
        auto exact = lichnerowicz_kernel(vol, pi, k, deg, true);
        auto full = lichnerowicz_kernel(vol, pi, k, deg, false);
        const std::string where = "k = " + std::to_string(k) + ", d = " + std::to_string(deg);
        t.expect(span_contains(full, exact), "containment at " + where);
        t.expect(rep.dim_kernel == exact.size() && rep.dim_image_from_km1 <= rep.dim_kernel && rep.truncated,
                 "report at " + where);
        ++reports;
      }
    }
  }
  return t.verdict("symplectic H0 = 1, containment on " + std::to_string(reports) + " reports");
}

Verdict parser_printer() {
  Tally t;
  const auto docs = golden_documents();
  t.expect(docs.size() >= 15, "corpus size");
  for (const auto& path : docs) {
    auto doc = parse(read_file(path));
    auto printed = print_canonical(doc);
    t.expect(printed == read_file(std::filesystem::path(path).replace_extension(".canon")), "golden " + path.filename().string());
    t.expect(parse(printed) == doc && print_canonical(parse(printed)) == printed, "round trip " + path.filename().string());
    t.expect(document_from_json(Json::parse(to_json(doc).dump())) == doc, "json " + path.filename().string());
  }
  for (const auto& path : golden_documents("invalid")) {
    bool rejected = false;
    try {
      parse(read_file(path));
    } catch (const ParseError&) {
      rejected = true;
    }
    t.expect(rejected, "invalid " + path.filename().string());
  }
  const auto matrix = cli_matrix();
  for (const auto& c : matrix) {
    auto r = run_cli(c.args);
    t.expect(r.code == c.expected_code && r.out == c.expected_out, "cli " + c.args.front());
  }
  return t.verdict(std::to_string(docs.size()) + " documents, " + std::to_string(matrix.size()) + " CLI cases");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"identity suite", identity_suite},
      {"three-route multiplier agreement", three_routes},
      {"reciprocal multiplier of h e1^^e2", reciprocal_multiplier},
      {"planar lie-poisson case analysis", planar_cases},
      {"planar lie-poisson residual formula", planar_residual_formula},
      {"modular field routes and div A_f", modular_routes},
      {"closure properties", closure_properties},
      {"nambu multivector exact", nambu},
      {"so(3) battery", so3_battery},
      {"truncated cohomology sanity", truncated_cohomology},
      {"parser, printer and CLI", parser_printer},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    const auto start = std::chrono::steady_clock::now();
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char time[32];
    std::snprintf(time, sizeof time, "%.2fs", s);
    std::cout << (v.ok ? "PASS " : "FAIL ") << i + 1 << ". " << criteria[i].first << ": " << v.detail << " [" << time << "]\n";
    failed += !v.ok;
  }
  std::cout << (failed ? std::to_string(failed) + " of 11 criteria failed\n" : std::string("all 11 criteria passed\n"));
  return failed ? 1 : 0;
}
