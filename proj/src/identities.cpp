#include "mvcurl/identities.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <future>

namespace mvcurl {

int RandomObjects::integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

Polynomial RandomObjects::polynomial(std::size_t n) {
  std::vector<Polynomial::Term> terms;
  const int count = integer(1, 4);
  for (int t = 0; t < count; ++t) {
    Monomial m(n);
    const int degree = integer(0, static_cast<int>(max_degree_));
    for (int k = 0; k < degree; ++k) {
      const auto v = static_cast<std::size_t>(integer(0, static_cast<int>(n) - 1));
      m.set_exponent(v, m.exponent(v) + 1);
    }
    terms.emplace_back(m, Rational(integer(-bound_, bound_)));
  }
  return Polynomial::from_terms(n, std::move(terms));
}

Polynomial RandomObjects::nonzero_polynomial(std::size_t n) {
  for (;;) {
    auto p = polynomial(n);
    if (!p.is_zero()) return p;
  }
}

Multivector RandomObjects::multivector(const ChartPtr& chart, int grade) {
  Multivector a(chart, grade);
  const std::size_t n = chart->dim();
  for (std::uint32_t bits = 0; bits < (std::uint32_t{1} << n); ++bits) {
    if (std::popcount(bits) != grade) continue;
    if (coin()) a.add(IndexSet{bits}, polynomial(n));
  }
  return a;
}

DifferentialForm RandomObjects::form(const ChartPtr& chart, int degree) {
  DifferentialForm w(chart, degree);
  const std::size_t n = chart->dim();
  for (std::uint32_t bits = 0; bits < (std::uint32_t{1} << n); ++bits) {
    if (std::popcount(bits) != degree) continue;
    if (coin()) w.add(IndexSet{bits}, polynomial(n));
  }
  return w;
}

VolumeForm RandomObjects::volume(const ChartPtr& chart) {
  return VolumeForm(chart, nonzero_polynomial(chart->dim()));
}

StructureConstants RandomObjects::lie_algebra(std::size_t n) {
  std::vector<StructureConstants::Bracket> brackets;
  auto vec = [n](std::initializer_list<std::pair<std::size_t, Rational>> entries) {
    std::vector<Rational> v(n);
    for (const auto& [k, c] : entries) v[k] = c;
    return v;
  };
  const int family = integer(0, n >= 3 ? 2 : 0);
  if (family == 0) {
    // [e_n, e_i] = Σ_j M_ji e_j for i < n: any M gives a Lie algebra.
    for (std::size_t i = 0; i + 1 < n; ++i) {
      std::vector<Rational> v(n);
      for (std::size_t j = 0; j + 1 < n; ++j) v[j] = integer(-2, 2);
      brackets.push_back({n - 1, i, std::move(v)});
    }
  } else if (family == 1) {
    const Rational s = integer(1, 3) * (coin() ? 1 : -1);
    brackets.push_back({0, 1, vec({{2, s}})});
    brackets.push_back({1, 2, vec({{0, s}})});
    brackets.push_back({2, 0, vec({{1, s}})});
  } else {
    brackets.push_back({0, 1, vec({{2, Rational(integer(1, 3))}})});
  }
  return StructureConstants(n, brackets);
}

bool IdentitySuiteReport::all_passed() const {
  return std::all_of(outcomes.begin(), outcomes.end(), [](const auto& o) { return o.failures == 0; });
}

namespace {

using CaseCheck = std::function<bool(RandomObjects&, const ChartPtr&)>;

IdentityOutcome run_cases(const std::string& name, std::uint64_t seed, std::size_t cases, const CaseCheck& check) {
  const auto start = std::chrono::steady_clock::now();
  IdentityOutcome out{name, cases, 0, {}, 0};
  RandomObjects rng(seed);
  for (std::size_t c = 0; c < cases; ++c) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(2, 4));
    auto chart = make_chart(n);
    std::string why;
    bool ok = false;
    try {
      ok = check(rng, chart);
    } catch (const std::exception& e) {
      why = e.what();
    }
    if (!ok) {
      if (out.failures++ == 0)
        out.first_failure = "case " + std::to_string(c) + " (n = " + std::to_string(n) + ")" + (why.empty() ? "" : ": " + why);
    }
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

int max_grade(RandomObjects&, const ChartPtr& chart) { return std::min<int>(3, static_cast<int>(chart->dim())); }
int random_grade(RandomObjects& rng, const ChartPtr& chart, int lo = 0) { return rng.integer(lo, max_grade(rng, chart)); }

bool scaled_volume(RandomObjects& rng, const ChartPtr& chart) {
  auto v = rng.volume(chart);
  RationalFunc m = rng.nonzero_polynomial(chart->dim());
  auto a = rng.multivector(chart, random_grade(rng, chart));
  return m * curl_scaled(v, m, a) == curl(v, m * a);
}

bool curl_wedge(RandomObjects& rng, const ChartPtr& chart) {
  auto v1 = rng.volume(chart);
  auto v2 = rng.volume(chart);
  while (v2 == v1) v2 = rng.volume(chart);
  auto a = rng.multivector(chart, random_grade(rng, chart));
  auto b = rng.multivector(chart, random_grade(rng, chart));
  const auto bracket = schouten(a, b);
  return bracket == schouten_via_curl(v1, a, b) && bracket == schouten_via_curl(v2, a, b);
}

bool derivation(RandomObjects& rng, const ChartPtr& chart) {
  auto v = rng.volume(chart);
  const int p = random_grade(rng, chart);
  const int q = random_grade(rng, chart);
  auto a = rng.multivector(chart, p);
  auto b = rng.multivector(chart, q);
  Multivector rhs(chart, std::max(p + q - 2, 0));
  if (q > 0) rhs += schouten(a, curl(v, b));
  if (p > 0) rhs += chart->constant((q - 1) % 2 == 0 ? 1 : -1) * schouten(curl(v, a), b);
  return curl(v, schouten(a, b)) == rhs;
}

bool curl_curl(RandomObjects& rng, const ChartPtr& chart) {
  auto v = rng.volume(chart);
  auto a = rng.multivector(chart, random_grade(rng, chart, 1));
  return curl(v, curl(v, a)).is_zero();
}

bool d_d(RandomObjects& rng, const ChartPtr& chart) {
  auto w = rng.form(chart, random_grade(rng, chart));
  return exterior_derivative(exterior_derivative(w)).is_zero();
}

bool duality(RandomObjects& rng, const ChartPtr& chart) {
  const int n = static_cast<int>(chart->dim());
  const int a_grade = random_grade(rng, chart);
  const int p = rng.integer(a_grade, n);
  auto a = rng.multivector(chart, a_grade);
  auto w = rng.form(chart, p);
  auto b = rng.multivector(chart, p - a_grade);
  return pairing(interior_product_form(a, w), b) == pairing(w, wedge(a, b));
}

bool three_routes(RandomObjects& rng, const ChartPtr& chart) {
  auto v = rng.volume(chart);
  RationalFunc m = rng.nonzero_polynomial(chart->dim());
  const int n = static_cast<int>(chart->dim());
  const int grade = rng.integer(1, std::min(3, n));
  Multivector a(chart, grade);
  if (grade < n && rng.coin()) {
    // m·A = D_V C is exact, so m is a multiplier of A.
    a = m.inverse() * curl(v, rng.multivector(chart, grade + 1));
  } else {
    a = rng.multivector(chart, grade);
  }
  if (a.is_zero()) a = Multivector::blade(chart, IndexSet::full(static_cast<std::size_t>(grade)), m.inverse());
  return is_last_multiplier(v, m, a).unanimous();
}

}  // namespace

IdentitySuiteReport run_identity_suite(std::uint64_t seed, std::size_t cases) {
  const std::vector<std::pair<std::string, CaseCheck>> checks{
      {"scaled-volume curl", scaled_volume},
      {"schouten vs curl-wedge (two densities)", curl_wedge},
      {"curl derivation law", derivation},
      {"curl of curl", curl_curl},
      {"d of d", d_d},
      {"interior product duality", duality},
      {"multiplier route agreement", three_routes},
  };
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::future<IdentityOutcome>> jobs;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const std::uint64_t stream = seed * 1000003u + i;
    jobs.push_back(std::async(std::launch::async, run_cases, checks[i].first, stream, cases, checks[i].second));
  }
  IdentitySuiteReport report;
  report.seed = seed;
  for (auto& j : jobs) report.outcomes.push_back(j.get());
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace mvcurl
