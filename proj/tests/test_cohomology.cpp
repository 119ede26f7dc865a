#include "doctest.h"
#include "support.hpp"

using namespace testing_support;

namespace {

const Document& plane() {
  static const Document d = workspace({"x", "y"});
  return d;
}

const Document& space3() {
  static const Document d = workspace({"x1", "x2", "x3"});
  return d;
}

Multivector so3(const Document& s) { return mv(s, "x3*e1^^e2 - x2*e1^^e3 + x1*e2^^e3"); }

void check_report(const TruncatedComplexReport& r) {
  CHECK(r.truncated);
  CHECK(r.dim_kernel <= r.dim_exact_k);
  CHECK(r.dim_image_from_km1 <= r.dim_kernel);
  CHECK(r.truncated_h_dim == r.dim_kernel - r.dim_image_from_km1);
}

}  // namespace

TEST_CASE("lichnerowicz differential") {
  const auto& d = plane();
  auto pi = mv(d, "e1^^e2");
  CHECK(lichnerowicz_delta(pi, mv(d, "x")) == -hamiltonian_field(pi, fn(d, "x")));
  CHECK(lichnerowicz_delta(pi, mv(d, "x")) == mv(d, "-e2"));
  CHECK(lichnerowicz_delta(pi, pi).is_zero());
  const auto& s = space3();
  CHECK_THROWS_AS(lichnerowicz_delta(mv(s, "x3*e1^^e2 + x1*e1^^e3"), mv(s, "e1")), NotPoisson);
}

TEST_CASE("delta squares to zero") {
  RandomObjects rng(61);
  const auto& s = space3();
  auto pi = so3(s);
  for (int it = 0; it < 40; ++it) {
    auto a = rng.multivector(s.chart(), rng.integer(0, 3));
    CHECK(lichnerowicz_delta(pi, lichnerowicz_delta(pi, a)).is_zero());
  }
  for (int it = 0; it < 40; ++it) {
    auto chart = make_chart(static_cast<std::size_t>(rng.integer(2, 4)));
    auto p = random_poisson(rng, chart);
    auto a = rng.multivector(chart, rng.integer(0, 2));
    CHECK(lichnerowicz_delta(p, lichnerowicz_delta(p, a)).is_zero());
  }
}

TEST_CASE("exact bases") {
  const auto& d = plane();
  auto v = VolumeForm::standard(d.chart());
  auto top = exact_basis(v, 2, 0);
  REQUIRE(top.size() == 1);
  CHECK(top[0] == mv(d, "e1^^e2"));
  auto lin = exact_basis(v, 1, 1);
  CHECK(lin.size() == 5);
  CHECK(span_contains(lin, std::vector<Multivector>{mv(d, "e1"), mv(d, "e2"), mv(d, "y*e1"), mv(d, "x*e2"),
                                                    mv(d, "x*e1 - y*e2")}));
  CHECK(exact_basis(v, 0, 2).size() == 6);
  const auto& s = space3();
  auto t3 = exact_basis(VolumeForm::standard(s.chart()), 3, 0);
  REQUIRE(t3.size() == 1);
  CHECK(t3[0] == mv(s, "e1^^e2^^e3"));
}

TEST_CASE("exact cochains stay exact under delta") {
  const auto& s = space3();
  auto v = VolumeForm::standard(s.chart());
  auto pi = so3(s);
  for (int k = 0; k <= 2; ++k)
    for (const auto& a : exact_basis(v, k, 1)) CHECK(is_exact(v, lichnerowicz_delta(pi, a)));
}

TEST_CASE("symplectic plane") {
  const auto& d = plane();
  auto v = VolumeForm::standard(d.chart());
  auto r = truncated_exact_cohomology(v, mv(d, "e1^^e2"), 0, 3);
  CHECK(r.dim_kernel == 1);
  CHECK(r.dim_image_from_km1 == 0);
  CHECK(r.truncated_h_dim == 1);
  CHECK(r.dim_exact_k == 10);
  check_report(r);
}

TEST_CASE("so(3)") {
  const auto& s = space3();
  auto v = VolumeForm::standard(s.chart());
  auto r = truncated_exact_cohomology(v, so3(s), 0, 2);
  CHECK(r.dim_kernel == 2);
  CHECK(r.truncated_h_dim == 2);
  auto casimirs = casimir_solve(so3(s), AnsatzSpace::polynomial(s.chart(), 2));
  CHECK(casimirs.size() == r.dim_kernel);
  check_report(r);
}

TEST_CASE("reports satisfy the dimension inequalities and kernel containment") {
  const auto& s = space3();
  const auto& d = plane();
  struct Case {
    VolumeForm v;
    Multivector pi;
  };
  std::vector<Case> cases{{VolumeForm::standard(s.chart()), so3(s)},
                          {VolumeForm::standard(d.chart()), mv(d, "e1^^e2")},
                          {VolumeForm::standard(d.chart()), mv(d, "0*e1^^e2")},
                          {volume(d, "1/(1+x^2)"), mv(d, "(1+x^2)*e1^^e2")}};
  for (const auto& c : cases) {
    const int n = static_cast<int>(c.v.chart()->dim());
    for (int k = 0; k <= n; ++k) {
      for (unsigned deg = 0; deg <= 1; ++deg) {
        if (!c.v.density().is_polynomial() && k > 0) continue;
        auto r = truncated_exact_cohomology(c.v, c.pi, k, deg);
        check_report(r);
        auto exact = lichnerowicz_kernel(c.v, c.pi, k, deg, true);
        auto full = lichnerowicz_kernel(c.v, c.pi, k, deg, false);
        CHECK(exact.size() == r.dim_kernel);
        CHECK(span_contains(full, exact));
        CHECK(exact.size() <= full.size());
      }
    }
  }
}

TEST_CASE("hypotheses are enforced") {
  const auto& d = plane();
  auto v = VolumeForm::standard(d.chart());
  CHECK_THROWS_AS(truncated_exact_cohomology(v, mv(d, "x*e1^^e2"), 0, 1), MathError);
  const auto& s = space3();
  CHECK_THROWS_AS(truncated_exact_cohomology(VolumeForm::standard(s.chart()), mv(s, "x3*e1^^e2 + x1*e1^^e3"), 0, 1),
                  NotPoisson);
}
