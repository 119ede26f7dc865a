#include "mvcurl/cohomology.hpp"

namespace mvcurl {

namespace {

void require_grade_in_range(const ChartPtr& chart, int k) {
  if (k < 0 || k > static_cast<int>(chart->dim())) throw DomainError("cochain degree outside [0, n]");
}

}  // namespace

Multivector lichnerowicz_delta(const Multivector& pi, const Multivector& a) {
  if (!is_poisson(pi)) throw NotPoisson("δ_π needs a Poisson bivector");
  return schouten(pi, a);
}

std::vector<Multivector> exact_basis(const VolumeForm& v, int k, unsigned d) {
  require_grade_in_range(v.chart(), k);
  AnsatzSpace space = AnsatzSpace::polynomial(v.chart(), d, k);
  if (k == 0) return space.basis();
  return solve_kernel([&](const Multivector& a) { return curl(v, a); }, space);
}

std::vector<Multivector> lichnerowicz_kernel(const VolumeForm& v, const Multivector& pi, int k, unsigned d,
                                             bool exact_only) {
  require_same_chart(v.chart(), pi.chart());
  require_grade_in_range(v.chart(), k);
  if (!is_poisson(pi)) throw NotPoisson("δ_π needs a Poisson bivector");
  AnsatzSpace domain = exact_only ? AnsatzSpace::from_basis(v.chart(), k, exact_basis(v, k, d))
                                  : AnsatzSpace::polynomial(v.chart(), d, k);
  return solve_kernel([&](const Multivector& a) { return schouten(pi, a); }, domain);
}

TruncatedComplexReport truncated_exact_cohomology(const VolumeForm& v, const Multivector& pi, int k, unsigned d) {
  require_same_chart(v.chart(), pi.chart());
  require_grade_in_range(v.chart(), k);
  if (pi.grade() != 2) throw DomainError("expected a bivector");
  if (!is_poisson(pi)) throw NotPoisson("δ_π needs a Poisson bivector");
  if (!is_exact(v, pi)) throw MathError("the exact Lichnerowicz complex needs D_V(π) = 0");

  TruncatedComplexReport report;
  report.k = k;
  report.domain_degree_bound = d;

  const auto exact_k = exact_basis(v, k, d);
  report.dim_exact_k = exact_k.size();
  const auto kernel =
      solve_kernel([&](const Multivector& a) { return schouten(pi, a); }, AnsatzSpace::from_basis(v.chart(), k, exact_k));
  report.dim_kernel = kernel.size();

  if (k > 0 && !kernel.empty()) {
    std::vector<Multivector> image;
    for (const auto& b : exact_basis(v, k - 1, d + 1)) {
      Multivector db = schouten(pi, b);
      if (!db.is_zero()) image.push_back(std::move(db));
    }
    if (!image.empty()) {
      // dim(U ∩ K) = dim U + dim K − dim(U + K)
      std::vector<Multivector> joint = kernel;
      joint.insert(joint.end(), image.begin(), image.end());
      report.dim_image_from_km1 = span_rank(image) + kernel.size() - span_rank(joint);
    }
  }
  report.truncated_h_dim = report.dim_kernel - report.dim_image_from_km1;
  return report;
}

}  // namespace mvcurl
