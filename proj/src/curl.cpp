#include "mvcurl/curl.hpp"

#include <stdexcept>

namespace mvcurl {

namespace {

void require_vector_field(const Multivector& x) {
  if (x.grade() != 1) throw DomainError("expected a vector field (grade 1), got grade " + std::to_string(x.grade()));
}

// Sign of moving ∂_i from its slot in `blade` to the right end.
int right_strip_sign(IndexSet blade, std::size_t i) noexcept {
  return (std::popcount(blade.bits >> (i + 1)) & 1) ? -1 : 1;
}

// Accumulates Σ_i (A ∂⃖/∂ξ_i) ∧ ∂_i B into `out` with the given overall sign.
void add_half_bracket(const Multivector& a, const Multivector& b, int sign, Multivector& out) {
  const std::size_t n = a.chart()->dim();
  for (const auto& [ia, fa] : a.terms()) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!ia.contains(i)) continue;
      const IndexSet stripped = ia - IndexSet::single(i);
      const int s_strip = right_strip_sign(ia, i);
      for (const auto& [ib, fb] : b.terms()) {
        const int s_wedge = shuffle_sign(stripped, ib);
        if (s_wedge == 0) continue;
        RationalFunc db = fb.derivative(i);
        if (db.is_zero()) continue;
        RationalFunc c = fa * db;
        out.add(stripped | ib, sign * s_strip * s_wedge > 0 ? c : -c);
      }
    }
  }
}

}  // namespace

Multivector curl(const VolumeForm& v, const Multivector& a) {
  require_same_chart(v.chart(), a.chart());
  if (a.grade() == 0) return Multivector(a.chart(), 0);
  if (a.grade() > static_cast<int>(a.chart()->dim())) return Multivector(a.chart(), a.grade() - 1);
  return sharp(v, exterior_derivative(flat(v, a)));
}

RationalFunc divergence(const VolumeForm& v, const Multivector& x) {
  require_vector_field(x);
  return curl(v, x).as_scalar();
}

RationalFunc apply(const Multivector& x, const RationalFunc& f) {
  require_vector_field(x);
  if (f.nvars() != x.chart()->dim()) throw DimensionMismatch("function lives on a different chart");
  RationalFunc total = x.chart()->zero();
  for (const auto& [idx, c] : x.terms()) {
    const std::size_t i = static_cast<std::size_t>(std::countr_zero(idx.bits));
    RationalFunc df = f.derivative(i);
    if (!df.is_zero()) total += c * df;
  }
  return total;
}

Multivector schouten(const Multivector& a, const Multivector& b) {
  require_same_chart(a.chart(), b.chart());
  const int p = a.grade();
  const int q = b.grade();
  Multivector out(a.chart(), std::max(p + q - 1, 0));
  if (p + q == 0) return out;
  add_half_bracket(a, b, 1, out);
  const int sym = ((p - 1) * (q - 1)) % 2 == 0 ? 1 : -1;
  add_half_bracket(b, a, -sym, out);
  return out;
}

Multivector last_multiplier_residual(const VolumeForm& v, const RationalFunc& m, const Multivector& a) {
  return curl(v, m * a);
}

bool MultiplierVerdict::value() const {
  if (!unanimous()) throw std::logic_error("last-multiplier routes disagree");
  return curl_route;
}

MultiplierVerdict is_last_multiplier(const VolumeForm& v, const RationalFunc& m, const Multivector& a) {
  if (a.grade() < 1) throw DomainError("last multipliers are defined for grade >= 1");
  if (m.is_zero()) throw MathError("the Marsden route needs a non-zero multiplier");
  const DifferentialForm omega = flat(v, a);
  const DifferentialForm d_omega = exterior_derivative(omega);
  MultiplierVerdict verdict;
  verdict.curl_route = last_multiplier_residual(v, m, a).is_zero();
  const RationalFunc m_minus_one = m - v.chart()->one();
  verdict.witten_route = (witten_derivative(1, m, omega) + m_minus_one * d_omega).is_zero();
  verdict.marsden_route = marsden_derivative(m, omega).is_zero();
  return verdict;
}

Multivector curl_scaled(const VolumeForm& v, const RationalFunc& m, const Multivector& a) {
  if (m.is_zero()) throw MathError("scaling a volume form by zero");
  return curl(v.scaled(m), a);
}

Multivector log_bracket(const VolumeForm& v, const Multivector& a, const RationalFunc& m) {
  return curl_scaled(v, m, a) - curl(v, a);
}

bool is_exact(const VolumeForm& v, const Multivector& a) { return curl(v, a).is_zero(); }

bool inverse_multiplier_check(const VolumeForm& v, const RationalFunc& h, const Multivector& x) {
  if (h.is_zero()) throw MathError("inverse multiplier must be non-zero");
  return apply(x, h) == divergence(v, x) * h;
}

bool first_integral_check(const Multivector& x, const RationalFunc& f) { return apply(x, f).is_zero(); }

Multivector schouten_via_curl(const VolumeForm& v, const Multivector& a, const Multivector& b) {
  const auto& chart = v.chart();
  const RationalFunc sign = chart->constant(b.grade() % 2 ? -1 : 1);
  Multivector out = sign * curl(v, wedge(a, b));
  if (a.grade() > 0) out -= wedge(curl(v, a), b);
  if (b.grade() > 0) out -= sign * wedge(a, curl(v, b));
  return out;
}

}  // namespace mvcurl
