#pragma once

#include "mvcurl/exterior.hpp"

namespace mvcurl {

// Curl operator D_V = sharp ∘ d ∘ flat. Lowers the grade by one; the curl of
// a scalar is the zero scalar.
Multivector curl(const VolumeForm& v, const Multivector& a);

// div_V X for a vector field (grade 1); DomainError otherwise.
RationalFunc divergence(const VolumeForm& v, const Multivector& x);

// X(f) = Σ X^i ∂f/∂x^i for a vector field X.
RationalFunc apply(const Multivector& x, const RationalFunc& f);

// Schouten–Nijenhuis bracket from the coordinate formula
//   [A, B] = Σ_i (A ∂⃖/∂ξ_i) ∧ ∂_i B − (−1)^{(a−1)(b−1)} (B ∂⃖/∂ξ_i) ∧ ∂_i A
// where ∂⃖/∂ξ_i strips ∂_i from the right of a blade. With this convention
// [X, Y] is the Lie bracket and [X, f] = X(f).
Multivector schouten(const Multivector& a, const Multivector& b);

// (−1)^b D_V(A ∧ B) − D_V A ∧ B − (−1)^b A ∧ D_V B, which equals [A, B] for
// every volume form V. Terms involving the curl of a scalar are dropped.
Multivector schouten_via_curl(const VolumeForm& v, const Multivector& a, const Multivector& b);

// D_V(m A); zero exactly when m is a last multiplier of A.
Multivector last_multiplier_residual(const VolumeForm& v, const RationalFunc& m, const Multivector& a);

struct MultiplierVerdict {
  bool curl_route = false;     // D_V(m A) = 0
  bool witten_route = false;   // (d_m + (m − 1) d) flat(A) = 0
  bool marsden_route = false;  // d^m flat(A) = 0

  bool unanimous() const noexcept { return curl_route == witten_route && witten_route == marsden_route; }
  int routes_true() const noexcept { return int(curl_route) + int(witten_route) + int(marsden_route); }
  // Common verdict; throws std::logic_error when the routes disagree.
  bool value() const;
};

// Requires m != 0 (the Marsden route divides by m) and 1 <= grade A <= n.
MultiplierVerdict is_last_multiplier(const VolumeForm& v, const RationalFunc& m, const Multivector& a);

// D_{mV}(A) computed with the rescaled volume; MathError for m == 0.
Multivector curl_scaled(const VolumeForm& v, const RationalFunc& m, const Multivector& a);

// D_{mV}A − D_V A, the bracket of A with ln|m| without forming a logarithm.
Multivector log_bracket(const VolumeForm& v, const Multivector& a, const RationalFunc& m);

bool is_exact(const VolumeForm& v, const Multivector& a);

// X(h) == div_V(X) h for h != 0; then 1/h is a last multiplier of X.
bool inverse_multiplier_check(const VolumeForm& v, const RationalFunc& h, const Multivector& x);

// X(f) == 0.
bool first_integral_check(const Multivector& x, const RationalFunc& f);

}  // namespace mvcurl
