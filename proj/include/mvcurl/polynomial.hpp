#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace mvcurl {

using Rational = mpq_class;

inline constexpr std::size_t kMaxVars = 16;

// Exponent vector over a fixed number of coordinates.
class Monomial {
public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars);
  Monomial(std::size_t nvars, std::initializer_list<unsigned> exponents);

  static Monomial variable(std::size_t nvars, std::size_t index);

  std::size_t nvars() const noexcept { return nvars_; }
  unsigned exponent(std::size_t i) const noexcept { return exp_[i]; }
  unsigned degree() const noexcept { return degree_; }
  bool is_one() const noexcept { return degree_ == 0; }

  void set_exponent(std::size_t i, unsigned e);

  bool divides(const Monomial& other) const noexcept;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  // Requires b.divides(a).
  friend Monomial operator/(const Monomial& a, const Monomial& b);

  friend bool operator==(const Monomial& a, const Monomial& b) noexcept {
    return a.nvars_ == b.nvars_ && a.exp_ == b.exp_;
  }

private:
  std::array<std::uint16_t, kMaxVars> exp_{};
  std::uint16_t degree_ = 0;
  std::uint8_t nvars_ = 0;
};

// Graded lexicographic order: total degree first, ties broken on the exponent
// of the first coordinate, then the second, and so on (x > y > z among
// linear monomials).
std::strong_ordering grlex(const Monomial& a, const Monomial& b) noexcept;

struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const noexcept {
    return grlex(a, b) > 0;
  }
};

// Sparse polynomial over Q in a fixed number of variables. Terms are kept in
// strictly descending grlex order with non-zero coefficients.
class Polynomial {
public:
  using Term = std::pair<Monomial, Rational>;

  Polynomial() = default;
  explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

  static Polynomial constant(std::size_t nvars, const Rational& c);
  static Polynomial variable(std::size_t nvars, std::size_t index);
  static Polynomial monomial(const Monomial& m, const Rational& c);
  // Terms in any order, duplicates summed, zeros dropped.
  static Polynomial from_terms(std::size_t nvars, std::vector<Term> terms);

  std::size_t nvars() const noexcept { return nvars_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  bool is_one() const noexcept;
  // Value of the constant term (zero when absent).
  Rational constant_term() const;

  const Monomial& leading_monomial() const;
  const Rational& leading_coefficient() const;

  // -1 for the zero polynomial.
  int degree() const noexcept;
  int degree_in(std::size_t var) const noexcept;
  bool involves(std::size_t var) const noexcept;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  Polynomial mul_term(const Monomial& m, const Rational& c) const;
  Polynomial derivative(std::size_t var) const;
  Rational evaluate(std::span<const Rational> point) const;

  // Scales so that the leading coefficient is 1. Zero stays zero.
  Polynomial monic() const;

private:
  std::size_t nvars_ = 0;
  std::vector<Term> terms_;
};

// Exact quotient; throws MathError when `divisor` does not divide `dividend`.
Polynomial divide_exact(const Polynomial& dividend, const Polynomial& divisor);

// Greatest common divisor normalised to be monic; gcd(0, 0) == 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

}  // namespace mvcurl
