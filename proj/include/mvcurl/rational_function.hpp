#pragma once

#include <span>

#include "mvcurl/polynomial.hpp"

namespace mvcurl {

// Element of Frac(Q[x1..xn]) kept in lowest terms with a monic denominator
// (its grlex leading coefficient is 1). Equal functions therefore have
// identical representations and == is semantic equality.
class RationalFunc {
public:
  RationalFunc() = default;
  explicit RationalFunc(std::size_t nvars) : num_(nvars), den_(Polynomial::constant(nvars, 1)) {}
  RationalFunc(Polynomial numerator);  // NOLINT: polynomials embed implicitly
  // Normalises num/den; throws MathError on a zero denominator.
  RationalFunc(const Polynomial& numerator, const Polynomial& denominator);

  static RationalFunc constant(std::size_t nvars, const Rational& c);
  static RationalFunc variable(std::size_t nvars, std::size_t index);

  std::size_t nvars() const noexcept { return num_.nvars(); }
  const Polynomial& numerator() const noexcept { return num_; }
  const Polynomial& denominator() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_one() const noexcept { return num_.is_one() && den_.is_one(); }
  bool is_polynomial() const noexcept { return den_.is_one(); }
  bool is_constant() const noexcept { return num_.is_constant() && den_.is_one(); }

  RationalFunc operator-() const;
  RationalFunc& operator+=(const RationalFunc& other);
  RationalFunc& operator-=(const RationalFunc& other);
  RationalFunc& operator*=(const RationalFunc& other);
  RationalFunc& operator/=(const RationalFunc& other);

  friend RationalFunc operator+(RationalFunc a, const RationalFunc& b) { return a += b; }
  friend RationalFunc operator-(RationalFunc a, const RationalFunc& b) { return a -= b; }
  friend RationalFunc operator*(RationalFunc a, const RationalFunc& b) { return a *= b; }
  friend RationalFunc operator/(RationalFunc a, const RationalFunc& b) { return a /= b; }

  friend bool operator==(const RationalFunc& a, const RationalFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  // Throws MathError for the zero function.
  RationalFunc inverse() const;
  RationalFunc derivative(std::size_t var) const;
  // Throws MathError when the denominator vanishes at `point`.
  Rational evaluate(std::span<const Rational> point) const;

private:
  friend RationalFunc rf_normalize(const Polynomial& num, const Polynomial& den);
  struct Normalized {};
  RationalFunc(Polynomial numerator, Polynomial denominator, Normalized)
      : num_(std::move(numerator)), den_(std::move(denominator)) {}

  Polynomial num_;
  Polynomial den_;
};

// Builds the canonical representative of num/den.
RationalFunc rf_normalize(const Polynomial& num, const Polynomial& den);

}  // namespace mvcurl
