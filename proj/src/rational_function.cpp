#include "mvcurl/rational_function.hpp"

#include "mvcurl/errors.hpp"

namespace mvcurl {

namespace {

// Scales num/den by the inverse leading coefficient of den.
void make_monic(Polynomial& num, Polynomial& den) {
  const Rational& lc = den.leading_coefficient();
  if (lc == 1) return;
  const Rational inv = 1 / lc;
  num *= inv;
  den *= inv;
}

}  // namespace

RationalFunc::RationalFunc(Polynomial numerator)
    : num_(std::move(numerator)), den_(Polynomial::constant(num_.nvars(), 1)) {}

RationalFunc::RationalFunc(const Polynomial& numerator, const Polynomial& denominator) {
  *this = rf_normalize(numerator, denominator);
}

RationalFunc rf_normalize(const Polynomial& num, const Polynomial& den) {
  if (num.nvars() != den.nvars()) throw DimensionMismatch("numerator and denominator variable counts differ");
  if (den.is_zero()) throw MathError("zero denominator");
  const std::size_t n = num.nvars();
  if (num.is_zero()) return RationalFunc(n);
  Polynomial p = num;
  Polynomial q = den;
  if (!q.is_constant()) {
    const Polynomial g = gcd(p, q);
    if (!g.is_one()) {
      p = divide_exact(p, g);
      q = divide_exact(q, g);
    }
  }
  make_monic(p, q);
  RationalFunc r(n);
  r.num_ = std::move(p);
  r.den_ = std::move(q);
  return r;
}

RationalFunc RationalFunc::constant(std::size_t nvars, const Rational& c) {
  return RationalFunc(Polynomial::constant(nvars, c));
}

RationalFunc RationalFunc::variable(std::size_t nvars, std::size_t index) {
  return RationalFunc(Polynomial::variable(nvars, index));
}

RationalFunc RationalFunc::operator-() const { return RationalFunc(-num_, den_, Normalized{}); }

RationalFunc& RationalFunc::operator+=(const RationalFunc& other) {
  if (nvars() != other.nvars()) throw DimensionMismatch("rational functions over different variable counts");
  if (other.is_zero()) return *this;
  if (is_zero()) return *this = other;
  if (den_ == other.den_) {
    Polynomial sum = num_ + other.num_;
    if (den_.is_one()) {
      num_ = std::move(sum);
      return *this;
    }
    return *this = rf_normalize(sum, den_);
  }
  if (den_.is_one()) {
    return *this = RationalFunc(num_ * other.den_ + other.num_, other.den_, Normalized{});
  }
  if (other.den_.is_one()) {
    return *this = RationalFunc(num_ + other.num_ * den_, den_, Normalized{});
  }
  // Both summands are reduced, so any common factor of the new numerator and
  // denominator divides g = gcd(den_a, den_b).
  const Polynomial g = gcd(den_, other.den_);
  const Polynomial a_cof = divide_exact(other.den_, g);
  const Polynomial b_cof = divide_exact(den_, g);
  Polynomial num = num_ * a_cof + other.num_ * b_cof;
  Polynomial den = den_ * a_cof;
  if (num.is_zero()) return *this = RationalFunc(nvars());
  if (!g.is_constant()) {
    const Polynomial h = gcd(num, g);
    if (!h.is_one()) {
      num = divide_exact(num, h);
      den = divide_exact(den, h);
    }
  }
  make_monic(num, den);
  num_ = std::move(num);
  den_ = std::move(den);
  return *this;
}

RationalFunc& RationalFunc::operator-=(const RationalFunc& other) { return *this += -other; }

RationalFunc& RationalFunc::operator*=(const RationalFunc& other) {
  if (nvars() != other.nvars()) throw DimensionMismatch("rational functions over different variable counts");
  if (is_zero()) return *this;
  if (other.is_zero()) return *this = other;
  if (den_.is_one() && other.den_.is_one()) {
    num_ *= other.num_;
    return *this;
  }
  // Cross-cancel: both inputs are reduced, so the product is reduced after
  // removing gcd(num_a, den_b) and gcd(num_b, den_a).
  Polynomial na = num_, da = den_, nb = other.num_, db = other.den_;
  if (!db.is_one()) {
    const Polynomial g = gcd(na, db);
    if (!g.is_one()) {
      na = divide_exact(na, g);
      db = divide_exact(db, g);
    }
  }
  if (!da.is_one()) {
    const Polynomial g = gcd(nb, da);
    if (!g.is_one()) {
      nb = divide_exact(nb, g);
      da = divide_exact(da, g);
    }
  }
  Polynomial p = na * nb;
  Polynomial q = da * db;
  make_monic(p, q);
  num_ = std::move(p);
  den_ = std::move(q);
  return *this;
}

RationalFunc& RationalFunc::operator/=(const RationalFunc& other) { return *this *= other.inverse(); }

RationalFunc RationalFunc::inverse() const {
  if (is_zero()) throw MathError("division by the zero function");
  Polynomial p = den_;
  Polynomial q = num_;
  make_monic(p, q);
  return RationalFunc(std::move(p), std::move(q), Normalized{});
}

RationalFunc RationalFunc::derivative(std::size_t var) const {
  if (den_.is_one()) return RationalFunc(num_.derivative(var));
  return rf_normalize(num_.derivative(var) * den_ - num_ * den_.derivative(var), den_ * den_);
}

Rational RationalFunc::evaluate(std::span<const Rational> point) const {
  const Rational d = den_.evaluate(point);
  if (d == 0) throw MathError("pole: denominator vanishes at the evaluation point");
  return num_.evaluate(point) / d;
}

}  // namespace mvcurl
