#include "mvcurl/polynomial.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <map>

#include "mvcurl/errors.hpp"

namespace mvcurl {

namespace {

void check_nvars(std::size_t n) {
  if (n > kMaxVars) throw DomainError("at most 16 variables are supported");
}

void check_same(const Polynomial& a, const Polynomial& b) {
  if (a.nvars() != b.nvars()) {
    throw DimensionMismatch("polynomials over " + std::to_string(a.nvars()) + " and " +
                            std::to_string(b.nvars()) + " variables");
  }
}

}  // namespace

Monomial::Monomial(std::size_t nvars) : nvars_(static_cast<std::uint8_t>(nvars)) {
  check_nvars(nvars);
}

Monomial::Monomial(std::size_t nvars, std::initializer_list<unsigned> exponents) : Monomial(nvars) {
  if (exponents.size() != nvars) throw DimensionMismatch("exponent vector length differs from variable count");
  std::size_t i = 0;
  for (unsigned e : exponents) set_exponent(i++, e);
}

Monomial Monomial::variable(std::size_t nvars, std::size_t index) {
  Monomial m(nvars);
  m.set_exponent(index, 1);
  return m;
}

void Monomial::set_exponent(std::size_t i, unsigned e) {
  if (i >= nvars_) throw DomainError("coordinate index out of range");
  if (e > std::numeric_limits<std::uint16_t>::max()) throw DomainError("exponent too large");
  degree_ = static_cast<std::uint16_t>(degree_ - exp_[i] + e);
  exp_[i] = static_cast<std::uint16_t>(e);
}

bool Monomial::divides(const Monomial& other) const noexcept {
  for (std::size_t i = 0; i < nvars_; ++i) {
    if (exp_[i] > other.exp_[i]) return false;
  }
  return true;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r(a.nvars_);
  for (std::size_t i = 0; i < a.nvars_; ++i) {
    const unsigned e = unsigned(a.exp_[i]) + b.exp_[i];
    if (e > std::numeric_limits<std::uint16_t>::max()) throw DomainError("exponent overflow");
    r.exp_[i] = static_cast<std::uint16_t>(e);
  }
  r.degree_ = static_cast<std::uint16_t>(a.degree_ + b.degree_);
  return r;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
  Monomial r(a.nvars_);
  for (std::size_t i = 0; i < a.nvars_; ++i) r.exp_[i] = static_cast<std::uint16_t>(a.exp_[i] - b.exp_[i]);
  r.degree_ = static_cast<std::uint16_t>(a.degree_ - b.degree_);
  return r;
}

std::strong_ordering grlex(const Monomial& a, const Monomial& b) noexcept {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  for (std::size_t i = 0; i < a.nvars(); ++i) {
    if (auto c = a.exponent(i) <=> b.exponent(i); c != 0) return c;
  }
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) {
  check_nvars(nvars);
  Polynomial p(nvars);
  if (c != 0) p.terms_.emplace_back(Monomial(nvars), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t index) {
  return monomial(Monomial::variable(nvars, index), 1);
}

Polynomial Polynomial::monomial(const Monomial& m, const Rational& c) {
  Polynomial p(m.nvars());
  if (c != 0) p.terms_.emplace_back(m, c);
  return p;
}

Polynomial Polynomial::from_terms(std::size_t nvars, std::vector<Term> terms) {
  check_nvars(nvars);
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return grlex(a.first, b.first) > 0; });
  Polynomial p(nvars);
  for (auto& t : terms) {
    if (t.first.nvars() != nvars) throw DimensionMismatch("monomial variable count differs");
    if (!p.terms_.empty() && p.terms_.back().first == t.first) {
      p.terms_.back().second += t.second;
      if (p.terms_.back().second == 0) p.terms_.pop_back();
    } else if (t.second != 0) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

bool Polynomial::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_.front().first.is_one());
}

bool Polynomial::is_one() const noexcept {
  return terms_.size() == 1 && terms_.front().first.is_one() && terms_.front().second == 1;
}

Rational Polynomial::constant_term() const {
  if (!terms_.empty() && terms_.back().first.is_one()) return terms_.back().second;
  return 0;
}

const Monomial& Polynomial::leading_monomial() const {
  if (terms_.empty()) throw DomainError("zero polynomial has no leading term");
  return terms_.front().first;
}

const Rational& Polynomial::leading_coefficient() const {
  if (terms_.empty()) throw DomainError("zero polynomial has no leading term");
  return terms_.front().second;
}

int Polynomial::degree() const noexcept {
  return terms_.empty() ? -1 : static_cast<int>(terms_.front().first.degree());
}

int Polynomial::degree_in(std::size_t var) const noexcept {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.exponent(var)));
  return d;
}

bool Polynomial::involves(std::size_t var) const noexcept {
  return std::any_of(terms_.begin(), terms_.end(), [&](const Term& t) { return t.first.exponent(var) != 0; });
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  check_same(*this, other);
  if (other.terms_.empty()) return *this;
  std::vector<Term> merged;
  merged.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  while (a != terms_.end() && b != other.terms_.end()) {
    const auto c = grlex(a->first, b->first);
    if (c > 0) {
      merged.push_back(std::move(*a++));
    } else if (c < 0) {
      merged.push_back(*b++);
    } else {
      Rational s = a->second + b->second;
      if (s != 0) merged.emplace_back(a->first, std::move(s));
      ++a;
      ++b;
    }
  }
  for (; a != terms_.end(); ++a) merged.push_back(std::move(*a));
  for (; b != other.terms_.end(); ++b) merged.push_back(*b);
  terms_ = std::move(merged);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) { return *this += -other; }

Polynomial& Polynomial::operator*=(const Polynomial& other) {
  *this = *this * other;
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
  } else if (c != 1) {
    for (auto& t : terms_) t.second *= c;
  }
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  check_same(a, b);
  if (a.is_zero() || b.is_zero()) return Polynomial(a.nvars_);
  if (b.terms_.size() == 1) return a.mul_term(b.terms_[0].first, b.terms_[0].second);
  if (a.terms_.size() == 1) return b.mul_term(a.terms_[0].first, a.terms_[0].second);
  std::map<Monomial, Rational, GrlexGreater> acc;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      auto [it, inserted] = acc.try_emplace(ma * mb);
      it->second += ca * cb;
    }
  }
  Polynomial r(a.nvars_);
  r.terms_.reserve(acc.size());
  for (auto& [m, c] : acc) {
    if (c != 0) r.terms_.emplace_back(m, std::move(c));
  }
  return r;
}

Polynomial Polynomial::mul_term(const Monomial& m, const Rational& c) const {
  Polynomial r(nvars_);
  if (c == 0) return r;
  r.terms_.reserve(terms_.size());
  // Multiplying by a monomial preserves grlex order.
  for (const auto& [tm, tc] : terms_) r.terms_.emplace_back(tm * m, tc * c);
  return r;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  if (var >= nvars_) throw DomainError("coordinate index out of range");
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [m, c] : terms_) {
    const unsigned e = m.exponent(var);
    if (e == 0) continue;
    Monomial dm = m;
    dm.set_exponent(var, e - 1);
    out.emplace_back(dm, c * e);
  }
  return from_terms(nvars_, std::move(out));
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
  if (point.size() != nvars_) throw DimensionMismatch("evaluation point has wrong dimension");
  Rational total = 0;
  for (const auto& [m, c] : terms_) {
    Rational v = c;
    for (std::size_t i = 0; i < nvars_; ++i) {
      for (unsigned k = 0; k < m.exponent(i); ++k) v *= point[i];
    }
    total += v;
  }
  return total;
}

Polynomial Polynomial::monic() const {
  if (terms_.empty() || terms_.front().second == 1) return *this;
  Rational inv = 1 / terms_.front().second;
  return *this * inv;
}

// ---------------------------------------------------------------------------

namespace {

std::optional<Polynomial> try_divide(const Polynomial& dividend, const Polynomial& divisor) {
  if (divisor.is_constant()) return dividend * Rational(1 / divisor.leading_coefficient());
  if (dividend.is_zero()) return dividend;
  for (std::size_t v = 0; v < dividend.nvars(); ++v)
    if (divisor.degree_in(v) > dividend.degree_in(v)) return std::nullopt;
  const Monomial& lm = divisor.leading_monomial();
  const Rational lc_inv = 1 / divisor.leading_coefficient();
  std::vector<Polynomial::Term> quotient;
  Polynomial rest = dividend;
  while (!rest.is_zero()) {
    const Monomial& rm = rest.leading_monomial();
    if (!lm.divides(rm)) return std::nullopt;
    Monomial qm = rm / lm;
    Rational qc = rest.leading_coefficient() * lc_inv;
    rest -= divisor.mul_term(qm, qc);
    quotient.emplace_back(std::move(qm), std::move(qc));
  }
  return Polynomial::from_terms(dividend.nvars(), std::move(quotient));
}

}  // namespace

Polynomial divide_exact(const Polynomial& dividend, const Polynomial& divisor) {
  check_same(dividend, divisor);
  if (divisor.is_zero()) throw MathError("division by the zero polynomial");
  auto q = try_divide(dividend, divisor);
  if (!q) throw MathError("inexact polynomial division");
  return std::move(*q);
}

namespace {

// Polynomial viewed as univariate in `var`; coefficient k multiplies var^k and
// is free of var.
using UPoly = std::vector<Polynomial>;

UPoly to_univariate(const Polynomial& p, std::size_t var) {
  UPoly u(static_cast<std::size_t>(std::max(p.degree_in(var), 0)) + 1, Polynomial(p.nvars()));
  std::vector<std::vector<Polynomial::Term>> buckets(u.size());
  for (const auto& [m, c] : p.terms()) {
    Monomial rest = m;
    rest.set_exponent(var, 0);
    buckets[m.exponent(var)].emplace_back(rest, c);
  }
  for (std::size_t k = 0; k < u.size(); ++k) u[k] = Polynomial::from_terms(p.nvars(), std::move(buckets[k]));
  return u;
}

Polynomial from_univariate(const UPoly& u, std::size_t var) {
  Polynomial r(u.front().nvars());
  for (std::size_t k = 0; k < u.size(); ++k) {
    if (u[k].is_zero()) continue;
    Monomial shift(u[k].nvars());
    shift.set_exponent(var, static_cast<unsigned>(k));
    r += u[k].mul_term(shift, 1);
  }
  return r;
}

void trim(UPoly& u) {
  while (u.size() > 1 && u.back().is_zero()) u.pop_back();
}

bool is_zero(const UPoly& u) { return u.size() == 1 && u[0].is_zero(); }

Polynomial content(const UPoly& u) {
  Polynomial c(u.front().nvars());
  for (const auto& coeff : u) {
    if (coeff.is_zero()) continue;
    c = gcd(c, coeff);
    if (c.is_constant()) break;
  }
  return c;
}

UPoly divide_coeffs(const UPoly& u, const Polynomial& d) {
  UPoly r;
  r.reserve(u.size());
  for (const auto& coeff : u) r.push_back(divide_exact(coeff, d));
  return r;
}

// Scales u to integer coefficients with no common integer factor, keeping the
// sign of the leading coefficient.
void make_integral_primitive(UPoly& u) {
  mpz_class num_gcd = 0;
  mpz_class den_lcm = 1;
  for (const auto& coeff : u) {
    for (const auto& [m, c] : coeff.terms()) {
      mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
    }
  }
  if (num_gcd == 0 || (num_gcd == 1 && den_lcm == 1)) return;
  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  for (auto& coeff : u) coeff *= scale;
}

UPoly primitive_part(const UPoly& u) {
  Polynomial c = content(u);
  UPoly r = c.is_one() ? u : divide_coeffs(u, c);
  make_integral_primitive(r);
  return r;
}

// Heuristic gcd over Z: evaluate one variable at a large integer xi, recurse,
// rebuild the candidate from the symmetric xi-adic digits of the image and
// accept it only if it divides both inputs. Inputs have integer coefficients;
// the result is the gcd over Z. nullopt means "no verdict", not failure.
constexpr std::size_t kHeuristicBitLimit = 1u << 16;

mpz_class integer_content(const Polynomial& p) {
  mpz_class g = 0;
  for (const auto& [m, c] : p.terms()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
  return g;
}

mpz_class max_norm(const Polynomial& p) {
  mpz_class best = 0;
  for (const auto& [m, c] : p.terms())
    if (abs(c.get_num()) > best) best = abs(c.get_num());
  return best;
}

Polynomial scale_to_integers(const Polynomial& p) {
  mpz_class den_lcm = 1;
  for (const auto& [m, c] : p.terms()) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  return den_lcm == 1 ? p : p * Rational(den_lcm);
}

Polynomial evaluate_at(const Polynomial& p, std::size_t var, const mpz_class& xi) {
  std::vector<mpz_class> powers{1};
  std::vector<Polynomial::Term> terms;
  terms.reserve(p.size());
  for (const auto& [m, c] : p.terms()) {
    const unsigned e = m.exponent(var);
    while (powers.size() <= e) powers.push_back(powers.back() * xi);
    Monomial rest = m;
    rest.set_exponent(var, 0);
    terms.emplace_back(rest, c * Rational(powers[e]));
  }
  return Polynomial::from_terms(p.nvars(), std::move(terms));
}

Polynomial interpolate(const Polynomial& image, std::size_t var, const mpz_class& xi) {
  const mpz_class half = xi / 2;
  std::vector<Polynomial::Term> terms;
  for (const auto& [m, c] : image.terms()) {
    mpz_class rest = c.get_num();
    unsigned e = 0;
    while (rest != 0) {
      mpz_class digit;
      mpz_fdiv_r(digit.get_mpz_t(), rest.get_mpz_t(), xi.get_mpz_t());
      if (digit > half) digit -= xi;
      if (digit != 0) {
        Monomial mm = m;
        mm.set_exponent(var, e);
        terms.emplace_back(mm, Rational(digit));
      }
      rest = (rest - digit) / xi;
      ++e;
    }
  }
  return Polynomial::from_terms(image.nvars(), std::move(terms));
}

std::optional<Polynomial> heuristic_gcd(const Polynomial& a, const Polynomial& b) {
  const std::size_t n = a.nvars();
  const mpz_class ca = integer_content(a);
  const mpz_class cb = integer_content(b);
  mpz_class c;
  mpz_gcd(c.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  std::size_t var = n;
  for (std::size_t v = 0; v < n && var == n; ++v)
    if (a.involves(v) || b.involves(v)) var = v;
  if (var == n) return Polynomial::constant(n, Rational(c));

  const Polynomial pa = a * Rational(mpz_class(1), ca);
  const Polynomial pb = b * Rational(mpz_class(1), cb);
  const int max_degree = std::max(pa.degree_in(var), pb.degree_in(var));
  mpz_class xi = 2 * std::min(max_norm(pa), max_norm(pb)) + 29;
  for (int attempt = 0; attempt < 6; ++attempt) {
    if (mpz_sizeinbase(xi.get_mpz_t(), 2) * static_cast<std::size_t>(max_degree) > kHeuristicBitLimit) break;
    const Polynomial ea = evaluate_at(pa, var, xi);
    const Polynomial eb = evaluate_at(pb, var, xi);
    if (!ea.is_zero() && !eb.is_zero()) {
      auto image = heuristic_gcd(ea, eb);
      if (!image) return std::nullopt;
      Polynomial g = interpolate(*image, var, xi);
      if (!g.is_zero()) {
        g *= Rational(mpz_class(1), integer_content(g));
        if (g.leading_coefficient() < 0) g = -g;
        if (try_divide(pa, g) && try_divide(pb, g)) return g * Rational(c);
      }
    }
    xi = xi * 73794 / 27011;
  }
  return std::nullopt;
}

// Pseudo-remainder of a by b (deg b >= 1 or b a non-zero constant).
UPoly pseudo_remainder(UPoly a, const UPoly& b) {
  const std::size_t db = b.size() - 1;
  const Polynomial& lcb = b.back();
  while (!is_zero(a) && a.size() - 1 >= db) {
    const std::size_t shift = a.size() - 1 - db;
    const Polynomial lca = a.back();
    for (auto& coeff : a) coeff = coeff * lcb;
    for (std::size_t k = 0; k < b.size(); ++k) a[k + shift] -= lca * b[k];
    a.pop_back();
    if (a.empty()) a.emplace_back(b.front().nvars());
    trim(a);
  }
  return a;
}

Monomial monomial_gcd(const Monomial& m, const Polynomial& p) {
  Monomial g = m;
  for (const auto& [tm, tc] : p.terms()) {
    for (std::size_t i = 0; i < g.nvars(); ++i) {
      if (tm.exponent(i) < g.exponent(i)) g.set_exponent(i, tm.exponent(i));
    }
    if (g.is_one()) break;
  }
  return g;
}

}  // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  check_same(a, b);
  const std::size_t n = a.nvars();
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Polynomial::constant(n, 1);
  if (a.size() == 1) return Polynomial::monomial(monomial_gcd(a.leading_monomial(), b), 1);
  if (b.size() == 1) return Polynomial::monomial(monomial_gcd(b.leading_monomial(), a), 1);
  if (a == b) return a.monic();
  if (auto g = heuristic_gcd(scale_to_integers(a), scale_to_integers(b))) return g->monic();

  // Prefer a variable present in only one operand: the gcd then reduces to a
  // content computation. Otherwise take the shared variable of least degree.
  std::size_t var = n;
  int best = std::numeric_limits<int>::max();
  for (std::size_t v = 0; v < n; ++v) {
    const bool in_a = a.involves(v);
    const bool in_b = b.involves(v);
    if (in_a != in_b) {
      var = v;
      break;
    }
    if (in_a && in_b) {
      const int d = std::max(a.degree_in(v), b.degree_in(v));
      if (d < best) {
        best = d;
        var = v;
      }
    }
  }

  UPoly ua = to_univariate(a, var);
  UPoly ub = to_univariate(b, var);
  const Polynomial ca = content(ua);
  const Polynomial cb = content(ub);
  const Polynomial c = gcd(ca, cb);
  if (ua.size() == 1 || ub.size() == 1) return c;

  UPoly pa = divide_coeffs(ua, ca);
  UPoly pb = divide_coeffs(ub, cb);
  make_integral_primitive(pa);
  make_integral_primitive(pb);
  if (pa.size() < pb.size()) std::swap(pa, pb);
  UPoly g;
  while (true) {
    UPoly r = pseudo_remainder(pa, pb);
    if (is_zero(r)) {
      g = std::move(pb);
      break;
    }
    if (r.size() == 1) {
      g = UPoly{Polynomial::constant(n, 1)};
      break;
    }
    pa = std::move(pb);
    pb = primitive_part(r);
  }
  g = primitive_part(g);
  return (c * from_univariate(g, var)).monic();
}

}  // namespace mvcurl
