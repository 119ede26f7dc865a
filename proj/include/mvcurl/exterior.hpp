#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "mvcurl/errors.hpp"
#include "mvcurl/rational_function.hpp"

namespace mvcurl {

// Global coordinate chart (x^1, ..., x^n) on R^n.
class Chart {
public:
  explicit Chart(std::vector<std::string> names);

  std::size_t dim() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  RationalFunc coordinate(std::size_t i) const;
  RationalFunc constant(const Rational& c) const { return RationalFunc::constant(dim(), c); }
  RationalFunc zero() const { return RationalFunc(dim()); }
  RationalFunc one() const { return constant(1); }

  friend bool operator==(const Chart& a, const Chart& b) { return a.names_ == b.names_; }

private:
  std::vector<std::string> names_;
};

using ChartPtr = std::shared_ptr<const Chart>;

ChartPtr make_chart(std::vector<std::string> names);
// Chart with coordinates x1..xn.
ChartPtr make_chart(std::size_t n);

void require_same_chart(const ChartPtr& a, const ChartPtr& b);

// Strictly increasing index tuple i1 < ... < ik encoded as a bitmask; bit i
// stands for the coordinate with zero-based index i.
struct IndexSet {
  std::uint32_t bits = 0;

  static IndexSet single(std::size_t i) { return {std::uint32_t{1} << i}; }
  static IndexSet full(std::size_t n) { return {(std::uint32_t{1} << n) - 1}; }

  int grade() const noexcept { return std::popcount(bits); }
  bool contains(std::size_t i) const noexcept { return (bits >> i) & 1u; }
  bool subset_of(IndexSet other) const noexcept { return (bits & ~other.bits) == 0; }
  std::vector<std::size_t> indices() const;

  friend IndexSet operator|(IndexSet a, IndexSet b) { return {a.bits | b.bits}; }
  friend IndexSet operator&(IndexSet a, IndexSet b) { return {a.bits & b.bits}; }
  friend IndexSet operator-(IndexSet a, IndexSet b) { return {a.bits & ~b.bits}; }
  friend bool operator==(IndexSet a, IndexSet b) = default;
};

// Lexicographic order on the sorted index tuples: {1,2} < {1,3} < {2,3}.
struct IndexSetOrder {
  bool operator()(IndexSet a, IndexSet b) const noexcept {
    if (a.grade() != b.grade()) return a.grade() < b.grade();
    const std::uint32_t diff = a.bits ^ b.bits;
    return diff != 0 && (a.bits & (diff & (~diff + 1))) != 0;
  }
};

// Sign of the shuffle taking (I, J) to sorted I ∪ J; zero when I and J meet.
int shuffle_sign(IndexSet a, IndexSet b) noexcept;

struct VectorKind {};
struct FormKind {};

// Homogeneous sparse sum of basis blades with rational-function coefficients:
// ∂_I blades for VectorKind, dx^I coblades for FormKind. A zero object still
// remembers its grade. Grades above the chart dimension are permitted only
// for such zero objects (e.g. A ∧ B with a + b > n).
template <class Kind>
class BladeSum {
public:
  using Terms = std::map<IndexSet, RationalFunc, IndexSetOrder>;

  BladeSum() = default;
  BladeSum(ChartPtr chart, int grade) : chart_(std::move(chart)), grade_(grade) {
    if (!chart_) throw DomainError("null chart");
    if (grade_ < 0) throw DomainError("negative grade");
  }

  static BladeSum scalar(ChartPtr chart, RationalFunc f) {
    BladeSum s(std::move(chart), 0);
    s.add(IndexSet{}, std::move(f));
    return s;
  }

  static BladeSum blade(ChartPtr chart, IndexSet index, RationalFunc f) {
    BladeSum s(std::move(chart), index.grade());
    if (index.bits >> s.chart_->dim()) throw DomainError("blade index outside the chart");
    s.add(index, std::move(f));
    return s;
  }

  static BladeSum basis(ChartPtr chart, std::size_t i) {
    auto one = chart->one();
    return blade(std::move(chart), IndexSet::single(i), std::move(one));
  }

  const ChartPtr& chart() const noexcept { return chart_; }
  int grade() const noexcept { return grade_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  RationalFunc coefficient(IndexSet index) const {
    auto it = terms_.find(index);
    return it == terms_.end() ? chart_->zero() : it->second;
  }

  // Scalar value of a grade-0 object.
  RationalFunc as_scalar() const {
    if (grade_ != 0) throw DomainError("not a scalar");
    return coefficient(IndexSet{});
  }

  // Adds f to the coefficient of `index`; the blade's grade must match.
  void add(IndexSet index, RationalFunc f) {
    if (f.is_zero()) return;
    if (index.grade() != grade_) throw DomainError("blade grade differs from object grade");
    auto [it, inserted] = terms_.try_emplace(index, std::move(f));
    if (!inserted) {
      it->second += f;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  BladeSum& operator+=(const BladeSum& other) {
    check_compatible(other);
    for (const auto& [idx, f] : other.terms_) add(idx, f);
    return *this;
  }
  BladeSum& operator-=(const BladeSum& other) {
    check_compatible(other);
    for (const auto& [idx, f] : other.terms_) add(idx, -f);
    return *this;
  }
  BladeSum operator-() const {
    BladeSum r = *this;
    for (auto& [idx, f] : r.terms_) f = -f;
    return r;
  }
  friend BladeSum operator+(BladeSum a, const BladeSum& b) { return a += b; }
  friend BladeSum operator-(BladeSum a, const BladeSum& b) { return a -= b; }

  friend BladeSum operator*(const RationalFunc& f, const BladeSum& a) {
    BladeSum r(a.chart_, a.grade_);
    if (f.is_zero()) return r;
    for (const auto& [idx, g] : a.terms_) r.terms_.emplace(idx, f * g);
    return r;
  }
  friend BladeSum operator*(const BladeSum& a, const RationalFunc& f) { return f * a; }

  friend bool operator==(const BladeSum& a, const BladeSum& b) {
    return a.grade_ == b.grade_ && *a.chart_ == *b.chart_ && a.terms_ == b.terms_;
  }

private:
  void check_compatible(const BladeSum& other) const {
    require_same_chart(chart_, other.chart_);
    if (grade_ != other.grade_) throw DomainError("adding objects of different grades");
  }

  ChartPtr chart_;
  int grade_ = 0;
  Terms terms_;
};

using Multivector = BladeSum<VectorKind>;
using DifferentialForm = BladeSum<FormKind>;

// Top-degree form f dx^1 ∧ ... ∧ dx^n with f != 0.
class VolumeForm {
public:
  VolumeForm(ChartPtr chart, RationalFunc density);
  // Unit density dx^1 ∧ ... ∧ dx^n.
  static VolumeForm standard(ChartPtr chart);

  const ChartPtr& chart() const noexcept { return chart_; }
  const RationalFunc& density() const noexcept { return density_; }
  DifferentialForm as_form() const;
  // The volume m·V.
  VolumeForm scaled(const RationalFunc& m) const;

  friend bool operator==(const VolumeForm& a, const VolumeForm& b) {
    return *a.chart_ == *b.chart_ && a.density_ == b.density_;
  }

private:
  ChartPtr chart_;
  RationalFunc density_;
};

Multivector wedge(const Multivector& a, const Multivector& b);
DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b);

// Determinant-convention duality: <dx^I, ∂_J> = 1 when I == J, else 0.
// Returns zero when the degrees differ.
RationalFunc pairing(const DifferentialForm& omega, const Multivector& a);

// i_A ω, characterised by <i_A ω, B> = <ω, A ∧ B>. Zero of degree 0 when
// deg ω < grade A.
DifferentialForm interior_product_form(const Multivector& a, const DifferentialForm& omega);

// i_ω A, characterised by <η, i_ω A> = <ω ∧ η, A>.
Multivector interior_product_vector(const DifferentialForm& omega, const Multivector& a);

DifferentialForm flat(const VolumeForm& v, const Multivector& a);
Multivector sharp(const VolumeForm& v, const DifferentialForm& omega);

DifferentialForm exterior_derivative(const DifferentialForm& omega);
// Differential of a function as a 1-form.
DifferentialForm differential(const ChartPtr& chart, const RationalFunc& f);

// t df ∧ ω + dω.
DifferentialForm witten_derivative(const Rational& t, const RationalFunc& f, const DifferentialForm& omega);
// (1/f) d(f ω); MathError for f == 0.
DifferentialForm marsden_derivative(const RationalFunc& f, const DifferentialForm& omega);

}  // namespace mvcurl
