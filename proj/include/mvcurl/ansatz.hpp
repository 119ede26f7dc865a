#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "mvcurl/curl.hpp"

namespace mvcurl {

// Sparse matrix of exact rationals.
class ExactMatrix {
public:
  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

  std::size_t rows() const noexcept { return rows_.size(); }
  std::size_t cols() const noexcept { return cols_; }

  Rational at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const Rational& value);
  const std::map<std::size_t, Rational>& row(std::size_t r) const { return rows_.at(r); }

  std::vector<Rational> operator*(std::span<const Rational> v) const;

  static ExactMatrix from_dense(const std::vector<std::vector<Rational>>& dense);

private:
  std::size_t cols_ = 0;
  std::vector<std::map<std::size_t, Rational>> rows_;
};

// Exact basis of {v : M v = 0}, one vector per free column of the reduced
// row echelon form (that column's entry is 1).
std::vector<std::vector<Rational>> nullspace(const ExactMatrix& m);
std::size_t rank(const ExactMatrix& m);
// Some x with M x = b, or nullopt when the system is inconsistent.
std::optional<std::vector<Rational>> solve_affine(const ExactMatrix& m, std::span<const Rational> b);

// Finite-dimensional space of grade-k multivectors whose coefficients are
// polynomials of degree <= d, optionally divided by a fixed denominator q.
// Functions are the grade-0 case. Basis order: blades ascending, then
// monomials ascending in graded lex order.
class AnsatzSpace {
public:
  static AnsatzSpace polynomial(ChartPtr chart, unsigned max_degree, int grade = 0);
  static AnsatzSpace with_denominator(ChartPtr chart, unsigned max_degree, const RationalFunc& denominator,
                                      int grade = 0);
  // Arbitrary finite family, e.g. a previously computed basis.
  static AnsatzSpace from_basis(ChartPtr chart, int grade, std::vector<Multivector> basis);

  const ChartPtr& chart() const noexcept { return chart_; }
  int grade() const noexcept { return grade_; }
  std::size_t dimension() const noexcept { return basis_.size(); }
  const std::vector<Multivector>& basis() const noexcept { return basis_; }

  Multivector element(std::span<const Rational> coeffs) const;
  // Same span, basis listed in reverse order.
  AnsatzSpace reversed() const;

private:
  AnsatzSpace(ChartPtr chart, int grade) : chart_(std::move(chart)), grade_(grade) {}

  ChartPtr chart_;
  int grade_ = 0;
  std::vector<Multivector> basis_;
};

// All monomials of total degree <= d in n variables, ascending grlex.
std::vector<Monomial> monomials_up_to(std::size_t n, unsigned d);

using ResidualMap = std::function<Multivector(const Multivector&)>;

// Column j holds the coordinates of map(basis_j) over (blade, monomial) rows,
// after putting each blade's coefficients over a common denominator. Spot
// checks additivity and homogeneity on basis pairs; ValidationError when the
// map is not linear.
ExactMatrix collect_linear_system(const ResidualMap& residual_map, const AnsatzSpace& space);

// Coordinates of a family of same-grade multivectors as matrix columns, using
// the same common-denominator expansion.
ExactMatrix expand_columns(std::span<const Multivector> family);

std::size_t span_rank(std::span<const Multivector> family);
// Whether every member of `small` lies in the span of `big`.
bool span_contains(std::span<const Multivector> big, std::span<const Multivector> small);

// Basis of the solutions of map(x) = 0 inside the space.
std::vector<Multivector> solve_kernel(const ResidualMap& residual_map, const AnsatzSpace& space);

// Basis of {m in space : D_V(m A) = 0}. Empty means none in the ansatz.
std::vector<RationalFunc> lm_solve(const VolumeForm& v, const Multivector& a, const AnsatzSpace& space);

// Basis of {f in space : [π, f] = 0}; NotPoisson when [π, π] != 0.
std::vector<RationalFunc> casimir_solve(const Multivector& pi, const AnsatzSpace& space);

}  // namespace mvcurl
