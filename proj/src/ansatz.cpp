#include "mvcurl/ansatz.hpp"

#include <algorithm>
#include <stdexcept>

namespace mvcurl {

Rational ExactMatrix::at(std::size_t r, std::size_t c) const {
  const auto& row = rows_.at(r);
  auto it = row.find(c);
  return it == row.end() ? Rational(0) : it->second;
}

void ExactMatrix::set(std::size_t r, std::size_t c, const Rational& value) {
  if (c >= cols_) throw DomainError("matrix column out of range");
  auto& row = rows_.at(r);
  if (value == 0) {
    row.erase(c);
  } else {
    row[c] = value;
  }
}

std::vector<Rational> ExactMatrix::operator*(std::span<const Rational> v) const {
  if (v.size() != cols_) throw DimensionMismatch("matrix-vector size mismatch");
  std::vector<Rational> out(rows_.size());
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    for (const auto& [c, x] : rows_[r]) out[r] += x * v[c];
  }
  return out;
}

ExactMatrix ExactMatrix::from_dense(const std::vector<std::vector<Rational>>& dense) {
  const std::size_t cols = dense.empty() ? 0 : dense.front().size();
  ExactMatrix m(dense.size(), cols);
  for (std::size_t r = 0; r < dense.size(); ++r) {
    if (dense[r].size() != cols) throw DimensionMismatch("ragged dense matrix");
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, dense[r][c]);
  }
  return m;
}

namespace {

struct Echelon {
  std::vector<std::vector<Rational>> rows;  // reduced rows, one per pivot
  std::vector<std::size_t> pivots;
};

// Gauss–Jordan elimination over Q on the first `ncols` columns of `dense`.
Echelon reduce(std::vector<std::vector<Rational>> dense, std::size_t ncols) {
  Echelon e;
  std::size_t top = 0;
  for (std::size_t c = 0; c < ncols && top < dense.size(); ++c) {
    std::size_t pivot = top;
    while (pivot < dense.size() && dense[pivot][c] == 0) ++pivot;
    if (pivot == dense.size()) continue;
    std::swap(dense[top], dense[pivot]);
    auto& prow = dense[top];
    const Rational inv = 1 / prow[c];
    for (std::size_t k = c; k < prow.size(); ++k) prow[k] *= inv;
    for (std::size_t r = 0; r < dense.size(); ++r) {
      if (r == top || dense[r][c] == 0) continue;
      const Rational factor = dense[r][c];
      for (std::size_t k = c; k < prow.size(); ++k) {
        if (prow[k] != 0) dense[r][k] -= factor * prow[k];
      }
    }
    e.pivots.push_back(c);
    ++top;
  }
  dense.resize(top);
  e.rows = std::move(dense);
  return e;
}

std::vector<std::vector<Rational>> to_dense(const ExactMatrix& m, std::size_t extra_cols = 0) {
  std::vector<std::vector<Rational>> dense(m.rows(), std::vector<Rational>(m.cols() + extra_cols));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (const auto& [c, x] : m.row(r)) dense[r][c] = x;
  }
  return dense;
}

std::vector<IndexSet> blades_of_grade(std::size_t n, int grade) {
  std::vector<IndexSet> out;
  for (std::uint32_t bits = 0; bits < (std::uint32_t{1} << n); ++bits) {
    if (std::popcount(bits) == grade) out.push_back(IndexSet{bits});
  }
  std::sort(out.begin(), out.end(), IndexSetOrder{});
  return out;
}

struct RowKeyOrder {
  bool operator()(const std::pair<IndexSet, Monomial>& a, const std::pair<IndexSet, Monomial>& b) const {
    if (a.first != b.first) return IndexSetOrder{}(a.first, b.first);
    return grlex(a.second, b.second) < 0;
  }
};

}  // namespace

std::vector<std::vector<Rational>> nullspace(const ExactMatrix& m) {
  const Echelon e = reduce(to_dense(m), m.cols());
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t p : e.pivots) is_pivot[p] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(m.cols());
    v[free] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.rows[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::size_t rank(const ExactMatrix& m) { return reduce(to_dense(m), m.cols()).pivots.size(); }

std::optional<std::vector<Rational>> solve_affine(const ExactMatrix& m, std::span<const Rational> b) {
  if (b.size() != m.rows()) throw DimensionMismatch("right-hand side size mismatch");
  auto dense = to_dense(m, 1);
  for (std::size_t r = 0; r < m.rows(); ++r) dense[r][m.cols()] = b[r];
  const Echelon e = reduce(std::move(dense), m.cols() + 1);
  std::vector<Rational> x(m.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] == m.cols()) return std::nullopt;
    x[e.pivots[r]] = e.rows[r][m.cols()];
  }
  return x;
}

// ---------------------------------------------------------------------------

std::vector<Monomial> monomials_up_to(std::size_t n, unsigned d) {
  std::vector<Monomial> out;
  Monomial current(n);
  // Odometer over exponent vectors with total degree <= d.
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t var, unsigned budget) {
    if (var == n) {
      out.push_back(current);
      return;
    }
    for (unsigned e = 0; e <= budget; ++e) {
      current.set_exponent(var, e);
      rec(var + 1, budget - e);
    }
    current.set_exponent(var, 0);
  };
  rec(0, d);
  std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) { return grlex(a, b) < 0; });
  return out;
}

AnsatzSpace AnsatzSpace::polynomial(ChartPtr chart, unsigned max_degree, int grade) {
  return with_denominator(chart, max_degree, chart->one(), grade);
}

AnsatzSpace AnsatzSpace::with_denominator(ChartPtr chart, unsigned max_degree, const RationalFunc& denominator,
                                          int grade) {
  if (grade < 0 || grade > static_cast<int>(chart->dim())) throw DomainError("ansatz grade outside [0, n]");
  if (denominator.is_zero()) throw MathError("ansatz denominator must be non-zero");
  const RationalFunc inv = denominator.inverse();
  AnsatzSpace space(chart, grade);
  const auto monomials = monomials_up_to(chart->dim(), max_degree);
  for (IndexSet blade : blades_of_grade(chart->dim(), grade)) {
    for (const auto& mono : monomials) {
      space.basis_.push_back(Multivector::blade(chart, blade, RationalFunc(Polynomial::monomial(mono, 1)) * inv));
    }
  }
  return space;
}

AnsatzSpace AnsatzSpace::from_basis(ChartPtr chart, int grade, std::vector<Multivector> basis) {
  AnsatzSpace space(std::move(chart), grade);
  for (const auto& b : basis) {
    require_same_chart(space.chart_, b.chart());
    if (b.grade() != grade) throw DomainError("basis element has the wrong grade");
  }
  space.basis_ = std::move(basis);
  return space;
}

Multivector AnsatzSpace::element(std::span<const Rational> coeffs) const {
  if (coeffs.size() != basis_.size()) throw DimensionMismatch("coefficient vector size differs from ansatz dimension");
  Multivector out(chart_, grade_);
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (coeffs[j] == 0) continue;
    out += chart_->constant(coeffs[j]) * basis_[j];
  }
  return out;
}

AnsatzSpace AnsatzSpace::reversed() const {
  AnsatzSpace r = *this;
  std::reverse(r.basis_.begin(), r.basis_.end());
  return r;
}

ExactMatrix expand_columns(std::span<const Multivector> family) {
  if (family.empty()) return ExactMatrix(0, 0);
  const ChartPtr& chart = family.front().chart();
  std::map<IndexSet, Polynomial, IndexSetOrder> common_den;
  for (const auto& member : family) {
    require_same_chart(chart, member.chart());
    for (const auto& [idx, f] : member.terms()) {
      auto [it, inserted] = common_den.try_emplace(idx, f.denominator());
      if (!inserted && !(it->second == f.denominator())) {
        const Polynomial g = gcd(it->second, f.denominator());
        it->second = it->second * divide_exact(f.denominator(), g);
      }
    }
  }
  std::map<std::pair<IndexSet, Monomial>, std::size_t, RowKeyOrder> row_of;
  std::vector<std::tuple<std::pair<IndexSet, Monomial>, std::size_t, Rational>> entries;
  for (std::size_t j = 0; j < family.size(); ++j) {
    for (const auto& [idx, f] : family[j].terms()) {
      const Polynomial scaled = f.numerator() * divide_exact(common_den.at(idx), f.denominator());
      for (const auto& [mono, c] : scaled.terms()) {
        auto key = std::make_pair(idx, mono);
        row_of.try_emplace(key, 0);
        entries.emplace_back(std::move(key), j, c);
      }
    }
  }
  std::size_t next = 0;
  for (auto& [key, row] : row_of) row = next++;
  ExactMatrix m(row_of.size(), family.size());
  for (const auto& [key, col, value] : entries) m.set(row_of.at(key), col, value);
  return m;
}

std::size_t span_rank(std::span<const Multivector> family) { return rank(expand_columns(family)); }

bool span_contains(std::span<const Multivector> big, std::span<const Multivector> small) {
  std::vector<Multivector> joint(big.begin(), big.end());
  joint.insert(joint.end(), small.begin(), small.end());
  return span_rank(joint) == span_rank(big);
}

ExactMatrix collect_linear_system(const ResidualMap& residual_map, const AnsatzSpace& space) {
  const auto& basis = space.basis();
  std::vector<Multivector> images;
  images.reserve(basis.size());
  for (const auto& b : basis) images.push_back(residual_map(b));

  const RationalFunc two = space.chart()->constant(2);
  const std::size_t checks = std::min<std::size_t>(basis.size(), 3);
  for (std::size_t j = 0; j < checks; ++j) {
    const std::size_t k = (j + 1) % basis.size();
    const Multivector combined = residual_map(basis[j] + two * basis[k]);
    if (!(combined == images[j] + two * images[k])) throw ValidationError("residual map is not linear");
  }
  return expand_columns(images);
}

std::vector<Multivector> solve_kernel(const ResidualMap& residual_map, const AnsatzSpace& space) {
  std::vector<Multivector> out;
  if (space.dimension() == 0) return out;
  for (const auto& v : nullspace(collect_linear_system(residual_map, space))) out.push_back(space.element(v));
  return out;
}

std::vector<RationalFunc> lm_solve(const VolumeForm& v, const Multivector& a, const AnsatzSpace& space) {
  if (a.grade() < 1) throw DomainError("last multipliers are defined for grade >= 1");
  if (space.grade() != 0) throw DomainError("multiplier ansatz must consist of functions");
  require_same_chart(v.chart(), a.chart());
  std::vector<RationalFunc> out;
  for (const auto& m : solve_kernel([&](const Multivector& f) { return curl(v, f.as_scalar() * a); }, space)) {
    RationalFunc mf = m.as_scalar();
    if (!is_last_multiplier(v, mf, a).value()) throw std::logic_error("solver returned a non-multiplier");
    out.push_back(std::move(mf));
  }
  return out;
}

std::vector<RationalFunc> casimir_solve(const Multivector& pi, const AnsatzSpace& space) {
  if (pi.grade() != 2) throw DomainError("expected a bivector");
  if (!schouten(pi, pi).is_zero()) throw NotPoisson("bivector fails the Jacobi identity");
  if (space.grade() != 0) throw DomainError("Casimir ansatz must consist of functions");
  std::vector<RationalFunc> out;
  for (const auto& f : solve_kernel([&](const Multivector& g) { return schouten(pi, g); }, space)) {
    out.push_back(f.as_scalar());
  }
  return out;
}

}  // namespace mvcurl
