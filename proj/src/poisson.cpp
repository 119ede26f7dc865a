#include "mvcurl/poisson.hpp"

#include <stdexcept>

namespace mvcurl {

namespace {

void require_bivector(const Multivector& pi) {
  if (pi.grade() != 2) throw DomainError("expected a bivector, got grade " + std::to_string(pi.grade()));
}

void require_poisson(const Multivector& pi) {
  if (!is_poisson(pi)) throw NotPoisson("bivector fails the Jacobi identity [π, π] = 0");
}

// π^{ij} with the antisymmetric extension to i > j.
RationalFunc component(const Multivector& pi, std::size_t i, std::size_t j) {
  if (i == j) return pi.chart()->zero();
  if (i < j) return pi.coefficient(IndexSet::single(i) | IndexSet::single(j));
  return -pi.coefficient(IndexSet::single(i) | IndexSet::single(j));
}

}  // namespace

StructureConstants::StructureConstants(std::size_t n) : n_(n), upper_(n * (n - 1) / 2, std::vector<Rational>(n)) {
  if (n == 0 || n > kMaxVars) throw ValidationError("Lie algebra dimension must be in [1, 16]");
}

StructureConstants::StructureConstants(std::size_t n, const std::vector<Bracket>& brackets) : StructureConstants(n) {
  for (const auto& b : brackets) {
    if (b.i >= n || b.j >= n) throw ValidationError("bracket index out of range");
    if (b.value.size() != n) throw ValidationError("bracket value has the wrong number of components");
    if (b.i == b.j) {
      for (const auto& c : b.value) {
        if (c != 0) throw ValidationError("[e_i, e_i] must vanish");
      }
      continue;
    }
    const int sign = b.i < b.j ? 1 : -1;
    auto& slot = upper_[pair_index(b.i, b.j)];
    for (std::size_t k = 0; k < n; ++k) slot[k] += sign * b.value[k];
  }
  validate();
}

std::size_t StructureConstants::pair_index(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  // Row-major enumeration of pairs (i, j), i < j.
  return i * n_ - i * (i + 1) / 2 + (j - i - 1);
}

Rational StructureConstants::operator()(std::size_t i, std::size_t j, std::size_t k) const {
  if (i >= n_ || j >= n_ || k >= n_) throw DomainError("structure constant index out of range");
  if (i == j) return 0;
  const Rational& c = upper_[pair_index(i, j)][k];
  return i < j ? c : Rational(-c);
}

bool StructureConstants::is_abelian() const {
  for (const auto& row : upper_) {
    for (const auto& c : row) {
      if (c != 0) return false;
    }
  }
  return true;
}

void StructureConstants::validate() const {
  const auto& c = *this;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      for (std::size_t k = j + 1; k < n_; ++k) {
        for (std::size_t m = 0; m < n_; ++m) {
          Rational total = 0;
          for (std::size_t l = 0; l < n_; ++l) {
            total += c(j, k, l) * c(i, l, m) + c(k, i, l) * c(j, l, m) + c(i, j, l) * c(k, l, m);
          }
          if (total != 0) throw ValidationError("structure constants violate the Jacobi identity");
        }
      }
    }
  }
}

// ---------------------------------------------------------------------------

Multivector jacobi_residual(const Multivector& pi) {
  require_bivector(pi);
  return schouten(pi, pi);
}

bool is_poisson(const Multivector& pi) { return jacobi_residual(pi).is_zero(); }

Multivector hamiltonian_field(const Multivector& pi, const RationalFunc& f) {
  require_bivector(pi);
  require_poisson(pi);
  return interior_product_vector(differential(pi.chart(), f), pi);
}

Multivector modular_field(const VolumeForm& v, const Multivector& pi) {
  require_bivector(pi);
  return curl(v, pi);
}

Multivector modular_field_coordinate(const Multivector& pi) {
  require_bivector(pi);
  const std::size_t n = pi.chart()->dim();
  Multivector x(pi.chart(), 1);
  for (std::size_t i = 0; i < n; ++i) {
    RationalFunc comp = pi.chart()->zero();
    for (std::size_t j = 0; j < n; ++j) comp += component(pi, i, j).derivative(j);
    x.add(IndexSet::single(i), comp);
  }
  return x;
}

std::vector<RationalFunc> lm_system_residuals(const VolumeForm& v, const RationalFunc& m, const Multivector& pi) {
  require_bivector(pi);
  require_same_chart(v.chart(), pi.chart());
  if (!v.density().is_one()) throw DomainError("the coordinate last-multiplier system needs unit density");
  const std::size_t n = pi.chart()->dim();
  std::vector<RationalFunc> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    RationalFunc comp = pi.chart()->zero();
    for (std::size_t j = 0; j < n; ++j) comp += (m * component(pi, i, j)).derivative(j);
    out.push_back(std::move(comp));
  }
  return out;
}

Multivector lie_poisson(const ChartPtr& chart, const StructureConstants& c) {
  if (chart->dim() != c.dim()) throw DimensionMismatch("chart and Lie algebra dimensions differ");
  const std::size_t n = c.dim();
  Multivector pi(chart, 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      RationalFunc coeff = chart->zero();
      for (std::size_t k = 0; k < n; ++k) {
        const Rational ck = c(i, j, k);
        if (ck != 0) coeff += chart->constant(ck) * chart->coordinate(k);
      }
      pi.add(IndexSet::single(i) | IndexSet::single(j), coeff);
    }
  }
  return pi;
}

std::optional<RationalFunc> unimodularity_check(const VolumeForm& v, const Multivector& pi, unsigned max_degree) {
  require_bivector(pi);
  require_poisson(pi);
  const Multivector target = modular_field(v, pi);
  if (target.is_zero()) return pi.chart()->zero();
  const AnsatzSpace space = AnsatzSpace::polynomial(pi.chart(), max_degree);
  // Expand the images of the basis together with the target so that rows
  // and common denominators are shared, then split off the last column.
  std::vector<Multivector> family;
  family.reserve(space.dimension() + 1);
  for (const auto& rho : space.basis()) {
    family.push_back(interior_product_vector(differential(pi.chart(), rho.as_scalar()), pi));
  }
  family.push_back(target);
  const ExactMatrix joint = expand_columns(family);
  ExactMatrix system(joint.rows(), space.dimension());
  std::vector<Rational> rhs(joint.rows());
  for (std::size_t r = 0; r < joint.rows(); ++r) {
    for (const auto& [c, x] : joint.row(r)) {
      if (c == space.dimension()) {
        rhs[r] = x;
      } else {
        system.set(r, c, x);
      }
    }
  }
  auto solution = solve_affine(system, rhs);
  if (!solution) return std::nullopt;
  RationalFunc rho = space.element(*solution).as_scalar();
  if (!(hamiltonian_field(pi, rho) == target)) throw std::logic_error("unimodularity witness failed verification");
  return rho;
}

RationalFunc two_dim_multiplier(const RationalFunc& h) {
  if (h.is_zero()) throw MathError("h must be non-zero");
  return h.inverse();
}

}  // namespace mvcurl
