#pragma once

#include <optional>
#include <vector>

#include "mvcurl/ansatz.hpp"

namespace mvcurl {

// Structure constants c_{ij}^k of an n-dimensional Lie algebra,
// [e_i, e_j] = Σ_k c_{ij}^k e_k. Only i < j is stored. Construction checks
// the Jacobi identity by brute force over all index triples.
class StructureConstants {
public:
  struct Bracket {
    std::size_t i = 0;
    std::size_t j = 0;
    std::vector<Rational> value;  // components along e_1..e_n
  };

  // Abelian algebra.
  explicit StructureConstants(std::size_t n);
  // Unlisted brackets are zero; [e_j, e_i] entries are folded in with a sign.
  // ValidationError on [e_i, e_i] != 0, out-of-range indices or a Jacobi
  // violation.
  StructureConstants(std::size_t n, const std::vector<Bracket>& brackets);

  std::size_t dim() const noexcept { return n_; }
  // c_{ij}^k for any i, j (antisymmetric).
  Rational operator()(std::size_t i, std::size_t j, std::size_t k) const;
  bool is_abelian() const;

  friend bool operator==(const StructureConstants& a, const StructureConstants& b) = default;

private:
  std::size_t pair_index(std::size_t i, std::size_t j) const;
  void validate() const;

  std::size_t n_ = 0;
  std::vector<std::vector<Rational>> upper_;  // upper_[pair_index(i,j)][k], i < j
};

// [π, π]; π is Poisson iff zero.
Multivector jacobi_residual(const Multivector& pi);
bool is_poisson(const Multivector& pi);

// A_f = i_{df} π, so that on (R², ∂x∧∂y) the field of x is ∂y.
Multivector hamiltonian_field(const Multivector& pi, const RationalFunc& f);

// X_{π,V} = D_V(π).
Multivector modular_field(const VolumeForm& v, const Multivector& pi);
// Σ_i (Σ_j ∂π^{ij}/∂x^j) ∂_i, the modular field for unit density.
Multivector modular_field_coordinate(const Multivector& pi);

// π_m^i = Σ_j ∂(m π^{ij})/∂x^j for i = 1..n; requires unit density.
std::vector<RationalFunc> lm_system_residuals(const VolumeForm& v, const RationalFunc& m, const Multivector& pi);

// π^{ij} = Σ_k c_{ij}^k x_k on a chart of the algebra's dimension.
Multivector lie_poisson(const ChartPtr& chart, const StructureConstants& c);

// ρ with A_ρ = X_{π,V} among polynomials of degree <= max_degree, or nullopt
// when the ansatz holds no witness (which does not prove non-unimodularity).
std::optional<RationalFunc> unimodularity_check(const VolumeForm& v, const Multivector& pi, unsigned max_degree);

// 1/h, the last multiplier of h ∂x∧∂y.
RationalFunc two_dim_multiplier(const RationalFunc& h);

}  // namespace mvcurl
