#pragma once

#include <vector>

#include "mvcurl/poisson.hpp"

namespace mvcurl {

// Finite section of the exact Lichnerowicz complex at cochain degree k, with
// cochain coefficients of polynomial degree <= domain_degree_bound.
struct TruncatedComplexReport {
  int k = 0;
  unsigned domain_degree_bound = 0;
  std::size_t dim_exact_k = 0;
  std::size_t dim_kernel = 0;
  std::size_t dim_image_from_km1 = 0;
  std::size_t truncated_h_dim = 0;
  // Always set: cochains beyond the degree bound are not seen, so these are
  // dimensions of a truncation rather than of the cohomology group itself.
  bool truncated = true;
};

// δ_π(A) = [π, A]; NotPoisson when [π, π] != 0.
Multivector lichnerowicz_delta(const Multivector& pi, const Multivector& a);

// Basis of {A : grade k, polynomial coefficients of degree <= d, D_V A = 0}.
// For k = 0 this is the whole truncated function space.
std::vector<Multivector> exact_basis(const VolumeForm& v, int k, unsigned d);

// Kernel of δ_π on grade-k polynomial multivectors of degree <= d, either on
// the exact subspace (exact_only) or on the full space.
std::vector<Multivector> lichnerowicz_kernel(const VolumeForm& v, const Multivector& pi, int k, unsigned d,
                                             bool exact_only);

// Requires π Poisson and D_V π = 0 (MathError otherwise). The kernel is taken
// on exact cochains of degree <= d; the image is that of exact (k−1)-cochains
// of degree <= d + 1, intersected with the degree-<= d section.
TruncatedComplexReport truncated_exact_cohomology(const VolumeForm& v, const Multivector& pi, int k, unsigned d);

}  // namespace mvcurl
