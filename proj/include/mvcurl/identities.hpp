#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mvcurl/poisson.hpp"

namespace mvcurl {

inline constexpr std::uint64_t kDefaultSeed = 20260101;

// Seeded generator of random test objects: integer coefficients in
// [-bound, bound], polynomial degree <= max_degree.
class RandomObjects {
public:
  explicit RandomObjects(std::uint64_t seed, int bound = 3, unsigned max_degree = 2)
      : engine_(seed), bound_(bound), max_degree_(max_degree) {}

  std::mt19937_64& engine() noexcept { return engine_; }
  int integer(int lo, int hi);
  bool coin() { return integer(0, 1) == 1; }

  // Up to four random terms; may be zero.
  Polynomial polynomial(std::size_t n);
  Polynomial nonzero_polynomial(std::size_t n);
  Multivector multivector(const ChartPtr& chart, int grade);
  DifferentialForm form(const ChartPtr& chart, int degree);
  VolumeForm volume(const ChartPtr& chart);
  // Random structure constants that satisfy Jacobi: a random algebra from a
  // small family of known ones, rescaled and with randomly signed generators.
  StructureConstants lie_algebra(std::size_t n);

private:
  std::mt19937_64 engine_;
  int bound_;
  unsigned max_degree_;
};

struct IdentityOutcome {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;
  double seconds = 0;
};

struct IdentitySuiteReport {
  std::uint64_t seed = 0;
  std::vector<IdentityOutcome> outcomes;
  double seconds = 0;

  bool all_passed() const;
};

// Exact identity checks on random inputs with n in {2,3,4} and grades <= 3:
// scaled-volume curl, Schouten vs curl-wedge under two densities, the
// derivation law, curl∘curl, d∘d, interior-product duality and three-route
// multiplier agreement. Identities run concurrently, each from its own
// stream derived from the seed.
IdentitySuiteReport run_identity_suite(std::uint64_t seed = kDefaultSeed, std::size_t cases = 200);

}  // namespace mvcurl
