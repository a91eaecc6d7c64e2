// Benchmark problem families.
#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "tssos/polynomial.hpp"

namespace tssos {

enum class Family {
  kRandpoly1,
  kRandpoly2,
  kBroydenBanded,
  kBroydenTridiagonal,
  kGenRosenbrock,
  kModGenRosenbrock,
  kModChainedSingular,
};

enum class ConstraintSet { kNone, kUnitBall, kUnitHypercube };

Family parse_family(const std::string& s);
std::string to_string(Family f);
ConstraintSet parse_constraint_set(const std::string& s);
std::string to_string(ConstraintSet c);

struct FamilyParams {
  std::size_t n = 0;
  int degree = 0;      // 2d for the random families
  std::size_t t = 0;   // randpoly1: number of squares
  double p = 0.0;      // randpoly1: monomial selection probability
  std::size_t s = 0;   // randpoly2: number of terms
  std::uint64_t seed = 0;
};

// Uniform doubles in [lo, hi) from a 64-bit engine, independent of the
// standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }
  // Uniform integer in [0, n).
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(eng_() % n); }

 private:
  std::mt19937_64 eng_;
};

// f = sum_{i<=t} f_i^2, where each monomial of N^n_d is kept with probability
// p, assigned to a random f_i and given a coefficient uniform in [-1, 1].
Polynomial randpoly1(std::size_t n, int degree, std::size_t t, double p, std::uint64_t seed);
// f = c_0 + sum c_i x_i^{2d} + sum_{j <= s-n-1} c'_j x^{alpha_j}, c in [0,1],
// c' in [-1,1], alpha_j distinct and uniform in N^n_{2d-1} minus 0.
Polynomial randpoly2(std::size_t n, int degree, std::size_t s, std::uint64_t seed);

Polynomial broyden_banded(std::size_t n);
Polynomial broyden_tridiagonal(std::size_t n);
Polynomial gen_rosenbrock(std::size_t n);
Polynomial mod_gen_rosenbrock(std::size_t n);
Polynomial mod_chained_singular(std::size_t n);

std::vector<Polynomial> constraint_polynomials(ConstraintSet c, std::size_t n);

PopProblem generate(Family family, const FamilyParams& params, ConstraintSet constraints = ConstraintSet::kNone);

}  // namespace tssos
