// Monomial bases: standard bases, Newton half-polytope bases and the
// GenerateBasis chain that shrinks a basis to monomials actually reachable
// from a support set.
#pragma once

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "tssos/polynomial.hpp"

namespace tssos {

using ExponentSet = std::unordered_set<Exponent, ExponentHash>;

// Ordered, duplicate-free list of exponents (graded order).
class MonomialBasis {
 public:
  explicit MonomialBasis(std::size_t nvars = 1) : nvars_(nvars) {}
  // Sorts and deduplicates.
  MonomialBasis(std::size_t nvars, std::vector<Exponent> monos);

  std::size_t nvars() const { return nvars_; }
  std::size_t size() const { return monos_.size(); }
  bool empty() const { return monos_.empty(); }
  const Exponent& operator[](std::size_t i) const { return monos_[i]; }
  const std::vector<Exponent>& monomials() const { return monos_; }
  auto begin() const { return monos_.begin(); }
  auto end() const { return monos_.end(); }

  bool contains(const Exponent& e) const { return index_.contains(e); }
  std::optional<std::size_t> index_of(const Exponent& e) const;

  // Every pairwise sum (including squares).
  ExponentSet pair_sums() const;

  friend bool operator==(const MonomialBasis& a, const MonomialBasis& b) {
    return a.nvars_ == b.nvars_ && a.monos_ == b.monos_;
  }

 private:
  std::size_t nvars_;
  std::vector<Exponent> monos_;
  std::unordered_map<Exponent, std::size_t, ExponentHash> index_;
};

class BasisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Binomial coefficient C(n, k) saturating at max.
std::size_t binomial(std::size_t n, std::size_t k, std::size_t max = SIZE_MAX);

inline constexpr std::size_t kDefaultBasisCap = 10'000'000;

// All exponents of total degree <= d.
MonomialBasis standard_basis(std::size_t n, int d, std::size_t cap = kDefaultBasisCap);

// Lattice points beta of N^n_d with 2*beta in conv(supp f U {0}), deg f = 2d
// (the Newton polytope of f - lambda). A single-term f yields {alpha / 2}.
MonomialBasis newton_half_basis(const Polynomial& f, double lp_tol = 1e-9);

// GenerateBasis: B_p = {beta in B : exists gamma in B, beta + gamma in A or in 2*B_{p-1}},
// B_0 = {}. Returns B_1, B_2, ... up to stabilization (the repeated final
// element is not duplicated) or max_steps elements.
std::vector<MonomialBasis> generate_basis(const ExponentSet& support_set, const MonomialBasis& basis,
                                          std::optional<std::size_t> max_steps = std::nullopt);

// Throws BasisError("unrepresentable support ...") unless every element of
// support_set is a sum of two basis monomials.
void check_representable(const std::vector<Exponent>& support_set, const MonomialBasis& basis);

}  // namespace tssos
