#include "tssos/basis.hpp"

#include <algorithm>
#include <functional>

#include "tssos/lp.hpp"

namespace tssos {

MonomialBasis::MonomialBasis(std::size_t nvars, std::vector<Exponent> monos)
    : nvars_(nvars), monos_(std::move(monos)) {
  for (const auto& m : monos_)
    if (m.size() != nvars_) throw std::invalid_argument("basis monomial has wrong length");
  std::sort(monos_.begin(), monos_.end(), GradedLess{});
  monos_.erase(std::unique(monos_.begin(), monos_.end()), monos_.end());
  index_.reserve(monos_.size());
  for (std::size_t i = 0; i < monos_.size(); ++i) index_.emplace(monos_[i], i);
}

std::optional<std::size_t> MonomialBasis::index_of(const Exponent& e) const {
  auto it = index_.find(e);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

ExponentSet MonomialBasis::pair_sums() const {
  ExponentSet s;
  s.reserve(monos_.size() * (monos_.size() + 1) / 2);
  for (std::size_t i = 0; i < monos_.size(); ++i)
    for (std::size_t j = i; j < monos_.size(); ++j) s.insert(monos_[i] + monos_[j]);
  return s;
}

std::size_t binomial(std::size_t n, std::size_t k, std::size_t max) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  // Exact for all values below the cap: r * (n - i) / (i + 1) stays integral.
  unsigned __int128 r = 1;
  for (std::size_t i = 0; i < k; ++i) {
    r = r * (n - i) / (i + 1);
    if (r > max) return max;
  }
  return static_cast<std::size_t>(r);
}

namespace {

void enumerate_degree_leq(std::size_t n, int d, const std::function<void(const Exponent&)>& visit) {
  Exponent e(n);
  std::function<void(std::size_t, int)> rec = [&](std::size_t var, int left) {
    if (var == n) {
      visit(e);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[var] = k;
      rec(var + 1, left - k);
    }
    e[var] = 0;
  };
  rec(0, d);
}

}  // namespace

MonomialBasis standard_basis(std::size_t n, int d, std::size_t cap) {
  if (n == 0) throw std::invalid_argument("standard_basis needs n >= 1");
  if (d < 0) throw std::invalid_argument("standard_basis needs d >= 0");
  std::size_t sz = binomial(n + static_cast<std::size_t>(d), static_cast<std::size_t>(d), cap + 1);
  if (sz > cap)
    throw BasisError("standard basis of size C(" + std::to_string(n + d) + "," + std::to_string(d) +
                     ") exceeds cap " + std::to_string(cap));
  std::vector<Exponent> monos;
  monos.reserve(sz);
  enumerate_degree_leq(n, d, [&](const Exponent& e) { monos.push_back(e); });
  return MonomialBasis(n, std::move(monos));
}

MonomialBasis newton_half_basis(const Polynomial& f, double lp_tol) {
  if (f.is_zero()) throw BasisError("newton_half_basis of the zero polynomial");
  const int deg = f.degree();
  if (deg % 2 != 0) throw BasisError("objective cannot be SOS: odd degree " + std::to_string(deg));
  const std::size_t n = f.nvars();
  auto supp = support(f);
  if (supp.size() == 1 && !supp[0].is_even()) throw BasisError("objective cannot be SOS: single odd monomial");
  // The polytope of f - lambda: the constant term is always present.
  if (!supp.front().is_zero()) supp.insert(supp.begin(), Exponent(n));

  std::vector<int> lo(n, INT32_MAX), hi(n, 0);
  int min_deg = INT32_MAX;
  std::vector<std::vector<double>> points;
  points.reserve(supp.size());
  for (const auto& a : supp) {
    std::vector<double> p(n);
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = std::min(lo[i], a[i]);
      hi[i] = std::max(hi[i], a[i]);
      p[i] = a[i];
    }
    min_deg = std::min(min_deg, a.degree());
    points.push_back(std::move(p));
  }

  std::vector<Exponent> monos;
  std::vector<double> target(n);
  enumerate_degree_leq(n, deg / 2, [&](const Exponent& b) {
    if (2 * b.degree() < min_deg) return;
    for (std::size_t i = 0; i < n; ++i)
      if (2 * b[i] < lo[i] || 2 * b[i] > hi[i]) return;
    for (std::size_t i = 0; i < n; ++i) target[i] = 2.0 * b[i];
    if (in_convex_hull(points, target, lp_tol)) monos.push_back(b);
  });
  return MonomialBasis(n, std::move(monos));
}

std::vector<MonomialBasis> generate_basis(const ExponentSet& support_set, const MonomialBasis& basis,
                                          std::optional<std::size_t> max_steps) {
  if (basis.empty()) throw std::invalid_argument("generate_basis needs a nonempty basis");
  const std::size_t r = basis.size();
  std::vector<MonomialBasis> chain;
  std::vector<bool> prev(r, false);
  ExponentSet doubled_prev;
  while (!max_steps || chain.size() < *max_steps) {
    std::vector<bool> cur(r, false);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = i; j < r; ++j) {
        if (cur[i] && cur[j]) continue;
        Exponent s = basis[i] + basis[j];
        if (support_set.contains(s) || doubled_prev.contains(s)) {
          cur[i] = true;
          cur[j] = true;
        }
      }
    }
    if (!chain.empty() && cur == prev) break;
    std::vector<Exponent> monos;
    for (std::size_t i = 0; i < r; ++i)
      if (cur[i]) monos.push_back(basis[i]);
    chain.emplace_back(basis.nvars(), monos);
    doubled_prev.clear();
    for (const auto& m : monos) doubled_prev.insert(m.doubled());
    prev = std::move(cur);
  }
  return chain;
}

void check_representable(const std::vector<Exponent>& support_set, const MonomialBasis& basis) {
  const ExponentSet sums = basis.pair_sums();
  for (const auto& a : support_set) {
    if (!sums.contains(a)) {
      std::string txt;
      for (std::size_t i = 0; i < a.size(); ++i) txt += (i ? "," : "") + std::to_string(a[i]);
      throw BasisError("unrepresentable support: exponent (" + txt +
                       ") is not a sum of two basis monomials");
    }
  }
}

}  // namespace tssos
