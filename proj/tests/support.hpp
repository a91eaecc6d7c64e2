// Shared test fixtures and brute-force oracles.
#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include <Eigen/Dense>

#include "tssos/basis.hpp"
#include "tssos/graph.hpp"
#include "tssos/pop_file.hpp"

namespace testsupport {

using namespace tssos;

inline Polynomial example33() {
  return parse_polynomial(
      "x1^2 - 2*x1*x2 + 3*x2^2 - 2*x1^2*x2 + 2*x1^2*x2^2 - 2*x2*x3 + 6*x3^2 + 18*x2^2*x3 - 54*x2*x3^2 + "
      "142*x2^2*x3^2",
      3);
}

// sum_i (x_i^2 + x_i^4) + sum_{i,k} (x_i - x_k)^4
inline Polynomial cost_example(std::size_t n) {
  Polynomial f(n);
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial xi = Polynomial::variable(n, i);
    f += xi.pow(2) + xi.pow(4);
    for (std::size_t k = 0; k < n; ++k) f += (xi - Polynomial::variable(n, k)).pow(4);
  }
  return f;
}

struct Gen {
  std::mt19937_64 eng;
  explicit Gen(std::uint64_t seed) : eng(seed) {}
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng); }
  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(eng); }
  bool coin(double p) { return real(0.0, 1.0) < p; }
};

// x^T Q x + c^T x + c0 with Q positive definite and a sparse off-diagonal
// pattern; the minimum is c0 - c^T Q^{-1} c / 4.
struct Quadratic {
  Polynomial f;
  double minimum = 0.0;
};

inline Quadratic random_quadratic(std::size_t n, Gen& g) {
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (g.coin(0.3)) q(i, j) = q(j, i) = g.real(-1.0, 1.0);
  for (std::size_t i = 0; i < n; ++i) q(i, i) = q.row(i).cwiseAbs().sum() + g.real(0.2, 1.5);
  Eigen::VectorXd c(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) c[i] = g.real(-2.0, 2.0);
  const double c0 = g.real(-1.0, 1.0);
  Polynomial f = Polynomial::constant(n, c0);
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial xi = Polynomial::variable(n, i);
    f += c[i] * xi;
    for (std::size_t j = 0; j < n; ++j) f += q(i, j) * xi * Polynomial::variable(n, j);
  }
  return {f, c0 - 0.25 * c.dot(q.ldlt().solve(c))};
}

inline MonomialGraph random_graph(const MonomialBasis& basis, double p, Gen& g) {
  MonomialGraph out(basis);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j)
      if (g.coin(p)) out.add_edge(i, j);
  return out;
}

// Random chordal graph: each new node attaches to a random clique of the
// current graph (a random subtree of cliques keeps the result chordal).
inline MonomialGraph random_chordal_graph(std::size_t n, Gen& g) {
  std::vector<Exponent> monos;
  for (int k = 0; k < static_cast<int>(n); ++k) monos.push_back(Exponent{k});
  MonomialGraph out(MonomialBasis(1, monos));
  for (std::size_t v = 1; v < n; ++v) {
    std::vector<std::size_t> clique{g.below(v)};
    for (std::size_t u = 0; u < v; ++u) {
      if (u == clique[0] || !g.coin(0.6)) continue;
      bool ok = std::all_of(clique.begin(), clique.end(), [&](std::size_t w) { return out.has_edge(u, w); });
      if (ok) clique.push_back(u);
    }
    if (g.coin(0.15)) clique.clear();
    for (std::size_t u : clique) out.add_edge(u, v);
  }
  return out;
}

// Bron-Kerbosch with pivoting; cliques sorted ascending, list sorted.
inline std::vector<std::vector<std::size_t>> bron_kerbosch(const MonomialGraph& g) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> r;
  auto rec = [&](auto&& self, std::vector<std::size_t> p, std::vector<std::size_t> x) -> void {
    if (p.empty() && x.empty()) {
      auto c = r;
      std::sort(c.begin(), c.end());
      out.push_back(c);
      return;
    }
    std::size_t pivot = p.empty() ? x[0] : p[0];
    std::vector<std::size_t> cand;
    for (std::size_t v : p)
      if (v == pivot || !g.has_edge(v, pivot)) cand.push_back(v);
    for (std::size_t v : cand) {
      std::vector<std::size_t> np, nx;
      for (std::size_t w : p)
        if (w != v && g.has_edge(v, w)) np.push_back(w);
      for (std::size_t w : x)
        if (w != v && g.has_edge(v, w)) nx.push_back(w);
      r.push_back(v);
      self(self, np, nx);
      r.pop_back();
      p.erase(std::find(p.begin(), p.end(), v));
      x.push_back(v);
    }
  };
  std::vector<std::size_t> all(g.num_nodes());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  rec(rec, all, {});
  std::sort(out.begin(), out.end());
  return out;
}

// Chordal iff nodes can be removed one simplicial vertex at a time.
inline bool chordal_by_simplicial_elimination(const MonomialGraph& g) {
  std::vector<char> gone(g.num_nodes(), 0);
  for (std::size_t round = 0; round < g.num_nodes(); ++round) {
    bool removed = false;
    for (std::size_t v = 0; v < g.num_nodes() && !removed; ++v) {
      if (gone[v]) continue;
      std::vector<std::size_t> nb;
      for (std::size_t u = 0; u < g.num_nodes(); ++u)
        if (!gone[u] && u != v && g.has_edge(u, v)) nb.push_back(u);
      bool simplicial = true;
      for (std::size_t a = 0; a < nb.size() && simplicial; ++a)
        for (std::size_t b = a + 1; b < nb.size() && simplicial; ++b) simplicial = g.has_edge(nb[a], nb[b]);
      if (simplicial) {
        gone[v] = 1;
        removed = true;
      }
    }
    if (!removed) return false;
  }
  return true;
}

inline bool in_set(const ExponentSet& s, const Exponent& e) { return s.find(e) != s.end(); }

// B_p = {b in B : exists c in B, b + c in A or in 2 B_{p-1}}, straight from
// the definition with plain loops.
inline std::vector<std::vector<Exponent>> naive_generate_basis(const ExponentSet& a, const std::vector<Exponent>& b) {
  std::vector<std::vector<Exponent>> chain;
  std::vector<Exponent> prev;
  while (true) {
    std::vector<Exponent> cur;
    for (const auto& beta : b) {
      bool keep = false;
      for (const auto& gamma : b) {
        Exponent s = beta + gamma;
        if (in_set(a, s)) keep = true;
        for (const auto& p : prev)
          if (p.doubled() == s) keep = true;
        if (keep) break;
      }
      if (keep) cur.push_back(beta);
    }
    if (!chain.empty() && cur == chain.back()) break;
    chain.push_back(cur);
    prev = cur;
    if (chain.size() > b.size() + 2) break;
  }
  return chain;
}

// Edge {i, j} iff B[i] + B[j] is in the support of g (pairs of adjacent
// nodes, including i = j).
inline MonomialGraph naive_support_extension(const MonomialGraph& g) {
  const auto& b = g.basis();
  std::vector<Exponent> supp;
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = i; j < b.size(); ++j)
      if (g.has_edge(i, j)) supp.push_back(b[i] + b[j]);
  MonomialGraph out(b);
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = i + 1; j < b.size(); ++j)
      if (std::find(supp.begin(), supp.end(), b[i] + b[j]) != supp.end()) out.add_edge(i, j);
  return out;
}

// Convex-hull membership by Caratheodory: target lies in the hull iff it lies
// in the hull of some affinely independent subset of at most dim+1 points.
inline bool in_hull_caratheodory(const std::vector<std::vector<double>>& pts, const std::vector<double>& t) {
  const std::size_t dim = t.size(), np = pts.size();
  std::vector<std::size_t> pick;
  auto try_subset = [&]() {
    const auto k = static_cast<Eigen::Index>(pick.size());
    Eigen::MatrixXd m(static_cast<Eigen::Index>(dim) + 1, k);
    Eigen::VectorXd rhs(static_cast<Eigen::Index>(dim) + 1);
    for (Eigen::Index c = 0; c < k; ++c) {
      for (std::size_t r = 0; r < dim; ++r) m(static_cast<Eigen::Index>(r), c) = pts[pick[c]][r];
      m(static_cast<Eigen::Index>(dim), c) = 1.0;
    }
    for (std::size_t r = 0; r < dim; ++r) rhs[static_cast<Eigen::Index>(r)] = t[r];
    rhs[static_cast<Eigen::Index>(dim)] = 1.0;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
    if (qr.rank() < k) return false;
    Eigen::VectorXd lam = qr.solve(rhs);
    if ((m * lam - rhs).norm() > 1e-9) return false;
    return lam.minCoeff() >= -1e-9;
  };
  auto rec = [&](auto&& self, std::size_t start) -> bool {
    if (!pick.empty() && try_subset()) return true;
    if (pick.size() == dim + 1) return false;
    for (std::size_t i = start; i < np; ++i) {
      pick.push_back(i);
      if (self(self, i + 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  return rec(rec, 0);
}

inline std::vector<Exponent> all_exponents(std::size_t n, int d) { return standard_basis(n, d).monomials(); }

}  // namespace testsupport
