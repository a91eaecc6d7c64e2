#include "tssos/graph.hpp"

#include <algorithm>
#include <bit>
#include <limits>

namespace tssos {

MonomialGraph::MonomialGraph(MonomialBasis basis)
    : basis_(std::move(basis)),
      n_(basis_.size()),
      words_((n_ + 63) / 64),
      rows_(n_ * words_, 0) {}

MonomialGraph::MonomialGraph(MonomialBasis basis, const std::vector<Edge>& edges)
    : MonomialGraph(std::move(basis)) {
  for (auto [i, j] : edges) add_edge(i, j);
}

bool MonomialGraph::add_edge(std::size_t i, std::size_t j) {
  if (i >= n_ || j >= n_) throw std::out_of_range("edge index outside the basis");
  if (i == j || has_edge(i, j)) return false;
  rows_[i * words_ + (j >> 6)] |= std::uint64_t{1} << (j & 63);
  rows_[j * words_ + (i >> 6)] |= std::uint64_t{1} << (i & 63);
  ++num_edges_;
  return true;
}

std::vector<std::size_t> MonomialGraph::neighbors(std::size_t i) const {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < words_; ++w) {
    std::uint64_t bits = rows_[i * words_ + w];
    while (bits) {
      int b = std::countr_zero(bits);
      out.push_back(w * 64 + static_cast<std::size_t>(b));
      bits &= bits - 1;
    }
  }
  return out;
}

std::size_t MonomialGraph::degree(std::size_t i) const {
  std::size_t d = 0;
  for (std::size_t w = 0; w < words_; ++w) d += std::popcount(rows_[i * words_ + w]);
  return d;
}

std::vector<Edge> MonomialGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j : neighbors(i))
      if (i < j) out.emplace_back(i, j);
  return out;
}

ExponentSet MonomialGraph::support() const {
  ExponentSet s;
  for (std::size_t i = 0; i < n_; ++i) {
    s.insert(basis_[i].doubled());
    for (std::size_t j : neighbors(i))
      if (i < j) s.insert(basis_[i] + basis_[j]);
  }
  return s;
}

bool MonomialGraph::is_subgraph_of(const MonomialGraph& o) const {
  if (n_ != o.n_) return false;
  for (std::size_t k = 0; k < rows_.size(); ++k)
    if ((rows_[k] & ~o.rows_[k]) != 0) return false;
  return true;
}

ExtensionMode parse_extension_mode(const std::string& s) {
  if (s == "chordal") return ExtensionMode::kChordal;
  if (s == "block") return ExtensionMode::kBlock;
  throw std::invalid_argument("unknown extension mode '" + s + "' (expected chordal|block)");
}

std::string to_string(ExtensionMode m) { return m == ExtensionMode::kChordal ? "chordal" : "block"; }

MonomialGraph tsp_graph(const ExponentSet& support_set, const MonomialBasis& basis) {
  if (basis.empty()) throw std::invalid_argument("tsp_graph needs a nonempty basis");
  MonomialGraph g(basis);
  ExponentSet doubled;
  for (const auto& b : basis) doubled.insert(b.doubled());
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      Exponent s = basis[i] + basis[j];
      if (support_set.contains(s) || doubled.contains(s)) g.add_edge(i, j);
    }
  return g;
}

MonomialGraph tsp_graph(const Polynomial& f, const MonomialBasis& basis) {
  ExponentSet a;
  for (const auto& e : support(f)) a.insert(e);
  return tsp_graph(a, basis);
}

MonomialGraph support_extension(const MonomialGraph& g) {
  const ExponentSet supp = g.support();
  const auto& basis = g.basis();
  MonomialGraph out(basis);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j)
      if (g.has_edge(i, j) || supp.contains(basis[i] + basis[j])) out.add_edge(i, j);
  return out;
}

std::vector<std::vector<std::size_t>> connected_components(const MonomialGraph& g) {
  const std::size_t n = g.num_nodes();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<std::size_t> members{s}, stack{s};
    comp[s] = static_cast<int>(out.size());
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t u : g.neighbors(v))
        if (comp[u] < 0) {
          comp[u] = comp[s];
          members.push_back(u);
          stack.push_back(u);
        }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

namespace {

MonomialGraph block_closure(const MonomialGraph& g) {
  MonomialGraph out = g;
  for (const auto& comp : connected_components(g))
    for (std::size_t a = 0; a < comp.size(); ++a)
      for (std::size_t b = a + 1; b < comp.size(); ++b) out.add_edge(comp[a], comp[b]);
  return out;
}

// Greedy elimination; fills are added to `out` which doubles as the working
// graph restricted to the nodes not yet eliminated.
MonomialGraph greedy_fill(const MonomialGraph& g, ChordalHeuristic heuristic) {
  MonomialGraph out = g;
  const std::size_t n = g.num_nodes();
  std::vector<bool> gone(n, false);
  std::vector<std::size_t> deg(n);
  for (std::size_t v = 0; v < n; ++v) deg[v] = g.degree(v);

  auto live_neighbors = [&](std::size_t v) {
    std::vector<std::size_t> nb;
    for (std::size_t u : out.neighbors(v))
      if (!gone[u]) nb.push_back(u);
    return nb;
  };
  auto fill_count = [&](std::size_t v) {
    auto nb = live_neighbors(v);
    std::size_t missing = 0;
    for (std::size_t a = 0; a < nb.size(); ++a)
      for (std::size_t b = a + 1; b < nb.size(); ++b)
        if (!out.has_edge(nb[a], nb[b])) ++missing;
    return missing;
  };

  for (std::size_t step = 0; step < n; ++step) {
    std::size_t pick = n;
    if (heuristic == ChordalHeuristic::kMinDegree) {
      for (std::size_t v = 0; v < n; ++v)
        if (!gone[v] && (pick == n || deg[v] < deg[pick])) pick = v;
    } else {
      std::size_t best = std::numeric_limits<std::size_t>::max();
      for (std::size_t v = 0; v < n; ++v) {
        if (gone[v]) continue;
        std::size_t f = fill_count(v);
        if (f < best || (f == best && deg[v] < deg[pick])) {
          best = f;
          pick = v;
        }
      }
    }
    auto nb = live_neighbors(pick);
    for (std::size_t a = 0; a < nb.size(); ++a)
      for (std::size_t b = a + 1; b < nb.size(); ++b)
        if (out.add_edge(nb[a], nb[b])) {
          ++deg[nb[a]];
          ++deg[nb[b]];
        }
    for (std::size_t u : nb) --deg[u];
    gone[pick] = true;
  }
  return out;
}

// Reverse maximum cardinality search order (a perfect elimination ordering
// whenever the graph is chordal).
std::vector<std::size_t> mcs_elimination_order(const MonomialGraph& g) {
  const std::size_t n = g.num_nodes();
  std::vector<std::size_t> weight(n, 0), visit;
  std::vector<bool> done(n, false);
  visit.reserve(n);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t pick = n;
    for (std::size_t v = 0; v < n; ++v)
      if (!done[v] && (pick == n || weight[v] > weight[pick])) pick = v;
    done[pick] = true;
    visit.push_back(pick);
    for (std::size_t u : g.neighbors(pick))
      if (!done[u]) ++weight[u];
  }
  std::reverse(visit.begin(), visit.end());
  return visit;
}

struct EliminationData {
  std::vector<std::size_t> order, pos;
  std::vector<std::vector<std::size_t>> later;  // neighbors after v in order
  std::vector<std::size_t> parent;              // earliest later neighbor, n if none
  bool perfect = true;
};

EliminationData analyze(const MonomialGraph& g) {
  const std::size_t n = g.num_nodes();
  EliminationData d;
  d.order = mcs_elimination_order(g);
  d.pos.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) d.pos[d.order[i]] = i;
  d.later.resize(n);
  d.parent.assign(n, n);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t u : g.neighbors(v))
      if (d.pos[u] > d.pos[v]) d.later[v].push_back(u);
    if (!d.later[v].empty())
      d.parent[v] = *std::min_element(d.later[v].begin(), d.later[v].end(),
                                       [&](std::size_t a, std::size_t b) { return d.pos[a] < d.pos[b]; });
  }
  for (std::size_t v = 0; v < n && d.perfect; ++v) {
    std::size_t p = d.parent[v];
    if (p == n) continue;
    for (std::size_t u : d.later[v])
      if (u != p && !g.has_edge(p, u)) {
        d.perfect = false;
        break;
      }
  }
  return d;
}

}  // namespace

MonomialGraph chordal_extension(const MonomialGraph& g, const GraphOptions& opts) {
  if (opts.mode == ExtensionMode::kBlock) return block_closure(g);
  return greedy_fill(g, opts.heuristic);
}

bool is_chordal(const MonomialGraph& g) { return analyze(g).perfect; }

std::size_t CliqueDecomposition::max_size() const {
  std::size_t m = 0;
  for (const auto& c : cliques) m = std::max(m, c.size());
  return m;
}

std::vector<std::size_t> CliqueDecomposition::sizes() const {
  std::vector<std::size_t> s;
  for (const auto& c : cliques) s.push_back(c.size());
  std::sort(s.rbegin(), s.rend());
  return s;
}

CliqueDecomposition maximal_cliques(const MonomialGraph& g) {
  const std::size_t n = g.num_nodes();
  EliminationData d = analyze(g);
  if (!d.perfect) throw GraphError("not chordal");
  // {v} U later(v) is maximal unless some u has parent v and exactly one more
  // later neighbor.
  std::vector<bool> dominated(n, false);
  for (std::size_t u = 0; u < n; ++u) {
    std::size_t p = d.parent[u];
    if (p != n && d.later[u].size() == d.later[p].size() + 1) dominated[p] = true;
  }
  CliqueDecomposition out;
  for (std::size_t v = 0; v < n; ++v) {
    if (dominated[v]) continue;
    std::vector<std::size_t> c = d.later[v];
    c.push_back(v);
    std::sort(c.begin(), c.end());
    out.cliques.push_back(std::move(c));
  }
  std::sort(out.cliques.begin(), out.cliques.end());
  return out;
}

UnconstrainedSequence iterate_unconstrained(const Polynomial& f, const MonomialBasis& basis,
                                            std::size_t max_order, const GraphOptions& opts) {
  if (max_order < 1) throw std::invalid_argument("sparse order must be at least 1");
  UnconstrainedSequence seq;
  seq.tsp = tsp_graph(f, basis);
  const MonomialGraph* prev = &seq.tsp;
  for (std::size_t k = 1; k <= max_order + 1; ++k) {
    MonomialGraph next = chordal_extension(support_extension(*prev), opts);
    if (k >= 2 && next.same_edges(seq.graphs.back())) {
      seq.stabilized = true;
      seq.stabilized_at = k - 1;
      break;
    }
    if (k == max_order + 1) break;
    seq.graphs.push_back(std::move(next));
    prev = &seq.graphs.back();
  }
  return seq;
}

ConstrainedSequence iterate_constrained(const PopProblem& pop, int d_hat, std::size_t max_order,
                                        const GraphOptions& opts, const MonomialBasis* basis0) {
  pop.validate();
  if (max_order < 1) throw std::invalid_argument("sparse order must be at least 1");
  if (d_hat < pop.min_relaxation_order())
    throw std::invalid_argument("relaxation order " + std::to_string(d_hat) +
                                " is below the minimal order " +
                                std::to_string(pop.min_relaxation_order()));
  const std::size_t n = pop.nvars();
  const std::size_t m = pop.constraints.size();

  ConstrainedSequence seq;
  seq.bases.push_back(basis0 ? *basis0 : standard_basis(n, d_hat));
  for (const auto& g : pop.constraints) seq.bases.push_back(standard_basis(n, d_hat - half_degree(g)));

  ExponentSet all_supp;
  for (const auto& e : support(pop.objective)) all_supp.insert(e);
  for (const auto& g : pop.constraints)
    for (const auto& e : support(g)) all_supp.insert(e);
  seq.tsp = tsp_graph(all_supp, seq.bases[0]);

  std::vector<std::vector<Exponent>> g_supp;
  for (const auto& g : pop.constraints) g_supp.push_back(support(g));

  const MonomialGraph* prev_moment = &seq.tsp;
  for (std::size_t k = 1; k <= max_order + 1; ++k) {
    std::vector<MonomialGraph> level;
    level.push_back(chordal_extension(support_extension(*prev_moment), opts));
    const ExponentSet prev_supp = prev_moment->support();
    for (std::size_t j = 1; j <= m; ++j) {
      const MonomialBasis& bj = seq.bases[j];
      MonomialGraph fj = seq.orders.empty() ? MonomialGraph(bj) : seq.orders.back()[j];
      for (std::size_t a = 0; a < bj.size(); ++a)
        for (std::size_t b = a + 1; b < bj.size(); ++b) {
          if (fj.has_edge(a, b)) continue;
          Exponent s = bj[a] + bj[b];
          for (const auto& ga : g_supp[j - 1])
            if (prev_supp.contains(s + ga)) {
              fj.add_edge(a, b);
              break;
            }
        }
      level.push_back(chordal_extension(fj, opts));
    }
    if (k >= 2) {
      bool same = true;
      for (std::size_t j = 0; j <= m && same; ++j) same = level[j].same_edges(seq.orders.back()[j]);
      if (same) {
        seq.stabilized = true;
        seq.stabilized_at = k - 1;
        break;
      }
    }
    if (k == max_order + 1) break;
    seq.orders.push_back(std::move(level));
    prev_moment = &seq.orders.back()[0];
  }
  return seq;
}

}  // namespace tssos
