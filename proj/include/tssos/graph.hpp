// Term-sparsity graphs over monomial bases.
//
// Nodes are basis monomials; every node carries an implicit self-loop, so
// the stored edge set only holds pairs i != j while supp(G) always contains
// the doubled basis 2B.
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tssos/basis.hpp"
#include "tssos/polynomial.hpp"

namespace tssos {

using Edge = std::pair<std::size_t, std::size_t>;  // first < second

class MonomialGraph {
 public:
  MonomialGraph() = default;
  explicit MonomialGraph(MonomialBasis basis);
  MonomialGraph(MonomialBasis basis, const std::vector<Edge>& edges);

  const MonomialBasis& basis() const { return basis_; }
  std::size_t num_nodes() const { return n_; }
  std::size_t num_edges() const { return num_edges_; }

  // True for i == j (implicit self-loop).
  bool has_edge(std::size_t i, std::size_t j) const {
    return i == j || ((rows_[i * words_ + (j >> 6)] >> (j & 63)) & 1u);
  }
  // Returns true when the edge was new. Self-loops are ignored.
  bool add_edge(std::size_t i, std::size_t j);

  std::vector<std::size_t> neighbors(std::size_t i) const;
  std::size_t degree(std::size_t i) const;
  // Sorted list of (i, j) with i < j.
  std::vector<Edge> edges() const;

  // {beta + gamma : {beta, gamma} in E} plus 2*beta for every node.
  ExponentSet support() const;

  bool same_edges(const MonomialGraph& o) const { return n_ == o.n_ && rows_ == o.rows_; }
  // Edge-set inclusion over the same basis.
  bool is_subgraph_of(const MonomialGraph& o) const;

 private:
  MonomialBasis basis_;
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::size_t num_edges_ = 0;
  std::vector<std::uint64_t> rows_;
};

enum class ExtensionMode { kChordal, kBlock };
enum class ChordalHeuristic { kMinDegree, kMinFill };

struct GraphOptions {
  ExtensionMode mode = ExtensionMode::kChordal;
  ChordalHeuristic heuristic = ChordalHeuristic::kMinDegree;
};

ExtensionMode parse_extension_mode(const std::string& s);
std::string to_string(ExtensionMode m);

// Edge {i, j} iff B[i] + B[j] lies in support_set or in 2B.
MonomialGraph tsp_graph(const ExponentSet& support_set, const MonomialBasis& basis);
MonomialGraph tsp_graph(const Polynomial& f, const MonomialBasis& basis);

// Edge {i, j} iff B[i] + B[j] lies in supp(G).
MonomialGraph support_extension(const MonomialGraph& g);

// kChordal: fill edges from a greedy elimination ordering (minimum degree by
// default, ties broken by lowest node index). kBlock: each connected
// component is completed to a clique. The result always contains g.
MonomialGraph chordal_extension(const MonomialGraph& g, const GraphOptions& opts = {});

std::vector<std::vector<std::size_t>> connected_components(const MonomialGraph& g);

// Maximum cardinality search ordering, reversed, and checked as a perfect
// elimination ordering.
bool is_chordal(const MonomialGraph& g);

struct CliqueDecomposition {
  // Each clique sorted ascending; cliques sorted lexicographically.
  std::vector<std::vector<std::size_t>> cliques;

  std::size_t max_size() const;
  std::vector<std::size_t> sizes() const;  // descending
};

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exact maximal cliques of a chordal graph; throws GraphError("not chordal").
CliqueDecomposition maximal_cliques(const MonomialGraph& g);

// Graphs G_1..G_k of the unconstrained sequence G_k = ext(SE(G_{k-1})).
struct UnconstrainedSequence {
  MonomialGraph tsp;                   // G_0
  std::vector<MonomialGraph> graphs;   // graphs[i] is G_{i+1}
  bool stabilized = false;
  std::size_t stabilized_at = 0;       // smallest k with G_{k+1} = G_k, 0 if unknown

  const MonomialGraph& at(std::size_t k) const { return graphs.at(k - 1); }
  const MonomialGraph& last() const { return graphs.back(); }
};

// Computes up to max_order graphs, stopping early at stabilization; one
// look-ahead step is taken so that stabilization at the last order is seen.
UnconstrainedSequence iterate_unconstrained(const Polynomial& f, const MonomialBasis& basis,
                                            std::size_t max_order, const GraphOptions& opts = {});

// Per sparse order k, the graphs G^{(k)}_{j} for j = 0..m (j = 0 is the
// moment graph, j >= 1 the localizing graphs).
struct ConstrainedSequence {
  std::vector<MonomialBasis> bases;                  // B_{j}, j = 0..m
  MonomialGraph tsp;                                 // G^{(0)}_{0}
  std::vector<std::vector<MonomialGraph>> orders;    // orders[k-1][j]
  bool stabilized = false;
  std::size_t stabilized_at = 0;

  const std::vector<MonomialGraph>& at(std::size_t k) const { return orders.at(k - 1); }
  const std::vector<MonomialGraph>& last() const { return orders.back(); }
};

// Localizing bases default to N^n_{d_hat - d_j}; basis0 overrides B_{0}.
ConstrainedSequence iterate_constrained(const PopProblem& pop, int d_hat, std::size_t max_order,
                                        const GraphOptions& opts = {},
                                        const MonomialBasis* basis0 = nullptr);

// Fixed point of: cliques of G^{(k)}_j -> F = supp(f) U (supp(g_j) + C + C)
// -> GenerateBasis(F, B_0) -> recompute graphs, until B_0 stops changing.
MonomialBasis reduce_basis_constrained(const PopProblem& pop, int d_hat, std::size_t k,
                                       const GraphOptions& opts = {});

}  // namespace tssos
