// Dense and clique-decomposed relaxations assembled as BlockSdp.
//
// SOS side: one Gram block per maximal clique of each G_j, one equality per
// monomial alpha realized by some block entry, lambda as the free variable of
// the alpha = 0 row. The bound is the primal (equality form) optimum.
//
// Moment side: the same cone data built entry by entry from the moment and
// localizing matrices, y_alpha being the LMI variables with y_0 = 1 fixed by
// the free-variable equation. The bound is the dual (LMI form) optimum.
#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "tssos/basis.hpp"
#include "tssos/block_sdp.hpp"
#include "tssos/graph.hpp"

namespace tssos {

class AssemblyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One Gram block: the basis monomials of a clique of G_j, weighted by g_j
// (g_0 = 1).
struct GramBlock {
  std::size_t j = 0;
  std::size_t clique = 0;
  std::vector<Exponent> monomials;
};

// Positions (block, row, col) with row <= col whose monomial sum plus a term
// of g_j equals alpha, together with that coefficient of g_j.
struct CoeffMatcher {
  Exponent alpha;
  std::vector<SymEntry> entries;
};

// Cliques of every graph, in (j, clique index) order.
std::vector<GramBlock> clique_blocks(const std::vector<MonomialGraph>& graphs);
std::vector<GramBlock> clique_blocks(const MonomialGraph& graph);

// Coefficient-matching data for the given blocks; weights[j] is g_j (the j = 0
// entry is ignored and treated as the constant 1).
std::vector<CoeffMatcher> coefficient_matchers(const std::vector<GramBlock>& blocks,
                                               const std::vector<Polynomial>& weights);

// Generic builder used by every relaxation: blocks + objective f.
BlockSdp assemble_blocks(const Polynomial& f, const std::vector<GramBlock>& blocks,
                         const std::vector<Polynomial>& weights, SdpSide side);

BlockSdp assemble_dense_unconstrained(const Polynomial& f, const MonomialBasis& basis,
                                      SdpSide side = SdpSide::kSos);
BlockSdp assemble_sparse_unconstrained(const Polynomial& f, const MonomialGraph& graph,
                                       SdpSide side = SdpSide::kSos);
BlockSdp assemble_dense_constrained(const PopProblem& pop, int d_hat, SdpSide side = SdpSide::kSos);
// graphs[j] is G^{(k)}_j for j = 0..m.
BlockSdp assemble_sparse_constrained(const PopProblem& pop, const std::vector<MonomialGraph>& graphs,
                                     SdpSide side = SdpSide::kSos);

// Gram-matrix expansion sum_C P_C^T Q_C P_C weighted by g_j, as a polynomial:
// sum over blocks of g_j * (v_C^T Q_C v_C). Used to certify SOS-side solutions.
Polynomial expand_gram(const std::vector<GramBlock>& blocks, const std::vector<Polynomial>& weights,
                       const std::vector<std::vector<double>>& block_values, std::size_t nvars);

}  // namespace tssos
