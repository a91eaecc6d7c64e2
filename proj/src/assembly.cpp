#include "tssos/assembly.hpp"

#include <algorithm>
#include <sstream>

namespace tssos {

namespace {

std::string exponent_text(const Exponent& e) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i];
  os << ")";
  return os.str();
}

const Polynomial& weight_of(const std::vector<Polynomial>& weights, std::size_t j, const Polynomial& one) {
  if (j == 0) return one;
  if (j >= weights.size()) throw AssemblyError("no constraint polynomial for block group " + std::to_string(j));
  return weights[j];
}

void check_constant(const std::vector<GramBlock>& blocks) {
  for (const auto& b : blocks)
    if (b.j == 0)
      for (const auto& m : b.monomials)
        if (m.is_zero()) return;
  throw AssemblyError("constant monomial missing from the moment basis");
}

void check_objective_rows(const Polynomial& f, const std::vector<Exponent>& rows) {
  std::vector<Exponent> missing;
  for (const auto& [e, c] : f.terms())
    if (!std::binary_search(rows.begin(), rows.end(), e, GradedLess{})) missing.push_back(e);
  if (!missing.empty())
    throw AssemblyError("unrepresentable support: objective term " + exponent_text(missing.front()) +
                        " is not realized by any block entry");
}

void finish(BlockSdp& sdp, const Polynomial& f, const std::vector<GramBlock>& blocks) {
  for (const auto& b : blocks) {
    sdp.block_sizes.push_back(b.monomials.size());
    sdp.labels.push_back({b.j, b.clique});
  }
  sdp.rhs.reserve(sdp.row_monomials.size());
  for (const auto& a : sdp.row_monomials) sdp.rhs.push_back(f.coefficient(a));
  auto zero = std::lower_bound(sdp.row_monomials.begin(), sdp.row_monomials.end(), Exponent(f.nvars()),
                               GradedLess{});
  if (zero == sdp.row_monomials.end() || !zero->is_zero())
    throw AssemblyError("constant monomial missing from the moment basis");
  sdp.free_columns.push_back({{static_cast<std::size_t>(zero - sdp.row_monomials.begin()), 1.0}});
  sdp.free_objective.push_back(1.0);
  sdp.validate();
}

// Moment side: scatter the entries of every moment / localizing matrix block
// into the LMI coefficient matrices of the y variables they mention.
BlockSdp assemble_moment(const Polynomial& f, const std::vector<GramBlock>& blocks,
                         const std::vector<Polynomial>& weights) {
  const Polynomial one = Polynomial::constant(f.nvars(), 1.0);
  std::map<Exponent, std::size_t, GradedLess> row_of;
  for (const auto& b : blocks) {
    const Polynomial& g = weight_of(weights, b.j, one);
    for (std::size_t p = 0; p < b.monomials.size(); ++p)
      for (std::size_t q = p; q < b.monomials.size(); ++q)
        for (const auto& [a, c] : g.terms()) row_of.emplace(a + b.monomials[p] + b.monomials[q], 0);
  }
  BlockSdp sdp;
  sdp.side = SdpSide::kMoment;
  for (auto& [alpha, idx] : row_of) {
    idx = sdp.row_monomials.size();
    sdp.row_monomials.push_back(alpha);
  }
  check_objective_rows(f, sdp.row_monomials);
  sdp.constraints.resize(row_of.size());
  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    const auto& b = blocks[bi];
    const Polynomial& g = weight_of(weights, b.j, one);
    for (std::size_t p = 0; p < b.monomials.size(); ++p)
      for (std::size_t q = p; q < b.monomials.size(); ++q) {
        const Exponent pq = b.monomials[p] + b.monomials[q];
        for (const auto& [a, c] : g.terms()) sdp.constraints[row_of.at(a + pq)].push_back({bi, p, q, c});
      }
  }
  finish(sdp, f, blocks);
  return sdp;
}

}  // namespace

std::vector<GramBlock> clique_blocks(const std::vector<MonomialGraph>& graphs) {
  std::vector<GramBlock> out;
  for (std::size_t j = 0; j < graphs.size(); ++j) {
    const auto& basis = graphs[j].basis();
    auto dec = maximal_cliques(graphs[j]);
    for (std::size_t c = 0; c < dec.cliques.size(); ++c) {
      GramBlock b;
      b.j = j;
      b.clique = c;
      for (std::size_t v : dec.cliques[c]) b.monomials.push_back(basis[v]);
      out.push_back(std::move(b));
    }
  }
  return out;
}

std::vector<GramBlock> clique_blocks(const MonomialGraph& graph) {
  return clique_blocks(std::vector<MonomialGraph>{graph});
}

std::vector<CoeffMatcher> coefficient_matchers(const std::vector<GramBlock>& blocks,
                                               const std::vector<Polynomial>& weights) {
  if (blocks.empty()) return {};
  const std::size_t n = blocks.front().monomials.empty() ? 1 : blocks.front().monomials.front().size();
  const Polynomial one = Polynomial::constant(n, 1.0);

  // Every distinct alpha first, then the realizing positions of each.
  ExponentSet alphas;
  for (const auto& b : blocks) {
    const Polynomial& g = weight_of(weights, b.j, one);
    ExponentSet pair_sums;
    for (std::size_t p = 0; p < b.monomials.size(); ++p)
      for (std::size_t q = p; q < b.monomials.size(); ++q) pair_sums.insert(b.monomials[p] + b.monomials[q]);
    for (const auto& s : pair_sums)
      for (const auto& [a, c] : g.terms()) alphas.insert(s + a);
  }
  std::vector<CoeffMatcher> out;
  out.reserve(alphas.size());
  for (const auto& a : alphas) out.push_back({a, {}});
  std::sort(out.begin(), out.end(),
            [](const CoeffMatcher& x, const CoeffMatcher& y) { return GradedLess{}(x.alpha, y.alpha); });
  std::unordered_map<Exponent, std::size_t, ExponentHash> index;
  for (std::size_t i = 0; i < out.size(); ++i) index.emplace(out[i].alpha, i);

  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    const auto& b = blocks[bi];
    const Polynomial& g = weight_of(weights, b.j, one);
    for (const auto& [a, c] : g.terms())
      for (std::size_t p = 0; p < b.monomials.size(); ++p)
        for (std::size_t q = p; q < b.monomials.size(); ++q)
          out[index.at(b.monomials[p] + b.monomials[q] + a)].entries.push_back({bi, p, q, c});
  }
  for (auto& m : out)
    std::sort(m.entries.begin(), m.entries.end(), [](const SymEntry& x, const SymEntry& y) {
      return std::tie(x.block, x.row, x.col) < std::tie(y.block, y.row, y.col);
    });
  return out;
}

BlockSdp assemble_blocks(const Polynomial& f, const std::vector<GramBlock>& blocks,
                         const std::vector<Polynomial>& weights, SdpSide side) {
  check_constant(blocks);
  if (side == SdpSide::kMoment) return assemble_moment(f, blocks, weights);

  BlockSdp sdp;
  sdp.side = SdpSide::kSos;
  for (auto& m : coefficient_matchers(blocks, weights)) {
    sdp.row_monomials.push_back(m.alpha);
    sdp.constraints.push_back(std::move(m.entries));
  }
  check_objective_rows(f, sdp.row_monomials);
  finish(sdp, f, blocks);
  return sdp;
}

BlockSdp assemble_dense_unconstrained(const Polynomial& f, const MonomialBasis& basis, SdpSide side) {
  return assemble_blocks(f, {GramBlock{0, 0, basis.monomials()}}, {}, side);
}

BlockSdp assemble_sparse_unconstrained(const Polynomial& f, const MonomialGraph& graph, SdpSide side) {
  if (!is_chordal(graph)) throw AssemblyError("sparsity graph is not chordal");
  return assemble_blocks(f, clique_blocks(graph), {}, side);
}

namespace {

std::vector<Polynomial> weights_of(const PopProblem& pop) {
  std::vector<Polynomial> w{Polynomial::constant(pop.nvars(), 1.0)};
  for (const auto& g : pop.constraints) w.push_back(g);
  return w;
}

}  // namespace

BlockSdp assemble_dense_constrained(const PopProblem& pop, int d_hat, SdpSide side) {
  pop.validate();
  if (d_hat < pop.min_relaxation_order())
    throw AssemblyError("relaxation order " + std::to_string(d_hat) + " is below the minimal order " +
                        std::to_string(pop.min_relaxation_order()));
  std::vector<GramBlock> blocks;
  blocks.push_back({0, 0, standard_basis(pop.nvars(), d_hat).monomials()});
  for (std::size_t j = 0; j < pop.constraints.size(); ++j)
    blocks.push_back(
        {j + 1, 0, standard_basis(pop.nvars(), d_hat - half_degree(pop.constraints[j])).monomials()});
  return assemble_blocks(pop.objective, blocks, weights_of(pop), side);
}

BlockSdp assemble_sparse_constrained(const PopProblem& pop, const std::vector<MonomialGraph>& graphs,
                                     SdpSide side) {
  pop.validate();
  if (graphs.size() != pop.constraints.size() + 1)
    throw AssemblyError("expected one graph per constraint plus the moment graph");
  for (const auto& g : graphs)
    if (!is_chordal(g)) throw AssemblyError("sparsity graph is not chordal");
  return assemble_blocks(pop.objective, clique_blocks(graphs), weights_of(pop), side);
}

Polynomial expand_gram(const std::vector<GramBlock>& blocks, const std::vector<Polynomial>& weights,
                       const std::vector<std::vector<double>>& block_values, std::size_t nvars) {
  if (block_values.size() != blocks.size()) throw AssemblyError("block value count mismatch");
  const Polynomial one = Polynomial::constant(nvars, 1.0);
  Polynomial out(nvars);
  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    const auto& mons = blocks[bi].monomials;
    const std::size_t s = mons.size();
    if (block_values[bi].size() != s * s) throw AssemblyError("block value has wrong size");
    Polynomial quad(nvars);
    for (std::size_t p = 0; p < s; ++p)
      for (std::size_t q = 0; q < s; ++q) quad.add_term(mons[p] + mons[q], block_values[bi][p * s + q]);
    out += weight_of(weights, blocks[bi].j, one) * quad;
  }
  return out;
}

}  // namespace tssos
