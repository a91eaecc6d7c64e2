#include <algorithm>

#include "tssos/graph.hpp"

namespace tssos {

MonomialBasis reduce_basis_constrained(const PopProblem& pop, int d_hat, std::size_t k,
                                       const GraphOptions& opts) {
  if (k < 1) throw std::invalid_argument("sparse order must be at least 1");
  MonomialBasis b0 = standard_basis(pop.nvars(), d_hat);
  while (true) {
    ConstrainedSequence seq = iterate_constrained(pop, d_hat, k, opts, &b0);
    const auto& graphs = seq.at(std::min(k, seq.orders.size()));

    ExponentSet f_set;
    for (const auto& e : support(pop.objective)) f_set.insert(e);
    for (std::size_t j = 1; j < graphs.size(); ++j) {
      const auto g_supp = support(pop.constraints[j - 1]);
      const MonomialBasis& bj = graphs[j].basis();
      for (const auto& clique : maximal_cliques(graphs[j]).cliques)
        for (std::size_t a = 0; a < clique.size(); ++a)
          for (std::size_t b = a; b < clique.size(); ++b) {
            Exponent s = bj[clique[a]] + bj[clique[b]];
            for (const auto& ga : g_supp) f_set.insert(s + ga);
          }
    }
    MonomialBasis next = generate_basis(f_set, b0).back();
    if (next == b0) return b0;
    b0 = std::move(next);
  }
}

}  // namespace tssos
