#include "tssos/pipeline.hpp"

#include <chrono>
#include <stdexcept>

namespace tssos {

BasisChoice parse_basis_choice(const std::string& s) {
  if (s == "auto") return BasisChoice::kAuto;
  if (s == "newton") return BasisChoice::kNewton;
  if (s == "standard") return BasisChoice::kStandard;
  if (s == "reduced") return BasisChoice::kReduced;
  throw std::invalid_argument("unknown basis '" + s + "' (expected newton|standard|reduced)");
}

std::string to_string(BasisChoice b) {
  switch (b) {
    case BasisChoice::kAuto: return "auto";
    case BasisChoice::kNewton: return "newton";
    case BasisChoice::kStandard: return "standard";
    case BasisChoice::kReduced: return "reduced";
  }
  return "auto";
}

namespace {

struct Prepared {
  int order = 0;
  std::size_t bs = 0, rbs = 0;
  std::size_t stabilized_at = 0;
  bool stabilized = false;
  MonomialBasis basis0;
  std::vector<std::vector<MonomialGraph>> per_order;  // per_order[k-1][j]
};

GraphCensus census(const MonomialGraph& g) {
  GraphCensus c;
  auto dec = maximal_cliques(g);
  c.clique_sizes = dec.sizes();
  c.max_clique = dec.max_size();
  c.n_edges = g.num_edges();
  return c;
}

Prepared prepare(const PopProblem& pop, const RelaxationOptions& opts, bool with_graphs) {
  pop.validate();
  if (pop.objective.is_zero()) throw std::invalid_argument("objective is the zero polynomial");
  if (opts.sparse_order < 1) throw std::invalid_argument("sparse order must be at least 1");
  Prepared p;
  const std::size_t n = pop.nvars();
  const int dmin = pop.min_relaxation_order();
  if (opts.order != 0 && opts.order < dmin)
    throw std::invalid_argument("relaxation order " + std::to_string(opts.order) + " is below the minimal order " +
                                std::to_string(dmin));
  p.order = opts.order ? opts.order : dmin;
  const std::size_t kmax = opts.sparse_order;

  if (pop.unconstrained()) {
    const Polynomial& f = pop.objective;
    BasisChoice choice = opts.basis == BasisChoice::kAuto ? BasisChoice::kReduced : opts.basis;
    MonomialBasis start = choice == BasisChoice::kStandard ? standard_basis(n, p.order) : newton_half_basis(f);
    p.bs = start.size();
    ExponentSet a{Exponent(n)};
    for (const auto& e : support(f)) a.insert(e);
    p.basis0 = choice == BasisChoice::kReduced ? generate_basis(a, start).back() : start;
    if (!p.basis0.contains(Exponent(n))) {
      auto monos = p.basis0.monomials();
      monos.push_back(Exponent(n));
      p.basis0 = MonomialBasis(n, std::move(monos));
    }
    p.rbs = p.basis0.size();
    check_representable(support(f), p.basis0);
    if (with_graphs && !opts.dense) {
      auto seq = iterate_unconstrained(f, p.basis0, kmax, opts.graph);
      for (auto& g : seq.graphs) p.per_order.push_back({std::move(g)});
      p.stabilized = seq.stabilized;
      p.stabilized_at = seq.stabilized_at;
    }
    return p;
  }

  if (opts.basis == BasisChoice::kNewton)
    throw std::invalid_argument("the Newton basis applies to unconstrained problems only");
  MonomialBasis standard = standard_basis(n, p.order);
  p.bs = standard.size();
  p.basis0 = opts.basis == BasisChoice::kReduced && !opts.dense
                 ? reduce_basis_constrained(pop, p.order, kmax, opts.graph)
                 : standard;
  p.rbs = p.basis0.size();
  if (with_graphs && !opts.dense) {
    auto seq = iterate_constrained(pop, p.order, kmax, opts.graph, &p.basis0);
    p.per_order = std::move(seq.orders);
    p.stabilized = seq.stabilized;
    p.stabilized_at = seq.stabilized_at;
  }
  return p;
}

}  // namespace

PipelineResult report_graphs(const PopProblem& pop, const RelaxationOptions& opts) {
  RelaxationOptions o = opts;
  o.dense = false;
  Prepared p = prepare(pop, o, true);
  PipelineResult r;
  r.order = p.order;
  r.bs = p.bs;
  r.rbs = p.rbs;
  r.stabilized_at = p.stabilized_at;
  for (std::size_t k = 1; k <= p.per_order.size(); ++k) {
    OrderResult o;
    o.k = k;
    for (const auto& g : p.per_order[k - 1]) o.graphs.push_back(census(g));
    o.stabilized = p.stabilized && k >= p.stabilized_at;
    r.orders.push_back(std::move(o));
  }
  return r;
}

PipelineResult run_relaxation(const PopProblem& pop, const RelaxationOptions& opts) {
  Prepared p = prepare(pop, opts, true);
  PipelineResult r;
  r.order = p.order;
  r.bs = p.bs;
  r.rbs = p.rbs;
  r.stabilized_at = p.stabilized_at;

  auto run_one = [&](std::size_t k, BlockSdp sdp, OrderResult& o) {
    o.n_constraints = sdp.num_constraints();
    o.n_blocks = sdp.num_blocks();
    o.n_block_scalars = sdp.num_block_scalars();
    o.n_free = sdp.num_free();
    if (opts.on_assembled) opts.on_assembled(k, sdp);
    SolverSolution sol = opts.solve_hook ? opts.solve_hook(sdp) : solve(sdp, opts.solver);
    o.status = sol.status;
    o.primal_obj = sol.primal_obj;
    o.dual_obj = sol.dual_obj;
    o.bound = relaxation_bound(sdp, sol);
    o.iters = sol.iters;
  };

  if (opts.dense) {
    auto t0 = std::chrono::steady_clock::now();
    OrderResult o;
    BlockSdp sdp = pop.unconstrained() ? assemble_dense_unconstrained(pop.objective, p.basis0, opts.side)
                                       : assemble_dense_constrained(pop, p.order, opts.side);
    for (std::size_t b = 0; b < sdp.num_blocks(); ++b) {
      GraphCensus c;
      c.clique_sizes = {sdp.block_sizes[b]};
      c.max_clique = sdp.block_sizes[b];
      c.n_edges = sdp.block_sizes[b] * (sdp.block_sizes[b] - 1) / 2;
      o.graphs.push_back(c);
    }
    run_one(0, std::move(sdp), o);
    o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.orders.push_back(std::move(o));
    return r;
  }

  for (std::size_t k = 1; k <= p.per_order.size(); ++k) {
    auto t0 = std::chrono::steady_clock::now();
    const auto& graphs = p.per_order[k - 1];
    OrderResult o;
    o.k = k;
    for (const auto& g : graphs) o.graphs.push_back(census(g));
    o.stabilized = p.stabilized && k >= p.stabilized_at;
    BlockSdp sdp = pop.unconstrained() ? assemble_sparse_unconstrained(pop.objective, graphs[0], opts.side)
                                       : assemble_sparse_constrained(pop, graphs, opts.side);
    run_one(k, std::move(sdp), o);
    o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.orders.push_back(std::move(o));
  }
  return r;
}

std::vector<BenchRow> run_pipeline(const BenchSpec& spec) {
  BenchRow row;
  row.family = to_string(spec.family);
  row.n = spec.params.n;
  row.id = spec.id.empty() ? row.family + "_n" + std::to_string(spec.params.n) + "_s" +
                                 std::to_string(spec.params.seed)
                           : spec.id;
  try {
    PopProblem pop = generate(spec.family, spec.params, spec.constraints);
    RelaxationOptions relax = spec.relax;
    // The structured families are tabulated over the full standard basis.
    if (relax.basis == BasisChoice::kAuto && spec.family != Family::kRandpoly1 && spec.family != Family::kRandpoly2)
      relax.basis = BasisChoice::kStandard;
    PipelineResult res = run_relaxation(pop, relax);
    row.bs = res.bs;
    row.rbs = res.rbs;
    for (const auto& o : res.orders) {
      row.mc.push_back(o.graphs.empty() ? 0 : o.graphs[0].max_clique);
      row.opt.push_back(o.bound);
      row.time.push_back(o.seconds);
      row.status.push_back(to_string(o.status));
    }
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return {row};
}

}  // namespace tssos
