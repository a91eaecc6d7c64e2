// End-to-end driver: basis -> sparsity graphs -> block SDP -> solve, per
// sparse order.
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tssos/assembly.hpp"
#include "tssos/generators.hpp"
#include "tssos/graph.hpp"
#include "tssos/solver.hpp"

namespace tssos {

enum class BasisChoice { kAuto, kNewton, kStandard, kReduced };
BasisChoice parse_basis_choice(const std::string& s);
std::string to_string(BasisChoice b);

// Replaces the in-process solver (used for the external-solver route).
using SolveHook = std::function<SolverSolution(const BlockSdp&)>;

struct RelaxationOptions {
  int order = 0;                 // relaxation order d_hat; 0 picks the minimal order
  std::size_t sparse_order = 1;  // largest k
  GraphOptions graph;
  BasisChoice basis = BasisChoice::kAuto;  // reduced Newton basis for unconstrained, standard otherwise
  SdpSide side = SdpSide::kSos;
  SolverConfig solver;
  bool dense = false;            // solve the dense relaxation instead of the sparse hierarchy
  SolveHook solve_hook;
  // Called with each assembled problem before solving (SDPA export).
  std::function<void(std::size_t k, const BlockSdp&)> on_assembled;
};

struct GraphCensus {
  std::vector<std::size_t> clique_sizes;  // descending
  std::size_t max_clique = 0;
  std::size_t n_edges = 0;
};

struct OrderResult {
  std::size_t k = 0;
  std::vector<GraphCensus> graphs;   // j = 0..m
  std::size_t n_constraints = 0;     // equality rows of the SOS side / moment variables
  std::size_t n_blocks = 0;
  std::size_t n_block_scalars = 0;  // upper-triangle entries over all blocks
  std::size_t n_free = 0;
  SolverStatus status = SolverStatus::kNumerical;
  double bound = 0.0;
  double primal_obj = 0.0;
  double dual_obj = 0.0;
  int iters = 0;
  double seconds = 0.0;
  bool stabilized = false;  // G_{k+1} = G_k
};

struct PipelineResult {
  int order = 0;
  std::size_t bs = 0;   // initial basis size
  std::size_t rbs = 0;  // basis size after reduction (= bs without reduction)
  std::size_t stabilized_at = 0;
  std::vector<OrderResult> orders;
};

// Throws on input errors (unrepresentable support, bad orders); solver
// failures are recorded in the per-order status.
PipelineResult run_relaxation(const PopProblem& pop, const RelaxationOptions& opts);

// Graph census only, no assembly or solve.
PipelineResult report_graphs(const PopProblem& pop, const RelaxationOptions& opts);

struct BenchSpec {
  Family family = Family::kRandpoly2;
  FamilyParams params;
  ConstraintSet constraints = ConstraintSet::kNone;
  RelaxationOptions relax;
  std::string id;
};

struct BenchRow {
  std::string id;
  std::string family;
  std::size_t n = 0;
  std::size_t bs = 0;
  std::size_t rbs = 0;
  std::vector<std::size_t> mc;          // per k, max clique of the moment graph
  std::vector<double> opt;              // per k
  std::vector<double> time;             // per k, seconds
  std::vector<std::string> status;      // per k
  std::string error;                    // non-empty when the run failed before solving

  friend bool operator==(const BenchRow&, const BenchRow&) = default;
};

// Never throws for a well-formed BenchSpec: failures land in BenchRow::error.
// BasisChoice::kAuto resolves to the standard basis for every family except
// the random ones.
std::vector<BenchRow> run_pipeline(const BenchSpec& spec);

}  // namespace tssos
