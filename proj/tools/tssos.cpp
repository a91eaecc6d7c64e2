// tssos: solve, benchmark and inspect chordal term-sparsity relaxations.
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tssos/pipeline.hpp"
#include "tssos/pop_file.hpp"
#include "tssos/sdpa.hpp"
#include "tssos/table.hpp"

namespace {

using namespace tssos;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitSolver = 2;

struct CommonArgs {
  int order = 0;
  std::size_t sparse_order = 1;
  std::string mode = "chordal";
  std::string heuristic = "min-degree";
  std::string basis = "auto";
};

void add_common(CLI::App* cmd, CommonArgs& a) {
  cmd->add_option("--order", a.order, "relaxation order (default: minimal)");
  cmd->add_option("--sparse-order", a.sparse_order, "largest sparse order k")->check(CLI::PositiveNumber);
  cmd->add_option("--mode", a.mode, "chordal | block")->check(CLI::IsMember({"chordal", "block"}));
  cmd->add_option("--heuristic", a.heuristic, "min-degree | min-fill")
      ->check(CLI::IsMember({"min-degree", "min-fill"}));
  cmd->add_option("--basis", a.basis, "newton | standard | reduced")
      ->check(CLI::IsMember({"auto", "newton", "standard", "reduced"}));
}

RelaxationOptions relaxation_options(const CommonArgs& a) {
  RelaxationOptions o;
  o.order = a.order;
  o.sparse_order = a.sparse_order;
  o.graph.mode = parse_extension_mode(a.mode);
  o.graph.heuristic = a.heuristic == "min-fill" ? ChordalHeuristic::kMinFill : ChordalHeuristic::kMinDegree;
  o.basis = parse_basis_choice(a.basis);
  return o;
}

json census_json(const GraphCensus& c, bool stabilized) {
  return {{"clique_sizes", c.clique_sizes},
          {"max_clique", c.max_clique},
          {"n_edges", c.n_edges},
          {"stabilized", stabilized}};
}

std::string sdpa_path_for(const std::string& base, std::size_t k, bool several) {
  if (!several) return base;
  std::filesystem::path p(base);
  return (p.parent_path() / (p.stem().string() + "_k" + std::to_string(k) + p.extension().string())).string();
}

int cmd_solve(const std::string& file, const CommonArgs& common, const std::string& export_path, bool as_json,
              bool dense, const std::string& side, const std::string& solver, const std::string& solution_path,
              const std::string& external_cmd, SolverConfig cfg) {
  PopProblem pop = read_pop_file(file);
  RelaxationOptions o = relaxation_options(common);
  o.dense = dense;
  o.side = side == "moment" ? SdpSide::kMoment : SdpSide::kSos;
  o.solver = cfg;
  const bool several = !dense && common.sparse_order > 1;
  if (!export_path.empty())
    o.on_assembled = [&](std::size_t k, const BlockSdp& sdp) { write_sdpa(sdp, sdpa_path_for(export_path, k, several)); };
  if (solver == "external") {
    if (solution_path.empty()) throw std::invalid_argument("--solver external needs --solution FILE");
    if (several) throw std::invalid_argument("--solver external handles one sparse order at a time");
    std::string sdpa = export_path.empty() ? file + ".dat-s" : export_path;
    o.solve_hook = [=](const BlockSdp& sdp) {
      if (o.side == SdpSide::kMoment)
        throw std::invalid_argument("--solver external expects the SOS side (equality form)");
      write_sdpa(sdp, sdpa);
      if (!external_cmd.empty()) {
        std::string cmd = external_cmd + " '" + sdpa + "' '" + solution_path + "'";
        if (std::system(cmd.c_str()) != 0) throw std::runtime_error("external solver command failed: " + cmd);
      }
      std::ifstream in(solution_path);
      if (!in) throw std::runtime_error("cannot read solution file " + solution_path);
      std::stringstream ss;
      ss << in.rdbuf();
      return solution_from_json(ss.str());
    };
  }

  PipelineResult r = run_relaxation(pop, o);
  bool all_optimal = !r.orders.empty();
  for (const auto& ord : r.orders) all_optimal = all_optimal && ord.status == SolverStatus::kOptimal;

  if (as_json) {
    json out;
    out["order"] = r.order;
    out["bs"] = r.bs;
    out["rbs"] = r.rbs;
    out["dense"] = dense;
    out["stabilized_at"] = r.stabilized_at;
    out["orders"] = json::array();
    for (const auto& ord : r.orders) {
      json g = json::array();
      for (const auto& c : ord.graphs) g.push_back(census_json(c, ord.stabilized));
      out["orders"].push_back({{"k", ord.k},
                               {"bound", ord.bound},
                               {"status", to_string(ord.status)},
                               {"primal_obj", ord.primal_obj},
                               {"dual_obj", ord.dual_obj},
                               {"iters", ord.iters},
                               {"n_constraints", ord.n_constraints},
                               {"n_blocks", ord.n_blocks},
                               {"n_block_scalars", ord.n_block_scalars},
                               {"n_free", ord.n_free},
                               {"seconds", ord.seconds},
                               {"graphs", g}});
    }
    std::cout << out.dump(2) << '\n';
  } else {
    std::printf("relaxation order %d, basis size %zu (reduced %zu)\n", r.order, r.bs, r.rbs);
    for (const auto& ord : r.orders) {
      std::string mc;
      for (const auto& c : ord.graphs) mc += (mc.empty() ? "" : ",") + std::to_string(c.max_clique);
      std::printf("%s  bound %.10g  status %s  mc (%s)  rows %zu  blocks %zu  %.2fs%s\n",
                  dense ? "dense" : ("k=" + std::to_string(ord.k)).c_str(), ord.bound, to_string(ord.status).c_str(),
                  mc.c_str(), ord.n_constraints, ord.n_blocks, ord.seconds, ord.stabilized ? "  (stabilized)" : "");
    }
  }
  return all_optimal ? kExitOk : kExitSolver;
}

int cmd_report(const std::string& file, const CommonArgs& common) {
  PopProblem pop = read_pop_file(file);
  RelaxationOptions o = relaxation_options(common);
  PipelineResult r = report_graphs(pop, o);
  json records = json::array();
  for (const auto& ord : r.orders)
    for (std::size_t j = 0; j < ord.graphs.size(); ++j) {
      json rec = census_json(ord.graphs[j], ord.stabilized);
      rec["j"] = j;
      rec["k"] = ord.k;
      records.push_back(rec);
    }
  std::cout << records.dump(2) << '\n';
  return kExitOk;
}

int cmd_bench(const std::string& family, const FamilyParams& params, const std::string& constraints,
              const CommonArgs& common, bool dense, const std::string& format, const std::string& output) {
  BenchSpec spec;
  spec.family = parse_family(family);
  spec.params = params;
  spec.constraints = parse_constraint_set(constraints);
  spec.relax = relaxation_options(common);
  spec.relax.dense = dense;
  if (spec.constraints != ConstraintSet::kNone && common.order == 0) spec.relax.order = 2;
  auto rows = run_pipeline(spec);
  std::string text = emit_table(rows, parse_table_format(format));
  if (output.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(output);
    if (!f) throw std::runtime_error("cannot open " + output);
    f << text;
  }
  for (const auto& row : rows) {
    if (!row.error.empty()) {
      std::cerr << "error: " << row.error << '\n';
      return kExitInput;
    }
    for (const auto& s : row.status)
      if (s != "optimal") return kExitSolver;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chordal term-sparsity moment-SOS relaxations"};
  app.require_subcommand(1);

  CommonArgs solve_args, report_args, bench_args;
  std::string solve_file, export_path, side = "sos", solver = "internal", solution_path, external_cmd;
  bool as_json = false, dense = false, verbose = false;
  SolverConfig cfg;
  auto* solve_cmd = app.add_subcommand("solve", "solve the relaxations of a POP file");
  solve_cmd->add_option("file", solve_file, "POP file")->required();
  add_common(solve_cmd, solve_args);
  solve_cmd->add_option("--export-sdpa", export_path, "write each assembled SDP in SDPA sparse format");
  solve_cmd->add_flag("--json", as_json, "print JSON");
  solve_cmd->add_flag("--dense", dense, "solve the dense relaxation");
  solve_cmd->add_option("--side", side, "sos | moment")->check(CLI::IsMember({"sos", "moment"}));
  solve_cmd->add_option("--solver", solver, "internal | external")->check(CLI::IsMember({"internal", "external"}));
  solve_cmd->add_option("--solution", solution_path, "solution JSON read back with --solver external");
  solve_cmd->add_option("--external-command", external_cmd,
                        "command run as CMD <sdpa file> <solution file> with --solver external");
  solve_cmd->add_option("--tol-gap", cfg.tol_gap, "relative duality gap tolerance");
  solve_cmd->add_option("--tol-feas", cfg.tol_feas, "relative feasibility tolerance");
  solve_cmd->add_option("--max-iters", cfg.max_iters, "interior-point iteration limit");
  solve_cmd->add_flag("--verbose", verbose, "print solver iterations");

  std::string report_file;
  auto* report_cmd = app.add_subcommand("report", "clique census of the sparsity graphs (no solve)");
  report_cmd->add_option("file", report_file, "POP file")->required();
  add_common(report_cmd, report_args);

  std::string family, constraints = "none", format = "markdown", output;
  FamilyParams params;
  bool bench_dense = false;
  auto* bench_cmd = app.add_subcommand("bench", "generate and solve a benchmark instance");
  bench_cmd->add_option("family", family,
                        "randpoly1 | randpoly2 | broyden_banded | broyden_tridiagonal | gen_rosenbrock | "
                        "mod_gen_rosenbrock | mod_chained_singular")
      ->required();
  bench_cmd->add_option("--n", params.n, "number of variables")->required();
  bench_cmd->add_option("--degree", params.degree, "degree 2d (random families)");
  bench_cmd->add_option("--t", params.t, "randpoly1: number of squares");
  bench_cmd->add_option("--p", params.p, "randpoly1: monomial probability");
  bench_cmd->add_option("--s", params.s, "randpoly2: number of terms");
  bench_cmd->add_option("--seed", params.seed, "random seed")->required();
  bench_cmd->add_option("--constraints", constraints, "none | unit_ball | unit_hypercube");
  bench_cmd->add_flag("--dense", bench_dense, "solve the dense relaxation");
  bench_cmd->add_option("--format", format, "json | csv | markdown");
  bench_cmd->add_option("--output", output, "write the table to a file");
  add_common(bench_cmd, bench_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    cfg.verbose = verbose;
    if (*solve_cmd)
      return cmd_solve(solve_file, solve_args, export_path, as_json, dense, side, solver, solution_path, external_cmd,
                       cfg);
    if (*report_cmd) return cmd_report(report_file, report_args);
    if (*bench_cmd) return cmd_bench(family, params, constraints, bench_args, bench_dense, format, output);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
