// Primal-dual interior-point solver for BlockSdp (HKM direction, Mehrotra
// predictor-corrector, infeasible start).
#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tssos/block_sdp.hpp"

namespace tssos {

struct SolverConfig {
  double tol_gap = 1e-8;
  double tol_feas = 1e-8;
  int max_iters = 200;
  double step_fraction = 0.98;
  bool verbose = false;

  void validate() const;
};

enum class SolverStatus { kOptimal, kInfeasible, kUnbounded, kMaxIter, kNumerical };

std::string to_string(SolverStatus s);
SolverStatus parse_solver_status(const std::string& s);

struct SolverResiduals {
  double primal = 0.0;  // ||b - A(X) - B u|| / (1 + ||b||)
  double dual = 0.0;    // max of ||A^T y - C - Z||_F / (1 + ||C||_F) and ||c - B^T y|| / (1 + ||c||)
  double gap = 0.0;     // |primal_obj - dual_obj| / (1 + |primal_obj|)
};

struct SolverSolution {
  SolverStatus status = SolverStatus::kNumerical;
  double primal_obj = 0.0;
  double dual_obj = 0.0;
  int iters = 0;
  SolverResiduals residuals;
  std::vector<Eigen::MatrixXd> x;  // primal blocks
  std::vector<Eigen::MatrixXd> z;  // dual slack blocks
  Eigen::VectorXd y;
  Eigen::VectorXd u;

  bool optimal() const { return status == SolverStatus::kOptimal; }
};

SolverSolution solve(const BlockSdp& problem, const SolverConfig& cfg = {});

// The relaxation bound: primal objective for SOS-side problems, dual
// objective for moment-side problems.
double relaxation_bound(const BlockSdp& problem, const SolverSolution& sol);

// {"status", "primal_obj", "dual_obj", "iters", "residuals": {...}}
std::string solution_to_json(const SolverSolution& sol);
// Reads the same layout; block matrices are not part of the dump.
SolverSolution solution_from_json(const std::string& text);

}  // namespace tssos
