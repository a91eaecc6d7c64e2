// Block-diagonal SDP data in the equality form
//
//   maximize   <C, X> + c_free^T u
//   subject to <A_i, X> + (B u)_i = b_i,   i = 1..m
//              X = diag(X_1, ..., X_p) PSD,  u free
//
// whose dual is the LMI form
//
//   minimize   b^T y
//   subject to sum_i y_i A_i - C PSD,  B^T y = c_free.
//
// The SOS side of a relaxation is the equality form (the Gram blocks are X,
// lambda is the single free variable); the moment side is the LMI form with
// y the moment vector.
#pragma once

#include <cstddef>
#include <vector>

#include "tssos/polynomial.hpp"

namespace tssos {

// Symmetric matrix entry: value v stored at (row, col) and (col, row).
struct SymEntry {
  std::size_t block;
  std::size_t row;  // row <= col
  std::size_t col;
  double value;
};

using SymMatrix = std::vector<SymEntry>;

// Which optimization problem the relaxation bound is read from.
enum class SdpSide { kSos, kMoment };

struct BlockLabel {
  std::size_t j = 0;       // 0 for moment/Gram blocks, j >= 1 for localizing blocks
  std::size_t clique = 0;  // clique index within G_j
};

struct BlockSdp {
  std::vector<std::size_t> block_sizes;
  std::vector<BlockLabel> labels;

  SymMatrix objective;                           // C
  std::vector<SymMatrix> constraints;            // A_i
  std::vector<double> rhs;                       // b
  std::vector<std::vector<std::pair<std::size_t, double>>> free_columns;  // columns of B
  std::vector<double> free_objective;            // c_free

  SdpSide side = SdpSide::kSos;
  std::vector<Exponent> row_monomials;  // alpha per constraint, empty for imported problems

  std::size_t num_constraints() const { return constraints.size(); }
  std::size_t num_blocks() const { return block_sizes.size(); }
  std::size_t num_free() const { return free_columns.size(); }
  // Number of scalar entries in the upper triangles of all blocks.
  std::size_t num_block_scalars() const;

  // Throws std::invalid_argument on out-of-range indices or size mismatches.
  void validate() const;
};

}  // namespace tssos
