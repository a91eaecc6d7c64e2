#include "tssos/block_sdp.hpp"

#include <stdexcept>
#include <string>

namespace tssos {

std::size_t BlockSdp::num_block_scalars() const {
  std::size_t n = 0;
  for (std::size_t s : block_sizes) n += s * (s + 1) / 2;
  return n;
}

void BlockSdp::validate() const {
  auto check = [&](const SymMatrix& m, const std::string& what) {
    for (const auto& e : m) {
      if (e.block >= block_sizes.size())
        throw std::invalid_argument(what + ": block index " + std::to_string(e.block) + " out of range");
      if (e.row > e.col || e.col >= block_sizes[e.block])
        throw std::invalid_argument(what + ": entry (" + std::to_string(e.row) + "," +
                                    std::to_string(e.col) + ") outside block " + std::to_string(e.block));
    }
  };
  if (!labels.empty() && labels.size() != block_sizes.size())
    throw std::invalid_argument("block label count does not match block count");
  if (rhs.size() != constraints.size()) throw std::invalid_argument("rhs length does not match constraint count");
  if (free_objective.size() != free_columns.size())
    throw std::invalid_argument("free objective length does not match free variable count");
  if (!row_monomials.empty() && row_monomials.size() != constraints.size())
    throw std::invalid_argument("row label count does not match constraint count");
  check(objective, "objective");
  for (std::size_t i = 0; i < constraints.size(); ++i) check(constraints[i], "constraint " + std::to_string(i));
  for (const auto& col : free_columns)
    for (const auto& [row, v] : col)
      if (row >= constraints.size()) throw std::invalid_argument("free column references missing row");
}

}  // namespace tssos
