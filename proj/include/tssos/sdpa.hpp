// SDPA sparse format (.dat-s).
//
// The equality form of a BlockSdp is the SDPA dual problem with F0 = C,
// Fi = A_i and c = b. Free variables are written as differences of two 1x1
// PSD blocks, so an imported problem never has free variables.
#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "tssos/block_sdp.hpp"

namespace tssos {

class SdpaError : public std::runtime_error {
 public:
  SdpaError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

std::string format_sdpa(const BlockSdp& problem);
void write_sdpa(const BlockSdp& problem, const std::string& path);

// Lines starting with '"' or '*' are comments. Block sizes may be separated
// by spaces, commas or braces; negative (diagonal) sizes are rejected.
BlockSdp parse_sdpa(const std::string& text);
BlockSdp read_sdpa(const std::string& path);

// Rewrites free variables as u = u_plus - u_minus over two new 1x1 blocks.
BlockSdp split_free_variables(const BlockSdp& problem);

}  // namespace tssos
