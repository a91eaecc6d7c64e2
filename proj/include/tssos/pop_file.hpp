// Plain-text POP files.
//
//   # comment
//   nvars 3                 (optional; inferred from the largest x<i> otherwise)
//   x1^2 - 2*x1*x2 + ...    (objective, may continue over several lines)
//   subject to
//   1 - x1^2 - x2^2         (one constraint per line, meaning g >= 0)
#pragma once

#include <string>
#include <string_view>

#include "tssos/polynomial.hpp"

namespace tssos {

PopProblem parse_pop(std::string_view text);
PopProblem read_pop_file(const std::string& path);
std::string format_pop(const PopProblem& pop);

}  // namespace tssos
