#include "tssos/pop_file.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <vector>

namespace tssos {

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

}  // namespace

PopProblem parse_pop(std::string_view text) {
  std::string objective_text;
  std::vector<std::string> constraint_lines;
  std::size_t nvars = 0;
  bool in_constraints = false;

  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    std::string low = lower(line);
    if (low.rfind("nvars", 0) == 0) {
      std::istringstream ls(line.substr(5));
      long v = 0;
      if (!(ls >> v) || v <= 0) throw std::invalid_argument("bad nvars directive: " + line);
      nvars = static_cast<std::size_t>(v);
      continue;
    }
    if (low == "subject to" || low == "subject to:") {
      in_constraints = true;
      continue;
    }
    if (in_constraints) {
      constraint_lines.push_back(line);
    } else {
      objective_text += line;
      objective_text += ' ';
    }
  }
  if (trim(objective_text).empty()) throw std::invalid_argument("POP file has no objective");

  if (nvars == 0) {
    nvars = max_variable_index(objective_text);
    for (const auto& c : constraint_lines) nvars = std::max(nvars, max_variable_index(c));
    nvars = std::max<std::size_t>(nvars, 1);
  }

  PopProblem pop{parse_polynomial(objective_text, nvars), {}};
  for (const auto& c : constraint_lines) pop.constraints.push_back(parse_polynomial(c, nvars));
  return pop;
}

PopProblem read_pop_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_pop(ss.str());
}

std::string format_pop(const PopProblem& pop) {
  std::string out = "nvars " + std::to_string(pop.nvars()) + "\n";
  out += pop.objective.to_string() + "\n";
  if (!pop.constraints.empty()) {
    out += "subject to\n";
    for (const auto& g : pop.constraints) out += g.to_string() + "\n";
  }
  return out;
}

}  // namespace tssos
