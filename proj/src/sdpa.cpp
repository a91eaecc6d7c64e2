#include "tssos/sdpa.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace tssos {

namespace {

// Shortest representation that reads back to the same double.
std::string num(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void put_matrix(std::ostringstream& os, std::size_t k, const SymMatrix& m) {
  for (const auto& e : m) {
    if (e.value == 0.0) continue;
    os << k << ' ' << e.block + 1 << ' ' << e.row + 1 << ' ' << e.col + 1 << ' ' << num(e.value) << '\n';
  }
}

struct Token {
  std::string text;
  std::size_t line;
};

}  // namespace

BlockSdp split_free_variables(const BlockSdp& problem) {
  BlockSdp out = problem;
  out.free_columns.clear();
  out.free_objective.clear();
  for (std::size_t k = 0; k < problem.num_free(); ++k) {
    const std::size_t plus = out.block_sizes.size();
    out.block_sizes.push_back(1);
    out.block_sizes.push_back(1);
    if (!out.labels.empty()) {
      out.labels.push_back({0, 0});
      out.labels.push_back({0, 0});
    }
    const double c = problem.free_objective[k];
    if (c != 0.0) {
      out.objective.push_back({plus, 0, 0, c});
      out.objective.push_back({plus + 1, 0, 0, -c});
    }
    for (auto [row, v] : problem.free_columns[k]) {
      out.constraints[row].push_back({plus, 0, 0, v});
      out.constraints[row].push_back({plus + 1, 0, 0, -v});
    }
  }
  return out;
}

std::string format_sdpa(const BlockSdp& problem) {
  problem.validate();
  const BlockSdp p = problem.num_free() ? split_free_variables(problem) : problem;
  std::ostringstream os;
  os << p.num_constraints() << '\n' << p.num_blocks() << '\n';
  for (std::size_t i = 0; i < p.block_sizes.size(); ++i) os << (i ? " " : "") << p.block_sizes[i];
  os << '\n';
  for (std::size_t i = 0; i < p.rhs.size(); ++i) os << (i ? " " : "") << num(p.rhs[i]);
  os << '\n';
  put_matrix(os, 0, p.objective);
  for (std::size_t i = 0; i < p.constraints.size(); ++i) put_matrix(os, i + 1, p.constraints[i]);
  return os.str();
}

void write_sdpa(const BlockSdp& problem, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << format_sdpa(problem);
  if (!f) throw std::runtime_error("write to " + path + " failed");
}

BlockSdp parse_sdpa(const std::string& text) {
  std::vector<Token> header;
  std::vector<std::pair<std::string, std::size_t>> lines;
  {
    std::istringstream is(text);
    std::string line;
    std::size_t no = 0;
    while (std::getline(is, line)) {
      ++no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty() && (line[0] == '"' || line[0] == '*')) continue;
      lines.emplace_back(line, no);
    }
  }

  std::size_t li = 0, last_line = lines.empty() ? 1 : lines.back().second;
  std::vector<Token> pending;
  auto next = [&](const char* what) -> Token {
    while (pending.empty()) {
      if (li >= lines.size()) throw SdpaError(std::string("unexpected end of file, expected ") + what, last_line);
      std::string l = lines[li].first;
      for (char& c : l)
        if (c == '{' || c == '}' || c == '(' || c == ')' || c == ',') c = ' ';
      std::istringstream ls(l);
      std::string t;
      std::vector<Token> toks;
      while (ls >> t) toks.push_back({t, lines[li].second});
      pending.assign(toks.rbegin(), toks.rend());
      ++li;
    }
    Token t = pending.back();
    pending.pop_back();
    return t;
  };
  auto to_long = [](const Token& t, const char* what) {
    long v = 0;
    auto res = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (res.ec != std::errc() || res.ptr != t.text.data() + t.text.size())
      throw SdpaError(std::string("expected integer ") + what + ", got '" + t.text + "'", t.line);
    return v;
  };
  auto to_double = [](const Token& t, const char* what) {
    const char* s = t.text.c_str();
    char* end = nullptr;
    double v = std::strtod(s, &end);
    if (end == s || *end != '\0' || !std::isfinite(v))
      throw SdpaError(std::string("expected number ") + what + ", got '" + t.text + "'", t.line);
    return v;
  };

  BlockSdp p;
  // The header must occupy whole lines: mDIM and nBLOCK are read from the
  // first two non-comment lines.
  Token mt = next("mDIM");
  long m = to_long(mt, "mDIM");
  if (m < 0) throw SdpaError("negative mDIM", mt.line);
  pending.clear();
  Token bt = next("nBLOCK");
  long nb = to_long(bt, "nBLOCK");
  if (nb < 0) throw SdpaError("negative nBLOCK", bt.line);
  pending.clear();
  for (long b = 0; b < nb; ++b) {
    Token t = next("block size");
    long s = to_long(t, "block size");
    if (s == 0) throw SdpaError("zero block size", t.line);
    if (s < 0) throw SdpaError("diagonal (negative) blocks are not supported", t.line);
    p.block_sizes.push_back(static_cast<std::size_t>(s));
  }
  pending.clear();
  if (nb == 0 && li < lines.size() && lines[li].first.find_first_not_of(" \t") == std::string::npos) ++li;
  for (long i = 0; i < m; ++i) p.rhs.push_back(to_double(next("right-hand side"), "right-hand side"));
  pending.clear();
  if (m == 0 && li < lines.size() && lines[li].first.find_first_not_of(" \t") == std::string::npos) ++li;
  p.constraints.resize(static_cast<std::size_t>(m));

  for (; li < lines.size(); ++li) {
    const auto& [l, no] = lines[li];
    std::istringstream ls(l);
    std::vector<std::string> f;
    std::string t;
    while (ls >> t) f.push_back(t);
    if (f.empty()) continue;
    if (f.size() != 5) throw SdpaError("expected 5 fields 'k b i j v'", no);
    long k = to_long({f[0], no}, "matrix index");
    long b = to_long({f[1], no}, "block index");
    long i = to_long({f[2], no}, "row index");
    long j = to_long({f[3], no}, "column index");
    double v = to_double({f[4], no}, "value");
    if (k < 0 || k > m) throw SdpaError("matrix index out of range", no);
    if (b < 1 || b > nb) throw SdpaError("block index out of range", no);
    const long s = static_cast<long>(p.block_sizes[static_cast<std::size_t>(b - 1)]);
    if (i < 1 || j < 1 || i > s || j > s) throw SdpaError("entry index outside block", no);
    if (i > j) std::swap(i, j);
    SymEntry e{static_cast<std::size_t>(b - 1), static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1), v};
    (k == 0 ? p.objective : p.constraints[static_cast<std::size_t>(k - 1)]).push_back(e);
  }
  p.validate();
  return p;
}

BlockSdp read_sdpa(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_sdpa(ss.str());
}

}  // namespace tssos
