#include "tssos/table.hpp"

#include <algorithm>
#include <charconv>
#include <iterator>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace tssos {

namespace {

const char* const kColumns[] = {"id", "family", "n", "bs", "rbs", "mc", "opt", "time", "status", "error"};

std::string num(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double to_double(const std::string& s) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw std::invalid_argument("bad number '" + s + "' in table");
  return v;
}

std::size_t to_size(const std::string& s) {
  std::size_t v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw std::invalid_argument("bad integer '" + s + "' in table");
  return v;
}

template <class T, class F>
std::string join(const std::vector<T>& v, F fmt) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ";" : "") + fmt(v[i]);
  return out;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(';', start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::vector<std::string>> csv_records(const std::string& text) {
  std::vector<std::vector<std::string>> recs;
  std::vector<std::string> rec;
  std::string field;
  bool quoted = false, any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      rec.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (any || !field.empty()) {
        rec.push_back(std::move(field));
        recs.push_back(std::move(rec));
      }
      rec.clear();
      field.clear();
      any = false;
    } else {
      field += c;
      any = true;
    }
  }
  if (quoted) throw std::invalid_argument("unterminated quote in CSV");
  if (any || !field.empty()) {
    rec.push_back(std::move(field));
    recs.push_back(std::move(rec));
  }
  return recs;
}

std::string emit_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream os;
  for (std::size_t i = 0; i < std::size(kColumns); ++i) os << (i ? "," : "") << kColumns[i];
  os << '\n';
  for (const auto& r : rows) {
    os << csv_field(r.id) << ',' << csv_field(r.family) << ',' << r.n << ',' << r.bs << ',' << r.rbs << ','
       << join(r.mc, [](std::size_t v) { return std::to_string(v); }) << ',' << join(r.opt, num) << ','
       << join(r.time, num) << ',' << csv_field(join(r.status, [](const std::string& s) { return s; })) << ','
       << csv_field(r.error) << '\n';
  }
  return os.str();
}

std::string emit_json(const std::vector<BenchRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows)
    arr.push_back({{"id", r.id},     {"family", r.family}, {"n", r.n},       {"bs", r.bs},
                   {"rbs", r.rbs},   {"mc", r.mc},         {"opt", r.opt},   {"time", r.time},
                   {"status", r.status}, {"error", r.error}});
  return arr.dump(2) + "\n";
}

std::string emit_markdown(const std::vector<BenchRow>& rows) {
  std::size_t kmax = 0;
  for (const auto& r : rows) kmax = std::max(kmax, r.opt.size());
  std::ostringstream os;
  os << "| id | n | bs | rbs |";
  for (std::size_t k = 1; k <= kmax; ++k) os << " mc (k=" << k << ") | opt (k=" << k << ") | time (k=" << k << ") |";
  os << "\n|---|---|---|---|";
  for (std::size_t k = 0; k < kmax; ++k) os << "---|---|---|";
  os << '\n';
  char buf[64];
  for (const auto& r : rows) {
    os << "| " << r.id << " | " << r.n << " | " << r.bs << " | " << r.rbs << " |";
    for (std::size_t k = 0; k < kmax; ++k) {
      if (k < r.opt.size()) {
        std::snprintf(buf, sizeof buf, "%.6g", r.opt[k]);
        std::string opt = buf;
        if (r.status[k] != "optimal") opt += " (" + r.status[k] + ")";
        std::snprintf(buf, sizeof buf, "%.2f", r.time[k]);
        os << ' ' << r.mc[k] << " | " << opt << " | " << buf << " |";
      } else {
        os << " - | - | - |";
      }
    }
    if (!r.error.empty()) os << " error: " << r.error;
    os << '\n';
  }
  return os.str();
}

}  // namespace

TableFormat parse_table_format(const std::string& s) {
  if (s == "json") return TableFormat::kJson;
  if (s == "csv") return TableFormat::kCsv;
  if (s == "markdown" || s == "md") return TableFormat::kMarkdown;
  throw std::invalid_argument("unknown table format '" + s + "' (expected json|csv|markdown)");
}

std::string emit_table(const std::vector<BenchRow>& rows, TableFormat format) {
  switch (format) {
    case TableFormat::kJson: return emit_json(rows);
    case TableFormat::kCsv: return emit_csv(rows);
    case TableFormat::kMarkdown: return emit_markdown(rows);
  }
  return {};
}

std::vector<BenchRow> parse_csv_table(const std::string& text) {
  auto recs = csv_records(text);
  if (recs.empty()) throw std::invalid_argument("CSV table has no header");
  if (recs[0].size() != std::size(kColumns)) throw std::invalid_argument("CSV header has the wrong column count");
  for (std::size_t i = 0; i < std::size(kColumns); ++i)
    if (recs[0][i] != kColumns[i]) throw std::invalid_argument("unexpected CSV column '" + recs[0][i] + "'");
  std::vector<BenchRow> rows;
  for (std::size_t r = 1; r < recs.size(); ++r) {
    const auto& f = recs[r];
    if (f.size() != std::size(kColumns))
      throw std::invalid_argument("CSV record " + std::to_string(r) + " has the wrong field count");
    BenchRow row;
    row.id = f[0];
    row.family = f[1];
    row.n = to_size(f[2]);
    row.bs = to_size(f[3]);
    row.rbs = to_size(f[4]);
    for (const auto& s : split(f[5])) row.mc.push_back(to_size(s));
    for (const auto& s : split(f[6])) row.opt.push_back(to_double(s));
    for (const auto& s : split(f[7])) row.time.push_back(to_double(s));
    row.status = split(f[8]);
    row.error = f[9];
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<BenchRow> parse_json_table(const std::string& text) {
  auto arr = nlohmann::json::parse(text);
  std::vector<BenchRow> rows;
  for (const auto& j : arr) {
    BenchRow r;
    r.id = j.at("id").get<std::string>();
    r.family = j.at("family").get<std::string>();
    r.n = j.at("n").get<std::size_t>();
    r.bs = j.at("bs").get<std::size_t>();
    r.rbs = j.at("rbs").get<std::size_t>();
    r.mc = j.at("mc").get<std::vector<std::size_t>>();
    r.opt = j.at("opt").get<std::vector<double>>();
    r.time = j.at("time").get<std::vector<double>>();
    r.status = j.at("status").get<std::vector<std::string>>();
    r.error = j.at("error").get<std::string>();
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace tssos
