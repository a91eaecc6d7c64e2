// BenchRow serialization. Per-order columns (mc, opt, time, status) are
// ';'-joined lists in CSV; numbers use the shortest round-trip form.
#pragma once

#include <string>
#include <vector>

#include "tssos/pipeline.hpp"

namespace tssos {

enum class TableFormat { kJson, kCsv, kMarkdown };
TableFormat parse_table_format(const std::string& s);

std::string emit_table(const std::vector<BenchRow>& rows, TableFormat format);
std::vector<BenchRow> parse_csv_table(const std::string& text);
std::vector<BenchRow> parse_json_table(const std::string& text);

}  // namespace tssos
