#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace gausslab::cli {

using Cell = std::variant<std::int64_t, std::uint64_t, double, std::string>;

struct Report {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
};

// Doubles at 12 significant digits, LF line endings, header always present.
std::string format_cell(const Cell& c);
std::string emit_csv(const Report& report);
// Flat array of objects, one per row, keys in column order.
std::string emit_json(const Report& report);

}  // namespace gausslab::cli
