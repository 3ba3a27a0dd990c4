#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace qhd::toolkit {

/// Empty cells (monostate) are written as an empty CSV field / JSON null.
using Cell = std::variant<std::monostate, double, long long, bool, std::string>;
using Row = std::vector<Cell>;

struct Table {
  std::vector<std::string> columns;
  std::vector<Row> rows;

  std::size_t column(std::string_view name) const;
  /// Rows whose "status" cell is anything other than "ok".
  std::size_t flagged_rows() const;
};

/// Shortest decimal that reads back to the same double; "inf", "-inf" and
/// "nan" for non-finite values.
std::string format_double(double value);

std::string render_csv(const Table& table);
/// Array of row objects, one object per line, keys in column order.
std::string render_json(const Table& table);

}  // namespace qhd::toolkit
