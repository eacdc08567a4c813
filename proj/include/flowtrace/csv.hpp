// Small CSV reader/writer. Handles double-quoted fields; nothing fancier.

#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace flowtrace {

// Splits one CSV line into fields. Supports RFC-4180 style quoting
// ("a,b" and "" escapes); returns false on unbalanced quotes.
bool split_csv_line(std::string_view line, std::vector<std::string>& out);

// Quotes a field only when it needs it.
std::string csv_escape(std::string_view field);

void write_csv_row(std::ostream& os, const std::vector<std::string>& fields);

struct CsvRow {
    std::size_t line = 0;  // 1-based line number in the file
    std::vector<std::string> fields;
};

// Reads a whole CSV file. First row must equal `header` (exact match) and
// every row must have as many fields as the header, else Error{Input}.
// Skips blank lines. Rows keep raw field strings.
std::vector<CsvRow> read_csv(const std::string& path,
                             const std::vector<std::string>& header);

} // namespace flowtrace
