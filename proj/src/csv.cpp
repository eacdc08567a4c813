#include "flowtrace/csv.hpp"

#include <fstream>
#include <ostream>

#include "flowtrace/error.hpp"

namespace flowtrace {

bool split_csv_line(std::string_view line, std::vector<std::string>& out) {
    out.clear();
    std::string field;
    bool quoted = false;
    size_t i = 0;
    while (i < line.size()) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"' && field.empty()) {
            quoted = true;
        } else if (c == ',') {
            out.push_back(std::move(field));
            field.clear();
        } else {
            field += c;
        }
        ++i;
    }
    if (quoted) return false;
    out.push_back(std::move(field));
    return true;
}

std::string csv_escape(std::string_view field) {
    bool needs = field.find_first_of(",\"\n\r") != std::string_view::npos;
    if (!needs) return std::string(field);
    std::string s = "\"";
    for (char c : field) {
        if (c == '"') s += '"';
        s += c;
    }
    s += '"';
    return s;
}

void write_csv_row(std::ostream& os, const std::vector<std::string>& fields) {
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) os << ',';
        os << csv_escape(fields[i]);
    }
    os << '\n';
}

std::vector<CsvRow> read_csv(const std::string& path,
                             const std::vector<std::string>& header) {
    std::ifstream in(path);
    if (!in) fail_input("cannot open " + path);

    std::vector<CsvRow> rows;
    std::string line;
    size_t lineno = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        if (!split_csv_line(line, fields))
            fail_input(path + ":" + std::to_string(lineno) + ": unbalanced quotes");
        if (!saw_header) {
            if (fields != header) {
                std::string want;
                for (size_t i = 0; i < header.size(); ++i) {
                    if (i) want += ',';
                    want += header[i];
                }
                fail_input(path + ": missing or wrong header, expected `" + want + "`");
            }
            saw_header = true;
            continue;
        }
        if (fields.size() != header.size())
            fail_input(path + ":" + std::to_string(lineno) + ": expected " +
                       std::to_string(header.size()) + " fields, got " +
                       std::to_string(fields.size()));
        rows.push_back({lineno, std::move(fields)});
    }
    if (!saw_header)
        fail_input(path + ": missing or wrong header");
    return rows;
}

} // namespace flowtrace
