#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "phasekit/errors.hpp"

namespace pkcli {

enum class OutFormat { csv, jsonl };

inline std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

// One table cell. `raw` text is emitted verbatim in JSONL (numbers, booleans,
// null) and as-is in CSV; quoted cells become JSON strings.
struct Cell {
    std::string text;
    bool quoted = false;
};

inline Cell cell_num(double v) { return {g17(v), false}; }
inline Cell cell_int(std::int64_t v) { return {std::to_string(v), false}; }
inline Cell cell_uint(std::uint64_t v) { return {std::to_string(v), false}; }
inline Cell cell_bool(bool v) { return {v ? "true" : "false", false}; }
inline Cell cell_str(std::string s) { return {std::move(s), true}; }
inline Cell cell_null() { return {"", false}; }

// Row-major table with stable column order; renders to CSV (header row, comma
// separator, '.' decimals via %.17g, LF line endings) or JSON lines.
class Table {
public:
    explicit Table(std::vector<std::string> columns) : cols_(std::move(columns)) {}

    void add_row(std::vector<Cell> row) {
        if (row.size() != cols_.size())
            throw phasekit::InvalidInput("internal: table row width mismatch");
        rows_.push_back(std::move(row));
    }

    std::size_t n_rows() const { return rows_.size(); }

    std::string render(OutFormat f) const {
        std::string out;
        if (f == OutFormat::csv) {
            for (std::size_t c = 0; c < cols_.size(); ++c) {
                if (c) out += ',';
                out += cols_[c];
            }
            out += '\n';
            for (const auto& row : rows_) {
                for (std::size_t c = 0; c < row.size(); ++c) {
                    if (c) out += ',';
                    out += row[c].text;
                }
                out += '\n';
            }
        } else {
            for (const auto& row : rows_) {
                out += '{';
                for (std::size_t c = 0; c < row.size(); ++c) {
                    if (c) out += ',';
                    out += '"';
                    out += json_escape(cols_[c]);
                    out += "\":";
                    if (row[c].quoted) {
                        out += '"';
                        out += json_escape(row[c].text);
                        out += '"';
                    } else if (row[c].text.empty()) {
                        out += "null";
                    } else {
                        out += row[c].text;
                    }
                }
                out += "}\n";
            }
        }
        return out;
    }

private:
    std::vector<std::string> cols_;
    std::vector<std::vector<Cell>> rows_;
};

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw phasekit::InvalidInput("cannot open output file: " + path);
    f.write(content.data(), std::streamsize(content.size()));
    if (!f) throw phasekit::ResourceLimit("failed writing output file: " + path);
}

// Writes the table to `out_path`, or to stdout when the path is empty.
inline void emit_table(const Table& t, OutFormat f, const std::string& out_path) {
    const std::string body = t.render(f);
    if (out_path.empty())
        std::cout << body;
    else
        write_text_file(out_path, body);
}

inline OutFormat parse_format(const std::string& s) {
    if (s == "csv") return OutFormat::csv;
    if (s == "jsonl") return OutFormat::jsonl;
    throw phasekit::InvalidInput("unknown --format '" + s + "' (expected csv or jsonl)");
}

inline std::string format_ext(OutFormat f) { return f == OutFormat::csv ? "csv" : "jsonl"; }

} // namespace pkcli
