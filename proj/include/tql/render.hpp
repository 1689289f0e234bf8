#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tql/core.hpp"

namespace tql {

enum class OutputFormat { Table, Csv };

namespace detail {

inline bool csv_needs_quotes(const std::string& cell) {
    if (cell.empty()) return true;
    if (cell.front() == ' ' || cell.back() == ' ') return true;
    for (const char c : cell)
        if (c == ',' || c == '"' || c == '\n' || c == '\r') return true;
    return false;
}

inline std::string csv_field(const std::string& cell) {
    if (!csv_needs_quotes(cell)) return cell;
    std::string out = "\"";
    for (const char c : cell) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace detail

/// Table: aligned columns under a header rule. Csv: output that ingests back
/// through parse_csv. Rows appear in the dataset's canonical sorted order.
inline std::string render_dataset(const Dataset& d, OutputFormat format) {
    if (format == OutputFormat::Csv) {
        std::string out;
        for (std::size_t c = 0; c < d.arity(); ++c) {
            if (c) out += ',';
            out += detail::csv_field(d.attributes()[c]);
        }
        out += '\n';
        for (const Row& row : d.rows()) {
            for (std::size_t c = 0; c < d.arity(); ++c) {
                if (c) out += ',';
                out += detail::csv_field(to_string(row[c]));
            }
            out += '\n';
        }
        return out;
    }

    std::vector<std::size_t> widths(d.arity());
    std::vector<std::vector<std::string>> cells;
    cells.reserve(d.row_count());
    for (std::size_t c = 0; c < d.arity(); ++c) widths[c] = d.attributes()[c].size();
    for (const Row& row : d.rows()) {
        std::vector<std::string> line;
        line.reserve(d.arity());
        for (std::size_t c = 0; c < d.arity(); ++c) {
            line.push_back(to_string(row[c]));
            if (line.back().size() > widths[c]) widths[c] = line.back().size();
        }
        cells.push_back(std::move(line));
    }

    const auto emit_row = [&](const std::vector<std::string>& line) {
        std::string out;
        for (std::size_t c = 0; c < d.arity(); ++c) {
            if (c) out += " | ";
            out += line[c];
            if (c + 1 < d.arity()) out += std::string(widths[c] - line[c].size(), ' ');
        }
        return out + "\n";
    };

    std::string out = emit_row(d.attributes());
    for (std::size_t c = 0; c < d.arity(); ++c) {
        if (c) out += "-+-";
        out += std::string(widths[c], '-');
    }
    out += '\n';
    for (const auto& line : cells) out += emit_row(line);
    return out;
}

}  // namespace tql
