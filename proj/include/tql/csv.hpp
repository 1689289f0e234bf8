#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tql/core.hpp"

namespace tql {

/// Ingestion failure with the 1-based cell position it points at.
struct CsvError : std::runtime_error {
    std::size_t line;
    std::size_t column;

    CsvError(std::size_t l, std::size_t c, const std::string& message)
        : std::runtime_error(message), line(l), column(c) {}
};

namespace detail {

struct CsvCell {
    std::string text;
    std::size_t line;
    std::size_t column;
};

// RFC-4180 field splitting: quoted fields may hold commas, quotes doubled
// as "", and embedded line breaks; records end at an unquoted LF or CRLF.
// A UTF-8 byte-order mark at the start of the text is dropped.
inline std::vector<std::vector<CsvCell>> split_csv(const std::string& text) {
    std::vector<std::vector<CsvCell>> records;
    std::size_t i = 0, line = 1, column = 1;
    const std::size_t n = text.size();
    if (n >= 3 && text[0] == '\xEF' && text[1] == '\xBB' && text[2] == '\xBF') i = 3;

    std::vector<CsvCell> record;
    CsvCell cell{{}, line, column};
    bool in_quotes = false;
    bool after_quotes = false;  // a closing quote was seen; only , or EOL may follow
    bool any_content = false;   // the current record has seen any character

    const auto advance = [&](char c) {
        if (c == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
        ++i;
    };
    const auto end_cell = [&] {
        record.push_back(std::move(cell));
        cell = CsvCell{{}, line, column};
        after_quotes = false;
    };
    const auto end_record = [&] {
        end_cell();
        records.push_back(std::move(record));
        record.clear();
        cell = CsvCell{{}, line, column};
        any_content = false;
    };

    while (i < n) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < n && text[i + 1] == '"') {
                    cell.text += '"';
                    advance(c);
                    advance('"');
                } else {
                    in_quotes = false;
                    after_quotes = true;
                    advance(c);
                }
            } else {
                cell.text += c;
                advance(c);
            }
            continue;
        }
        if (c == '"') {
            if (!cell.text.empty() || after_quotes)
                throw CsvError(line, column, "quote inside an unquoted field");
            in_quotes = true;
            any_content = true;
            advance(c);
            continue;
        }
        if (c == ',') {
            advance(c);
            end_cell();
            any_content = true;
            continue;
        }
        if (c == '\r' && i + 1 < n && text[i + 1] == '\n') {
            advance(c);
            advance('\n');
            end_record();
            continue;
        }
        if (c == '\n') {
            advance(c);
            end_record();
            continue;
        }
        if (after_quotes)
            throw CsvError(line, column, "content after a closing quote");
        cell.text += c;
        any_content = true;
        advance(c);
    }
    if (in_quotes) throw CsvError(cell.line, cell.column, "unterminated quoted field");
    if (any_content || !cell.text.empty() || !record.empty()) end_record();
    return records;
}

// A cell is numeric when the whole text parses as a float. A value that
// parses but is not finite (nan, inf, overflow) is rejected outright so no
// non-finite number can enter a dataset.
enum class CellClass { Numeric, Text, NonFinite };

inline CellClass classify_cell(const std::string& text, double& value) {
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto res = std::from_chars(first, last, value);
    if (res.ptr != last) return CellClass::Text;
    if (res.ec == std::errc::result_out_of_range) return CellClass::NonFinite;
    if (res.ec != std::errc{}) return CellClass::Text;
    return std::isfinite(value) ? CellClass::Numeric : CellClass::NonFinite;
}

}  // namespace detail

/// Parses one CSV document into a dataset. The first record is the header;
/// names must be unique and non-empty. A column is Number when every cell
/// parses fully as a finite float, otherwise Text. Empty cells are errors
/// (there is no null), as are NaN or infinite numeric literals. Duplicate
/// rows collapse under set semantics.
inline Dataset parse_csv(const std::string& text, const std::string& name) {
    const auto records = detail::split_csv(text);
    if (records.empty()) throw CsvError(1, 1, "empty input: a header row is required");

    const auto& header = records.front();
    std::vector<std::string> attrs;
    attrs.reserve(header.size());
    for (const auto& cell : header) {
        if (cell.text.empty())
            throw CsvError(cell.line, cell.column, "empty header name");
        for (const std::string& seen : attrs)
            if (seen == cell.text)
                throw CsvError(cell.line, cell.column,
                               "duplicate header '" + cell.text + "'");
        attrs.push_back(cell.text);
    }

    const std::size_t arity = attrs.size();
    std::vector<bool> numeric(arity, true);
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& record = records[r];
        if (record.size() != arity)
            throw CsvError(record.front().line, record.front().column,
                           "row has " + std::to_string(record.size()) + " cell(s), expected " +
                               std::to_string(arity));
        for (std::size_t c = 0; c < arity; ++c) {
            const auto& cell = record[c];
            if (cell.text.empty()) throw CsvError(cell.line, cell.column, "empty cell");
            double ignored = 0.0;
            switch (detail::classify_cell(cell.text, ignored)) {
                case detail::CellClass::Numeric: break;
                case detail::CellClass::Text: numeric[c] = false; break;
                case detail::CellClass::NonFinite:
                    throw CsvError(cell.line, cell.column,
                                   "non-finite numeric literal '" + cell.text + "'");
            }
        }
    }

    std::vector<Kind> kinds;
    kinds.reserve(arity);
    for (std::size_t c = 0; c < arity; ++c)
        kinds.push_back(records.size() > 1 && numeric[c] ? Kind::Number : Kind::Text);

    std::vector<Row> rows;
    rows.reserve(records.size() - 1);
    for (std::size_t r = 1; r < records.size(); ++r) {
        Row row;
        row.reserve(arity);
        for (std::size_t c = 0; c < arity; ++c) {
            const std::string& cell = records[r][c].text;
            if (kinds[c] == Kind::Number) {
                double value = 0.0;
                detail::classify_cell(cell, value);
                row.emplace_back(value);
            } else {
                row.emplace_back(cell);
            }
        }
        rows.push_back(std::move(row));
    }
    return Dataset(name, std::move(attrs), std::move(kinds), std::move(rows));
}

}  // namespace tql
