#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace tql {

/// Column kind. Every column of a dataset holds values of exactly one kind.
enum class Kind { Text, Number };

inline const char* kind_name(Kind k) { return k == Kind::Text ? "text" : "number"; }

/// A scalar cell value: unicode text or a finite IEEE double.
/// NaN is rejected at construction so value equality stays reflexive.
class Value {
public:
    Value(std::string text) : v_(std::move(text)) {}
    Value(const char* text) : v_(std::string(text)) {}
    Value(double number) : v_(number) {
        if (std::isnan(number)) throw std::invalid_argument("Value: NaN is not a valid number");
    }

    Kind kind() const { return std::holds_alternative<std::string>(v_) ? Kind::Text : Kind::Number; }
    const std::string& text() const { return std::get<std::string>(v_); }
    double number() const { return std::get<double>(v_); }

    bool operator==(const Value& o) const { return v_ == o.v_; }
    bool operator!=(const Value& o) const { return !(*this == o); }

    /// Three-way comparison; only defined between values of the same kind.
    /// Text compares byte-wise, numbers numerically.
    int compare(const Value& o) const {
        if (kind() != o.kind())
            throw std::invalid_argument("Value::compare: cannot compare text with number");
        if (kind() == Kind::Text) {
            const int c = text().compare(o.text());
            return c < 0 ? -1 : c > 0 ? 1 : 0;
        }
        return number() < o.number() ? -1 : number() > o.number() ? 1 : 0;
    }

    bool operator<(const Value& o) const { return compare(o) < 0; }

private:
    std::variant<std::string, double> v_;
};

/// Shortest decimal form that parses back to the same double.
inline std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline std::string to_string(const Value& v) {
    return v.kind() == Kind::Text ? v.text() : format_number(v.number());
}

using Row = std::vector<Value>;

inline bool row_less(const Row& a, const Row& b) {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        const int c = a[i].compare(b[i]);
        if (c != 0) return c < 0;
    }
    return a.size() < b.size();
}

/// A named relation: ordered attribute schema, per-column kinds, and a
/// duplicate-free set of rows. Rows are kept sorted so iteration order,
/// rendering, and equality are deterministic. Instances are immutable.
class Dataset {
public:
    Dataset(std::string name, std::vector<std::string> attrs, std::vector<Kind> kinds,
            std::vector<Row> rows)
        : name_(std::move(name)),
          attrs_(std::move(attrs)),
          kinds_(std::move(kinds)),
          rows_(std::move(rows)) {
        if (kinds_.size() != attrs_.size())
            throw std::invalid_argument("Dataset: one kind per attribute required");
        for (std::size_t i = 0; i < attrs_.size(); ++i)
            for (std::size_t j = i + 1; j < attrs_.size(); ++j)
                if (attrs_[i] == attrs_[j])
                    throw std::invalid_argument("Dataset: duplicate attribute '" + attrs_[i] + "'");
        for (const Row& r : rows_) {
            if (r.size() != attrs_.size())
                throw std::invalid_argument("Dataset: row arity does not match schema");
            for (std::size_t i = 0; i < r.size(); ++i)
                if (r[i].kind() != kinds_[i])
                    throw std::invalid_argument("Dataset: value kind mismatch in column '" +
                                                attrs_[i] + "'");
        }
        std::sort(rows_.begin(), rows_.end(), row_less);
        rows_.erase(std::unique(rows_.begin(), rows_.end()), rows_.end());
    }

    /// Convenience constructor inferring column kinds from the first row.
    /// An empty row set defaults every column to Text.
    static Dataset infer(std::string name, std::vector<std::string> attrs, std::vector<Row> rows) {
        std::vector<Kind> kinds;
        if (rows.empty()) {
            kinds.assign(attrs.size(), Kind::Text);
        } else {
            for (const Value& v : rows.front()) kinds.push_back(v.kind());
        }
        return Dataset(std::move(name), std::move(attrs), std::move(kinds), std::move(rows));
    }

    const std::string& name() const { return name_; }
    const std::vector<std::string>& attributes() const { return attrs_; }
    const std::vector<Kind>& kinds() const { return kinds_; }
    const std::vector<Row>& rows() const { return rows_; }
    std::size_t arity() const { return attrs_.size(); }
    std::size_t row_count() const { return rows_.size(); }

    std::optional<std::size_t> attribute_index(std::string_view attr) const {
        for (std::size_t i = 0; i < attrs_.size(); ++i)
            if (attrs_[i] == attr) return i;
        return std::nullopt;
    }

    bool has_attribute(std::string_view attr) const { return attribute_index(attr).has_value(); }

    Dataset with_name(std::string name) const {
        Dataset d = *this;
        d.name_ = std::move(name);
        return d;
    }

    /// Equality over schema order, kinds, and row set. The provenance name
    /// is a display label and does not participate.
    bool operator==(const Dataset& o) const {
        return attrs_ == o.attrs_ && kinds_ == o.kinds_ && rows_ == o.rows_;
    }
    bool operator!=(const Dataset& o) const { return !(*this == o); }

private:
    std::string name_;
    std::vector<std::string> attrs_;
    std::vector<Kind> kinds_;
    std::vector<Row> rows_;
};

/// Injective encoding of a dataset up to column order: attributes are sorted
/// and rows re-sorted under that permutation. Two datasets are the same
/// relation iff their keys match.
inline std::string canonical_key(const Dataset& d) {
    std::vector<std::size_t> order(d.arity());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return d.attributes()[a] < d.attributes()[b]; });

    std::string key;
    for (std::size_t i : order) {
        const std::string& a = d.attributes()[i];
        key += std::to_string(a.size());
        key += ':';
        key += a;
        key += d.kinds()[i] == Kind::Text ? 'T' : 'N';
        key += ';';
    }
    std::vector<std::string> encoded;
    encoded.reserve(d.row_count());
    for (const Row& r : d.rows()) {
        std::string e;
        for (std::size_t i : order) {
            const std::string cell = to_string(r[i]);
            e += std::to_string(cell.size());
            e += ':';
            e += cell;
            e += r[i].kind() == Kind::Text ? 'T' : 'N';
        }
        encoded.push_back(std::move(e));
    }
    std::sort(encoded.begin(), encoded.end());
    for (const std::string& e : encoded) {
        key += e;
        key += '|';
    }
    return key;
}

/// Equality up to column order, ignoring provenance names.
inline bool structurally_equal(const Dataset& a, const Dataset& b) {
    return canonical_key(a) == canonical_key(b);
}

/// Result of a relational operation: a dataset, or the distinguished failure
/// value. The diagnostic on a failure is display-only and carries no
/// semantic weight.
class RelResult {
public:
    static RelResult ok(Dataset d) { return RelResult(std::move(d), {}); }
    static RelResult null(std::string diagnostic = {}) {
        return RelResult(std::nullopt, std::move(diagnostic));
    }

    bool is_ok() const { return data_.has_value(); }
    explicit operator bool() const { return is_ok(); }

    const Dataset& dataset() const {
        if (!data_) throw std::logic_error("RelResult: no dataset in a null result");
        return *data_;
    }

    const std::string& diagnostic() const { return diag_; }

private:
    RelResult(std::optional<Dataset> d, std::string diag)
        : data_(std::move(d)), diag_(std::move(diag)) {}

    std::optional<Dataset> data_;
    std::string diag_;
};

}  // namespace tql
