#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tql/core.hpp"
#include "tql/predicate.hpp"

namespace tql {

// ---------------------------------------------------------------------------
// Type tests
// ---------------------------------------------------------------------------

/// Attribute-presence test. The list is non-empty and duplicate-free.
struct HasAttributes {
    std::vector<std::string> attrs;
};

/// Passes iff some row satisfies the predicate. Fails on an empty row set.
struct ExistsPred {
    PredicatePtr pred;
};

/// Passes iff every row satisfies the predicate. Vacuously true when empty.
struct ForallPred {
    PredicatePtr pred;
};

using TypeTest = std::variant<HasAttributes, ExistsPred, ForallPred>;

inline TypeTest has_attributes(std::vector<std::string> attrs) {
    if (attrs.empty()) throw std::invalid_argument("HasAttributes: empty attribute list");
    for (std::size_t i = 0; i < attrs.size(); ++i)
        for (std::size_t j = i + 1; j < attrs.size(); ++j)
            if (attrs[i] == attrs[j])
                throw std::invalid_argument("HasAttributes: duplicate attribute '" + attrs[i] +
                                            "'");
    return HasAttributes{std::move(attrs)};
}
inline TypeTest exists_pred(PredicatePtr p) { return ExistsPred{std::move(p)}; }
inline TypeTest forall_pred(PredicatePtr p) { return ForallPred{std::move(p)}; }

inline std::string to_string(const TypeTest& t) {
    struct Visitor {
        std::string operator()(const HasAttributes& n) const {
            std::string out;
            for (std::size_t i = 0; i < n.attrs.size(); ++i) {
                if (i) out += ", ";
                out += n.attrs[i];
            }
            return out;
        }
        std::string operator()(const ExistsPred& n) const {
            return "exists[" + to_string(*n.pred) + "]";
        }
        std::string operator()(const ForallPred& n) const {
            return "forall[" + to_string(*n.pred) + "]";
        }
    };
    return std::visit(Visitor{}, t);
}

// ---------------------------------------------------------------------------
// Relational operations
//
// Every operation is a pure function from datasets to a RelResult. Illegal
// combinations (incompatible schemas, missing attributes, mixed-kind
// comparisons) produce the null result rather than throwing.
// ---------------------------------------------------------------------------

namespace detail {

// Maps each attribute of `target` to its column index in `source`, provided
// the attribute-name sets coincide and the per-name kinds match.
inline std::optional<std::vector<std::size_t>> union_mapping(const Dataset& target,
                                                             const Dataset& source) {
    if (target.arity() != source.arity()) return std::nullopt;
    std::vector<std::size_t> mapping;
    mapping.reserve(target.arity());
    for (std::size_t i = 0; i < target.arity(); ++i) {
        const auto j = source.attribute_index(target.attributes()[i]);
        if (!j) return std::nullopt;
        if (source.kinds()[*j] != target.kinds()[i]) return std::nullopt;
        mapping.push_back(*j);
    }
    return mapping;
}

inline Row remap(const Row& r, const std::vector<std::size_t>& mapping) {
    Row out;
    out.reserve(mapping.size());
    for (std::size_t j : mapping) out.push_back(r[j]);
    return out;
}

}  // namespace detail

/// Set union. Requires equal attribute-name sets with matching column kinds;
/// the right operand's columns are reordered to the left schema order.
inline RelResult union_of(const Dataset& d1, const Dataset& d2) {
    const auto mapping = detail::union_mapping(d1, d2);
    if (!mapping) return RelResult::null("datasets are not union compatible");
    std::vector<Row> rows = d1.rows();
    for (const Row& r : d2.rows()) rows.push_back(detail::remap(r, *mapping));
    return RelResult::ok(Dataset({}, d1.attributes(), d1.kinds(), std::move(rows)));
}

/// Set difference under the union-compatibility rule.
inline RelResult difference(const Dataset& d1, const Dataset& d2) {
    const auto mapping = detail::union_mapping(d1, d2);
    if (!mapping) return RelResult::null("datasets are not union compatible");
    std::vector<Row> rows;
    for (const Row& r : d1.rows()) {
        bool in_d2 = false;
        for (const Row& s : d2.rows())
            if (detail::remap(s, *mapping) == r) {
                in_d2 = true;
                break;
            }
        if (!in_d2) rows.push_back(r);
    }
    return RelResult::ok(Dataset({}, d1.attributes(), d1.kinds(), std::move(rows)));
}

/// Cartesian product. The attribute-name sets must be disjoint.
inline RelResult product(const Dataset& d1, const Dataset& d2) {
    for (const std::string& a : d1.attributes())
        if (d2.has_attribute(a))
            return RelResult::null("product operands share attribute '" + a + "'");
    std::vector<std::string> attrs = d1.attributes();
    attrs.insert(attrs.end(), d2.attributes().begin(), d2.attributes().end());
    std::vector<Kind> kinds = d1.kinds();
    kinds.insert(kinds.end(), d2.kinds().begin(), d2.kinds().end());
    std::vector<Row> rows;
    rows.reserve(d1.row_count() * d2.row_count());
    for (const Row& r1 : d1.rows())
        for (const Row& r2 : d2.rows()) {
            Row r = r1;
            r.insert(r.end(), r2.begin(), r2.end());
            rows.push_back(std::move(r));
        }
    return RelResult::ok(Dataset({}, std::move(attrs), std::move(kinds), std::move(rows)));
}

/// Restriction to the named attributes, in the requested order, with
/// duplicate rows collapsed. The list must be non-empty and duplicate-free.
inline RelResult project(const Dataset& d, const std::vector<std::string>& attrs) {
    if (attrs.empty()) return RelResult::null("projection list is empty");
    for (std::size_t i = 0; i < attrs.size(); ++i)
        for (std::size_t j = i + 1; j < attrs.size(); ++j)
            if (attrs[i] == attrs[j])
                return RelResult::null("projection repeats attribute '" + attrs[i] + "'");
    std::vector<std::size_t> indices;
    std::vector<Kind> kinds;
    for (const std::string& a : attrs) {
        const auto idx = d.attribute_index(a);
        if (!idx) return RelResult::null("dataset lacks attribute '" + a + "'");
        indices.push_back(*idx);
        kinds.push_back(d.kinds()[*idx]);
    }
    std::vector<Row> rows;
    rows.reserve(d.row_count());
    for (const Row& r : d.rows()) rows.push_back(detail::remap(r, indices));
    return RelResult::ok(Dataset({}, attrs, std::move(kinds), std::move(rows)));
}

/// The rows of `d` satisfying `phi`. An empty selection is a failure, as is
/// a predicate error on any row.
inline RelResult select(const Dataset& d, const Predicate& phi) {
    std::vector<Row> rows;
    try {
        for (const Row& r : d.rows())
            if (eval_predicate(r, d.attributes(), phi)) rows.push_back(r);
    } catch (const PredicateError& e) {
        return RelResult::null(e.what());
    }
    if (rows.empty()) return RelResult::null("no row satisfies the selection predicate");
    return RelResult::ok(Dataset({}, d.attributes(), d.kinds(), std::move(rows)));
}

/// Renames column `from` to `to`. Defined iff `from` is present and `to` is
/// absent; with `from` == `to` those requirements are contradictory, so the
/// result is null.
inline RelResult rename(const Dataset& d, const std::string& from, const std::string& to) {
    if (d.has_attribute(to)) return RelResult::null("dataset already has attribute '" + to + "'");
    const auto idx = d.attribute_index(from);
    if (!idx) return RelResult::null("dataset lacks attribute '" + from + "'");
    std::vector<std::string> attrs = d.attributes();
    attrs[*idx] = to;
    return RelResult::ok(Dataset({}, std::move(attrs), d.kinds(), d.rows()));
}

/// Runs one type test. Passing returns exactly the input dataset; failing
/// returns null. A partial identity, never a modified dataset.
inline RelResult test(const Dataset& d, const TypeTest& t) {
    struct Visitor {
        const Dataset& d;

        RelResult operator()(const HasAttributes& n) const {
            for (const std::string& a : n.attrs)
                if (!d.has_attribute(a))
                    return RelResult::null("dataset lacks attribute '" + a + "'");
            return RelResult::ok(d);
        }
        RelResult operator()(const ExistsPred& n) const {
            try {
                for (const Row& r : d.rows())
                    if (eval_predicate(r, d.attributes(), *n.pred)) return RelResult::ok(d);
            } catch (const PredicateError& e) {
                return RelResult::null(e.what());
            }
            return RelResult::null("no row satisfies the existential test");
        }
        RelResult operator()(const ForallPred& n) const {
            try {
                for (const Row& r : d.rows())
                    if (!eval_predicate(r, d.attributes(), *n.pred))
                        return RelResult::null("a row fails the universal test");
            } catch (const PredicateError& e) {
                return RelResult::null(e.what());
            }
            return RelResult::ok(d);
        }
    };
    return std::visit(Visitor{d}, t);
}

}  // namespace tql
