#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tql/core.hpp"

namespace tql {

enum class Cmp { Eq, Ne, Gt, Ge, Lt, Le };

inline const char* cmp_symbol(Cmp c) {
    switch (c) {
        case Cmp::Eq: return "==";
        case Cmp::Ne: return "!=";
        case Cmp::Gt: return ">";
        case Cmp::Ge: return ">=";
        case Cmp::Lt: return "<";
        case Cmp::Le: return "<=";
    }
    return "?";
}

inline bool cmp_holds(Cmp c, int three_way) {
    switch (c) {
        case Cmp::Eq: return three_way == 0;
        case Cmp::Ne: return three_way != 0;
        case Cmp::Gt: return three_way > 0;
        case Cmp::Ge: return three_way >= 0;
        case Cmp::Lt: return three_way < 0;
        case Cmp::Le: return three_way <= 0;
    }
    return false;
}

struct Predicate;
using PredicatePtr = std::shared_ptr<const Predicate>;

struct AttrCmpAttr {
    std::string lhs;
    Cmp cmp;
    std::string rhs;
};

struct AttrCmpVal {
    std::string attr;
    Cmp cmp;
    Value value;
};

struct PredNot {
    PredicatePtr inner;
};

struct PredAnd {
    PredicatePtr lhs;
    PredicatePtr rhs;
};

struct PredOr {
    PredicatePtr lhs;
    PredicatePtr rhs;
};

/// Boolean expression tree over attribute comparisons. Attribute names are
/// plain strings; resolution against a schema happens at evaluation time.
struct Predicate {
    std::variant<AttrCmpAttr, AttrCmpVal, PredNot, PredAnd, PredOr> node;
};

inline PredicatePtr attr_cmp_attr(std::string lhs, Cmp cmp, std::string rhs) {
    return std::make_shared<Predicate>(Predicate{AttrCmpAttr{std::move(lhs), cmp, std::move(rhs)}});
}
inline PredicatePtr attr_cmp_val(std::string attr, Cmp cmp, Value value) {
    return std::make_shared<Predicate>(
        Predicate{AttrCmpVal{std::move(attr), cmp, std::move(value)}});
}
inline PredicatePtr pred_not(PredicatePtr inner) {
    return std::make_shared<Predicate>(Predicate{PredNot{std::move(inner)}});
}
inline PredicatePtr pred_and(PredicatePtr lhs, PredicatePtr rhs) {
    return std::make_shared<Predicate>(Predicate{PredAnd{std::move(lhs), std::move(rhs)}});
}
inline PredicatePtr pred_or(PredicatePtr lhs, PredicatePtr rhs) {
    return std::make_shared<Predicate>(Predicate{PredOr{std::move(lhs), std::move(rhs)}});
}

/// Raised when a predicate names an attribute absent from the schema or
/// compares text with a number. Relational operations convert this into
/// their null result.
struct PredicateError : std::runtime_error {
    explicit PredicateError(const std::string& msg) : std::runtime_error(msg) {}
};

namespace detail {

inline std::size_t attr_index_or_throw(const std::vector<std::string>& attrs,
                                       const std::string& name) {
    for (std::size_t i = 0; i < attrs.size(); ++i)
        if (attrs[i] == name) return i;
    throw PredicateError("unknown attribute '" + name + "' in predicate");
}

inline int compare_or_throw(const Value& a, const Value& b) {
    if (a.kind() != b.kind())
        throw PredicateError("cannot compare " + std::string(kind_name(a.kind())) + " with " +
                             std::string(kind_name(b.kind())));
    return a.compare(b);
}

}  // namespace detail

/// Evaluates `phi` against one row. Both operands of && and || are always
/// evaluated, so an attribute error surfaces regardless of the other side.
inline bool eval_predicate(const Row& row, const std::vector<std::string>& attrs,
                           const Predicate& phi) {
    struct Visitor {
        const Row& row;
        const std::vector<std::string>& attrs;

        bool operator()(const AttrCmpAttr& p) const {
            const Value& a = row[detail::attr_index_or_throw(attrs, p.lhs)];
            const Value& b = row[detail::attr_index_or_throw(attrs, p.rhs)];
            return cmp_holds(p.cmp, detail::compare_or_throw(a, b));
        }
        bool operator()(const AttrCmpVal& p) const {
            const Value& a = row[detail::attr_index_or_throw(attrs, p.attr)];
            return cmp_holds(p.cmp, detail::compare_or_throw(a, p.value));
        }
        bool operator()(const PredNot& p) const { return !eval_predicate(row, attrs, *p.inner); }
        bool operator()(const PredAnd& p) const {
            const bool l = eval_predicate(row, attrs, *p.lhs);
            const bool r = eval_predicate(row, attrs, *p.rhs);
            return l && r;
        }
        bool operator()(const PredOr& p) const {
            const bool l = eval_predicate(row, attrs, *p.lhs);
            const bool r = eval_predicate(row, attrs, *p.rhs);
            return l || r;
        }
    };
    return std::visit(Visitor{row, attrs}, phi.node);
}

inline std::string to_string(const Predicate& p);

namespace detail {

inline std::string value_literal(const Value& v) {
    if (v.kind() == Kind::Number) return format_number(v.number());
    return "\"" + v.text() + "\"";
}

}  // namespace detail

inline std::string to_string(const Predicate& p) {
    struct Visitor {
        std::string operator()(const AttrCmpAttr& n) const {
            return n.lhs + " " + cmp_symbol(n.cmp) + " " + n.rhs;
        }
        std::string operator()(const AttrCmpVal& n) const {
            return n.attr + " " + cmp_symbol(n.cmp) + " " + detail::value_literal(n.value);
        }
        std::string operator()(const PredNot& n) const { return "!(" + to_string(*n.inner) + ")"; }
        std::string operator()(const PredAnd& n) const {
            return "(" + to_string(*n.lhs) + " && " + to_string(*n.rhs) + ")";
        }
        std::string operator()(const PredOr& n) const {
            return "(" + to_string(*n.lhs) + " || " + to_string(*n.rhs) + ")";
        }
    };
    return std::visit(Visitor{}, p.node);
}

inline bool predicates_equal(const Predicate& a, const Predicate& b) {
    if (a.node.index() != b.node.index()) return false;
    struct Visitor {
        const Predicate& other;
        bool operator()(const AttrCmpAttr& n) const {
            const auto& o = std::get<AttrCmpAttr>(other.node);
            return n.lhs == o.lhs && n.cmp == o.cmp && n.rhs == o.rhs;
        }
        bool operator()(const AttrCmpVal& n) const {
            const auto& o = std::get<AttrCmpVal>(other.node);
            return n.attr == o.attr && n.cmp == o.cmp && n.value == o.value;
        }
        bool operator()(const PredNot& n) const {
            return predicates_equal(*n.inner, *std::get<PredNot>(other.node).inner);
        }
        bool operator()(const PredAnd& n) const {
            const auto& o = std::get<PredAnd>(other.node);
            return predicates_equal(*n.lhs, *o.lhs) && predicates_equal(*n.rhs, *o.rhs);
        }
        bool operator()(const PredOr& n) const {
            const auto& o = std::get<PredOr>(other.node);
            return predicates_equal(*n.lhs, *o.lhs) && predicates_equal(*n.rhs, *o.rhs);
        }
    };
    return std::visit(Visitor{b}, a.node);
}

}  // namespace tql
