#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tql/core.hpp"
#include "tql/lexer.hpp"
#include "tql/predicate.hpp"

namespace tql {

// ---------------------------------------------------------------------------
// Surface-syntax AST
//
// Expressions carry no parentheses: the grammar fixes * above + and -, all
// left-associative, with postfix [..] binding tightest. The canonical
// printer below is faithful exactly on trees representable under those
// rules, which covers everything the parser can produce.
// ---------------------------------------------------------------------------

struct TqlExpr;
using TqlExprPtr = std::shared_ptr<const TqlExpr>;

enum class TqlBop { Union, Difference, Product };

struct TqlVarRef {
    std::string name;
};
struct TqlDatasetRef {
    std::string name;
};
struct TqlBinary {
    TqlBop op;
    TqlExprPtr left, right;
};
struct TqlRename {
    TqlExprPtr input;
    std::string from, to;
};
struct TqlFilter {
    TqlExprPtr input;
    PredicatePtr pred;
};
struct TqlProjection {
    TqlExprPtr input;
    std::vector<std::string> attrs;  // non-empty
};

struct TqlExpr {
    std::variant<TqlVarRef, TqlDatasetRef, TqlBinary, TqlRename, TqlFilter, TqlProjection> node;
    Span span;
};

inline TqlExprPtr tql_var(std::string name, Span span = {}) {
    return std::make_shared<TqlExpr>(TqlExpr{TqlVarRef{std::move(name)}, span});
}
inline TqlExprPtr tql_dataset(std::string name, Span span = {}) {
    return std::make_shared<TqlExpr>(TqlExpr{TqlDatasetRef{std::move(name)}, span});
}
inline TqlExprPtr tql_binary(TqlBop op, TqlExprPtr l, TqlExprPtr r, Span span = {}) {
    return std::make_shared<TqlExpr>(TqlExpr{TqlBinary{op, std::move(l), std::move(r)}, span});
}
inline TqlExprPtr tql_rename(TqlExprPtr input, std::string from, std::string to,
                             Span span = {}) {
    return std::make_shared<TqlExpr>(
        TqlExpr{TqlRename{std::move(input), std::move(from), std::move(to)}, span});
}
inline TqlExprPtr tql_filter(TqlExprPtr input, PredicatePtr pred, Span span = {}) {
    return std::make_shared<TqlExpr>(
        TqlExpr{TqlFilter{std::move(input), std::move(pred)}, span});
}
inline TqlExprPtr tql_projection(TqlExprPtr input, std::vector<std::string> attrs,
                                 Span span = {}) {
    if (attrs.empty()) throw std::invalid_argument("projection: empty attribute list");
    return std::make_shared<TqlExpr>(
        TqlExpr{TqlProjection{std::move(input), std::move(attrs)}, span});
}

// Type-ascription properties: \/(pred), /\(pred), ['attr'].
struct TqlPrp {
    enum class Kind { Exists, Forall, Attribute };
    Kind kind;
    PredicatePtr pred;  // Exists/Forall only
    std::string attr;   // Attribute only
    Span span;
};

inline TqlPrp prp_exists(PredicatePtr p, Span span = {}) {
    return {TqlPrp::Kind::Exists, std::move(p), {}, span};
}
inline TqlPrp prp_forall(PredicatePtr p, Span span = {}) {
    return {TqlPrp::Kind::Forall, std::move(p), {}, span};
}
inline TqlPrp prp_attribute(std::string attr, Span span = {}) {
    return {TqlPrp::Kind::Attribute, nullptr, std::move(attr), span};
}

struct TqlStmt {
    enum class Kind { FreeDecl, FreeDeclTyped, Assign, AssignTyped, Return };
    Kind kind;
    std::string var;         // all but Return
    std::vector<TqlPrp> tp;  // FreeDeclTyped/AssignTyped; non-empty there
    TqlExprPtr expr;         // Assign/AssignTyped/Return
    Span span;
};

inline TqlStmt tql_free_decl(std::string var, Span span = {}) {
    return {TqlStmt::Kind::FreeDecl, std::move(var), {}, nullptr, span};
}
inline TqlStmt tql_free_decl_typed(std::string var, std::vector<TqlPrp> tp, Span span = {}) {
    return {TqlStmt::Kind::FreeDeclTyped, std::move(var), std::move(tp), nullptr, span};
}
inline TqlStmt tql_assign(std::string var, TqlExprPtr expr, Span span = {}) {
    return {TqlStmt::Kind::Assign, std::move(var), {}, std::move(expr), span};
}
inline TqlStmt tql_assign_typed(std::string var, std::vector<TqlPrp> tp, TqlExprPtr expr,
                                Span span = {}) {
    return {TqlStmt::Kind::AssignTyped, std::move(var), std::move(tp), std::move(expr), span};
}
inline TqlStmt tql_return(TqlExprPtr expr, Span span = {}) {
    return {TqlStmt::Kind::Return, {}, {}, std::move(expr), span};
}

struct TqlProgram {
    std::vector<TqlStmt> stmts;
};

// ---------------------------------------------------------------------------
// Structural equality, ignoring spans
// ---------------------------------------------------------------------------

inline bool exprs_equal(const TqlExprPtr& a, const TqlExprPtr& b) {
    if (a->node.index() != b->node.index()) return false;
    struct Visitor {
        const TqlExpr& other;
        bool operator()(const TqlVarRef& n) const {
            return n.name == std::get<TqlVarRef>(other.node).name;
        }
        bool operator()(const TqlDatasetRef& n) const {
            return n.name == std::get<TqlDatasetRef>(other.node).name;
        }
        bool operator()(const TqlBinary& n) const {
            const auto& o = std::get<TqlBinary>(other.node);
            return n.op == o.op && exprs_equal(n.left, o.left) && exprs_equal(n.right, o.right);
        }
        bool operator()(const TqlRename& n) const {
            const auto& o = std::get<TqlRename>(other.node);
            return n.from == o.from && n.to == o.to && exprs_equal(n.input, o.input);
        }
        bool operator()(const TqlFilter& n) const {
            const auto& o = std::get<TqlFilter>(other.node);
            return predicates_equal(*n.pred, *o.pred) && exprs_equal(n.input, o.input);
        }
        bool operator()(const TqlProjection& n) const {
            const auto& o = std::get<TqlProjection>(other.node);
            return n.attrs == o.attrs && exprs_equal(n.input, o.input);
        }
    };
    return std::visit(Visitor{*b}, a->node);
}

inline bool prps_equal(const TqlPrp& a, const TqlPrp& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == TqlPrp::Kind::Attribute) return a.attr == b.attr;
    return predicates_equal(*a.pred, *b.pred);
}

inline bool stmts_equal(const TqlStmt& a, const TqlStmt& b) {
    if (a.kind != b.kind || a.var != b.var) return false;
    if (a.tp.size() != b.tp.size()) return false;
    for (std::size_t i = 0; i < a.tp.size(); ++i)
        if (!prps_equal(a.tp[i], b.tp[i])) return false;
    if ((a.expr == nullptr) != (b.expr == nullptr)) return false;
    return a.expr == nullptr || exprs_equal(a.expr, b.expr);
}

inline bool programs_equal(const TqlProgram& a, const TqlProgram& b) {
    if (a.stmts.size() != b.stmts.size()) return false;
    for (std::size_t i = 0; i < a.stmts.size(); ++i)
        if (!stmts_equal(a.stmts[i], b.stmts[i])) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Canonical source form. parse(pretty_print(p)) is structurally p for every
// program the parser can produce.
// ---------------------------------------------------------------------------

namespace detail {

inline std::string tql_value_literal(const Value& v) {
    if (v.kind() == Kind::Number) return format_number(v.number());
    return "\"" + v.text() + "\"";  // not reachable from parsed sources
}

inline std::string tql_pred_string(const Predicate& p) {
    struct Visitor {
        std::string operator()(const AttrCmpAttr& n) const {
            return "'" + n.lhs + "' " + cmp_symbol(n.cmp) + " '" + n.rhs + "'";
        }
        std::string operator()(const AttrCmpVal& n) const {
            return "'" + n.attr + "' " + cmp_symbol(n.cmp) + " " + tql_value_literal(n.value);
        }
        std::string operator()(const PredNot& n) const {
            return "!(" + tql_pred_string(*n.inner) + ")";
        }
        std::string operator()(const PredAnd& n) const {
            return "(" + tql_pred_string(*n.lhs) + " && " + tql_pred_string(*n.rhs) + ")";
        }
        std::string operator()(const PredOr& n) const {
            return "(" + tql_pred_string(*n.lhs) + " || " + tql_pred_string(*n.rhs) + ")";
        }
    };
    return std::visit(Visitor{}, p.node);
}

// Precedence contexts, loosest to tightest.
enum class ExprLevel { Sum, Product, Postfix };

inline std::string tql_expr_string(const TqlExprPtr& e, ExprLevel level);

inline std::string quoted_attr_list(const std::vector<std::string>& attrs) {
    std::string out;
    for (std::size_t i = 0; i < attrs.size(); ++i) {
        if (i) out += "; ";
        out += "'" + attrs[i] + "'";
    }
    return out;
}

inline std::string tql_expr_string(const TqlExprPtr& e, ExprLevel level) {
    struct Visitor {
        ExprLevel level;
        std::string operator()(const TqlVarRef& n) const { return n.name; }
        std::string operator()(const TqlDatasetRef& n) const { return "\"" + n.name + "\""; }
        std::string operator()(const TqlBinary& n) const {
            if (n.op == TqlBop::Product)
                return tql_expr_string(n.left, ExprLevel::Product) + " * " +
                       tql_expr_string(n.right, ExprLevel::Postfix);
            const char* op = n.op == TqlBop::Union ? " + " : " - ";
            return tql_expr_string(n.left, ExprLevel::Sum) + op +
                   tql_expr_string(n.right, ExprLevel::Product);
        }
        std::string operator()(const TqlRename& n) const {
            return tql_expr_string(n.input, ExprLevel::Postfix) + "['" + n.from + "' -> '" +
                   n.to + "']";
        }
        std::string operator()(const TqlFilter& n) const {
            return tql_expr_string(n.input, ExprLevel::Postfix) + "[" +
                   tql_pred_string(*n.pred) + "]";
        }
        std::string operator()(const TqlProjection& n) const {
            return tql_expr_string(n.input, ExprLevel::Postfix) + "[" +
                   quoted_attr_list(n.attrs) + "]";
        }
    };
    return std::visit(Visitor{level}, e->node);
}

inline std::string tql_prp_string(const TqlPrp& prp) {
    switch (prp.kind) {
        case TqlPrp::Kind::Exists: return "\\/(" + tql_pred_string(*prp.pred) + ")";
        case TqlPrp::Kind::Forall: return "/\\(" + tql_pred_string(*prp.pred) + ")";
        case TqlPrp::Kind::Attribute: return "['" + prp.attr + "']";
    }
    return {};
}

inline std::string tql_tp_string(const std::vector<TqlPrp>& tp) {
    std::string out;
    for (std::size_t i = 0; i < tp.size(); ++i) {
        if (i) out += "; ";
        out += tql_prp_string(tp[i]);
    }
    return out;
}

}  // namespace detail

inline std::string pretty_print(const TqlStmt& s) {
    switch (s.kind) {
        case TqlStmt::Kind::FreeDecl: return s.var;
        case TqlStmt::Kind::FreeDeclTyped:
            return s.var + ":{" + detail::tql_tp_string(s.tp) + "}";
        case TqlStmt::Kind::Assign:
            return s.var + " = " + detail::tql_expr_string(s.expr, detail::ExprLevel::Sum);
        case TqlStmt::Kind::AssignTyped:
            return s.var + ":{" + detail::tql_tp_string(s.tp) + "} = " +
                   detail::tql_expr_string(s.expr, detail::ExprLevel::Sum);
        case TqlStmt::Kind::Return:
            return "return " + detail::tql_expr_string(s.expr, detail::ExprLevel::Sum);
    }
    return {};
}

inline std::string pretty_print(const TqlProgram& p) {
    std::string out;
    for (const TqlStmt& s : p.stmts) out += pretty_print(s) + ";\n";
    return out;
}

}  // namespace tql
