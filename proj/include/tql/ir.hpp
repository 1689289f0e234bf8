#pragma once

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tql/core.hpp"
#include "tql/predicate.hpp"
#include "tql/relation.hpp"

namespace tql {

// ---------------------------------------------------------------------------
// Relational expressions
//
// Literal names a repository dataset and is resolved to Resolved(Dataset)
// before a program runs. Null and Resolved are the two terminal forms the
// evaluator reduces to; neither appears in freshly translated programs.
// ---------------------------------------------------------------------------

struct RelExpr;
using RelExprPtr = std::shared_ptr<const RelExpr>;

struct RelLiteral {
    std::string name;
};
struct RelVar {
    std::string name;
};
struct RelUnion {
    RelExprPtr left, right;
};
struct RelDifference {
    RelExprPtr left, right;
};
struct RelProduct {
    RelExprPtr left, right;
};
struct RelProject {
    std::vector<std::string> attrs;
    RelExprPtr input;
};
struct RelSelect {
    PredicatePtr pred;
    RelExprPtr input;
};
struct RelRename {
    std::string from, to;
    RelExprPtr input;
};
struct RelTest {
    RelExprPtr input;
    std::vector<TypeTest> tests;  // non-empty; evaluated left to right
};
struct RelNull {};
struct RelResolved {
    Dataset data;
};

struct RelExpr {
    std::variant<RelLiteral, RelVar, RelUnion, RelDifference, RelProduct, RelProject, RelSelect,
                 RelRename, RelTest, RelNull, RelResolved>
        node;
};

inline RelExprPtr rel_literal(std::string name) {
    return std::make_shared<RelExpr>(RelExpr{RelLiteral{std::move(name)}});
}
inline RelExprPtr rel_var(std::string name) {
    return std::make_shared<RelExpr>(RelExpr{RelVar{std::move(name)}});
}
inline RelExprPtr rel_union(RelExprPtr l, RelExprPtr r) {
    return std::make_shared<RelExpr>(RelExpr{RelUnion{std::move(l), std::move(r)}});
}
inline RelExprPtr rel_difference(RelExprPtr l, RelExprPtr r) {
    return std::make_shared<RelExpr>(RelExpr{RelDifference{std::move(l), std::move(r)}});
}
inline RelExprPtr rel_product(RelExprPtr l, RelExprPtr r) {
    return std::make_shared<RelExpr>(RelExpr{RelProduct{std::move(l), std::move(r)}});
}
inline RelExprPtr rel_project(std::vector<std::string> attrs, RelExprPtr input) {
    return std::make_shared<RelExpr>(RelExpr{RelProject{std::move(attrs), std::move(input)}});
}
inline RelExprPtr rel_select(PredicatePtr pred, RelExprPtr input) {
    return std::make_shared<RelExpr>(RelExpr{RelSelect{std::move(pred), std::move(input)}});
}
inline RelExprPtr rel_rename(std::string from, std::string to, RelExprPtr input) {
    return std::make_shared<RelExpr>(
        RelExpr{RelRename{std::move(from), std::move(to), std::move(input)}});
}
inline RelExprPtr rel_test(RelExprPtr input, std::vector<TypeTest> tests) {
    if (tests.empty()) throw std::invalid_argument("Test: empty type-test list");
    return std::make_shared<RelExpr>(RelExpr{RelTest{std::move(input), std::move(tests)}});
}
inline RelExprPtr rel_null() { return std::make_shared<RelExpr>(RelExpr{RelNull{}}); }
inline RelExprPtr rel_resolved(Dataset d) {
    return std::make_shared<RelExpr>(RelExpr{RelResolved{std::move(d)}});
}

// ---------------------------------------------------------------------------
// Statements
// ---------------------------------------------------------------------------

struct Stmt;
using StmtPtr = std::shared_ptr<const Stmt>;

struct StmtTop {};
struct StmtBottom {};
struct StmtAssign {
    std::string var;
    RelExprPtr expr;
};
struct StmtDeclare {
    std::string var;
};
struct StmtSeq {
    StmtPtr first, second;
};
struct StmtReturn {
    RelExprPtr expr;
};

struct Stmt {
    std::variant<StmtTop, StmtBottom, StmtAssign, StmtDeclare, StmtSeq, StmtReturn> node;
};

inline StmtPtr stmt_top() { return std::make_shared<Stmt>(Stmt{StmtTop{}}); }
inline StmtPtr stmt_bottom() { return std::make_shared<Stmt>(Stmt{StmtBottom{}}); }
inline StmtPtr stmt_assign(std::string var, RelExprPtr expr) {
    return std::make_shared<Stmt>(Stmt{StmtAssign{std::move(var), std::move(expr)}});
}
inline StmtPtr stmt_declare(std::string var) {
    return std::make_shared<Stmt>(Stmt{StmtDeclare{std::move(var)}});
}
inline StmtPtr stmt_seq(StmtPtr first, StmtPtr second) {
    return std::make_shared<Stmt>(Stmt{StmtSeq{std::move(first), std::move(second)}});
}
inline StmtPtr stmt_return(RelExprPtr expr) {
    return std::make_shared<Stmt>(Stmt{StmtReturn{std::move(expr)}});
}

/// Right-folds a non-empty statement list into a Seq chain.
inline StmtPtr seq_of(std::vector<StmtPtr> stmts) {
    if (stmts.empty()) throw std::invalid_argument("seq_of: empty statement list");
    StmtPtr out = stmts.back();
    for (auto it = stmts.rbegin() + 1; it != stmts.rend(); ++it) out = stmt_seq(*it, out);
    return out;
}

/// In-order list of the non-Seq statements under `s`.
inline void collect_leaves(const StmtPtr& s, std::vector<StmtPtr>& out) {
    if (const auto* seq = std::get_if<StmtSeq>(&s->node)) {
        collect_leaves(seq->first, out);
        collect_leaves(seq->second, out);
    } else {
        out.push_back(s);
    }
}

inline std::vector<StmtPtr> leaves(const StmtPtr& s) {
    std::vector<StmtPtr> out;
    collect_leaves(s, out);
    return out;
}

/// Rebuilds `s` as a right-nested Seq chain (a;b;c = Seq(a, Seq(b, c))).
inline StmtPtr normalize(const StmtPtr& s) { return seq_of(leaves(s)); }

// ---------------------------------------------------------------------------
// Static analysis
// ---------------------------------------------------------------------------

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Declared variable names in program order. The length of this list is the
/// input arity of the program.
inline std::vector<std::string> free_variables(const StmtPtr& s) {
    std::vector<std::string> out;
    for (const StmtPtr& leaf : leaves(s))
        if (const auto* decl = std::get_if<StmtDeclare>(&leaf->node)) {
            for (const std::string& seen : out)
                if (seen == decl->var)
                    throw ValidationError("duplicate declaration of '" + decl->var + "'");
            out.push_back(decl->var);
        }
    return out;
}

enum class DiagKind { NoReturn, UseBeforeDefinition, DuplicateDeclaration, UnreachableStatement };

struct Diagnostic {
    DiagKind kind;
    std::string message;
};

namespace detail {

inline void collect_vars(const RelExprPtr& r, std::vector<std::string>& out) {
    struct Visitor {
        std::vector<std::string>& out;
        void operator()(const RelLiteral&) const {}
        void operator()(const RelVar& n) const { out.push_back(n.name); }
        void operator()(const RelUnion& n) const {
            collect_vars(n.left, out);
            collect_vars(n.right, out);
        }
        void operator()(const RelDifference& n) const {
            collect_vars(n.left, out);
            collect_vars(n.right, out);
        }
        void operator()(const RelProduct& n) const {
            collect_vars(n.left, out);
            collect_vars(n.right, out);
        }
        void operator()(const RelProject& n) const { collect_vars(n.input, out); }
        void operator()(const RelSelect& n) const { collect_vars(n.input, out); }
        void operator()(const RelRename& n) const { collect_vars(n.input, out); }
        void operator()(const RelTest& n) const { collect_vars(n.input, out); }
        void operator()(const RelNull&) const {}
        void operator()(const RelResolved&) const {}
    };
    std::visit(Visitor{out}, r->node);
}

}  // namespace detail

/// Flags programs that cannot run to a meaningful completion: a missing
/// return (the program would end in top), variables read before any
/// declaration or assignment binds them, duplicate declarations, and
/// statements sequenced after a return. An empty list means valid.
inline std::vector<Diagnostic> validate(const StmtPtr& s) {
    std::vector<Diagnostic> diags;
    std::set<std::string> defined;
    std::set<std::string> declared;
    bool returned = false;
    bool has_return = false;

    const auto check_expr = [&](const RelExprPtr& e) {
        std::vector<std::string> vars;
        detail::collect_vars(e, vars);
        for (const std::string& v : vars)
            if (!defined.count(v))
                diags.push_back({DiagKind::UseBeforeDefinition,
                                 "variable '" + v + "' is used before it is defined"});
    };

    for (const StmtPtr& leaf : leaves(s)) {
        if (returned) {
            diags.push_back(
                {DiagKind::UnreachableStatement, "statement is unreachable after a return"});
            continue;
        }
        if (const auto* decl = std::get_if<StmtDeclare>(&leaf->node)) {
            if (!declared.insert(decl->var).second)
                diags.push_back({DiagKind::DuplicateDeclaration,
                                 "variable '" + decl->var + "' is declared more than once"});
            defined.insert(decl->var);
        } else if (const auto* assign = std::get_if<StmtAssign>(&leaf->node)) {
            check_expr(assign->expr);
            defined.insert(assign->var);
        } else if (const auto* ret = std::get_if<StmtReturn>(&leaf->node)) {
            check_expr(ret->expr);
            returned = true;
            has_return = true;
        }
    }
    if (!has_return)
        diags.push_back({DiagKind::NoReturn, "program has no return statement"});
    return diags;
}

// ---------------------------------------------------------------------------
// Canonical text form, used by golden tests and --emit-ir
// ---------------------------------------------------------------------------

inline std::string to_string(const RelExprPtr& r) {
    struct Visitor {
        std::string operator()(const RelLiteral& n) const { return "\"" + n.name + "\""; }
        std::string operator()(const RelVar& n) const { return n.name; }
        std::string operator()(const RelUnion& n) const {
            return "(" + to_string(n.left) + " + " + to_string(n.right) + ")";
        }
        std::string operator()(const RelDifference& n) const {
            return "(" + to_string(n.left) + " - " + to_string(n.right) + ")";
        }
        std::string operator()(const RelProduct& n) const {
            return "(" + to_string(n.left) + " * " + to_string(n.right) + ")";
        }
        std::string operator()(const RelProject& n) const {
            std::string attrs;
            for (std::size_t i = 0; i < n.attrs.size(); ++i) {
                if (i) attrs += ", ";
                attrs += n.attrs[i];
            }
            return "pi[" + attrs + "](" + to_string(n.input) + ")";
        }
        std::string operator()(const RelSelect& n) const {
            return "sigma[" + to_string(*n.pred) + "](" + to_string(n.input) + ")";
        }
        std::string operator()(const RelRename& n) const {
            return "rho[" + n.from + "/" + n.to + "](" + to_string(n.input) + ")";
        }
        std::string operator()(const RelTest& n) const {
            std::string tests;
            for (std::size_t i = 0; i < n.tests.size(); ++i) {
                if (i) tests += ", ";
                tests += to_string(n.tests[i]);
            }
            return to_string(n.input) + " {" + tests + "}";
        }
        std::string operator()(const RelNull&) const { return "bot"; }
        std::string operator()(const RelResolved& n) const {
            return "#" + (n.data.name().empty() ? std::string("dataset") : n.data.name());
        }
    };
    return std::visit(Visitor{}, r->node);
}

inline std::string to_string(const StmtPtr& s) {
    struct Visitor {
        std::string operator()(const StmtTop&) const { return "top"; }
        std::string operator()(const StmtBottom&) const { return "bot"; }
        std::string operator()(const StmtAssign& n) const {
            return n.var + " := " + to_string(n.expr);
        }
        std::string operator()(const StmtDeclare& n) const { return "!" + n.var; }
        std::string operator()(const StmtSeq&) const { return {}; }  // excluded by leaves()
        std::string operator()(const StmtReturn& n) const { return "ret " + to_string(n.expr); }
    };
    std::string out;
    for (const StmtPtr& leaf : leaves(s)) {
        if (!out.empty()) out += "; ";
        out += std::visit(Visitor{}, leaf->node);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Structural equality, ignoring shared-pointer identity
// ---------------------------------------------------------------------------

inline bool rel_equal(const RelExprPtr& a, const RelExprPtr& b);

namespace detail {

inline bool test_equal(const TypeTest& a, const TypeTest& b) {
    if (a.index() != b.index()) return false;
    if (const auto* ha = std::get_if<HasAttributes>(&a))
        return ha->attrs == std::get<HasAttributes>(b).attrs;
    if (const auto* ea = std::get_if<ExistsPred>(&a))
        return predicates_equal(*ea->pred, *std::get<ExistsPred>(b).pred);
    return predicates_equal(*std::get<ForallPred>(a).pred, *std::get<ForallPred>(b).pred);
}

}  // namespace detail

inline bool rel_equal(const RelExprPtr& a, const RelExprPtr& b) {
    if (a->node.index() != b->node.index()) return false;
    struct Visitor {
        const RelExpr& other;
        bool operator()(const RelLiteral& n) const {
            return n.name == std::get<RelLiteral>(other.node).name;
        }
        bool operator()(const RelVar& n) const {
            return n.name == std::get<RelVar>(other.node).name;
        }
        bool operator()(const RelUnion& n) const {
            const auto& o = std::get<RelUnion>(other.node);
            return rel_equal(n.left, o.left) && rel_equal(n.right, o.right);
        }
        bool operator()(const RelDifference& n) const {
            const auto& o = std::get<RelDifference>(other.node);
            return rel_equal(n.left, o.left) && rel_equal(n.right, o.right);
        }
        bool operator()(const RelProduct& n) const {
            const auto& o = std::get<RelProduct>(other.node);
            return rel_equal(n.left, o.left) && rel_equal(n.right, o.right);
        }
        bool operator()(const RelProject& n) const {
            const auto& o = std::get<RelProject>(other.node);
            return n.attrs == o.attrs && rel_equal(n.input, o.input);
        }
        bool operator()(const RelSelect& n) const {
            const auto& o = std::get<RelSelect>(other.node);
            return predicates_equal(*n.pred, *o.pred) && rel_equal(n.input, o.input);
        }
        bool operator()(const RelRename& n) const {
            const auto& o = std::get<RelRename>(other.node);
            return n.from == o.from && n.to == o.to && rel_equal(n.input, o.input);
        }
        bool operator()(const RelTest& n) const {
            const auto& o = std::get<RelTest>(other.node);
            if (n.tests.size() != o.tests.size()) return false;
            for (std::size_t i = 0; i < n.tests.size(); ++i)
                if (!detail::test_equal(n.tests[i], o.tests[i])) return false;
            return rel_equal(n.input, o.input);
        }
        bool operator()(const RelNull&) const { return true; }
        bool operator()(const RelResolved& n) const {
            return n.data == std::get<RelResolved>(other.node).data;
        }
    };
    return std::visit(Visitor{*b}, a->node);
}

inline bool stmt_equal(const StmtPtr& a, const StmtPtr& b) {
    if (a->node.index() != b->node.index()) return false;
    struct Visitor {
        const Stmt& other;
        bool operator()(const StmtTop&) const { return true; }
        bool operator()(const StmtBottom&) const { return true; }
        bool operator()(const StmtAssign& n) const {
            const auto& o = std::get<StmtAssign>(other.node);
            return n.var == o.var && rel_equal(n.expr, o.expr);
        }
        bool operator()(const StmtDeclare& n) const {
            return n.var == std::get<StmtDeclare>(other.node).var;
        }
        bool operator()(const StmtSeq& n) const {
            const auto& o = std::get<StmtSeq>(other.node);
            return stmt_equal(n.first, o.first) && stmt_equal(n.second, o.second);
        }
        bool operator()(const StmtReturn& n) const {
            return rel_equal(n.expr, std::get<StmtReturn>(other.node).expr);
        }
    };
    return std::visit(Visitor{*b}, a->node);
}

// The kappa of the operational semantics.
using Environment = std::map<std::string, Dataset>;

}  // namespace tql
