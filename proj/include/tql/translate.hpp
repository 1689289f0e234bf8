#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tql/ast.hpp"
#include "tql/ir.hpp"

namespace tql {

// ---------------------------------------------------------------------------
// Translation from the surface AST into the algebraic IR
//
// Each surface statement becomes one or two IR statements. Typed forms run
// the ascription as a self-assignment through the test operation: the
// program continues with the variable unchanged when every test passes, and
// fails when any test does. Dataset literals stay symbolic here; they are
// resolved against a repository at run setup.
// ---------------------------------------------------------------------------

inline TypeTest translate_prp(const TqlPrp& prp) {
    switch (prp.kind) {
        case TqlPrp::Kind::Exists: return exists_pred(prp.pred);
        case TqlPrp::Kind::Forall: return forall_pred(prp.pred);
        case TqlPrp::Kind::Attribute: return has_attributes({prp.attr});
    }
    throw std::logic_error("translate_prp: unknown property kind");
}

inline std::vector<TypeTest> translate_tp(const std::vector<TqlPrp>& tp) {
    std::vector<TypeTest> out;
    out.reserve(tp.size());
    for (const TqlPrp& prp : tp) out.push_back(translate_prp(prp));
    return out;
}

inline RelExprPtr translate_expr(const TqlExprPtr& e) {
    struct Visitor {
        RelExprPtr operator()(const TqlVarRef& n) const { return rel_var(n.name); }
        RelExprPtr operator()(const TqlDatasetRef& n) const { return rel_literal(n.name); }
        RelExprPtr operator()(const TqlBinary& n) const {
            RelExprPtr l = translate_expr(n.left);
            RelExprPtr r = translate_expr(n.right);
            switch (n.op) {
                case TqlBop::Union: return rel_union(std::move(l), std::move(r));
                case TqlBop::Difference: return rel_difference(std::move(l), std::move(r));
                case TqlBop::Product: return rel_product(std::move(l), std::move(r));
            }
            throw std::logic_error("translate_expr: unknown binary operator");
        }
        RelExprPtr operator()(const TqlRename& n) const {
            return rel_rename(n.from, n.to, translate_expr(n.input));
        }
        RelExprPtr operator()(const TqlFilter& n) const {
            return rel_select(n.pred, translate_expr(n.input));
        }
        RelExprPtr operator()(const TqlProjection& n) const {
            return rel_project(n.attrs, translate_expr(n.input));
        }
    };
    return std::visit(Visitor{}, e->node);
}

/// The ascription statement shared by both typed surface forms:
/// x := x { tests }.
inline StmtPtr ascription_stmt(const std::string& var, const std::vector<TqlPrp>& tp) {
    return stmt_assign(var, rel_test(rel_var(var), translate_tp(tp)));
}

inline StmtPtr translate(const TqlProgram& program) {
    std::vector<StmtPtr> stmts;
    for (const TqlStmt& s : program.stmts) {
        switch (s.kind) {
            case TqlStmt::Kind::FreeDecl:
                stmts.push_back(stmt_declare(s.var));
                break;
            case TqlStmt::Kind::FreeDeclTyped:
                stmts.push_back(stmt_declare(s.var));
                stmts.push_back(ascription_stmt(s.var, s.tp));
                break;
            case TqlStmt::Kind::Assign:
                stmts.push_back(stmt_assign(s.var, translate_expr(s.expr)));
                break;
            case TqlStmt::Kind::AssignTyped:
                stmts.push_back(stmt_assign(s.var, translate_expr(s.expr)));
                stmts.push_back(ascription_stmt(s.var, s.tp));
                break;
            case TqlStmt::Kind::Return:
                stmts.push_back(stmt_return(translate_expr(s.expr)));
                break;
        }
    }
    if (stmts.empty()) return stmt_top();
    return seq_of(std::move(stmts));
}

}  // namespace tql
