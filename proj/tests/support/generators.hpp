#pragma once

// Seeded random construction of datasets, repositories, IR programs, and
// surface ASTs. All generators draw from small fixed pools so collisions are
// frequent: schema clashes, missing attributes, and redefinitions are the
// interesting cases, and tiny pools hit them constantly.

#include <algorithm>
#include <cstddef>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "tql/ast.hpp"
#include "tql/core.hpp"
#include "tql/ir.hpp"
#include "tql/predicate.hpp"
#include "tql/relation.hpp"
#include "tql/repository.hpp"

namespace gen {

using Rng = std::mt19937_64;

inline std::size_t pick(Rng& rng, std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

inline bool chance(Rng& rng, double p) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

inline const std::vector<std::string>& attr_pool() {
    static const std::vector<std::string> pool = {"age", "name", "score", "city", "id", "qty"};
    return pool;
}

inline const std::vector<std::string>& word_pool() {
    static const std::vector<std::string> pool = {"ann", "bob", "cy", "dee", "lee", "oak"};
    return pool;
}

inline const std::vector<std::string>& var_pool() {
    static const std::vector<std::string> pool = {"x", "y", "z", "t", "u"};
    return pool;
}

inline std::string random_attr(Rng& rng) { return attr_pool()[pick(rng, attr_pool().size())]; }

inline double random_number(Rng& rng) {
    static const std::vector<double> pool = {-3, -2, -1, 0, 0.5, 1, 2, 2.5, 3, 4, 5, 7, 9};
    return pool[pick(rng, pool.size())];
}

inline tql::Value random_value(Rng& rng, tql::Kind kind) {
    if (kind == tql::Kind::Text) return tql::Value(word_pool()[pick(rng, word_pool().size())]);
    return tql::Value(random_number(rng));
}

// ---------------------------------------------------------------------------
// Datasets and repositories
// ---------------------------------------------------------------------------

inline tql::Dataset random_dataset(Rng& rng, std::string name) {
    const std::size_t arity = 1 + pick(rng, 3);
    std::vector<std::string> attrs = attr_pool();
    std::shuffle(attrs.begin(), attrs.end(), rng);
    attrs.resize(arity);
    std::vector<tql::Kind> kinds;
    for (std::size_t i = 0; i < arity; ++i)
        kinds.push_back(chance(rng, 0.5) ? tql::Kind::Number : tql::Kind::Text);
    const std::size_t row_count = pick(rng, 6);
    std::vector<tql::Row> rows;
    for (std::size_t r = 0; r < row_count; ++r) {
        tql::Row row;
        for (std::size_t c = 0; c < arity; ++c) row.push_back(random_value(rng, kinds[c]));
        rows.push_back(std::move(row));
    }
    return tql::Dataset(std::move(name), std::move(attrs), std::move(kinds), std::move(rows));
}

inline tql::Repository random_repository(Rng& rng, std::size_t max_datasets = 4) {
    static const std::vector<std::string> names = {"alpha", "beta", "gamma", "delta"};
    const std::size_t count = 1 + pick(rng, max_datasets);
    tql::Repository repo;
    for (std::size_t i = 0; i < count; ++i) repo.add(random_dataset(rng, names[i]));
    return repo;
}

// ---------------------------------------------------------------------------
// Predicates and type tests
// ---------------------------------------------------------------------------

/// `numeric_vals_only` restricts comparison constants to numbers, the only
/// value form the surface grammar can spell.
inline tql::PredicatePtr random_predicate(Rng& rng, int depth, bool numeric_vals_only) {
    if (depth <= 0 || chance(rng, 0.45)) {
        const tql::Cmp cmp = static_cast<tql::Cmp>(pick(rng, 6));
        if (chance(rng, 0.5)) return tql::attr_cmp_attr(random_attr(rng), cmp, random_attr(rng));
        const tql::Kind kind =
            numeric_vals_only || chance(rng, 0.7) ? tql::Kind::Number : tql::Kind::Text;
        return tql::attr_cmp_val(random_attr(rng), cmp, random_value(rng, kind));
    }
    switch (pick(rng, 3)) {
        case 0: return tql::pred_not(random_predicate(rng, depth - 1, numeric_vals_only));
        case 1:
            return tql::pred_and(random_predicate(rng, depth - 1, numeric_vals_only),
                                 random_predicate(rng, depth - 1, numeric_vals_only));
        default:
            return tql::pred_or(random_predicate(rng, depth - 1, numeric_vals_only),
                                random_predicate(rng, depth - 1, numeric_vals_only));
    }
}

inline tql::TypeTest random_type_test(Rng& rng, bool numeric_vals_only) {
    switch (pick(rng, 3)) {
        case 0: {
            std::vector<std::string> attrs = attr_pool();
            std::shuffle(attrs.begin(), attrs.end(), rng);
            attrs.resize(1 + pick(rng, 2));
            return tql::has_attributes(std::move(attrs));
        }
        case 1: return tql::exists_pred(random_predicate(rng, 2, numeric_vals_only));
        default: return tql::forall_pred(random_predicate(rng, 2, numeric_vals_only));
    }
}

// ---------------------------------------------------------------------------
// IR programs
// ---------------------------------------------------------------------------

/// Expression over resolved datasets and the variables in `scope`. Attribute
/// names come from the shared pool, so schema mismatches happen organically.
inline tql::RelExprPtr random_rel_expr(Rng& rng, const std::vector<std::string>& scope,
                                       int depth) {
    if (depth <= 0 || chance(rng, 0.3)) {
        if (!scope.empty() && chance(rng, 0.65)) return tql::rel_var(scope[pick(rng, scope.size())]);
        return tql::rel_resolved(random_dataset(rng, {}));
    }
    switch (pick(rng, 7)) {
        case 0:
            return tql::rel_union(random_rel_expr(rng, scope, depth - 1),
                                  random_rel_expr(rng, scope, depth - 1));
        case 1:
            return tql::rel_difference(random_rel_expr(rng, scope, depth - 1),
                                       random_rel_expr(rng, scope, depth - 1));
        case 2:
            return tql::rel_product(random_rel_expr(rng, scope, depth - 1),
                                    random_rel_expr(rng, scope, depth - 1));
        case 3: {
            std::vector<std::string> attrs = attr_pool();
            std::shuffle(attrs.begin(), attrs.end(), rng);
            attrs.resize(1 + pick(rng, 2));
            return tql::rel_project(std::move(attrs), random_rel_expr(rng, scope, depth - 1));
        }
        case 4:
            return tql::rel_select(random_predicate(rng, 2, false),
                                   random_rel_expr(rng, scope, depth - 1));
        case 5:
            return tql::rel_rename(random_attr(rng), random_attr(rng),
                                   random_rel_expr(rng, scope, depth - 1));
        default: {
            std::vector<tql::TypeTest> tests;
            const std::size_t count = 1 + pick(rng, 2);
            for (std::size_t i = 0; i < count; ++i)
                tests.push_back(random_type_test(rng, false));
            return tql::rel_test(random_rel_expr(rng, scope, depth - 1), std::move(tests));
        }
    }
}

struct IrCase {
    tql::StmtPtr program;              // passes validate; ends in a return
    std::vector<tql::Dataset> inputs;  // one per declared variable
};

/// Random program that passes validation: declarations first, assignments
/// over in-scope names, a final return. `closed` suppresses declarations so
/// the program needs no inputs.
inline IrCase random_ir_case(Rng& rng, bool closed) {
    std::vector<tql::StmtPtr> stmts;
    std::vector<std::string> scope;
    IrCase out;

    if (!closed) {
        const std::size_t declared = pick(rng, 3);
        for (std::size_t i = 0; i < declared; ++i) {
            const std::string var = "v" + std::to_string(i);
            stmts.push_back(tql::stmt_declare(var));
            scope.push_back(var);
            out.inputs.push_back(random_dataset(rng, var));
        }
    }

    const std::size_t assignments = pick(rng, 4);
    for (std::size_t i = 0; i < assignments; ++i) {
        std::string var;
        if (!scope.empty() && chance(rng, 0.3)) {
            var = scope[pick(rng, scope.size())];
        } else {
            var = "w" + std::to_string(i);
        }
        stmts.push_back(tql::stmt_assign(var, random_rel_expr(rng, scope, 3)));
        if (std::find(scope.begin(), scope.end(), var) == scope.end()) scope.push_back(var);
    }

    stmts.push_back(tql::stmt_return(random_rel_expr(rng, scope, 3)));
    out.program = tql::seq_of(std::move(stmts));
    return out;
}

// ---------------------------------------------------------------------------
// Surface ASTs
//
// Shapes mirror the parser's grammar: binary operators fold left, postfix
// operations chain, and every predicate composite carries parentheses in
// printed form. pretty_print of anything built here re-parses to an equal
// tree.
// ---------------------------------------------------------------------------

inline std::string random_var(Rng& rng) { return var_pool()[pick(rng, var_pool().size())]; }

inline std::string random_dataset_name(Rng& rng) {
    static const std::vector<std::string> names = {"alpha", "beta", "gamma", "delta"};
    return names[pick(rng, names.size())];
}

using tql::TqlExprPtr;

inline TqlExprPtr random_tql_primary(Rng& rng) {
    if (chance(rng, 0.5)) return tql::tql_var(random_var(rng));
    return tql::tql_dataset(random_dataset_name(rng));
}

inline TqlExprPtr random_tql_postfix_expr(Rng& rng) {
    TqlExprPtr e = random_tql_primary(rng);
    const std::size_t ops = pick(rng, 3);
    for (std::size_t i = 0; i < ops; ++i) {
        switch (pick(rng, 3)) {
            case 0: e = tql::tql_rename(e, random_attr(rng), random_attr(rng)); break;
            case 1: e = tql::tql_filter(e, random_predicate(rng, 2, true)); break;
            default: {
                std::vector<std::string> attrs = attr_pool();
                std::shuffle(attrs.begin(), attrs.end(), rng);
                attrs.resize(1 + pick(rng, 2));
                e = tql::tql_projection(e, std::move(attrs));
            }
        }
    }
    return e;
}

inline TqlExprPtr random_tql_product(Rng& rng) {
    TqlExprPtr e = random_tql_postfix_expr(rng);
    const std::size_t ops = pick(rng, 2);
    for (std::size_t i = 0; i < ops; ++i)
        e = tql::tql_binary(tql::TqlBop::Product, e, random_tql_postfix_expr(rng));
    return e;
}

inline TqlExprPtr random_tql_expr(Rng& rng) {
    TqlExprPtr e = random_tql_product(rng);
    const std::size_t ops = pick(rng, 3);
    for (std::size_t i = 0; i < ops; ++i) {
        const tql::TqlBop op = chance(rng, 0.5) ? tql::TqlBop::Union : tql::TqlBop::Difference;
        e = tql::tql_binary(op, e, random_tql_product(rng));
    }
    return e;
}

inline std::vector<tql::TqlPrp> random_tql_tp(Rng& rng) {
    std::vector<tql::TqlPrp> tp;
    const std::size_t count = 1 + pick(rng, 2);
    for (std::size_t i = 0; i < count; ++i) {
        switch (pick(rng, 3)) {
            case 0: tp.push_back(tql::prp_exists(random_predicate(rng, 2, true))); break;
            case 1: tp.push_back(tql::prp_forall(random_predicate(rng, 2, true))); break;
            default: tp.push_back(tql::prp_attribute(random_attr(rng)));
        }
    }
    return tp;
}

inline tql::TqlStmt random_tql_stmt(Rng& rng) {
    switch (pick(rng, 5)) {
        case 0: return tql::tql_free_decl(random_var(rng));
        case 1: return tql::tql_free_decl_typed(random_var(rng), random_tql_tp(rng));
        case 2: return tql::tql_assign(random_var(rng), random_tql_expr(rng));
        case 3: return tql::tql_assign_typed(random_var(rng), random_tql_tp(rng), random_tql_expr(rng));
        default: return tql::tql_return(random_tql_expr(rng));
    }
}

inline tql::TqlProgram random_tql_program(Rng& rng) {
    tql::TqlProgram program;
    const std::size_t count = 1 + pick(rng, 5);
    for (std::size_t i = 0; i < count; ++i) program.stmts.push_back(random_tql_stmt(rng));
    return program;
}

}  // namespace gen
