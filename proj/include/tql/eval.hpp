#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tql/core.hpp"
#include "tql/ir.hpp"
#include "tql/relation.hpp"

namespace tql {

// ---------------------------------------------------------------------------
// Small-step machine
//
// A configuration pairs the statement under reduction with the environment
// kappa. Reduction runs each relational expression down to Resolved or Null,
// then fires the enclosing statement rule. Terminal configurations are top,
// bot, and a return whose expression is resolved.
// ---------------------------------------------------------------------------

struct EvalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Configuration {
    StmtPtr stmt;
    Environment env;
};

struct Outcome {
    enum class Status { Success, Failure, CompletedWithoutReturn };
    Status status;
    std::optional<Dataset> data;  // present iff Success

    static Outcome success(Dataset d) { return {Status::Success, std::move(d)}; }
    static Outcome failure() { return {Status::Failure, std::nullopt}; }
    static Outcome completed_without_return() {
        return {Status::CompletedWithoutReturn, std::nullopt};
    }

    bool operator==(const Outcome& o) const { return status == o.status && data == o.data; }
};

inline RelExprPtr step_rel(const RelExprPtr& r, const Environment& env);

namespace detail {

inline bool is_rel_value(const RelExprPtr& r) {
    return std::holds_alternative<RelResolved>(r->node) ||
           std::holds_alternative<RelNull>(r->node);
}

inline bool is_null(const RelExprPtr& r) { return std::holds_alternative<RelNull>(r->node); }

inline const Dataset& resolved_data(const RelExprPtr& r) {
    return std::get<RelResolved>(r->node).data;
}

inline RelExprPtr from_result(const RelResult& res) {
    return res.is_ok() ? rel_resolved(res.dataset()) : rel_null();
}

inline RelExprPtr step_binary(const RelExprPtr& left, const RelExprPtr& right,
                              const Environment& env,
                              RelExprPtr (*rebuild)(RelExprPtr, RelExprPtr),
                              RelResult (*op)(const Dataset&, const Dataset&)) {
    if (is_null(left)) return rel_null();
    if (!is_rel_value(left)) return rebuild(step_rel(left, env), right);
    if (is_null(right)) return rel_null();
    if (!is_rel_value(right)) return rebuild(left, step_rel(right, env));
    return from_result(op(resolved_data(left), resolved_data(right)));
}

}  // namespace detail

/// One reduction of a relational expression: variable lookup, a single
/// operand reduction (left operand first), null absorption, one primitive
/// operation, or one link of a test chain.
inline RelExprPtr step_rel(const RelExprPtr& r, const Environment& env) {
    using detail::from_result;
    using detail::is_null;
    using detail::is_rel_value;
    using detail::resolved_data;

    struct Visitor {
        const Environment& env;

        RelExprPtr operator()(const RelLiteral& n) const {
            throw EvalError("unresolved dataset literal \"" + n.name +
                            "\"; resolve literals before running");
        }
        RelExprPtr operator()(const RelVar& n) const {
            const auto it = env.find(n.name);
            if (it == env.end()) throw EvalError("variable '" + n.name + "' is unbound");
            return rel_resolved(it->second);
        }
        RelExprPtr operator()(const RelUnion& n) const {
            return detail::step_binary(n.left, n.right, env, &rel_union, &union_of);
        }
        RelExprPtr operator()(const RelDifference& n) const {
            return detail::step_binary(n.left, n.right, env, &rel_difference, &difference);
        }
        RelExprPtr operator()(const RelProduct& n) const {
            return detail::step_binary(n.left, n.right, env, &rel_product, &product);
        }
        RelExprPtr operator()(const RelProject& n) const {
            if (is_null(n.input)) return rel_null();
            if (!is_rel_value(n.input)) return rel_project(n.attrs, step_rel(n.input, env));
            return from_result(project(resolved_data(n.input), n.attrs));
        }
        RelExprPtr operator()(const RelSelect& n) const {
            if (is_null(n.input)) return rel_null();
            if (!is_rel_value(n.input)) return rel_select(n.pred, step_rel(n.input, env));
            return from_result(select(resolved_data(n.input), *n.pred));
        }
        RelExprPtr operator()(const RelRename& n) const {
            if (is_null(n.input)) return rel_null();
            if (!is_rel_value(n.input))
                return rel_rename(n.from, n.to, step_rel(n.input, env));
            return from_result(rename(resolved_data(n.input), n.from, n.to));
        }
        RelExprPtr operator()(const RelTest& n) const {
            if (is_null(n.input)) return rel_null();
            if (!is_rel_value(n.input)) return rel_test(step_rel(n.input, env), n.tests);
            const RelResult head = test(resolved_data(n.input), n.tests.front());
            if (!head.is_ok()) return rel_null();
            if (n.tests.size() == 1) return n.input;
            return rel_test(n.input,
                            std::vector<TypeTest>(n.tests.begin() + 1, n.tests.end()));
        }
        RelExprPtr operator()(const RelNull&) const {
            throw EvalError("step_rel on a null expression");
        }
        RelExprPtr operator()(const RelResolved&) const {
            throw EvalError("step_rel on a resolved expression");
        }
    };
    return std::visit(Visitor{env}, r->node);
}

inline bool is_terminal(const Configuration& c) {
    if (std::holds_alternative<StmtTop>(c.stmt->node)) return true;
    if (std::holds_alternative<StmtBottom>(c.stmt->node)) return true;
    if (const auto* ret = std::get_if<StmtReturn>(&c.stmt->node))
        return std::holds_alternative<RelResolved>(ret->expr->node);
    return false;
}

/// One statement-level reduction. Exactly one rule applies to every
/// non-terminal configuration.
inline Configuration step(const Configuration& c) {
    using detail::is_null;
    using detail::resolved_data;

    if (std::holds_alternative<StmtDeclare>(c.stmt->node)) return {stmt_top(), c.env};
    if (const auto* assign = std::get_if<StmtAssign>(&c.stmt->node)) {
        if (is_null(assign->expr)) return {stmt_bottom(), c.env};
        if (std::holds_alternative<RelResolved>(assign->expr->node)) {
            Environment env = c.env;
            env.insert_or_assign(assign->var, resolved_data(assign->expr));
            return {stmt_top(), std::move(env)};
        }
        return {stmt_assign(assign->var, step_rel(assign->expr, c.env)), c.env};
    }
    if (const auto* ret = std::get_if<StmtReturn>(&c.stmt->node)) {
        if (is_null(ret->expr)) return {stmt_bottom(), c.env};
        if (std::holds_alternative<RelResolved>(ret->expr->node))
            throw EvalError("step on a terminal configuration");
        return {stmt_return(step_rel(ret->expr, c.env)), c.env};
    }
    if (const auto* seq = std::get_if<StmtSeq>(&c.stmt->node)) {
        if (std::holds_alternative<StmtTop>(seq->first->node)) return {seq->second, c.env};
        if (std::holds_alternative<StmtBottom>(seq->first->node))
            return {stmt_bottom(), c.env};
        if (const auto* first_ret = std::get_if<StmtReturn>(&seq->first->node))
            if (std::holds_alternative<RelResolved>(first_ret->expr->node))
                return {seq->first, c.env};
        Configuration inner = step({seq->first, c.env});
        return {stmt_seq(inner.stmt, seq->second), std::move(inner.env)};
    }
    throw EvalError("step on a terminal configuration");
}

inline std::string to_string(const Environment& env) {
    std::string out = "{";
    bool first = true;
    for (const auto& [var, data] : env) {
        if (!first) out += ", ";
        first = false;
        out += var + " = ";
        if (!data.name().empty())
            out += data.name();
        else
            out += "<" + std::to_string(data.row_count()) + "x" +
                   std::to_string(data.arity()) + ">";
    }
    return out + "}";
}

inline std::string to_string(const Configuration& c) {
    return "<" + to_string(c.stmt) + ", " + to_string(c.env) + ">";
}

struct RunOptions {
    std::uint64_t step_limit = 1'000'000;
    std::function<void(const Configuration&)> trace;  // called before each step
};

/// Binds the i-th declared variable to inputs[i], then reduces to a terminal
/// configuration. Declarations themselves reduce as no-ops.
inline Outcome run(const StmtPtr& s, const std::vector<Dataset>& inputs,
                   const RunOptions& opts = {}) {
    const std::vector<std::string> vars = free_variables(s);
    if (vars.size() != inputs.size())
        throw EvalError("program expects " + std::to_string(vars.size()) + " input(s), got " +
                        std::to_string(inputs.size()));
    Environment env;
    for (std::size_t i = 0; i < vars.size(); ++i) env.insert_or_assign(vars[i], inputs[i]);

    Configuration c{normalize(s), std::move(env)};
    std::uint64_t steps = 0;
    while (!is_terminal(c)) {
        if (opts.trace) opts.trace(c);
        if (++steps > opts.step_limit)
            throw EvalError("step limit of " + std::to_string(opts.step_limit) + " exceeded");
        c = step(c);
    }
    if (opts.trace) opts.trace(c);

    if (std::holds_alternative<StmtBottom>(c.stmt->node)) return Outcome::failure();
    if (std::holds_alternative<StmtTop>(c.stmt->node))
        return Outcome::completed_without_return();
    return Outcome::success(std::get<RelResolved>(std::get<StmtReturn>(c.stmt->node).expr->node)
                                .data);
}

}  // namespace tql
