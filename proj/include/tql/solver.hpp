#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tql/eval.hpp"
#include "tql/ir.hpp"
#include "tql/repository.hpp"

namespace tql {

// An ordered tuple of dataset names, one per free variable. Order matters:
// the i-th name binds the i-th declared variable.
using CandidateInput = std::vector<std::string>;

// Failed candidates accumulated during one solve.
struct Feedback {
    std::set<CandidateInput> failed;
};

/// Rebuilds the program with every symbolic dataset literal replaced by the
/// repository dataset it names. Unknown names fail here, before any solving
/// starts.
inline RelExprPtr resolve_literals(const RelExprPtr& r, const Repository& repo) {
    struct Visitor {
        const Repository& repo;
        RelExprPtr operator()(const RelLiteral& n) const {
            return rel_resolved(repo.lookup(n.name));
        }
        RelExprPtr operator()(const RelVar& n) const { return rel_var(n.name); }
        RelExprPtr operator()(const RelUnion& n) const {
            return rel_union(resolve_literals(n.left, repo), resolve_literals(n.right, repo));
        }
        RelExprPtr operator()(const RelDifference& n) const {
            return rel_difference(resolve_literals(n.left, repo),
                                  resolve_literals(n.right, repo));
        }
        RelExprPtr operator()(const RelProduct& n) const {
            return rel_product(resolve_literals(n.left, repo),
                               resolve_literals(n.right, repo));
        }
        RelExprPtr operator()(const RelProject& n) const {
            return rel_project(n.attrs, resolve_literals(n.input, repo));
        }
        RelExprPtr operator()(const RelSelect& n) const {
            return rel_select(n.pred, resolve_literals(n.input, repo));
        }
        RelExprPtr operator()(const RelRename& n) const {
            return rel_rename(n.from, n.to, resolve_literals(n.input, repo));
        }
        RelExprPtr operator()(const RelTest& n) const {
            return rel_test(resolve_literals(n.input, repo), n.tests);
        }
        RelExprPtr operator()(const RelNull&) const { return rel_null(); }
        RelExprPtr operator()(const RelResolved& n) const { return rel_resolved(n.data); }
    };
    return std::visit(Visitor{repo}, r->node);
}

inline StmtPtr resolve_literals(const StmtPtr& s, const Repository& repo) {
    struct Visitor {
        const Repository& repo;
        StmtPtr operator()(const StmtTop&) const { return stmt_top(); }
        StmtPtr operator()(const StmtBottom&) const { return stmt_bottom(); }
        StmtPtr operator()(const StmtAssign& n) const {
            return stmt_assign(n.var, resolve_literals(n.expr, repo));
        }
        StmtPtr operator()(const StmtDeclare& n) const { return stmt_declare(n.var); }
        StmtPtr operator()(const StmtSeq& n) const {
            return stmt_seq(resolve_literals(n.first, repo),
                            resolve_literals(n.second, repo));
        }
        StmtPtr operator()(const StmtReturn& n) const {
            return stmt_return(resolve_literals(n.expr, repo));
        }
    };
    return std::visit(Visitor{repo}, s->node);
}

/// A runnable discovery pair: a literal-resolved program plus the repository
/// its inputs are drawn from.
struct DiscoveryProgram {
    StmtPtr program;                 // literals resolved
    const Repository* repo = nullptr;
    std::vector<std::string> vars;   // declared variables, program order

    std::size_t arity() const { return vars.size(); }
};

/// Validates, extracts free variables, and resolves literals. Throws
/// ValidationError when diagnostics remain and RepositoryError on unknown
/// dataset names.
inline DiscoveryProgram make_discovery_program(const StmtPtr& s, const Repository& repo) {
    const std::vector<Diagnostic> diags = validate(s);
    if (!diags.empty()) {
        std::string message = "program is not valid:";
        for (const Diagnostic& d : diags) message += "\n  " + d.message;
        throw ValidationError(message);
    }
    DiscoveryProgram dp;
    dp.vars = free_variables(s);
    dp.program = resolve_literals(normalize(s), repo);
    dp.repo = &repo;
    return dp;
}

// ---------------------------------------------------------------------------
// Choice functions
// ---------------------------------------------------------------------------

/// Produces candidate input tuples for the search loop. Implementations may
/// keep state across next() calls within one solve; they must never yield a
/// candidate present in the feedback, and must yield each candidate at most
/// once per solve, signalling exhaustion with nullopt.
class ChoiceFunction {
public:
    virtual ~ChoiceFunction() = default;
    virtual void begin(const DiscoveryProgram& dp) = 0;
    virtual std::optional<CandidateInput> next(const Feedback& feedback) = 0;
};

/// Depth-first enumeration of every length-n name tuple, lexicographic over
/// the catalog order: the rightmost position varies fastest.
class BacktrackingChoice final : public ChoiceFunction {
public:
    void begin(const DiscoveryProgram& dp) override {
        names_ = dp.repo->names();
        arity_ = dp.arity();
        digits_.assign(arity_, 0);
        exhausted_ = arity_ > 0 && names_.empty();
    }

    std::optional<CandidateInput> next(const Feedback& feedback) override {
        while (!exhausted_) {
            CandidateInput candidate;
            candidate.reserve(arity_);
            for (const std::size_t d : digits_) candidate.push_back(names_[d]);
            advance();
            if (!feedback.failed.count(candidate)) return candidate;
        }
        return std::nullopt;
    }

private:
    void advance() {
        if (arity_ == 0) {
            exhausted_ = true;  // the single empty tuple has been yielded
            return;
        }
        std::size_t pos = arity_;
        while (pos > 0) {
            --pos;
            if (++digits_[pos] < names_.size()) return;
            digits_[pos] = 0;
        }
        exhausted_ = true;
    }

    std::vector<std::string> names_;
    std::vector<std::size_t> digits_;
    std::size_t arity_ = 0;
    bool exhausted_ = false;
};

using ChoiceFactory = std::function<std::unique_ptr<ChoiceFunction>()>;

inline const std::map<std::string, ChoiceFactory>& choice_registry() {
    static const std::map<std::string, ChoiceFactory> registry = {
        {"backtracking", [] { return std::make_unique<BacktrackingChoice>(); }},
    };
    return registry;
}

inline std::unique_ptr<ChoiceFunction> make_choice(const std::string& name) {
    const auto& registry = choice_registry();
    const auto it = registry.find(name);
    if (it == registry.end()) {
        std::string message = "unknown choice function '" + name + "'; available:";
        for (const auto& [known, factory] : registry) message += " " + known;
        throw std::invalid_argument(message);
    }
    return it->second();
}

// ---------------------------------------------------------------------------
// Search loop
// ---------------------------------------------------------------------------

struct Solution {
    Dataset output;
    CandidateInput input;
};

struct SolveStats {
    std::uint64_t evaluations = 0;
    std::uint64_t completed_without_return = 0;
};

struct SolveResult {
    std::optional<Solution> solution;  // nullopt = exhausted
    SolveStats stats;
};

namespace detail {

inline std::vector<Dataset> resolve_candidate(const Repository& repo,
                                              const CandidateInput& input) {
    std::vector<Dataset> out;
    out.reserve(input.size());
    for (const std::string& name : input) out.push_back(repo.lookup(name));
    return out;
}

}  // namespace detail

/// Streams every successful (output, input) pair in enumeration order.
/// Candidates whose run fails are added to the feedback set.
class SolutionStream {
public:
    SolutionStream(const DiscoveryProgram& dp, ChoiceFunction& choice, RunOptions opts = {})
        : dp_(dp), choice_(choice), opts_(std::move(opts)) {
        choice_.begin(dp_);
    }

    std::optional<Solution> next() {
        while (auto candidate = choice_.next(feedback_)) {
            const std::vector<Dataset> inputs =
                detail::resolve_candidate(*dp_.repo, *candidate);
            ++stats_.evaluations;
            const Outcome outcome = run(dp_.program, inputs, opts_);
            if (outcome.status == Outcome::Status::Success)
                return Solution{*outcome.data, *candidate};
            if (outcome.status == Outcome::Status::CompletedWithoutReturn)
                ++stats_.completed_without_return;
            feedback_.failed.insert(*candidate);
        }
        return std::nullopt;
    }

    const SolveStats& stats() const { return stats_; }

private:
    DiscoveryProgram dp_;
    ChoiceFunction& choice_;
    RunOptions opts_;
    Feedback feedback_;
    SolveStats stats_;
};

/// First success, or exhaustion once the choice function gives up. The
/// number of evaluator invocations never exceeds |repo|^arity.
inline SolveResult solve(const DiscoveryProgram& dp, ChoiceFunction& choice,
                         const RunOptions& opts = {}) {
    SolutionStream stream(dp, choice, opts);
    std::optional<Solution> first = stream.next();
    return {std::move(first), stream.stats()};
}

/// Every solution, in enumeration order.
inline std::vector<Solution> solve_all(const DiscoveryProgram& dp, ChoiceFunction& choice,
                                       const RunOptions& opts = {}) {
    SolutionStream stream(dp, choice, opts);
    std::vector<Solution> out;
    while (auto solution = stream.next()) out.push_back(std::move(*solution));
    return out;
}

}  // namespace tql
