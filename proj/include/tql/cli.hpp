#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tql/eval.hpp"
#include "tql/ir.hpp"
#include "tql/parser.hpp"
#include "tql/render.hpp"
#include "tql/repository.hpp"
#include "tql/solver.hpp"
#include "tql/tcra.hpp"
#include "tql/translate.hpp"

namespace tql {

/// Command-line entry point. `args` holds the arguments without the program
/// name, in natural order. Returns the process exit code: 0 when at least one
/// result was found, 1 when the search space was exhausted (or the oracle
/// disagreed), 2 on usage, parse, or load errors.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"tql: query a repository of CSV datasets"};
    app.name("tql");

    std::string repo_dir;
    std::string query_path;
    std::string eval_text;
    std::string choice_name = "backtracking";
    std::string format_name = "table";
    std::uint64_t step_limit = 1'000'000;
    bool all = false;
    bool oracle = false;
    bool emit_ir = false;
    bool trace = false;

    app.add_option("--repo", repo_dir, "directory whose *.csv files form the repository")
        ->required();
    auto* source_group = app.add_option_group("query source");
    auto* query_opt = source_group->add_option("--query", query_path, "file holding the query");
    source_group->add_option("--eval", eval_text, "query text given inline");
    source_group->require_option(1);
    app.add_flag("--all", all, "enumerate every solution instead of stopping at the first");
    app.add_flag("--oracle", oracle, "cross-check the solver against brute-force enumeration");
    app.add_option("--choice", choice_name, "candidate enumeration strategy")
        ->capture_default_str();
    app.add_flag("--emit-ir", emit_ir, "print the translated program before solving");
    app.add_flag("--trace", trace, "print each evaluation step to stderr");
    app.add_option("--step-limit", step_limit, "abort any single evaluation after this many steps")
        ->capture_default_str()
        ->envname("TQL_STEP_LIMIT")
        ->check(CLI::PositiveNumber);
    app.add_option("--format", format_name, "result rendering: table or csv")
        ->capture_default_str()
        ->check(CLI::IsMember({"table", "csv"}));

    try {
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    }

    Repository repo;
    try {
        repo = load_repository(repo_dir);
    } catch (const RepositoryError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    std::string source;
    std::string source_name;
    if (query_opt->count() > 0) {
        std::ifstream file(query_path, std::ios::binary);
        if (!file) {
            err << "error: cannot read query file '" << query_path << "'\n";
            return 2;
        }
        std::ostringstream buf;
        buf << file.rdbuf();
        source = buf.str();
        source_name = query_path;
    } else {
        source = eval_text;
        source_name = "<eval>";
    }

    TqlProgram program;
    try {
        program = parse_source(source);
    } catch (const SyntaxError& e) {
        err << source_name << ':' << e.span.line << ':' << e.span.column << ": error: "
            << e.what() << '\n';
        return 2;
    }

    const StmtPtr ir = translate(program);
    if (emit_ir) out << to_string(ir) << '\n';

    DiscoveryProgram dp;
    try {
        dp = make_discovery_program(ir, repo);
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const RepositoryError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    std::unique_ptr<ChoiceFunction> choice;
    try {
        choice = make_choice(choice_name);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    RunOptions opts;
    opts.step_limit = step_limit;
    if (trace)
        opts.trace = [&err](const Configuration& c) { err << "trace: " << to_string(c) << '\n'; };

    const OutputFormat fmt = format_name == "csv" ? OutputFormat::Csv : OutputFormat::Table;
    const auto print_solution = [&](const Solution& s, bool first) {
        if (!first) out << '\n';
        if (!dp.vars.empty()) {
            out << "witness: ";
            for (std::size_t i = 0; i < dp.vars.size(); ++i) {
                if (i) out << ", ";
                out << dp.vars[i] << " <- " << s.input[i];
            }
            out << '\n';
        }
        out << render_dataset(s.output, fmt);
    };

    try {
        if (oracle) {
            const std::vector<Solution> solutions = solve_all(dp, *choice, opts);
            DatasetSet found;
            for (const Solution& s : solutions) found.insert(s.output);
            const DatasetSet expected = tcra_eval(dp, 10'000, opts);
            const std::vector<Dataset> unexpected = found.missing_from(expected);
            const std::vector<Dataset> missed = expected.missing_from(found);
            if (!unexpected.empty() || !missed.empty()) {
                err << "oracle: mismatch\n";
                for (const Dataset& d : unexpected)
                    err << "only the solver produced:\n" << render_dataset(d, OutputFormat::Table);
                for (const Dataset& d : missed)
                    err << "only the oracle produced:\n" << render_dataset(d, OutputFormat::Table);
                return 1;
            }
            bool first = true;
            for (const Solution& s : solutions) {
                print_solution(s, first);
                first = false;
            }
            err << "oracle: agreement, " << expected.size() << " distinct result(s)\n";
            if (solutions.empty()) {
                err << "no result: search exhausted\n";
                return 1;
            }
            return 0;
        }
        if (all) {
            const std::vector<Solution> solutions = solve_all(dp, *choice, opts);
            if (solutions.empty()) {
                err << "no result: search exhausted\n";
                return 1;
            }
            bool first = true;
            for (const Solution& s : solutions) {
                print_solution(s, first);
                first = false;
            }
            return 0;
        }
        const SolveResult result = solve(dp, *choice, opts);
        if (!result.solution) {
            err << "no result: search exhausted\n";
            return 1;
        }
        print_solution(*result.solution, true);
        return 0;
    } catch (const TcraCeilingError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const EvalError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace tql
