#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <vector>

#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "support/rule_checks.hpp"
#include "tql/eval.hpp"
#include "tql/ir.hpp"

using namespace tql;

TEST_CASE("every reduction rule holds") {
    for (const rules::RuleCheck& check : rules::all_rule_checks()) {
        INFO(check.name);
        CHECK_NOTHROW(check.fn());
    }
}

TEST_CASE("terminal configurations are top, bottom, and a resolved return") {
    const Dataset d = rules::people();
    CHECK(is_terminal({stmt_top(), {}}));
    CHECK(is_terminal({stmt_bottom(), {}}));
    CHECK(is_terminal({stmt_return(rel_resolved(d)), {}}));
    CHECK_FALSE(is_terminal({stmt_return(rel_var("x")), {}}));
    CHECK_FALSE(is_terminal({stmt_return(rel_null()), {}}));
    CHECK_FALSE(is_terminal({stmt_declare("x"), {}}));
    CHECK_THROWS_AS(step({stmt_top(), {}}), EvalError);
}

TEST_CASE("run returns the dataset of a successful program") {
    const auto program = seq_of(
        {stmt_declare("t"),
         stmt_assign("t", rel_test(rel_var("t"), {has_attributes({"age"})})),
         stmt_return(rel_var("t"))});
    const Outcome got = run(program, {rules::people()});
    REQUIRE(got.status == Outcome::Status::Success);
    CHECK(*got.data == rules::people());
}

TEST_CASE("run reports failure when a statement collapses") {
    const auto program = seq_of(
        {stmt_declare("t"),
         stmt_assign("t", rel_test(rel_var("t"), {has_attributes({"no_such"})})),
         stmt_return(rel_var("t"))});
    CHECK(run(program, {rules::people()}) == Outcome::failure());
}

TEST_CASE("run reports a program that never returns") {
    const auto program = stmt_assign("t", rel_resolved(rules::people()));
    CHECK(run(program, {}) == Outcome::completed_without_return());
}

TEST_CASE("run checks the input arity") {
    const auto program = seq_of({stmt_declare("t"), stmt_return(rel_var("t"))});
    CHECK_THROWS_AS(run(program, {}), EvalError);
    CHECK_THROWS_AS(run(program, {rules::people(), rules::people()}), EvalError);
    CHECK_THROWS_AS(run(stmt_return(rel_literal("unresolved")), {}), EvalError);
}

TEST_CASE("the step limit aborts runaway evaluations") {
    const auto program = seq_of(
        {stmt_declare("t"),
         stmt_assign("u", rel_union(rel_var("t"), rel_var("t"))),
         stmt_return(rel_var("u"))});
    RunOptions opts;
    opts.step_limit = 2;
    CHECK_THROWS_AS(run(program, {rules::people()}, opts), EvalError);
    CHECK(run(program, {rules::people()}).status == Outcome::Status::Success);
}

TEST_CASE("the trace callback sees every configuration including the terminal one") {
    const auto program = seq_of({stmt_declare("t"), stmt_return(rel_var("t"))});
    std::vector<std::string> snapshots;
    RunOptions opts;
    opts.trace = [&](const Configuration& c) { snapshots.push_back(to_string(c)); };
    run(program, {rules::people()}, opts);

    REQUIRE(snapshots.size() >= 3);
    CHECK(snapshots.front() == "<!t; ret t, {t = people}>");
    CHECK(snapshots.back() == "<ret #people, {t = people}>");
}

TEST_CASE("environment bindings from earlier statements feed later ones") {
    const auto program = seq_of(
        {stmt_declare("a"),
         stmt_assign("b", rel_project({"age"}, rel_var("a"))),
         stmt_assign("c", rel_union(rel_var("b"), rel_var("b"))),
         stmt_return(rel_var("c"))});
    const Outcome got = run(program, {rules::people()});
    REQUIRE(got.status == Outcome::Status::Success);
    const Dataset want("", {"age"}, {Kind::Number}, {{Value(34.0)}, {Value(22.0)}});
    CHECK(*got.data == want);
}

TEST_CASE("a failing middle statement stops the program") {
    const auto program = seq_of(
        {stmt_declare("a"),
         stmt_assign("b", rel_project({"ghost"}, rel_var("a"))),
         stmt_return(rel_var("a"))});
    CHECK(run(program, {rules::people()}) == Outcome::failure());
}

TEST_CASE("reassignment replaces an input binding") {
    const auto program = seq_of(
        {stmt_declare("a"),
         stmt_assign("a", rel_project({"age"}, rel_var("a"))),
         stmt_return(rel_var("a"))});
    const Outcome got = run(program, {rules::people()});
    REQUIRE(got.status == Outcome::Status::Success);
    CHECK(got.data->attributes() == std::vector<std::string>{"age"});
}

TEST_CASE("evaluation is deterministic") {
    gen::Rng rng(20260816);
    for (int i = 0; i < 50; ++i) {
        const gen::IrCase c = gen::random_ir_case(rng, false);
        const Outcome first = run(c.program, c.inputs);
        const Outcome second = run(c.program, c.inputs);
        CHECK(first == second);
    }
}

TEST_CASE("small-step outcomes agree with the big-step oracle") {
    gen::Rng rng(424242);
    int successes = 0;
    for (int i = 0; i < 300; ++i) {
        const gen::IrCase c = gen::random_ir_case(rng, false);
        REQUIRE(validate(c.program).empty());
        const Outcome fast = run(c.program, c.inputs);
        const Outcome reference = oracle::big_step_run(c.program, c.inputs);
        REQUIRE(fast == reference);
        if (fast.status == Outcome::Status::Success) ++successes;
    }
    CHECK(successes > 0);
}

TEST_CASE("step counts stay linear in program size") {
    gen::Rng rng(777);
    for (int i = 0; i < 100; ++i) {
        const gen::IrCase c = gen::random_ir_case(rng, false);
        std::uint64_t steps = 0;
        RunOptions opts;
        opts.trace = [&](const Configuration&) { ++steps; };
        run(c.program, c.inputs, opts);
        CHECK(steps < 10'000);
    }
}
