// yulsem: executable operational semantics for Yul
// Copyright 2026 The yulsem Authors.
// SPDX-License-Identifier: Apache-2.0

#include "../support/oracles.hpp"
#include "../support/run.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace yulsem;

namespace
{
const EvmDialect dialect;

std::vector<std::string> rules(const Block& program, SmallStepOptions opts = {})
{
    Machine m{dialect, std::move(opts)};
    m.inject(program, dialect.initial_state(1'000'000));
    std::vector<std::string> out;
    while (!m.terminal())
        out.emplace_back(m.step());
    return out;
}

std::string counting_loop(uint64_t n)
{
    return "{ let s := 0 for { let i := 0 } lt(i, " + std::to_string(n) +
           ") { i := add(i, 1) } { s := add(s, i) } mstore(0, s) }";
}
}  // namespace

TEST(smallstep, rule_sequence_for_a_declaration)
{
    const auto b = parse_program("{ let x := add(1, 2) }", dialect);
    const auto r = rules(b);
    const std::vector<std::string> expected{"Block", "VarDecl", "Arg", "Lit", "Arg", "Lit", "OpCall",
        "VarDeclBind", "BlockExit"};
    EXPECT_EQ(r, expected);
}

TEST(smallstep, loop_rules_appear)
{
    const auto b = parse_program(
        "{ for { let i := 0 } lt(i, 3) { i := add(i, 1) } { if eq(i, 1) { continue } if eq(i, 2) { break } } }",
        dialect);
    const auto r = rules(b);
    const std::set<std::string> seen(r.begin(), r.end());
    for (const char* rule : {"ForInit", "ForUnroll", "BreakEnter", "ContinueEnter", "Continue", "Break",
             "BreakExit", "IfTrue", "IfFalse"})
        EXPECT_TRUE(seen.contains(rule)) << rule;
}

TEST(smallstep, call_rules_appear)
{
    const auto b = parse_program("{ function f(a) -> r { r := a leave } pop(f(1)) }", dialect);
    const auto r = rules(b);
    const std::set<std::string> seen(r.begin(), r.end());
    for (const char* rule : {"FunDef", "FunCall", "Leave", "Return", "ExprStmtDone"})
        EXPECT_TRUE(seen.contains(rule)) << rule;
}

TEST(smallstep, gas_exhaustion_rules)
{
    const auto forever = parse_program("{ for { } 1 { } { } }", dialect);
    Machine loop{dialect};
    loop.inject(forever, dialect.initial_state(25));
    std::vector<std::string> r;
    while (!loop.terminal())
        r.emplace_back(loop.step());
    EXPECT_NE(std::find(r.begin(), r.end(), "ForGas"), r.end());

    const auto b = parse_program("{ function f() { f() } f() }", dialect);
    r = rules(b);
    EXPECT_NE(std::find(r.begin(), r.end(), "CallGas"), r.end());
}

TEST(smallstep, terminal_and_fuel_steps)
{
    const auto b = parse_program("{ for { } 1 { } { } }", dialect);
    Machine m{dialect, SmallStepOptions{10, false, ArgOrder::right_to_left, {}}};
    m.inject(b, dialect.initial_state(1'000'000));
    for (int i = 0; i < 10; ++i)
        m.step();
    EXPECT_TRUE(m.fuel_exhausted());
    EXPECT_EQ(m.step(), "fuel-exhausted");
    EXPECT_EQ(m.run().status, Status::fuel_exhausted);

    const auto empty = parse_program("{ }", dialect);
    Machine done{dialect};
    done.inject(empty, dialect.initial_state(10));
    done.run();
    EXPECT_TRUE(done.terminal());
    EXPECT_EQ(done.step(), "terminal");
}

TEST(smallstep, to_term_reconstructs_configuration)
{
    const auto b = parse_program(test::corpus("primes.yul"), dialect);
    Machine m{dialect};
    m.inject(b, dialect.initial_state(10'000'000));
    EXPECT_EQ(m.to_term(), make_stmt(b));
    EXPECT_TRUE(is_source_level(m.to_term()));
    bool runtime_seen = false;
    for (int i = 0; i < 2000 && !m.terminal(); ++i)
    {
        m.step();
        const auto t = m.to_term();
        runtime_seen = runtime_seen || !is_source_level(t);
        EXPECT_FALSE(m.focus_summary().empty());
    }
    EXPECT_TRUE(runtime_seen);
    m.run();
    EXPECT_EQ(m.to_term(), make_stmt(ModeStmt{Mode::regular()}));
    EXPECT_FALSE(m.dump().empty());
}

TEST(smallstep, expression_injection)
{
    const auto b = parse_program("{ function f(a, b) -> x, y { x := b y := a } pop(mul(3, 4)) }", dialect);
    const auto& e = std::get<ExprStmt>(b.statements[1].node).expr;
    Machine m{dialect};
    m.inject(e, dialect.initial_state(100));
    const auto o = m.run();
    EXPECT_EQ(to_string(o.result), "regular");

    const auto& mul = std::get<OpCall>(e.node).args[0];
    m.inject(mul, dialect.initial_state(100));
    EXPECT_EQ(std::get<Value>(m.run().result), U256{12});

    const auto call = make_call("f", {make_number(1), make_number(2)});
    m.inject(call, dialect.initial_state(100), {}, funsof(b));
    const auto tuple = std::get<Tuple>(m.run().result);
    EXPECT_EQ(tuple.values, (std::vector<Value>{U256{2}, U256{1}}));
}

TEST(smallstep, trace_sees_every_step)
{
    const auto b = parse_program(test::corpus("fibonacci.yul"), dialect);
    uint64_t events = 0;
    uint64_t last = 0;
    Machine m{dialect, SmallStepOptions{std::nullopt, false, ArgOrder::right_to_left, [&](const TraceEvent& ev) {
                                            ++events;
                                            last = ev.step;
                                        }}};
    m.inject(b, dialect.initial_state(1'000'000));
    const auto o = m.run();
    EXPECT_EQ(events, o.steps);
    EXPECT_EQ(last, o.steps);
}

TEST(smallstep, left_to_right_mutation_changes_observable_state)
{
    const auto b = parse_program(R"({
        function g(i) -> r { let k := mload(0) mstore(add(32, mul(k, 32)), i) mstore(0, add(k, 1)) r := i }
        pop(add(g(1), g(2)))
    })",
        dialect);
    const auto good = test::run_block(b, test::Engine::small, dialect);
    const auto bad = test::run_block(b, test::Engine::small, dialect, {.order = ArgOrder::left_to_right});
    EXPECT_EQ(oracle::memory_word(good.g.memory, 1), 2);
    EXPECT_EQ(oracle::memory_word(bad.g.memory, 1), 1);
}

TEST(smallstep, collapsing_bounds_loop_depth)
{
    const auto b = parse_program(counting_loop(20000), dialect);
    Machine plain{dialect};
    plain.inject(b, dialect.initial_state(1'000'000'000));
    const auto po = plain.run();
    Machine opt{dialect, SmallStepOptions{std::nullopt, true, ArgOrder::right_to_left, {}}};
    opt.inject(b, dialect.initial_state(1'000'000'000));
    const auto oo = opt.run();

    EXPECT_EQ(po.g.memory, oo.g.memory);
    EXPECT_EQ(po.g.gas_remaining, oo.g.gas_remaining);
    EXPECT_GT(opt.dropped_frames(), 0u);
    EXPECT_EQ(plain.dropped_frames(), 0u);
    EXPECT_LT(opt.max_stack_depth(), 16u);
    EXPECT_GT(plain.max_stack_depth(), 20000u);
}

TEST(smallstep, collapsed_depth_does_not_grow_with_iterations)
{
    size_t depth_small = 0;
    size_t depth_large = 0;
    for (auto [n, out] : {std::pair{100ull, &depth_small}, std::pair{5000ull, &depth_large}})
    {
        const auto b = parse_program(counting_loop(n), dialect);
        Machine m{dialect, SmallStepOptions{std::nullopt, true, ArgOrder::right_to_left, {}}};
        m.inject(b, dialect.initial_state(1'000'000'000));
        m.run();
        *out = m.max_stack_depth();
    }
    EXPECT_EQ(depth_small, depth_large);
}

TEST(smallstep, frame_names)
{
    EXPECT_EQ(frame_name(Frame{BreakCatch{}}), "brk");
    EXPECT_EQ(frame_name(Frame{ContinueCatch{}}), "cnt");
}
