// yulsem: executable operational semantics for Yul
// Copyright 2026 The yulsem Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <yulsem/engine.hpp>

#include <functional>
#include <memory>
#include <variant>
#include <vector>

namespace yulsem
{
/// {S_next, ..}_L^N: the rest of a scoped block. The statement in focus is items[next - 1].
struct BlockRest
{
    const std::vector<Statement>* items = nullptr;
    size_t next = 0;
    LocalStore saved_l;
    Namespace saved_n;

    [[nodiscard]] bool empty() const noexcept { return next >= items->size(); }
};

struct DeclTargets
{
    const VarDecl* decl;
};

struct AssignTargets
{
    const Assign* assign;
};

struct ExprStmtHole
{
};

struct ContinueCatch
{
};

struct BreakCatch
{
};

struct IfThen
{
    const If* stmt;
};

struct SwitchCases
{
    const Switch* stmt;
};

/// x(M.., E, v..): arguments are collected into their positions as they are evaluated.
struct CallArgs
{
    const Expression* call;
    size_t pending;  ///< Index of the argument currently in focus.
    std::vector<Value> collected;
};

/// The call frame: caller store to reinstate and the callee's return variables.
struct CallReturn
{
    LocalStore saved_l;
    const FunDef* def;
};

using Frame = std::variant<BlockRest, DeclTargets, AssignTargets, ExprStmtHole, ContinueCatch, BreakCatch, IfThen,
    SwitchCases, CallArgs, CallReturn>;

std::string_view frame_name(const Frame& f) noexcept;

using Focus = std::variant<const Statement*, const Block*, const Expression*, Mode, Value, Tuple>;

/// Argument evaluation order. Only right-to-left is the semantics; the other exists as a
/// deliberately broken variant for testing the harness.
enum class ArgOrder : uint8_t
{
    right_to_left,
    left_to_right,
};

struct TraceEvent
{
    uint64_t step;
    std::string_view rule;
    std::string focus;
    size_t depth;
    uint64_t gas;
};

struct SmallStepOptions
{
    std::optional<uint64_t> fuel;
    bool collapse_frames = false;  ///< Enables break and block dropping.
    ArgOrder arg_order = ArgOrder::right_to_left;
    std::function<void(const TraceEvent&)> trace;
};

/// Raised when no rule applies to the current configuration.
class StuckState : public HostError
{
public:
    using HostError::HostError;
};

/// A CEK-style machine for the small-step semantics.
///
/// The frame stack is the evaluation context E, innermost frame last; the focus is the term
/// in its hole.
class Machine
{
public:
    Machine(const Dialect& dialect, SmallStepOptions options = {});

    void inject(const Block& program, GlobalState g, LocalStore l = {}, Namespace n = {});
    void inject(const Statement& program, GlobalState g, LocalStore l = {}, Namespace n = {});
    void inject(const Expression& program, GlobalState g, LocalStore l = {}, Namespace n = {});

    [[nodiscard]] bool terminal() const noexcept;
    [[nodiscard]] bool fuel_exhausted() const noexcept;

    /// Performs one reduction and returns the name of the rule applied.
    /// Returns "fuel-exhausted" without changing the state once the budget is spent.
    std::string_view step();

    /// Steps until terminal or out of fuel.
    Outcome run();

    [[nodiscard]] const Focus& focus() const noexcept { return m_focus; }
    [[nodiscard]] const std::vector<Frame>& stack() const noexcept { return m_stack; }
    [[nodiscard]] const GlobalState& g() const noexcept { return m_g; }
    [[nodiscard]] const LocalStore& l() const noexcept { return m_l; }
    [[nodiscard]] const Namespace& n() const noexcept { return m_n; }
    [[nodiscard]] uint64_t steps() const noexcept { return m_steps; }

    /// Largest number of block and catcher frames seen at once.
    [[nodiscard]] size_t max_scope_depth() const noexcept { return m_max_scope_depth; }
    [[nodiscard]] size_t max_stack_depth() const noexcept { return m_max_stack_depth; }
    [[nodiscard]] uint64_t dropped_frames() const noexcept { return m_dropped; }

    /// E[focus] as a runtime term.
    [[nodiscard]] Statement to_term() const;

    /// One-line description of the focus, used by traces.
    [[nodiscard]] std::string focus_summary() const;

    /// Focus and frame kinds, for diagnostics.
    [[nodiscard]] std::string dump() const;

    struct LoopTerms;

private:

    void reset(GlobalState g, LocalStore l, Namespace n);
    std::string_view step_statement(const Statement& s);
    std::string_view step_block(const Block& b, std::string_view rule);
    std::string_view step_expression(const Expression& e);
    std::string_view step_mode(Mode m);
    std::string_view step_result(Result r);
    std::string_view apply_call(const Expression& call, std::vector<Value> args);
    const LoopTerms& loop_terms(const For& f);

    void push(Frame f);
    void pop();
    [[nodiscard]] bool break_catch_redundant() const;
    void try_drop_block();
    [[noreturn]] void stuck(std::string_view why) const;

    const Dialect& m_dialect;
    SmallStepOptions m_options;

    Focus m_focus;
    std::vector<Frame> m_stack;
    GlobalState m_g;
    LocalStore m_l;
    Namespace m_n;
    uint64_t m_steps = 0;

    size_t m_scope_depth = 0;
    size_t m_max_scope_depth = 0;
    size_t m_max_stack_depth = 0;
    uint64_t m_dropped = 0;

    std::shared_ptr<struct LoopCache> m_cache;
};
}  // namespace yulsem
