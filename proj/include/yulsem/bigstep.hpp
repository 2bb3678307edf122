// yulsem: executable operational semantics for Yul
// Copyright 2026 The yulsem Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <yulsem/engine.hpp>

namespace yulsem
{
/// Reference evaluator: structural recursion over the big-step rules.
///
/// G is threaded linearly and updated in place. An external mode raised by the dialect
/// aborts the whole evaluation; the entry points below then report that mode together
/// with G at the abort point and the input L.
class BigStep
{
public:
    BigStep(const Dialect& dialect, EvalOptions options = {});

    /// Evaluates a top-level block with the Block rule.
    Outcome run(const Block& program, GlobalState g, LocalStore l = {}, Namespace n = {});

    Outcome eval_stmt(const Statement& s, GlobalState g, LocalStore l, Namespace n);
    Outcome eval_seq(const std::vector<Statement>& stmts, GlobalState g, LocalStore l, Namespace n);
    Outcome eval_exp(const Expression& e, GlobalState g, LocalStore l, Namespace n);

    [[nodiscard]] uint64_t steps() const noexcept { return m_steps; }

private:
    template <typename F>
    Outcome guarded(GlobalState g, LocalStore l, Namespace n, F&& f);

    Mode stmt(const Statement& s, GlobalState& g, LocalStore& l, const Namespace& n);
    Mode block(const Block& b, GlobalState& g, LocalStore& l, const Namespace& n);
    Mode seq(const std::vector<Statement>& stmts, GlobalState& g, LocalStore& l, const Namespace& n);
    Mode loop(const For& f, GlobalState& g, LocalStore& l, const Namespace& n);
    Mode for_stmt(const For& f, GlobalState& g, LocalStore& l, const Namespace& n);
    Result exp(const Expression& e, GlobalState& g, LocalStore& l, const Namespace& n);
    Value single(const Expression& e, GlobalState& g, LocalStore& l, const Namespace& n);
    std::vector<Value> arguments(const std::vector<Expression>& args, GlobalState& g, LocalStore& l,
        const Namespace& n);

    void tick();

    const Dialect& m_dialect;
    EvalOptions m_options;
    uint64_t m_steps = 0;
    size_t m_depth = 0;
};
}  // namespace yulsem
