// yulsem: executable operational semantics for Yul
// Copyright 2026 The yulsem Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <yulsem/dialect.hpp>
#include <yulsem/syntax.hpp>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>

namespace yulsem
{
/// How an evaluation ended.
enum class Status : uint8_t
{
    finished,        ///< Reached a terminal configuration (regular, halting or external mode).
    fuel_exhausted,  ///< Ran out of the semantics-level step budget.
};

/// Terminal configuration of either evaluator.
struct Outcome
{
    Status status = Status::finished;
    GlobalState g;
    LocalStore l;
    Namespace n;
    Result result = Mode::regular();
    uint64_t steps = 0;

    [[nodiscard]] const Mode* mode() const noexcept { return std::get_if<Mode>(&result); }
    [[nodiscard]] bool is_external() const noexcept
    {
        const auto* m = mode();
        return m != nullptr && m->is_external();
    }
};

/// A counter pair for one runtime-checked property.
struct PropertyCounter
{
    uint64_t checks = 0;
    uint64_t violations = 0;

    void record(bool holds) noexcept
    {
        ++checks;
        if (!holds)
            ++violations;
    }
};

/// Runtime checks of the store and loop lemmas, filled in by the evaluators.
struct LemmaMonitor
{
    PropertyCounter store_lower_bound;  ///< dom(L') contains dom(L) after each statement.
    PropertyCounter loop_domain;        ///< dom(L) is the same before and after a loop.
    PropertyCounter loop_containment;   ///< A loop never ends in break or continue.
    PropertyCounter expression_store;   ///< Expression evaluation leaves L untouched.

    void merge(const LemmaMonitor& o) noexcept;
    [[nodiscard]] uint64_t total_violations() const noexcept;
    [[nodiscard]] uint64_t total_checks() const noexcept;
};

inline constexpr size_t default_depth_limit = 100000;

struct EvalOptions
{
    std::optional<uint64_t> fuel;  ///< Step budget; unlimited when empty.
    size_t depth_limit = default_depth_limit;
    LemmaMonitor* monitor = nullptr;
};

/// Internal signal of an irregular external mode raised by the dialect.
struct ExternalAbort
{
    ExternalMode mode;
};

/// Internal signal of fuel exhaustion.
struct FuelOut
{
};

/// Runs fn on a thread with a large stack, rethrowing any exception in the caller.
void run_with_stack(const std::function<void()>& fn, size_t stack_bytes = size_t{1} << 30);
}  // namespace yulsem
