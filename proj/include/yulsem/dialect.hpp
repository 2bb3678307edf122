// yulsem: executable operational semantics for Yul
// Copyright 2026 The yulsem Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <yulsem/syntax.hpp>

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace yulsem
{
/// One gas charge, as recorded in the optional full history.
struct Charge
{
    std::string label;
    uint64_t cost = 0;
    friend bool operator==(const Charge&, const Charge&) = default;
};

/// The global environment G. Its contents are only interpreted by the dialect.
struct GlobalState
{
    Bytes memory;
    std::map<Value, Value> storage;  ///< Zero-valued entries are never stored.
    uint64_t gas_remaining = 0;
    uint64_t gas_limit = 0;
    Bytes returndata;
    std::optional<ExternalMode> halted;

    uint64_t charge_count = 0;
    uint64_t charge_digest = 0xcbf29ce484222325;  ///< FNV-1a over (label, cost) of every charge.
    std::shared_ptr<std::vector<Charge>> history;  ///< Recorded only when non-null.

    unsigned call_depth = 0;
};

/// Field-wise comparison of the observable parts of G. Returns the first differing field or
/// nullopt when equal.
std::optional<std::string> first_difference(const GlobalState& a, const GlobalState& b);

/// A dialect builtin (opcode) signature.
struct BuiltinInfo
{
    std::string name;
    unsigned args = 0;
    unsigned rets = 0;
    bool literal_args = false;  ///< Arguments must be string literals, resolved before evaluation.
};

/// Either a list of result values or an irregular external mode.
struct OpcodeResult
{
    std::vector<Value> values;
    std::optional<ExternalMode> irregular;

    static OpcodeResult none() { return {}; }
    static OpcodeResult of(Value v) { return {{v}, std::nullopt}; }
    static OpcodeResult halt(ExternalMode m) { return {{}, std::move(m)}; }
};

/// Points in control flow where a dialect may meter execution.
enum class ControlPoint : uint8_t
{
    loop_iteration,  ///< An empty-init loop is about to test its condition.
    function_call,   ///< Arguments are evaluated and the callee body is about to start.
};

/// Raised when a literal cannot be converted to a dialect value.
class LiteralError : public HostError
{
public:
    using HostError::HostError;
};

/// The capability bundle a Yul dialect supplies to the evaluators.
class Dialect
{
public:
    virtual ~Dialect() = default;

    [[nodiscard]] virtual std::string_view name() const noexcept = 0;

    [[nodiscard]] virtual bool truthy(const Value& v) const noexcept = 0;
    [[nodiscard]] bool falsy(const Value& v) const noexcept { return !truthy(v); }

    /// Throws LiteralError if the literal has no value in this dialect.
    [[nodiscard]] virtual Value value_of_literal(const Literal& lit) const = 0;

    [[nodiscard]] virtual const BuiltinInfo* builtin(std::string_view name) const noexcept = 0;
    [[nodiscard]] bool is_builtin(std::string_view name) const noexcept { return builtin(name) != nullptr; }

    /// Evaluates a builtin on already-evaluated arguments, updating g in place.
    /// Unknown names and arity mismatches are host errors.
    virtual OpcodeResult eval_opcode(Identifier name, std::span<const Value> args, GlobalState& g) const = 0;

    /// Meters a control-flow point. A returned mode aborts execution.
    virtual std::optional<ExternalMode> on_control(ControlPoint point, GlobalState& g) const;

    /// Called when a function call frame is popped.
    virtual void on_return(GlobalState& g) const;

    [[nodiscard]] virtual GlobalState initial_state(uint64_t gas_limit) const;
};

/// Decodes the body of a double-quoted string literal lexeme (quotes included) to bytes.
/// Throws LiteralError on malformed escapes.
Bytes decode_string_literal(std::string_view lexeme);

std::string to_hex(std::span<const uint8_t> bytes);
}  // namespace yulsem
