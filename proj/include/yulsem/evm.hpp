// yulsem: executable operational semantics for Yul
// Copyright 2026 The yulsem Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <yulsem/dialect.hpp>

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>

namespace yulsem
{
inline constexpr uint64_t default_gas_limit = 10'000'000;

/// Gas fee schedule. Keys are opcode names plus a few named charge points:
/// "$loop", "$call", "memory_word", "memory_quad_divisor", "exp_byte", "copy_word",
/// "sstore_set", "sstore_reset".
class GasTable
{
public:
    static GasTable defaults();

    /// Defaults overridden by the entries of a JSON object (name to cost).
    static GasTable from_json(std::string_view text);
    static GasTable from_file(const std::filesystem::path& path);

    /// from_file on $YUL_MACHINE_GAS_TABLE when set, otherwise defaults().
    static GasTable from_environment();

    [[nodiscard]] uint64_t operator[](std::string_view key) const;
    [[nodiscard]] const std::map<std::string, uint64_t, std::less<>>& entries() const noexcept
    {
        return m_costs;
    }
    void set(std::string_view key, uint64_t cost);

private:
    std::map<std::string, uint64_t, std::less<>> m_costs;
};

/// Tags of the EVM dialect's external modes.
namespace tags
{
inline constexpr std::string_view out_of_gas = "out-of-gas";
inline constexpr std::string_view revert = "revert";
inline constexpr std::string_view stop = "stop";
inline constexpr std::string_view return_ = "return";
inline constexpr std::string_view invalid = "invalid";
}  // namespace tags

/// Largest addressable memory byte; any access beyond is treated as gas exhaustion.
inline constexpr uint64_t max_memory_bytes = 0xffffffff;

/// memory_cost(words) = memory_word * words + words^2 / memory_quad_divisor
uint64_t memory_cost(const GasTable& table, uint64_t words);

/// A subset of the Shanghai EVM over 256-bit words, with partial gas accounting.
class EvmDialect : public Dialect
{
public:
    explicit EvmDialect(GasTable table = GasTable::defaults(), unsigned max_call_depth = 1024);

    [[nodiscard]] std::string_view name() const noexcept override { return "evm"; }
    [[nodiscard]] bool truthy(const Value& v) const noexcept override { return !v.is_zero(); }
    [[nodiscard]] Value value_of_literal(const Literal& lit) const override;
    [[nodiscard]] const BuiltinInfo* builtin(std::string_view name) const noexcept override;

    OpcodeResult eval_opcode(Identifier name, std::span<const Value> args, GlobalState& g) const override;
    std::optional<ExternalMode> on_control(ControlPoint point, GlobalState& g) const override;
    void on_return(GlobalState& g) const override;
    [[nodiscard]] GlobalState initial_state(uint64_t gas_limit) const override;

    [[nodiscard]] const GasTable& gas_table() const noexcept { return m_gas; }

protected:
    /// Deducts cost; on exhaustion zeroes the remaining gas and returns false.
    bool charge(GlobalState& g, std::string_view label, uint64_t cost) const;

    /// Grows memory to cover [offset, offset + size), charging the expansion.
    /// Returns false on gas exhaustion.
    bool touch_memory(GlobalState& g, const Value& offset, const Value& size) const;

    static ExternalMode out_of_gas();

    void add_builtin(BuiltinInfo info, int op);
    [[nodiscard]] int opcode_of(Identifier name) const noexcept;

private:
    OpcodeResult eval_known(int op, std::span<const Value> a, GlobalState& g) const;

    GasTable m_gas;
    unsigned m_max_call_depth;
    std::map<std::string, BuiltinInfo, std::less<>> m_builtins;
    std::unordered_map<Identifier, int> m_ops;
};
}  // namespace yulsem
