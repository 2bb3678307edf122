// yulsem: executable operational semantics for Yul
// Copyright 2026 The yulsem Authors.
// SPDX-License-Identifier: Apache-2.0

#include "../support/oracles.hpp"

#include <yulsem/evm.hpp>

#include <gtest/gtest.h>

using namespace yulsem;

namespace
{
struct Call
{
    OpcodeResult result;
    GlobalState g;
};

Call call(const EvmDialect& d, std::string_view op, std::vector<Value> args, uint64_t gas = 1'000'000,
    GlobalState g = {})
{
    if (g.gas_limit == 0)
        g = d.initial_state(gas);
    auto r = d.eval_opcode(Identifier{op}, args, g);
    return {std::move(r), std::move(g)};
}

uint64_t used(const Call& c)
{
    return c.g.gas_limit - c.g.gas_remaining;
}
}  // namespace

TEST(evm, pure_opcodes_match_oracle)
{
    const EvmDialect d;
    std::mt19937_64 rng{11};
    for (const auto& op : oracle::pure_opcodes())
    {
        for (int i = 0; i < 2000; ++i)
        {
            std::vector<oracle::cpp_int> xs;
            std::vector<Value> vs;
            for (unsigned k = 0; k < oracle::arity(op); ++k)
            {
                xs.push_back(oracle::random_operand(rng));
                vs.push_back(oracle::from_cpp(xs.back()));
            }
            const auto c = call(d, op, vs);
            ASSERT_EQ(c.result.values.size(), 1u);
            ASSERT_EQ(oracle::to_cpp(c.result.values[0]), oracle::evm_op(op, xs)) << op;
        }
    }
}

TEST(evm, signed_edge_cases)
{
    const EvmDialect d;
    const U256 min_int = U256{1} << 255;
    const U256 minus_one = U256::max();
    EXPECT_EQ(call(d, "sdiv", {min_int, minus_one}).result.values[0], min_int);
    EXPECT_EQ(call(d, "smod", {min_int, minus_one}).result.values[0], U256{});
    EXPECT_EQ(call(d, "sdiv", {U256{7}, U256{}}).result.values[0], U256{});
    EXPECT_EQ(call(d, "smod", {-U256{7}, U256{3}}).result.values[0], -U256{1});
    EXPECT_EQ(call(d, "sar", {U256{300}, minus_one}).result.values[0], minus_one);
    EXPECT_EQ(call(d, "sar", {U256{4}, -U256{17}}).result.values[0], -U256{2});
    EXPECT_EQ(call(d, "signextend", {U256{0}, U256{0xff}}).result.values[0], minus_one);
    EXPECT_EQ(call(d, "signextend", {U256{0}, U256{0x17f}}).result.values[0], U256{0x7f});
    EXPECT_EQ(call(d, "byte", {U256{31}, U256{0xabcd}}).result.values[0], U256{0xcd});
    EXPECT_EQ(call(d, "byte", {U256{32}, U256::max()}).result.values[0], U256{});
}

TEST(evm, static_costs)
{
    const EvmDialect d;
    EXPECT_EQ(used(call(d, "add", {1, 2})), 3u);
    EXPECT_EQ(used(call(d, "mul", {1, 2})), 5u);
    EXPECT_EQ(used(call(d, "addmod", {1, 2, 3})), 8u);
    EXPECT_EQ(used(call(d, "sload", {1})), 2100u);
    EXPECT_EQ(used(call(d, "pop", {1})), 2u);
    EXPECT_EQ(call(d, "add", {1, 2}).g.charge_count, 1u);
}

TEST(evm, exp_charges_per_exponent_byte)
{
    const EvmDialect d;
    EXPECT_EQ(used(call(d, "exp", {2, 0})), 10u);
    EXPECT_EQ(used(call(d, "exp", {2, 255})), 60u);
    EXPECT_EQ(used(call(d, "exp", {2, 256})), 110u);
    EXPECT_EQ(used(call(d, "exp", {2, U256::max()})), 10u + 50u * 32u);
}

TEST(evm, memory_expansion)
{
    const EvmDialect d;
    const auto& t = d.gas_table();
    for (uint64_t w : {0ull, 1ull, 2ull, 31ull, 32ull, 1000ull, 100000ull})
        EXPECT_EQ(memory_cost(t, w), 3 * w + w * w / 512) << w;

    auto c = call(d, "mstore", {U256{0}, U256{0x55}});
    EXPECT_EQ(used(c), 3u + memory_cost(t, 1));
    EXPECT_EQ(c.g.memory.size(), 32u);
    EXPECT_EQ(c.g.memory[31], 0x55);

    c = call(d, "mstore8", {U256{100}, U256{0x1ff}});
    EXPECT_EQ(c.g.memory.size(), 128u);
    EXPECT_EQ(c.g.memory[100], 0xff);
    EXPECT_EQ(used(c), 3u + memory_cost(t, 4));

    auto g = c.g;
    const uint64_t before = g.gas_remaining;
    const auto r = d.eval_opcode(Identifier{"mload"}, std::vector<Value>{U256{69}}, g);
    EXPECT_EQ(before - g.gas_remaining, 3u);
    EXPECT_EQ(r.values[0], U256{0xff});

    g = c.g;
    EXPECT_EQ(d.eval_opcode(Identifier{"msize"}, {}, g).values[0], U256{128});

    const auto far = call(d, "mload", {U256{1} << 100});
    ASSERT_TRUE(far.result.irregular);
    EXPECT_EQ(far.result.irregular->tag, tags::out_of_gas);
    EXPECT_EQ(far.g.gas_remaining, 0u);
}

TEST(evm, storage_costs)
{
    const EvmDialect d;
    auto c = call(d, "sstore", {1, 7});
    EXPECT_EQ(used(c), 20000u);
    EXPECT_EQ(c.g.storage.at(U256{1}), U256{7});
    auto g = c.g;
    const auto before = g.gas_remaining;
    d.eval_opcode(Identifier{"sstore"}, std::vector<Value>{1, 0}, g);
    EXPECT_EQ(before - g.gas_remaining, 5000u);
    EXPECT_TRUE(g.storage.empty());
    EXPECT_EQ(used(call(d, "sstore", {1, 0})), 5000u);
}

TEST(evm, halting_opcodes)
{
    const EvmDialect d;
    auto c = call(d, "stop", {});
    ASSERT_TRUE(c.result.irregular);
    EXPECT_EQ(c.result.irregular->tag, tags::stop);
    EXPECT_EQ(used(c), 0u);

    GlobalState g = d.initial_state(100000);
    d.eval_opcode(Identifier{"mstore"}, std::vector<Value>{U256{0}, U256{0xdeadbeef}}, g);
    auto r = d.eval_opcode(Identifier{"return"}, std::vector<Value>{U256{28}, U256{4}}, g);
    ASSERT_TRUE(r.irregular);
    EXPECT_EQ(r.irregular->tag, tags::return_);
    EXPECT_EQ(r.irregular->payload, (Bytes{0xde, 0xad, 0xbe, 0xef}));
    EXPECT_EQ(g.returndata, r.irregular->payload);

    r = d.eval_opcode(Identifier{"revert"}, std::vector<Value>{U256{0}, U256{0}}, g);
    EXPECT_EQ(r.irregular->tag, tags::revert);
    EXPECT_TRUE(r.irregular->payload.empty());

    c = call(d, "invalid", {});
    EXPECT_EQ(c.result.irregular->tag, tags::invalid);
    EXPECT_EQ(c.g.gas_remaining, 0u);
}

TEST(evm, out_of_gas_zeroes_remaining_and_records_nothing)
{
    const EvmDialect d;
    const auto c = call(d, "sload", {1}, 2099);
    ASSERT_TRUE(c.result.irregular);
    EXPECT_EQ(c.result.irregular->tag, tags::out_of_gas);
    EXPECT_EQ(c.g.gas_remaining, 0u);
    EXPECT_EQ(c.g.charge_count, 0u);
}

TEST(evm, gas_opcode_reports_after_its_own_charge)
{
    const EvmDialect d;
    EXPECT_EQ(call(d, "gas", {}, 1000).result.values[0], U256{998});
}

TEST(evm, host_errors)
{
    const EvmDialect d;
    EXPECT_THROW(call(d, "keccak256", {0, 0}), HostError);
    EXPECT_THROW(call(d, "nosuchop", {}), HostError);
    EXPECT_THROW(call(d, "add", {1}), HostError);
}

TEST(evm, charge_history_and_digest)
{
    const EvmDialect d;
    GlobalState a = d.initial_state(1000);
    GlobalState b = d.initial_state(1000);
    a.history = std::make_shared<std::vector<Charge>>();
    d.eval_opcode(Identifier{"add"}, std::vector<Value>{1, 2}, a);
    d.eval_opcode(Identifier{"mul"}, std::vector<Value>{1, 2}, a);
    d.eval_opcode(Identifier{"mul"}, std::vector<Value>{1, 2}, b);
    d.eval_opcode(Identifier{"add"}, std::vector<Value>{1, 2}, b);
    EXPECT_EQ(*a.history, (std::vector<Charge>{{"add", 3}, {"mul", 5}}));
    EXPECT_EQ(a.gas_remaining, b.gas_remaining);
    EXPECT_NE(a.charge_digest, b.charge_digest);
    EXPECT_EQ(first_difference(a, b), "chargeDigest");
}

TEST(evm, literals)
{
    const EvmDialect d;
    EXPECT_EQ(d.value_of_literal({LiteralKind::boolean, "true"}), U256{1});
    EXPECT_EQ(d.value_of_literal({LiteralKind::hex, "0xff"}), U256{255});
    EXPECT_EQ(d.value_of_literal({LiteralKind::string, "\"a\""}), U256{'a'} << 248);
    EXPECT_EQ(d.value_of_literal({LiteralKind::string, "\"\\x01\\n\""}), (U256{0x010a} << 240));
    EXPECT_THROW((void)d.value_of_literal({LiteralKind::string, "\"" + std::string(33, 'x') + "\""}), LiteralError);
    EXPECT_THROW((void)d.value_of_literal({LiteralKind::decimal, std::string(80, '9')}), LiteralError);
    EXPECT_THROW(decode_string_literal("\"\\q\""), LiteralError);
    EXPECT_EQ(decode_string_literal("\"\\u00e9\""), (Bytes{0xc3, 0xa9}));
}

TEST(evm, gas_table_overrides)
{
    const auto t = GasTable::from_json(R"({"add": 7, "$loop": 0})");
    EXPECT_EQ(t["add"], 7u);
    EXPECT_EQ(t["$loop"], 0u);
    EXPECT_EQ(t["mul"], 5u);
    EXPECT_THROW(GasTable::from_json(R"({"bogus": 1})"), HostError);
    EXPECT_THROW(GasTable::from_json(R"({"add": -1})"), HostError);
    EXPECT_THROW(GasTable::from_json(R"([1])"), HostError);
    EXPECT_THROW(GasTable::from_json(R"({"memory_quad_divisor": 0})"), HostError);

    const EvmDialect d{t};
    GlobalState g = d.initial_state(100);
    d.eval_opcode(Identifier{"add"}, std::vector<Value>{1, 2}, g);
    EXPECT_EQ(g.gas_remaining, 93u);
}

TEST(evm, call_depth_limit_is_out_of_gas)
{
    const EvmDialect d{GasTable::defaults(), 2};
    GlobalState g = d.initial_state(1000);
    EXPECT_FALSE(d.on_control(ControlPoint::function_call, g));
    EXPECT_FALSE(d.on_control(ControlPoint::function_call, g));
    const auto m = d.on_control(ControlPoint::function_call, g);
    ASSERT_TRUE(m);
    EXPECT_EQ(m->tag, tags::out_of_gas);
    EXPECT_EQ(g.gas_remaining, 0u);
}
