// yulsem: executable operational semantics for Yul
// Copyright 2026 The yulsem Authors.
// SPDX-License-Identifier: Apache-2.0

#include "../support/oracles.hpp"

#include <gtest/gtest.h>

using namespace yulsem;
using oracle::cpp_int;
using oracle::from_cpp;
using oracle::to_cpp;

namespace
{
constexpr int rounds = 5000;

struct Pair
{
    U256 a;
    U256 b;
    cpp_int x;
    cpp_int y;
};

Pair random_pair(std::mt19937_64& rng)
{
    const cpp_int x = oracle::random_operand(rng);
    const cpp_int y = oracle::random_operand(rng);
    return {from_cpp(x), from_cpp(y), x, y};
}
}  // namespace

TEST(u256, conversion_round_trip)
{
    std::mt19937_64 rng{1};
    for (int i = 0; i < rounds; ++i)
    {
        const cpp_int x = oracle::random_operand(rng);
        EXPECT_EQ(to_cpp(from_cpp(x)), x);
    }
}

TEST(u256, ring_operations)
{
    std::mt19937_64 rng{2};
    for (int i = 0; i < rounds; ++i)
    {
        const auto p = random_pair(rng);
        ASSERT_EQ(to_cpp(p.a + p.b), oracle::wrap(p.x + p.y));
        ASSERT_EQ(to_cpp(p.a - p.b), oracle::wrap(p.x - p.y));
        ASSERT_EQ(to_cpp(p.a * p.b), oracle::wrap(p.x * p.y));
        ASSERT_EQ(to_cpp(-p.a), oracle::wrap(-p.x));
        ASSERT_EQ(to_cpp(p.a & p.b), p.x & p.y);
        ASSERT_EQ(to_cpp(p.a | p.b), p.x | p.y);
        ASSERT_EQ(to_cpp(p.a ^ p.b), p.x ^ p.y);
        ASSERT_EQ(to_cpp(~p.a), oracle::modulus() - 1 - p.x);
        ASSERT_EQ(p.a < p.b, p.x < p.y);
        ASSERT_EQ(p.a == p.b, p.x == p.y);
    }
}

TEST(u256, division)
{
    std::mt19937_64 rng{3};
    for (int i = 0; i < rounds; ++i)
    {
        const auto p = random_pair(rng);
        const auto dm = udivmod(p.a, p.b);
        const cpp_int q = p.y == 0 ? cpp_int{0} : p.x / p.y;
        const cpp_int r = p.y == 0 ? cpp_int{0} : p.x % p.y;
        ASSERT_EQ(to_cpp(dm.quot), q);
        ASSERT_EQ(to_cpp(dm.rem), r);
        ASSERT_EQ(to_cpp(p.a / p.b), q);
        ASSERT_EQ(to_cpp(p.a % p.b), r);
    }
}

TEST(u256, shifts)
{
    std::mt19937_64 rng{4};
    for (int i = 0; i < rounds; ++i)
    {
        const cpp_int x = oracle::random_operand(rng);
        const unsigned s = static_cast<unsigned>(rng() % 300);
        const cpp_int left = s >= 256 ? cpp_int{0} : oracle::wrap(x << s);
        const cpp_int right = s >= 256 ? cpp_int{0} : x >> s;
        ASSERT_EQ(to_cpp(from_cpp(x) << s), left) << s;
        ASSERT_EQ(to_cpp(from_cpp(x) >> s), right) << s;
    }
}

TEST(u256, modular)
{
    std::mt19937_64 rng{5};
    for (int i = 0; i < rounds; ++i)
    {
        const auto p = random_pair(rng);
        const cpp_int m = oracle::random_operand(rng);
        const U256 mm = from_cpp(m);
        ASSERT_EQ(to_cpp(addmod(p.a, p.b, mm)), m == 0 ? cpp_int{0} : (p.x + p.y) % m);
        ASSERT_EQ(to_cpp(mulmod(p.a, p.b, mm)), m == 0 ? cpp_int{0} : (p.x * p.y) % m);
        ASSERT_EQ(to_cpp(exp(p.a, p.b)), oracle::pow_mod(p.x, p.y, oracle::modulus()));
    }
}

TEST(u256, text_forms)
{
    std::mt19937_64 rng{6};
    for (int i = 0; i < rounds; ++i)
    {
        const cpp_int x = oracle::random_operand(rng);
        const U256 v = from_cpp(x);
        ASSERT_EQ(v.to_dec(), x.str());
        ASSERT_EQ(U256::from_string(v.to_dec()), v);
        ASSERT_EQ(U256::from_string(v.to_hex()), v);
        const auto bytes = v.to_be_bytes();
        ASSERT_EQ(U256::from_be_bytes(bytes), v);
    }
    EXPECT_EQ(U256{}.to_hex(), "0x0");
    EXPECT_EQ(U256{255}.to_hex(), "0xff");
    EXPECT_EQ(U256::from_string("0x"), std::nullopt);
    EXPECT_EQ(U256::from_string("12a"), std::nullopt);
    EXPECT_EQ(U256::from_string(""), std::nullopt);
    const auto max_dec = cpp_int{oracle::modulus() - 1}.str();
    EXPECT_EQ(U256::from_string(max_dec), U256::max());
    EXPECT_EQ(U256::from_string(oracle::modulus().str()), std::nullopt);
    EXPECT_EQ(U256::from_string("0x1" + std::string(64, '0')), std::nullopt);
}

TEST(u256, bit_length)
{
    EXPECT_EQ(U256{}.bit_length(), 0u);
    EXPECT_EQ(U256{1}.bit_length(), 1u);
    EXPECT_EQ(U256{256}.byte_length(), 2u);
    EXPECT_EQ(U256::max().bit_length(), 256u);
    EXPECT_EQ((U256{1} << 200).byte_length(), 26u);
    const std::array<uint8_t, 3> short_bytes{1, 2, 3};
    EXPECT_EQ(U256::from_be_bytes(short_bytes), U256{0x010203});
}
