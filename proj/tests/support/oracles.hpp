// yulsem: executable operational semantics for Yul
// Copyright 2026 The yulsem Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Independent reference implementations used by the tests. Nothing here calls into the
// U256 arithmetic under test.

#include <yulsem/u256.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace yulsem::oracle
{
using boost::multiprecision::cpp_int;

inline const cpp_int& modulus()
{
    static const cpp_int m = cpp_int{1} << 256;
    return m;
}

inline cpp_int wrap(cpp_int v)
{
    v %= modulus();
    if (v < 0)
        v += modulus();
    return v;
}

inline cpp_int to_cpp(const U256& v)
{
    cpp_int r = 0;
    for (int i = 3; i >= 0; --i)
        r = (r << 64) | cpp_int{v[static_cast<size_t>(i)]};
    return r;
}

inline U256 from_cpp(cpp_int v)
{
    v = wrap(v);
    U256::Limbs limbs{};
    for (auto& limb : limbs)
    {
        limb = static_cast<uint64_t>(v & cpp_int{~0ull});
        v >>= 64;
    }
    return U256{limbs};
}

/// Two's-complement reading of a word.
inline cpp_int to_signed(const cpp_int& v)
{
    return v >= (cpp_int{1} << 255) ? v - modulus() : v;
}

inline cpp_int pow_mod(cpp_int base, cpp_int e, const cpp_int& m)
{
    cpp_int r = 1 % m;
    base %= m;
    while (e > 0)
    {
        if ((e & 1) != 0)
            r = r * base % m;
        base = base * base % m;
        e >>= 1;
    }
    return r;
}

/// The value an EVM opcode computes, on unbounded integers reduced mod 2^256.
inline cpp_int evm_op(std::string_view op, const std::vector<cpp_int>& a)
{
    const auto b = [](bool x) { return cpp_int{x ? 1 : 0}; };
    if (op == "add")
        return wrap(a[0] + a[1]);
    if (op == "sub")
        return wrap(a[0] - a[1]);
    if (op == "mul")
        return wrap(a[0] * a[1]);
    if (op == "div")
        return a[1] == 0 ? cpp_int{0} : a[0] / a[1];
    if (op == "mod")
        return a[1] == 0 ? cpp_int{0} : a[0] % a[1];
    if (op == "sdiv")
    {
        if (a[1] == 0)
            return 0;
        return wrap(to_signed(a[0]) / to_signed(a[1]));  // truncates toward zero
    }
    if (op == "smod")
    {
        if (a[1] == 0)
            return 0;
        return wrap(to_signed(a[0]) % to_signed(a[1]));  // sign follows the dividend
    }
    if (op == "addmod")
        return a[2] == 0 ? cpp_int{0} : (a[0] + a[1]) % a[2];
    if (op == "mulmod")
        return a[2] == 0 ? cpp_int{0} : (a[0] * a[1]) % a[2];
    if (op == "exp")
        return pow_mod(a[0], a[1], modulus());
    if (op == "signextend")
    {
        if (a[0] >= 31)
            return a[1];
        const unsigned bits = static_cast<unsigned>(a[0]) * 8 + 8;
        const cpp_int low = a[1] % (cpp_int{1} << bits);
        const bool neg = low >= (cpp_int{1} << (bits - 1));
        return neg ? wrap(low - (cpp_int{1} << bits)) : low;
    }
    if (op == "lt")
        return b(a[0] < a[1]);
    if (op == "gt")
        return b(a[0] > a[1]);
    if (op == "slt")
        return b(to_signed(a[0]) < to_signed(a[1]));
    if (op == "sgt")
        return b(to_signed(a[0]) > to_signed(a[1]));
    if (op == "eq")
        return b(a[0] == a[1]);
    if (op == "iszero")
        return b(a[0] == 0);
    if (op == "and")
        return a[0] & a[1];
    if (op == "or")
        return a[0] | a[1];
    if (op == "xor")
        return a[0] ^ a[1];
    if (op == "not")
        return modulus() - 1 - a[0];
    if (op == "byte")
    {
        if (a[0] >= 32)
            return 0;
        const unsigned shift = 8 * (31 - static_cast<unsigned>(a[0]));
        return (a[1] >> shift) & 0xff;
    }
    if (op == "shl")
        return a[0] >= 256 ? cpp_int{0} : wrap(a[1] << static_cast<unsigned>(a[0]));
    if (op == "shr")
        return a[0] >= 256 ? cpp_int{0} : a[1] >> static_cast<unsigned>(a[0]);
    if (op == "sar")
    {
        const cpp_int s = to_signed(a[1]);
        if (a[0] >= 256)
            return s < 0 ? modulus() - 1 : cpp_int{0};
        const unsigned n = static_cast<unsigned>(a[0]);
        // floor division: arithmetic shift rounds toward negative infinity
        const cpp_int d = cpp_int{1} << n;
        cpp_int q = s / d;
        if (s < 0 && q * d != s)
            q -= 1;
        return wrap(q);
    }
    throw std::invalid_argument{"no oracle for " + std::string{op}};
}

inline unsigned arity(std::string_view op)
{
    if (op == "addmod" || op == "mulmod")
        return 3;
    if (op == "iszero" || op == "not")
        return 1;
    return 2;
}

inline const std::vector<std::string>& pure_opcodes()
{
    static const std::vector<std::string> ops{"add", "sub", "mul", "div", "sdiv", "mod", "smod",
        "addmod", "mulmod", "exp", "signextend", "lt", "gt", "slt", "sgt", "eq", "iszero", "and", "or",
        "xor", "not", "byte", "shl", "shr", "sar"};
    return ops;
}

/// Operands biased toward edge cases: small values, powers of two, near-max and sign-bit words.
inline cpp_int random_operand(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> kind{0, 9};
    const auto limb = [&] { return cpp_int{rng()}; };
    const auto full = [&] { return (limb() << 192) | (limb() << 128) | (limb() << 64) | limb(); };
    switch (kind(rng))
    {
    case 0:
        return cpp_int{rng() % 40};
    case 1:
        return cpp_int{1} << (rng() % 256);
    case 2:
        return modulus() - 1 - cpp_int{rng() % 40};
    case 3:
        return (cpp_int{1} << 255) + cpp_int{rng() % 40};
    case 4:
        return limb();
    case 5:
        return full() >> (rng() % 256);
    default:
        return full();
    }
}

inline std::vector<uint64_t> fibonacci(size_t count)
{
    std::vector<uint64_t> out;
    uint64_t a = 1;
    uint64_t b = 1;
    for (size_t i = 0; i < count; ++i)
    {
        out.push_back(a);
        const uint64_t next = a + b;
        a = b;
        b = next;
    }
    return out;
}

/// C_n = binom(2n, n) / (n + 1)
inline std::vector<cpp_int> catalan(size_t count)
{
    std::vector<cpp_int> out;
    for (size_t n = 0; n < count; ++n)
    {
        cpp_int binom = 1;
        for (size_t k = 1; k <= n; ++k)
            binom = binom * (n + k) / k;
        out.push_back(binom / (n + 1));
    }
    return out;
}

inline std::vector<cpp_int> pell(size_t count)
{
    std::vector<cpp_int> out{0, 1};
    while (out.size() < count)
        out.push_back(2 * out[out.size() - 1] + out[out.size() - 2]);
    out.resize(count);
    return out;
}

/// First count primes by a sieve grown until it holds enough.
inline std::vector<uint64_t> primes(size_t count)
{
    for (size_t limit = 64;; limit *= 2)
    {
        std::vector<bool> composite(limit + 1, false);
        std::vector<uint64_t> out;
        for (size_t i = 2; i <= limit && out.size() < count; ++i)
        {
            if (composite[i])
                continue;
            out.push_back(i);
            for (size_t j = i * i; j <= limit; j += i)
                composite[j] = true;
        }
        if (out.size() == count)
            return out;
    }
}

inline std::vector<uint8_t> thue_morse(size_t count)
{
    std::vector<uint8_t> out;
    for (size_t n = 0; n < count; ++n)
        out.push_back(static_cast<uint8_t>(__builtin_popcountll(n) & 1));
    return out;
}

/// The array the sort programs build before sorting.
inline std::vector<uint64_t> lcg_array(size_t n)
{
    std::vector<uint64_t> out;
    uint64_t x = 42;
    for (size_t i = 0; i < n; ++i)
    {
        x = (x * 1103515245 + 12345) % 0x80000000;
        out.push_back(x % 1000);
    }
    return out;
}

inline std::vector<uint64_t> sorted_lcg_array(size_t n)
{
    auto v = lcg_array(n);
    std::stable_sort(v.begin(), v.end());
    return v;
}

/// Big-endian 32-byte word i of a memory image; bytes past the end read as zero.
inline cpp_int memory_word(std::span<const uint8_t> memory, size_t i)
{
    cpp_int r = 0;
    for (size_t k = 0; k < 32; ++k)
    {
        const size_t at = i * 32 + k;
        r = (r << 8) | cpp_int{at < memory.size() ? memory[at] : 0};
    }
    return r;
}
}  // namespace yulsem::oracle
