// yulsem: executable operational semantics for Yul
// Copyright 2026 The yulsem Authors.
// SPDX-License-Identifier: Apache-2.0

#include <yulsem/u256.hpp>

#include <algorithm>
#include <bit>

namespace yulsem
{
namespace
{
int hex_digit(char c) noexcept
{
    if (c >= '0' && c <= '9')
        return c - '0';
    if (c >= 'a' && c <= 'f')
        return c - 'a' + 10;
    if (c >= 'A' && c <= 'F')
        return c - 'A' + 10;
    return -1;
}

/// Divides in place by a 64-bit divisor, returning the remainder.
template <size_t N>
uint64_t short_divide(std::array<uint64_t, N>& limbs, uint64_t divisor) noexcept
{
    unsigned __int128 rem = 0;
    for (size_t i = N; i-- > 0;)
    {
        const unsigned __int128 cur = (rem << 64) | limbs[i];
        limbs[i] = static_cast<uint64_t>(cur / divisor);
        rem = cur % divisor;
    }
    return static_cast<uint64_t>(rem);
}

bool test_bit(const U256& v, unsigned bit) noexcept
{
    return ((v[bit / 64] >> (bit % 64)) & 1) != 0;
}
}  // namespace

std::optional<U256> U256::from_string(std::string_view text) noexcept
{
    if (text.empty())
        return std::nullopt;

    U256 result;
    if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X'))
    {
        const auto digits = text.substr(2);
        size_t start = 0;
        while (start < digits.size() && digits[start] == '0')
            ++start;
        if (digits.size() - start > 64)
            return std::nullopt;
        for (const char c : digits)
        {
            const int d = hex_digit(c);
            if (d < 0)
                return std::nullopt;
            result = (result << 4) | U256{static_cast<uint64_t>(d)};
        }
        return result;
    }

    const U256 ten{10};
    const U256 limit = U256::max() / ten;
    for (const char c : text)
    {
        if (c < '0' || c > '9')
            return std::nullopt;
        const auto d = static_cast<uint64_t>(c - '0');
        if (result > limit)
            return std::nullopt;
        U256 next = result * ten;
        const U256 sum = next + U256{d};
        if (sum < next)
            return std::nullopt;
        result = sum;
    }
    return result;
}

U256 U256::from_be_bytes(std::span<const uint8_t> bytes) noexcept
{
    U256 r;
    const size_t n = std::min<size_t>(bytes.size(), 32);
    for (size_t i = 0; i < n; ++i)
        r = (r << 8) | U256{bytes[bytes.size() - n + i]};
    return r;
}

unsigned U256::bit_length() const noexcept
{
    for (int i = 3; i >= 0; --i)
    {
        if (m_limbs[i] != 0)
            return static_cast<unsigned>(i) * 64 + (64 - static_cast<unsigned>(std::countl_zero(m_limbs[i])));
    }
    return 0;
}

std::array<uint8_t, 32> U256::to_be_bytes() const noexcept
{
    std::array<uint8_t, 32> out{};
    for (size_t i = 0; i < 32; ++i)
        out[31 - i] = static_cast<uint8_t>(m_limbs[i / 8] >> (8 * (i % 8)));
    return out;
}

std::string U256::to_hex() const
{
    static constexpr char digits[] = "0123456789abcdef";
    if (is_zero())
        return "0x0";
    std::string s;
    const auto bytes = to_be_bytes();
    for (const auto b : bytes)
    {
        s.push_back(digits[b >> 4]);
        s.push_back(digits[b & 0xf]);
    }
    const auto first = s.find_first_not_of('0');
    return "0x" + s.substr(first);
}

std::string U256::to_dec() const
{
    if (is_zero())
        return "0";
    std::string s;
    auto limbs = m_limbs;
    while ((limbs[0] | limbs[1] | limbs[2] | limbs[3]) != 0)
        s.push_back(static_cast<char>('0' + short_divide(limbs, 10)));
    std::reverse(s.begin(), s.end());
    return s;
}

DivMod udivmod(const U256& a, const U256& b) noexcept
{
    if (b.is_zero())
        return {};
    if (a < b)
        return {U256{}, a};

    if (b.fits_u64())
    {
        auto limbs = a.limbs();
        const uint64_t rem = short_divide(limbs, b.low_u64());
        return {U256{limbs}, U256{rem}};
    }

    // Shift-subtract long division; the divisor has at least 65 bits so at most 192 rounds.
    const unsigned shift = a.bit_length() - b.bit_length();
    U256 divisor = b << shift;
    U256 rem = a;
    U256 quot;
    for (unsigned i = shift + 1; i-- > 0;)
    {
        quot = quot << 1;
        if (rem >= divisor)
        {
            rem -= divisor;
            quot = quot | U256{1};
        }
        divisor = divisor >> 1;
    }
    return {quot, rem};
}

U256 operator/(const U256& a, const U256& b) noexcept
{
    return udivmod(a, b).quot;
}

U256 operator%(const U256& a, const U256& b) noexcept
{
    return udivmod(a, b).rem;
}

U256 addmod(const U256& a, const U256& b, const U256& m) noexcept
{
    if (m.is_zero())
        return {};
    const U256 x = a % m;
    const U256 y = b % m;
    const U256 sum = x + y;
    // x, y < m so the true sum is below 2m; one subtraction suffices, wrapping handles the carry.
    if (sum < x || sum >= m)
        return sum - m;
    return sum;
}

U256 mulmod(const U256& a, const U256& b, const U256& m) noexcept
{
    if (m.is_zero())
        return {};

    std::array<uint64_t, 8> product{};
    for (size_t i = 0; i < 4; ++i)
    {
        unsigned __int128 carry = 0;
        for (size_t j = 0; j < 4; ++j)
        {
            carry += static_cast<unsigned __int128>(a[i]) * b[j] + product[i + j];
            product[i + j] = static_cast<uint64_t>(carry);
            carry >>= 64;
        }
        product[i + 4] = static_cast<uint64_t>(carry);
    }

    if (m.fits_u64())
        return U256{short_divide(product, m.low_u64())};

    unsigned top = 0;
    for (size_t i = 8; i-- > 0;)
    {
        if (product[i] != 0)
        {
            top = static_cast<unsigned>(i) * 64 + (64 - static_cast<unsigned>(std::countl_zero(product[i])));
            break;
        }
    }

    U256 rem;
    for (unsigned bit = top; bit-- > 0;)
    {
        const bool overflow = rem.is_negative();
        rem = rem << 1;
        if (((product[bit / 64] >> (bit % 64)) & 1) != 0)
            rem = rem | U256{1};
        if (overflow || rem >= m)
            rem -= m;
    }
    return rem;
}

U256 exp(U256 base, U256 exponent) noexcept
{
    U256 result{1};
    const unsigned bits = exponent.bit_length();
    for (unsigned i = 0; i < bits; ++i)
    {
        if (test_bit(exponent, i))
            result = result * base;
        base = base * base;
    }
    return result;
}
}  // namespace yulsem
