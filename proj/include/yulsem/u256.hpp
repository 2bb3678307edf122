// yulsem: executable operational semantics for Yul
// Copyright 2026 The yulsem Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace yulsem
{
/// Unsigned 256-bit integer with wrap-around arithmetic.
///
/// Limbs are stored little-endian: limbs[0] holds the least significant 64 bits.
class U256
{
public:
    using Limbs = std::array<uint64_t, 4>;

    constexpr U256() noexcept = default;
    constexpr U256(uint64_t v) noexcept : m_limbs{v, 0, 0, 0} {}  // NOLINT(google-explicit-constructor)
    constexpr explicit U256(const Limbs& limbs) noexcept : m_limbs{limbs} {}

    static constexpr U256 max() noexcept { return U256{Limbs{~0ull, ~0ull, ~0ull, ~0ull}}; }

    /// Parses a decimal or 0x-prefixed hexadecimal literal.
    /// Returns nullopt on malformed input or if the value does not fit in 256 bits.
    static std::optional<U256> from_string(std::string_view text) noexcept;

    /// Interprets up to 32 bytes as a big-endian number.
    static U256 from_be_bytes(std::span<const uint8_t> bytes) noexcept;

    [[nodiscard]] constexpr const Limbs& limbs() const noexcept { return m_limbs; }
    [[nodiscard]] constexpr uint64_t operator[](size_t i) const noexcept { return m_limbs[i]; }

    [[nodiscard]] constexpr bool is_zero() const noexcept
    {
        return (m_limbs[0] | m_limbs[1] | m_limbs[2] | m_limbs[3]) == 0;
    }
    [[nodiscard]] constexpr explicit operator bool() const noexcept { return !is_zero(); }

    /// True if the value fits into 64 bits.
    [[nodiscard]] constexpr bool fits_u64() const noexcept
    {
        return (m_limbs[1] | m_limbs[2] | m_limbs[3]) == 0;
    }
    [[nodiscard]] constexpr uint64_t low_u64() const noexcept { return m_limbs[0]; }

    /// Sign bit under two's-complement interpretation.
    [[nodiscard]] constexpr bool is_negative() const noexcept { return (m_limbs[3] >> 63) != 0; }

    [[nodiscard]] unsigned bit_length() const noexcept;
    [[nodiscard]] unsigned byte_length() const noexcept { return (bit_length() + 7) / 8; }

    [[nodiscard]] std::array<uint8_t, 32> to_be_bytes() const noexcept;
    [[nodiscard]] std::string to_hex() const;  ///< "0x..." without leading zeros ("0x0" for zero).
    [[nodiscard]] std::string to_dec() const;

    friend constexpr bool operator==(const U256&, const U256&) noexcept = default;
    friend constexpr std::strong_ordering operator<=>(const U256& a, const U256& b) noexcept
    {
        for (int i = 3; i >= 0; --i)
        {
            if (a.m_limbs[i] != b.m_limbs[i])
                return a.m_limbs[i] <=> b.m_limbs[i];
        }
        return std::strong_ordering::equal;
    }

    friend constexpr U256 operator+(const U256& a, const U256& b) noexcept
    {
        U256 r;
        unsigned __int128 carry = 0;
        for (size_t i = 0; i < 4; ++i)
        {
            carry += static_cast<unsigned __int128>(a.m_limbs[i]) + b.m_limbs[i];
            r.m_limbs[i] = static_cast<uint64_t>(carry);
            carry >>= 64;
        }
        return r;
    }

    friend constexpr U256 operator-(const U256& a, const U256& b) noexcept
    {
        U256 r;
        uint64_t borrow = 0;
        for (size_t i = 0; i < 4; ++i)
        {
            const uint64_t d = a.m_limbs[i] - b.m_limbs[i];
            const uint64_t b1 = a.m_limbs[i] < b.m_limbs[i] ? 1 : 0;
            r.m_limbs[i] = d - borrow;
            const uint64_t b2 = d < borrow ? 1 : 0;
            borrow = b1 | b2;
        }
        return r;
    }

    friend constexpr U256 operator-(const U256& a) noexcept { return U256{} - a; }

    friend constexpr U256 operator*(const U256& a, const U256& b) noexcept
    {
        U256 r;
        for (size_t i = 0; i < 4; ++i)
        {
            unsigned __int128 carry = 0;
            for (size_t j = 0; i + j < 4; ++j)
            {
                carry += static_cast<unsigned __int128>(a.m_limbs[i]) * b.m_limbs[j] +
                         r.m_limbs[i + j];
                r.m_limbs[i + j] = static_cast<uint64_t>(carry);
                carry >>= 64;
            }
        }
        return r;
    }

    friend constexpr U256 operator&(const U256& a, const U256& b) noexcept
    {
        return U256{Limbs{a.m_limbs[0] & b.m_limbs[0], a.m_limbs[1] & b.m_limbs[1],
            a.m_limbs[2] & b.m_limbs[2], a.m_limbs[3] & b.m_limbs[3]}};
    }
    friend constexpr U256 operator|(const U256& a, const U256& b) noexcept
    {
        return U256{Limbs{a.m_limbs[0] | b.m_limbs[0], a.m_limbs[1] | b.m_limbs[1],
            a.m_limbs[2] | b.m_limbs[2], a.m_limbs[3] | b.m_limbs[3]}};
    }
    friend constexpr U256 operator^(const U256& a, const U256& b) noexcept
    {
        return U256{Limbs{a.m_limbs[0] ^ b.m_limbs[0], a.m_limbs[1] ^ b.m_limbs[1],
            a.m_limbs[2] ^ b.m_limbs[2], a.m_limbs[3] ^ b.m_limbs[3]}};
    }
    friend constexpr U256 operator~(const U256& a) noexcept
    {
        return U256{Limbs{~a.m_limbs[0], ~a.m_limbs[1], ~a.m_limbs[2], ~a.m_limbs[3]}};
    }

    friend constexpr U256 operator<<(const U256& a, unsigned shift) noexcept
    {
        if (shift >= 256)
            return {};
        U256 r;
        const unsigned limb_shift = shift / 64;
        const unsigned bit_shift = shift % 64;
        for (unsigned i = 3 + 1; i-- > limb_shift;)
        {
            uint64_t v = a.m_limbs[i - limb_shift] << bit_shift;
            if (bit_shift != 0 && i - limb_shift >= 1)
                v |= a.m_limbs[i - limb_shift - 1] >> (64 - bit_shift);
            r.m_limbs[i] = v;
        }
        return r;
    }

    friend constexpr U256 operator>>(const U256& a, unsigned shift) noexcept
    {
        if (shift >= 256)
            return {};
        U256 r;
        const unsigned limb_shift = shift / 64;
        const unsigned bit_shift = shift % 64;
        for (unsigned i = 0; i + limb_shift < 4; ++i)
        {
            uint64_t v = a.m_limbs[i + limb_shift] >> bit_shift;
            if (bit_shift != 0 && i + limb_shift + 1 < 4)
                v |= a.m_limbs[i + limb_shift + 1] << (64 - bit_shift);
            r.m_limbs[i] = v;
        }
        return r;
    }

    /// Unsigned division; division by zero yields zero.
    friend U256 operator/(const U256& a, const U256& b) noexcept;
    /// Unsigned remainder; remainder by zero yields zero.
    friend U256 operator%(const U256& a, const U256& b) noexcept;

    U256& operator+=(const U256& o) noexcept { return *this = *this + o; }
    U256& operator-=(const U256& o) noexcept { return *this = *this - o; }

private:
    Limbs m_limbs{};
};

struct DivMod
{
    U256 quot;
    U256 rem;
};

/// Unsigned division with remainder. Both results are zero when the divisor is zero.
DivMod udivmod(const U256& a, const U256& b) noexcept;

/// (a + b) mod m computed without intermediate truncation; zero when m is zero.
U256 addmod(const U256& a, const U256& b, const U256& m) noexcept;

/// (a * b) mod m computed over the full 512-bit product; zero when m is zero.
U256 mulmod(const U256& a, const U256& b, const U256& m) noexcept;

/// base ** exponent mod 2^256.
U256 exp(U256 base, U256 exponent) noexcept;
}  // namespace yulsem
