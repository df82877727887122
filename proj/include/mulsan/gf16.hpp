#pragma once

#include <array>
#include <cassert>
#include <cstdint>
#include <vector>

#include "bytes.hpp"
#include "errors.hpp"

namespace mulsan {

namespace detail {

// Shift-and-xor product in GF(2)[x] reduced mod x^4 + x + 1.
constexpr std::uint8_t gf16_mul_step(std::uint8_t a, std::uint8_t b) {
    std::uint8_t r = 0;
    while (b != 0) {
        if (b & 1) r ^= a;
        b >>= 1;
        a = static_cast<std::uint8_t>(a << 1);
        if (a & 0x10) a ^= 0x13;
    }
    return r;
}

inline constexpr auto gf16_mul_table = [] {
    std::array<std::uint8_t, 256> t{};
    for (int a = 0; a < 16; ++a)
        for (int b = 0; b < 16; ++b)
            t[static_cast<std::size_t>(a << 4 | b)] = gf16_mul_step(
                static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b));
    return t;
}();

inline constexpr auto gf16_inv_table = [] {
    std::array<std::uint8_t, 16> t{};
    for (int a = 1; a < 16; ++a)
        for (int b = 1; b < 16; ++b)
            if (gf16_mul_step(static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b)) == 1)
                t[static_cast<std::size_t>(a)] = static_cast<std::uint8_t>(b);
    return t;
}();

} // namespace detail

// An element of GF(16) = GF(2)[x]/(x^4 + x + 1), stored as a 4-bit value.
// Addition is xor; multiplication goes through a 256-entry table.
class Gf16 {
public:
    static constexpr std::uint8_t reduction_poly = 0x13;

    constexpr Gf16() = default;
    constexpr explicit Gf16(std::uint8_t v) : v_(v) { assert(v < 16); }

    constexpr std::uint8_t value() const { return v_; }
    constexpr bool is_zero() const { return v_ == 0; }

    friend constexpr Gf16 operator+(Gf16 a, Gf16 b) { return Gf16(static_cast<std::uint8_t>(a.v_ ^ b.v_)); }
    friend constexpr Gf16 operator-(Gf16 a, Gf16 b) { return a + b; }
    friend constexpr Gf16 operator*(Gf16 a, Gf16 b) {
        return Gf16(detail::gf16_mul_table[static_cast<std::size_t>(a.v_ << 4 | b.v_)]);
    }

    constexpr Gf16& operator+=(Gf16 o) {
        v_ ^= o.v_;
        return *this;
    }
    constexpr Gf16& operator*=(Gf16 o) {
        v_ = detail::gf16_mul_table[static_cast<std::size_t>(v_ << 4 | o.v_)];
        return *this;
    }

    Gf16 inv() const {
        if (v_ == 0) throw ZeroInverse("zero has no multiplicative inverse in GF(16)");
        return Gf16(detail::gf16_inv_table[v_]);
    }

    friend constexpr bool operator==(Gf16, Gf16) = default;

private:
    std::uint8_t v_ = 0;
};

using Vec = std::vector<Gf16>;

inline Vec vec_add(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw DimensionMismatch("vector sizes differ");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

// Two elements per byte, the first one in the low nibble; an odd trailing
// element leaves the high nibble zero.
inline Bytes pack_elements(const Vec& v) {
    Bytes out((v.size() + 1) / 2, 0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i % 2 == 0)
            out[i / 2] = v[i].value();
        else
            out[i / 2] |= static_cast<std::uint8_t>(v[i].value() << 4);
    }
    return out;
}

inline Vec unpack_elements(ByteView bytes, std::size_t count) {
    if (bytes.size() != (count + 1) / 2) throw ParseError("packed element payload has wrong size");
    Vec v(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::uint8_t byte = bytes[i / 2];
        v[i] = Gf16(static_cast<std::uint8_t>(i % 2 == 0 ? byte & 0xF : byte >> 4));
    }
    if (count % 2 == 1 && (bytes.back() & 0xF0) != 0)
        throw ParseError("nonzero padding nibble in packed elements");
    return v;
}

} // namespace mulsan
