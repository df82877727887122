#pragma once

#include <array>
#include <cstdint>

#include "bytes.hpp"

// Self-contained Keccak sponge providing the two primitives used throughout:
// SHA3-256 for digests and SHAKE256 as the extendable-output function.

namespace mulsan {

namespace detail {

inline constexpr std::array<std::uint64_t, 24> keccak_rc = {
    0x0000000000000001ULL, 0x0000000000008082ULL, 0x800000000000808aULL,
    0x8000000080008000ULL, 0x000000000000808bULL, 0x0000000080000001ULL,
    0x8000000080008081ULL, 0x8000000000008009ULL, 0x000000000000008aULL,
    0x0000000000000088ULL, 0x0000000080008009ULL, 0x000000008000000aULL,
    0x000000008000808bULL, 0x800000000000008bULL, 0x8000000000008089ULL,
    0x8000000000008003ULL, 0x8000000000008002ULL, 0x8000000000000080ULL,
    0x000000000000800aULL, 0x800000008000000aULL, 0x8000000080008081ULL,
    0x8000000000008080ULL, 0x0000000080000001ULL, 0x8000000080008008ULL,
};

inline constexpr std::array<int, 25> keccak_rho = {
    0,  1,  62, 28, 27, 36, 44, 6,  55, 20, 3,  10, 43,
    25, 39, 41, 45, 15, 21, 8,  18, 2,  61, 56, 14,
};

inline constexpr std::uint64_t rotl64(std::uint64_t v, int s) {
    return s == 0 ? v : (v << s) | (v >> (64 - s));
}

inline void keccak_f1600(std::array<std::uint64_t, 25>& st) {
    for (int round = 0; round < 24; ++round) {
        // theta
        std::uint64_t c[5], d[5];
        for (int x = 0; x < 5; ++x)
            c[x] = st[x] ^ st[x + 5] ^ st[x + 10] ^ st[x + 15] ^ st[x + 20];
        for (int x = 0; x < 5; ++x)
            d[x] = c[(x + 4) % 5] ^ rotl64(c[(x + 1) % 5], 1);
        for (int i = 0; i < 25; ++i) st[i] ^= d[i % 5];

        // rho + pi
        std::uint64_t b[25];
        for (int x = 0; x < 5; ++x)
            for (int y = 0; y < 5; ++y)
                b[y + 5 * ((2 * x + 3 * y) % 5)] = rotl64(st[x + 5 * y], keccak_rho[x + 5 * y]);

        // chi
        for (int y = 0; y < 5; ++y)
            for (int x = 0; x < 5; ++x)
                st[x + 5 * y] = b[x + 5 * y] ^ (~b[(x + 1) % 5 + 5 * y] & b[(x + 2) % 5 + 5 * y]);

        // iota
        st[0] ^= keccak_rc[round];
    }
}

// Sponge with byte-granular absorb and squeeze; Rate is the block size in
// bytes, DomainPad the FIPS 202 suffix (0x06 for SHA3, 0x1f for SHAKE).
template <std::size_t Rate, std::uint8_t DomainPad>
class KeccakSponge {
public:
    void absorb(ByteView data) {
        for (std::uint8_t byte : data) {
            xor_byte(absorb_pos_++, byte);
            if (absorb_pos_ == Rate) {
                keccak_f1600(state_);
                absorb_pos_ = 0;
            }
        }
    }

    void squeeze(std::uint8_t* out, std::size_t len) {
        if (!finalized_) {
            xor_byte(absorb_pos_, DomainPad);
            xor_byte(Rate - 1, 0x80);
            keccak_f1600(state_);
            squeeze_pos_ = 0;
            finalized_ = true;
        }
        while (len > 0) {
            if (squeeze_pos_ == Rate) {
                keccak_f1600(state_);
                squeeze_pos_ = 0;
            }
            *out++ = state_byte(squeeze_pos_++);
            --len;
        }
    }

private:
    void xor_byte(std::size_t pos, std::uint8_t v) {
        state_[pos / 8] ^= static_cast<std::uint64_t>(v) << (8 * (pos % 8));
    }

    std::uint8_t state_byte(std::size_t pos) const {
        return static_cast<std::uint8_t>(state_[pos / 8] >> (8 * (pos % 8)));
    }

    std::array<std::uint64_t, 25> state_{};
    std::size_t absorb_pos_ = 0;
    std::size_t squeeze_pos_ = 0;
    bool finalized_ = false;
};

} // namespace detail

using Hash32 = std::array<std::uint8_t, 32>;

// Incremental SHAKE256; absorb any number of times, then squeeze any number
// of times (the first squeeze pads and finalizes).
class Shake256 {
public:
    Shake256& absorb(ByteView data) {
        sponge_.absorb(data);
        return *this;
    }

    void squeeze(std::uint8_t* out, std::size_t len) { sponge_.squeeze(out, len); }

    Bytes squeeze(std::size_t len) {
        Bytes out(len);
        sponge_.squeeze(out.data(), len);
        return out;
    }

private:
    detail::KeccakSponge<136, 0x1f> sponge_;
};

inline Hash32 sha3_256(ByteView data) {
    detail::KeccakSponge<136, 0x06> sponge;
    sponge.absorb(data);
    Hash32 out;
    sponge.squeeze(out.data(), out.size());
    return out;
}

inline Hash32 sha3_256_concat(ByteView a, ByteView b) {
    detail::KeccakSponge<136, 0x06> sponge;
    sponge.absorb(a);
    sponge.absorb(b);
    Hash32 out;
    sponge.squeeze(out.data(), out.size());
    return out;
}

} // namespace mulsan
