#pragma once

#include <cstdint>
#include <random>

#include "gf16.hpp"
#include "keccak.hpp"

namespace mulsan {

// Deterministic byte stream: SHAKE256 squeezed over a seed. Seeded from the
// caller for reproducible key generation and signing, or from the operating
// system for production use. Field elements are served one nibble at a time,
// low nibble first, so a seed fixes every sampled coefficient.
class Rng {
public:
    static Rng from_seed(ByteView seed) { return Rng(seed); }

    static Rng from_entropy() {
        Bytes seed(32);
        try {
            std::random_device rd;
            for (auto& b : seed) b = static_cast<std::uint8_t>(rd());
        } catch (const std::exception& e) {
            throw EntropyFailure(std::string("system entropy source failed: ") + e.what());
        }
        return Rng(seed);
    }

    std::uint8_t byte() {
        std::uint8_t b;
        stream_.squeeze(&b, 1);
        return b;
    }

    void fill(std::uint8_t* out, std::size_t len) { stream_.squeeze(out, len); }

    Bytes bytes(std::size_t len) {
        Bytes out(len);
        fill(out.data(), out.size());
        return out;
    }

    Gf16 element() {
        if (!have_nibble_) {
            pending_ = byte();
            have_nibble_ = true;
            return Gf16(static_cast<std::uint8_t>(pending_ & 0xF));
        }
        have_nibble_ = false;
        return Gf16(static_cast<std::uint8_t>(pending_ >> 4));
    }

    Vec elements(std::size_t count) {
        Vec v(count);
        for (auto& e : v) e = element();
        return v;
    }

private:
    explicit Rng(ByteView seed) { stream_.absorb(seed); }

    Shake256 stream_;
    std::uint8_t pending_ = 0;
    bool have_nibble_ = false;
};

} // namespace mulsan
