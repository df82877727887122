#pragma once

#include <initializer_list>

#include "gf16.hpp"
#include "keccak.hpp"

namespace mulsan {

// Hash onto F_16^m. The absorbed stream is normative and bit-exact:
//
//   tag byte || for each part: 32-bit big-endian length || part bytes
//
// tag 0x00 marks fixed-part digests, 0x01 full-message digests. SHAKE256
// squeezes ceil(m/2) bytes; each byte yields two elements, low nibble first,
// and the first m elements form the result. The length prefixes keep
// distinct part lists from colliding by concatenation.
inline Vec hash_to_field(std::uint8_t tag, std::initializer_list<ByteView> parts, std::size_t m) {
    Shake256 xof;
    xof.absorb(ByteView(&tag, 1));
    for (ByteView part : parts) {
        std::uint8_t len[4] = {
            static_cast<std::uint8_t>(part.size() >> 24),
            static_cast<std::uint8_t>(part.size() >> 16),
            static_cast<std::uint8_t>(part.size() >> 8),
            static_cast<std::uint8_t>(part.size()),
        };
        xof.absorb(ByteView(len, 4));
        xof.absorb(part);
    }
    Bytes digest = xof.squeeze((m + 1) / 2);
    Vec out(m);
    for (std::size_t i = 0; i < m; ++i) {
        std::uint8_t byte = digest[i / 2];
        out[i] = Gf16(static_cast<std::uint8_t>(i % 2 == 0 ? byte & 0xF : byte >> 4));
    }
    return out;
}

} // namespace mulsan
