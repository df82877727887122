#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace mulsan {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

inline ByteView as_bytes(std::string_view s) {
    return ByteView(reinterpret_cast<const std::uint8_t*>(s.data()), s.size());
}

inline Bytes to_bytes(std::string_view s) {
    return Bytes(s.begin(), s.end());
}

inline std::string to_string(ByteView b) {
    return std::string(b.begin(), b.end());
}

// Big-endian binary writer for the on-disk formats.
class ByteWriter {
public:
    void u8(std::uint8_t v) { out_.push_back(v); }

    void u16be(std::uint16_t v) {
        out_.push_back(static_cast<std::uint8_t>(v >> 8));
        out_.push_back(static_cast<std::uint8_t>(v));
    }

    void u32be(std::uint32_t v) {
        for (int s = 24; s >= 0; s -= 8)
            out_.push_back(static_cast<std::uint8_t>(v >> s));
    }

    void u64be(std::uint64_t v) {
        for (int s = 56; s >= 0; s -= 8)
            out_.push_back(static_cast<std::uint8_t>(v >> s));
    }

    void raw(ByteView b) { out_.insert(out_.end(), b.begin(), b.end()); }

    // 32-bit length prefix followed by the payload.
    void sized(ByteView b) {
        u32be(static_cast<std::uint32_t>(b.size()));
        raw(b);
    }

    const Bytes& bytes() const { return out_; }
    Bytes take() { return std::move(out_); }

private:
    Bytes out_;
};

// Cursor over an input buffer; throws ParseError on truncation.
class ByteReader {
public:
    explicit ByteReader(ByteView in) : in_(in) {}

    std::uint8_t u8() {
        need(1);
        return in_[pos_++];
    }

    std::uint16_t u16be() {
        need(2);
        std::uint16_t v = static_cast<std::uint16_t>(in_[pos_] << 8 | in_[pos_ + 1]);
        pos_ += 2;
        return v;
    }

    std::uint32_t u32be() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v = v << 8 | in_[pos_ + i];
        pos_ += 4;
        return v;
    }

    std::uint64_t u64be() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v = v << 8 | in_[pos_ + i];
        pos_ += 8;
        return v;
    }

    ByteView raw(std::size_t n) {
        need(n);
        ByteView v = in_.subspan(pos_, n);
        pos_ += n;
        return v;
    }

    Bytes sized() {
        std::size_t n = u32be();
        ByteView v = raw(n);
        return Bytes(v.begin(), v.end());
    }

    void expect(ByteView magic, const char* what) {
        ByteView got = raw(magic.size());
        if (!std::equal(magic.begin(), magic.end(), got.begin()))
            throw ParseError(std::string("bad magic for ") + what);
    }

    bool done() const { return pos_ == in_.size(); }
    std::size_t remaining() const { return in_.size() - pos_; }

    void finish(const char* what) {
        if (!done())
            throw ParseError(std::string("trailing bytes in ") + what);
    }

private:
    void need(std::size_t n) const {
        if (in_.size() - pos_ < n) throw ParseError("truncated input");
    }

    ByteView in_;
    std::size_t pos_ = 0;
};

inline std::string to_hex(ByteView b) {
    static const char digits[] = "0123456789abcdef";
    std::string s;
    s.reserve(b.size() * 2);
    for (std::uint8_t v : b) {
        s.push_back(digits[v >> 4]);
        s.push_back(digits[v & 0xF]);
    }
    return s;
}

inline Bytes from_hex(std::string_view s) {
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        return -1;
    };
    if (s.size() % 2 != 0) throw ParseError("hex string has odd length");
    Bytes out;
    out.reserve(s.size() / 2);
    for (std::size_t i = 0; i < s.size(); i += 2) {
        int hi = nibble(s[i]), lo = nibble(s[i + 1]);
        if (hi < 0 || lo < 0) throw ParseError("invalid hex digit");
        out.push_back(static_cast<std::uint8_t>(hi << 4 | lo));
    }
    return out;
}

} // namespace mulsan
