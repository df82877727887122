#include <catch2/catch_amalgamated.hpp>

#include <mulsan/keccak.hpp>

using namespace mulsan;

// Reference digests computed with an independent FIPS 202 implementation
// (CPython hashlib).

static Bytes bytes_of(std::string_view s) { return Bytes(s.begin(), s.end()); }

TEST_CASE("sha3-256 known answers") {
    CHECK(to_hex(sha3_256({})) ==
          "a7ffc6f8bf1ed76651c14756a061d662f580ff4de43b49fa82d80a4b80f8434a");

    Bytes abc = bytes_of("abc");
    CHECK(to_hex(sha3_256(abc)) ==
          "3a985da74fe225b2045c172d6bd390bd855f086e3e9d525b46bfe24511431532");

    // 200 bytes of 0xa3 spans more than one rate block.
    Bytes long_input(200, 0xa3);
    CHECK(to_hex(sha3_256(long_input)) ==
          "79f38adec5c20307a98ef76e8324afbfd46cfd81b22e3973c65fa1bd9de31787");
}

TEST_CASE("shake256 known answers") {
    Shake256 empty;
    CHECK(to_hex(empty.squeeze(32)) ==
          "46b9dd2b0ba88d13233b3feb743eeb243fcd52ea62b81b82b50c27646ed5762f");

    Shake256 abc;
    abc.absorb(bytes_of("abc"));
    CHECK(to_hex(abc.squeeze(64)) ==
          "483366601360a8771c6863080cc4114d8db44530f8f1e1ee4f94ea37e78b5739"
          "d5a15bef186a5386c75744c0527e1faa9f8726e462a12a4feb06bd8801e751e4");

    Bytes wide;
    for (int rep = 0; rep < 2; ++rep)
        for (int i = 0; i < 256; ++i) wide.push_back(static_cast<std::uint8_t>(i));
    Shake256 multi;
    multi.absorb(wide);
    CHECK(to_hex(multi.squeeze(48)) ==
          "a1d71885b0a841f03d1dc7f2738a15cc984071a17ffed5ecacb9f58720a473be"
          "1f2d28b96d543a367c81114206f5af37");
}

TEST_CASE("absorb and squeeze granularity does not matter") {
    Bytes data;
    for (int i = 0; i < 500; ++i) data.push_back(static_cast<std::uint8_t>(i * 7));

    Shake256 oneshot;
    oneshot.absorb(data);
    Bytes expected = oneshot.squeeze(300);

    Shake256 chunked;
    for (std::size_t off = 0; off < data.size(); off += 13) {
        std::size_t len = std::min<std::size_t>(13, data.size() - off);
        chunked.absorb(ByteView(data.data() + off, len));
    }
    Bytes out;
    while (out.size() < 300) {
        std::size_t len = std::min<std::size_t>(17, 300 - out.size());
        Bytes piece = chunked.squeeze(len);
        out.insert(out.end(), piece.begin(), piece.end());
    }
    CHECK(out == expected);
}

TEST_CASE("two-part digest helper matches concatenation") {
    Bytes a = bytes_of("left-part"), b = bytes_of("right-part");
    Bytes joined = a;
    joined.insert(joined.end(), b.begin(), b.end());
    CHECK(sha3_256_concat(a, b) == sha3_256(joined));
}
