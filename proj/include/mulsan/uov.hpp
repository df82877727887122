#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "hash_to_field.hpp"
#include "linalg.hpp"

// Unbalanced Oil-and-Vinegar signature scheme over GF(16): an easily
// invertible quadratic central map F hidden between two invertible affine
// transformations, public key P = S ∘ F ∘ T expanded to explicit quadratic
// polynomials. Signing inverts the chain; verification evaluates P.

namespace mulsan::uov {

struct Params {
    std::size_t n = 0; // variables
    std::size_t m = 0; // equations (= oil variables)
    std::size_t retry_limit = 256;

    std::size_t vinegar() const { return n - m; }

    bool valid() const { return m >= 1 && n > m; }

    // Desk-scale parameters for tests and demos.
    static Params toy() {
        Params p;
        p.n = 24;
        p.m = 8;
        return p;
    }

    // 128-bit security instantiation.
    static Params uov128() {
        Params p;
        p.n = 160;
        p.m = 64;
        return p;
    }

    static std::optional<Params> preset(std::string_view name) {
        if (name == "uov-toy") return toy();
        if (name == "uov-128") return uov128();
        return std::nullopt;
    }

    friend bool operator==(const Params&, const Params&) = default;
};

// Index of (i, j), i <= j, in lexicographic upper-triangular order over d
// variables.
inline std::size_t tri_index(std::size_t d, std::size_t i, std::size_t j) {
    return i * d - i * (i - 1) / 2 + (j - i);
}

inline std::size_t tri_count(std::size_t d) { return d * (d + 1) / 2; }

// One central-map polynomial. The defining UOV structure: quadratic terms
// pair vinegar with vinegar or vinegar with oil, never oil with oil, so
// fixing the vinegar variables leaves a linear system in the oil variables.
struct CentralEquation {
    Vec vv;   // vinegar x vinegar, i <= j, lexicographic
    Vec vo;   // vinegar x oil, vinegar-major
    Vec lin;  // linear terms over all n variables
    Gf16 cst;
};

struct CentralMap {
    std::size_t n = 0, m = 0;
    std::vector<CentralEquation> eqs;

    std::size_t vinegar() const { return n - m; }

    static CentralMap random(const Params& params, Rng& rng) {
        const std::size_t v = params.vinegar();
        CentralMap f;
        f.n = params.n;
        f.m = params.m;
        f.eqs.resize(params.m);
        for (auto& eq : f.eqs) {
            eq.vv = rng.elements(tri_count(v));
            eq.vo = rng.elements(v * params.m);
            eq.lin = rng.elements(params.n);
            eq.cst = rng.element();
        }
        return f;
    }

    Gf16 eval_equation(std::size_t k, const Vec& x) const {
        const std::size_t v = vinegar();
        const CentralEquation& eq = eqs[k];
        Gf16 acc = eq.cst;
        std::size_t t = 0;
        for (std::size_t i = 0; i < v; ++i)
            for (std::size_t j = i; j < v; ++j) acc += eq.vv[t++] * x[i] * x[j];
        for (std::size_t i = 0; i < v; ++i)
            for (std::size_t j = 0; j < m; ++j) acc += eq.vo[i * m + j] * x[i] * x[v + j];
        for (std::size_t i = 0; i < n; ++i) acc += eq.lin[i] * x[i];
        return acc;
    }

    Vec eval(const Vec& x) const {
        if (x.size() != n) throw DimensionMismatch("central map evaluated at wrong dimension");
        Vec out(m);
        for (std::size_t k = 0; k < m; ++k) out[k] = eval_equation(k, x);
        return out;
    }

    std::size_t coefficient_count() const {
        const std::size_t v = vinegar();
        return m * (tri_count(v) + v * m + n + 1);
    }
};

struct PublicMap {
    struct Poly {
        Vec quad; // i <= j over all n variables, lexicographic
        Vec lin;
        Gf16 cst;
    };

    std::size_t n = 0, m = 0;
    std::vector<Poly> polys;

    Vec eval(const Vec& x) const {
        if (x.size() != n) throw DimensionMismatch("public map evaluated at wrong dimension");
        // All m polynomials share the same monomial values; compute them once.
        Vec products(tri_count(n));
        std::size_t t = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) products[t++] = x[i] * x[j];

        Vec out(m);
        for (std::size_t k = 0; k < m; ++k) {
            const Poly& p = polys[k];
            Gf16 acc = p.cst;
            for (std::size_t q = 0; q < products.size(); ++q) acc += p.quad[q] * products[q];
            for (std::size_t i = 0; i < n; ++i) acc += p.lin[i] * x[i];
            out[k] = acc;
        }
        return out;
    }

    std::size_t coefficient_count() const { return m * (tri_count(n) + n + 1); }
};

struct SecretKey {
    AffineMap outer;    // S: F^m -> F^m
    CentralMap central; // F: F^n -> F^m
    AffineMap inner;    // T: F^n -> F^n
};

// Expand S ∘ F ∘ T symbolically into explicit quadratic polynomials.
// Substituting the affine T into each quadratic form is a matrix congruence
// on the quadratic part; the affine S then mixes whole equations linearly.
inline PublicMap expand_public(const SecretKey& sk) {
    const std::size_t n = sk.central.n;
    const std::size_t m = sk.central.m;
    const std::size_t v = sk.central.vinegar();
    const Matrix& tl = sk.inner.linear;
    const Vec& toff = sk.inner.offset;
    const Matrix tlt = tl.transposed();

    PublicMap pub;
    pub.n = n;
    pub.m = m;
    pub.polys.resize(m);
    for (auto& poly : pub.polys) {
        poly.quad.assign(tri_count(n), Gf16());
        poly.lin.assign(n, Gf16());
    }

    for (std::size_t k = 0; k < m; ++k) {
        const CentralEquation& eq = sk.central.eqs[k];

        // Quadratic coefficient matrix of equation k over all n variables.
        Matrix a(n, n);
        std::size_t t = 0;
        for (std::size_t i = 0; i < v; ++i)
            for (std::size_t j = i; j < v; ++j) a(i, j) = eq.vv[t++];
        for (std::size_t i = 0; i < v; ++i)
            for (std::size_t j = 0; j < m; ++j) a(i, v + j) = eq.vo[i * m + j];

        // Congruence transform of the quadratic part, folded back to
        // upper-triangular form (characteristic 2: x_i x_j collects
        // M_ij + M_ji).
        Matrix mqt = tlt.mul(a.mul(tl));
        Vec quad(tri_count(n));
        std::size_t q = 0;
        for (std::size_t i = 0; i < n; ++i) {
            quad[q++] = mqt(i, i);
            for (std::size_t j = i + 1; j < n; ++j) quad[q++] = mqt(i, j) + mqt(j, i);
        }

        // Linear part: ((A + A^T)·t + b)^T · T_L, as a column via T_L^T.
        Vec w(n);
        for (std::size_t i = 0; i < n; ++i) {
            Gf16 acc = eq.lin[i];
            for (std::size_t j = 0; j < n; ++j) acc += (a(i, j) + a(j, i)) * toff[j];
            w[i] = acc;
        }
        Vec lin = tlt.mul(w);

        // Constant part is the whole equation evaluated at the offset.
        Gf16 cst = sk.central.eval_equation(k, toff);

        // Mix equation k into every output polynomial through S.
        for (std::size_t i = 0; i < m; ++i) {
            Gf16 s = sk.outer.linear(i, k);
            if (s.is_zero()) continue;
            PublicMap::Poly& poly = pub.polys[i];
            for (std::size_t c = 0; c < quad.size(); ++c) poly.quad[c] += s * quad[c];
            for (std::size_t c = 0; c < n; ++c) poly.lin[c] += s * lin[c];
            poly.cst += s * cst;
        }
    }
    for (std::size_t i = 0; i < m; ++i) pub.polys[i].cst += sk.outer.offset[i];
    return pub;
}

// Find x with F(x) = target: sample vinegar variables uniformly, substitute
// to get an m×m linear system in the oil variables, solve, and resample on a
// singular system. Each attempt fails with probability roughly 1/q, so
// exhausting the retry limit signals a pathological map or entropy source.
inline Vec central_invert(const CentralMap& f, const Vec& target, Rng& rng,
                          std::size_t retry_limit) {
    if (target.size() != f.m) throw DimensionMismatch("central inversion target has wrong dimension");
    const std::size_t v = f.vinegar();
    const std::size_t m = f.m;

    for (std::size_t attempt = 0; attempt < retry_limit; ++attempt) {
        Vec vin = rng.elements(v);

        Matrix oil(m, m);
        Vec rhs(m);
        for (std::size_t k = 0; k < m; ++k) {
            const CentralEquation& eq = f.eqs[k];
            Gf16 fixed = eq.cst;
            std::size_t t = 0;
            for (std::size_t i = 0; i < v; ++i)
                for (std::size_t j = i; j < v; ++j) fixed += eq.vv[t++] * vin[i] * vin[j];
            for (std::size_t i = 0; i < v; ++i) fixed += eq.lin[i] * vin[i];
            rhs[k] = target[k] + fixed;

            for (std::size_t j = 0; j < m; ++j) {
                Gf16 coef = eq.lin[v + j];
                for (std::size_t i = 0; i < v; ++i) coef += eq.vo[i * m + j] * vin[i];
                oil(k, j) = coef;
            }
        }

        auto oil_values = solve_linear(std::move(oil), std::move(rhs));
        if (!oil_values) continue;

        Vec x(f.n);
        for (std::size_t i = 0; i < v; ++i) x[i] = vin[i];
        for (std::size_t j = 0; j < m; ++j) x[v + j] = (*oil_values)[j];
        return x;
    }
    throw InversionExhausted("central map inversion failed for every vinegar sample");
}

enum class Party : std::uint8_t { signer = 0, sanitizer = 1 };

struct PublicKey {
    Party party = Party::signer;
    Params params;
    PublicMap map;
    Bytes encoded; // complete key file bytes; hash inputs bind these verbatim

    Hash32 digest() const { return sha3_256(encoded); }
};

struct KeyPair {
    Params params;
    Party party = Party::signer;
    SecretKey secret;
    PublicKey pub;
};

// --- key files ---------------------------------------------------------------
//
// MSAN | version 0x01 | role | n u16be | m u16be | q = 0x10 | packed payload
//
// role: 0x00 signer-public, 0x01 signer-secret, 0x02 sanitizer-public,
// 0x03 sanitizer-secret. The payload packs two field elements per byte,
// low nibble first. Public payload order: per polynomial, quadratic
// coefficients (i <= j lexicographic), linear, constant. Secret payload
// order: S linear row-major, S offset, T linear row-major, T offset, then
// per central equation vv, vo, lin, constant. Cached inverses are not key
// material and are recomputed on load.

inline constexpr std::array<std::uint8_t, 4> key_magic = {'M', 'S', 'A', 'N'};
inline constexpr std::uint8_t key_version = 0x01;

namespace detail {

inline std::uint8_t role_byte(Party party, bool secret) {
    return static_cast<std::uint8_t>((party == Party::sanitizer ? 2 : 0) | (secret ? 1 : 0));
}

inline Bytes encode_key_file(Party party, bool secret, std::size_t n, std::size_t m,
                             const Vec& elements) {
    ByteWriter w;
    w.raw(ByteView(key_magic.data(), key_magic.size()));
    w.u8(key_version);
    w.u8(role_byte(party, secret));
    w.u16be(static_cast<std::uint16_t>(n));
    w.u16be(static_cast<std::uint16_t>(m));
    w.u8(0x10);
    Bytes packed = pack_elements(elements);
    w.raw(packed);
    return w.take();
}

struct KeyHeader {
    Party party;
    bool secret;
    Params params;
};

inline KeyHeader decode_key_header(ByteReader& r) {
    r.expect(ByteView(key_magic.data(), key_magic.size()), "key file");
    if (r.u8() != key_version) throw ParseError("unsupported key file version");
    std::uint8_t role = r.u8();
    if (role > 0x03) throw ParseError("unknown key role byte");
    Params params;
    params.n = r.u16be();
    params.m = r.u16be();
    if (r.u8() != 0x10) throw ParseError("unsupported field order");
    if (!params.valid()) throw ParseError("invalid UOV parameters in key header");
    return KeyHeader{role & 0x02 ? Party::sanitizer : Party::signer, (role & 0x01) != 0, params};
}

} // namespace detail

inline Bytes encode_public_key(const PublicMap& map, Party party) {
    Vec elements;
    elements.reserve(map.coefficient_count());
    for (const auto& poly : map.polys) {
        elements.insert(elements.end(), poly.quad.begin(), poly.quad.end());
        elements.insert(elements.end(), poly.lin.begin(), poly.lin.end());
        elements.push_back(poly.cst);
    }
    return detail::encode_key_file(party, false, map.n, map.m, elements);
}

inline Bytes encode_secret_key(const SecretKey& sk, Party party) {
    const std::size_t n = sk.central.n, m = sk.central.m;
    Vec elements;
    const auto append_matrix = [&elements](const Matrix& mat) {
        elements.insert(elements.end(), mat.data().begin(), mat.data().end());
    };
    append_matrix(sk.outer.linear);
    elements.insert(elements.end(), sk.outer.offset.begin(), sk.outer.offset.end());
    append_matrix(sk.inner.linear);
    elements.insert(elements.end(), sk.inner.offset.begin(), sk.inner.offset.end());
    for (const auto& eq : sk.central.eqs) {
        elements.insert(elements.end(), eq.vv.begin(), eq.vv.end());
        elements.insert(elements.end(), eq.vo.begin(), eq.vo.end());
        elements.insert(elements.end(), eq.lin.begin(), eq.lin.end());
        elements.push_back(eq.cst);
    }
    return detail::encode_key_file(party, true, n, m, elements);
}

inline PublicKey decode_public_key(ByteView bytes) {
    ByteReader r(bytes);
    auto header = detail::decode_key_header(r);
    if (header.secret) throw ParseError("expected a public key file, found a secret key role");
    const std::size_t n = header.params.n, m = header.params.m;
    const std::size_t count = m * (tri_count(n) + n + 1);
    Vec elements = unpack_elements(r.raw((count + 1) / 2), count);
    r.finish("public key file");

    PublicMap map;
    map.n = n;
    map.m = m;
    map.polys.resize(m);
    std::size_t pos = 0;
    for (auto& poly : map.polys) {
        poly.quad.assign(elements.begin() + pos, elements.begin() + pos + tri_count(n));
        pos += tri_count(n);
        poly.lin.assign(elements.begin() + pos, elements.begin() + pos + n);
        pos += n;
        poly.cst = elements[pos++];
    }
    return PublicKey{header.party, header.params, std::move(map), Bytes(bytes.begin(), bytes.end())};
}

namespace detail {

inline AffineMap read_affine(const Vec& elements, std::size_t& pos, std::size_t dim) {
    Matrix linear(dim, dim);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c) linear(r, c) = elements[pos++];
    Vec offset(elements.begin() + pos, elements.begin() + pos + dim);
    pos += dim;
    auto inv = invert(linear);
    if (!inv) throw ParseError("secret key contains a singular affine transformation");
    return AffineMap{std::move(linear), std::move(offset), std::move(*inv)};
}

} // namespace detail

inline KeyPair decode_secret_key(ByteView bytes) {
    ByteReader r(bytes);
    auto header = detail::decode_key_header(r);
    if (!header.secret) throw ParseError("expected a secret key file, found a public key role");
    const std::size_t n = header.params.n, m = header.params.m;
    const std::size_t v = n - m;
    const std::size_t count =
        m * m + m + n * n + n + m * (tri_count(v) + v * m + n + 1);
    Vec elements = unpack_elements(r.raw((count + 1) / 2), count);
    r.finish("secret key file");

    std::size_t pos = 0;
    SecretKey sk;
    sk.outer = detail::read_affine(elements, pos, m);
    sk.inner = detail::read_affine(elements, pos, n);
    sk.central.n = n;
    sk.central.m = m;
    sk.central.eqs.resize(m);
    for (auto& eq : sk.central.eqs) {
        eq.vv.assign(elements.begin() + pos, elements.begin() + pos + tri_count(v));
        pos += tri_count(v);
        eq.vo.assign(elements.begin() + pos, elements.begin() + pos + v * m);
        pos += v * m;
        eq.lin.assign(elements.begin() + pos, elements.begin() + pos + n);
        pos += n;
        eq.cst = elements[pos++];
    }

    KeyPair kp;
    kp.params = header.params;
    kp.party = header.party;
    kp.secret = std::move(sk);
    PublicMap map = expand_public(kp.secret);
    Bytes encoded = encode_public_key(map, kp.party);
    kp.pub = PublicKey{kp.party, kp.params, std::move(map), std::move(encoded)};
    return kp;
}

// --- scheme operations -------------------------------------------------------

// Sampling order is fixed (S, then T, then central coefficients), so a key
// pair is a pure function of (params, seed).
inline KeyPair keygen(const Params& params, Party party, Rng& rng) {
    if (!params.valid()) throw DimensionMismatch("invalid UOV parameters");
    KeyPair kp;
    kp.params = params;
    kp.party = party;
    kp.secret.outer = AffineMap::sample(params.m, rng);
    kp.secret.inner = AffineMap::sample(params.n, rng);
    kp.secret.central = CentralMap::random(params, rng);
    PublicMap map = expand_public(kp.secret);
    Bytes encoded = encode_public_key(map, party);
    kp.pub = PublicKey{party, params, std::move(map), std::move(encoded)};
    return kp;
}

// Signature on a digest y ∈ F^m: invert the outer map, the central map, and
// the inner map in turn. The vinegar randomness makes signatures randomized.
inline Vec sign(const SecretKey& sk, const Vec& digest, Rng& rng, std::size_t retry_limit = 256) {
    if (digest.size() != sk.central.m) throw DimensionMismatch("digest has wrong dimension");
    Vec x0 = sk.outer.backward(digest);
    Vec x1 = central_invert(sk.central, x0, rng, retry_limit);
    return sk.inner.backward(x1);
}

inline bool verify(const PublicMap& pub, const Vec& signature, const Vec& digest) {
    if (signature.size() != pub.n) throw DimensionMismatch("signature has wrong dimension");
    if (digest.size() != pub.m) throw DimensionMismatch("digest has wrong dimension");
    return pub.eval(signature) == digest;
}

} // namespace mulsan::uov
