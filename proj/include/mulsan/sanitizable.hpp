#pragma once

#include <map>

#include "uov.hpp"

// Sanitizable signatures over block-structured messages. The signer signs
// the fixed part of the message (σ1) and the full message (σ2) and declares
// which blocks the sanitizer may replace; the sanitizer swaps admissible
// blocks and re-signs only the full message under its own key, leaving σ1
// untouched. A judge attributes any valid pair to signer or sanitizer by
// testing σ2 against the signer's public map.

namespace mulsan::sss {

using uov::KeyPair;
using uov::Party;
using uov::PublicKey;

struct BlockMessage {
    std::vector<Bytes> blocks;

    std::size_t count() const { return blocks.size(); }

    friend bool operator==(const BlockMessage&, const BlockMessage&) = default;
};

// Which block indices the sanitizer may replace.
struct AdmissibleDescription {
    std::uint32_t block_count = 0;
    std::vector<bool> modifiable; // size == block_count

    bool well_formed() const { return modifiable.size() == block_count; }

    friend bool operator==(const AdmissibleDescription&, const AdmissibleDescription&) = default;
};

// Replacement instructions, keyed by block index (canonically ascending).
struct Modification {
    std::map<std::uint32_t, Bytes> replacements;

    bool empty() const { return replacements.empty(); }
};

struct SanSignature {
    Vec sigma1; // on the fixed part, always the signer's
    Vec sigma2; // on the full message, signer's or sanitizer's
    AdmissibleDescription ad;
};

enum class Origin { signer, sanitizer };

// --- canonical encodings -----------------------------------------------------

// Message file: block count u32be, then per block u32be length | bytes.
inline Bytes encode_message(const BlockMessage& msg) {
    ByteWriter w;
    w.u32be(static_cast<std::uint32_t>(msg.blocks.size()));
    for (const Bytes& b : msg.blocks) w.sized(b);
    return w.take();
}

inline BlockMessage decode_message(ByteView bytes) {
    ByteReader r(bytes);
    std::uint32_t count = r.u32be();
    if (count == 0) throw ParseError("message must contain at least one block");
    BlockMessage msg;
    for (std::uint32_t i = 0; i < count; ++i) msg.blocks.push_back(r.sized());
    r.finish("message file");
    return msg;
}

// AD encoding: block count u32be, then ceil(count/8) bitmask bytes with bit 7
// of byte 0 holding block 0.
inline Bytes encode_ad(const AdmissibleDescription& ad) {
    ByteWriter w;
    w.u32be(ad.block_count);
    Bytes mask((ad.block_count + 7) / 8, 0);
    for (std::uint32_t i = 0; i < ad.block_count; ++i)
        if (ad.modifiable[i]) mask[i / 8] |= static_cast<std::uint8_t>(0x80 >> (i % 8));
    w.raw(mask);
    return w.take();
}

inline AdmissibleDescription decode_ad(ByteReader& r) {
    AdmissibleDescription ad;
    ad.block_count = r.u32be();
    ByteView mask = r.raw((ad.block_count + 7) / 8);
    ad.modifiable.resize(ad.block_count);
    for (std::uint32_t i = 0; i < ad.block_count; ++i)
        ad.modifiable[i] = (mask[i / 8] >> (7 - i % 8)) & 1;
    if (ad.block_count % 8 != 0 && !mask.empty() &&
        (mask.back() & (0xFF >> (ad.block_count % 8))) != 0)
        throw ParseError("nonzero trailing bits in admissible-description bitmask");
    return ad;
}

inline AdmissibleDescription decode_ad(ByteView bytes) {
    ByteReader r(bytes);
    AdmissibleDescription ad = decode_ad(r);
    r.finish("admissible description");
    return ad;
}

// Canonical fixed-part extraction: block count, then every non-modifiable
// block with its index. Embedding indices and the total count pins fixed
// blocks to their positions, so reordering or splicing changes the encoding.
inline Bytes fixed_extract(const BlockMessage& msg, const AdmissibleDescription& ad) {
    if (!ad.well_formed() || ad.block_count != msg.blocks.size())
        throw CountMismatch("admissible description does not match the message block count");
    ByteWriter w;
    w.u32be(ad.block_count);
    for (std::uint32_t i = 0; i < ad.block_count; ++i) {
        if (ad.modifiable[i]) continue;
        w.u32be(i);
        w.sized(msg.blocks[i]);
    }
    return w.take();
}

// AD(MODIFY) of the scheme: 1 iff every replaced index is in range and
// flagged modifiable. Total; never throws.
inline bool admissible(const Modification& mod, const AdmissibleDescription& ad,
                       const BlockMessage& msg) {
    if (!ad.well_formed() || ad.block_count != msg.blocks.size()) return false;
    for (const auto& [index, replacement] : mod.replacements) {
        (void)replacement;
        if (index >= ad.block_count || !ad.modifiable[index]) return false;
    }
    return true;
}

inline BlockMessage apply(const Modification& mod, const BlockMessage& msg) {
    BlockMessage out = msg;
    for (const auto& [index, replacement] : mod.replacements) {
        if (index >= out.blocks.size())
            throw CountMismatch("modification index beyond message block count");
        out.blocks[index] = replacement;
    }
    return out;
}

// --- digests -----------------------------------------------------------------

// msg0-style digest: binds the fixed part, the admissible description, and
// the sanitizer's public key under the 0-tag.
inline Vec fixed_digest(const BlockMessage& msg, const AdmissibleDescription& ad,
                        const PublicKey& sanitizer_pk) {
    Bytes fixed = fixed_extract(msg, ad);
    Bytes ad_enc = encode_ad(ad);
    return hash_to_field(0x00, {fixed, ad_enc, sanitizer_pk.encoded}, sanitizer_pk.params.m);
}

// msg1/msg2-style digest: binds the full message and both public keys under
// the 1-tag. Sanitized and original messages go through the same function,
// so verification needs no provenance.
inline Vec full_digest(const BlockMessage& msg, const PublicKey& sanitizer_pk,
                       const PublicKey& signer_pk) {
    Bytes enc = encode_message(msg);
    return hash_to_field(0x01, {enc, sanitizer_pk.encoded, signer_pk.encoded},
                         signer_pk.params.m);
}

// --- the six algorithms -------------------------------------------------------

inline KeyPair kgen_sign(const uov::Params& params, Rng& rng) {
    return uov::keygen(params, Party::signer, rng);
}

inline KeyPair kgen_sanit(const uov::Params& params, Rng& rng) {
    return uov::keygen(params, Party::sanitizer, rng);
}

inline SanSignature sign(const BlockMessage& msg, const KeyPair& signer,
                         const PublicKey& sanitizer_pk, const AdmissibleDescription& ad,
                         Rng& rng) {
    if (msg.blocks.empty()) throw CountMismatch("message must contain at least one block");
    if (signer.params.n != sanitizer_pk.params.n || signer.params.m != sanitizer_pk.params.m)
        throw DimensionMismatch("signer and sanitizer keys use different parameters");
    Vec h0 = fixed_digest(msg, ad, sanitizer_pk);
    Vec sigma1 = uov::sign(signer.secret, h0, rng, signer.params.retry_limit);
    Vec h1 = full_digest(msg, sanitizer_pk, signer.pub);
    Vec sigma2 = uov::sign(signer.secret, h1, rng, signer.params.retry_limit);
    return SanSignature{std::move(sigma1), std::move(sigma2), ad};
}

inline std::pair<BlockMessage, SanSignature> sanitize(const BlockMessage& msg,
                                                      const Modification& mod,
                                                      const SanSignature& sig,
                                                      const PublicKey& signer_pk,
                                                      const KeyPair& sanitizer, Rng& rng) {
    if (signer_pk.params.n != sanitizer.params.n || signer_pk.params.m != sanitizer.params.m)
        throw DimensionMismatch("signer and sanitizer keys use different parameters");
    // Recompute the fixed part, check admissibility, then check σ1 before
    // producing anything.
    Vec h0 = fixed_digest(msg, sig.ad, sanitizer.pub);
    if (!admissible(mod, sig.ad, msg))
        throw NotAdmissible("modification touches a block outside the admissible description");
    if (!uov::verify(signer_pk.map, sig.sigma1, h0))
        throw InvalidFixedSignature("fixed-part signature does not verify under the signer key");

    BlockMessage modified = apply(mod, msg);
    Vec h2 = full_digest(modified, sanitizer.pub, signer_pk);
    Vec sigma2 = uov::sign(sanitizer.secret, h2, rng, sanitizer.params.retry_limit);
    // σ1 and AD are carried unchanged.
    return {std::move(modified), SanSignature{sig.sigma1, std::move(sigma2), sig.ad}};
}

// Total accept/reject. Accepts iff the AD is well-formed for the message,
// σ1 verifies under the signer key, and σ2 verifies under either key.
inline bool verify(const BlockMessage& msg, const SanSignature& sig, const PublicKey& signer_pk,
                   const PublicKey& sanitizer_pk) {
    if (msg.blocks.empty()) return false;
    if (!sig.ad.well_formed() || sig.ad.block_count != msg.blocks.size()) return false;
    if (signer_pk.params.n != sanitizer_pk.params.n ||
        signer_pk.params.m != sanitizer_pk.params.m)
        return false;
    if (sig.sigma1.size() != signer_pk.params.n || sig.sigma2.size() != signer_pk.params.n)
        return false;

    Vec h0 = fixed_digest(msg, sig.ad, sanitizer_pk);
    if (!uov::verify(signer_pk.map, sig.sigma1, h0)) return false;
    Vec h1 = full_digest(msg, sanitizer_pk, signer_pk);
    return signer_pk.map.eval(sig.sigma2) == h1 || sanitizer_pk.map.eval(sig.sigma2) == h1;
}

// Attribution of a valid pair. The pair must already verify; judging an
// invalid pair is a contract violation.
inline Origin judge(const BlockMessage& msg, const SanSignature& sig, const PublicKey& signer_pk,
                    const PublicKey& sanitizer_pk) {
    if (!verify(msg, sig, signer_pk, sanitizer_pk))
        throw PreconditionViolated("judge requires a valid message-signature pair");
    Vec h1 = full_digest(msg, sanitizer_pk, signer_pk);
    return signer_pk.map.eval(sig.sigma2) == h1 ? Origin::signer : Origin::sanitizer;
}

// --- signature files -----------------------------------------------------------
//
// MSIG | version 0x01 | n u16be | σ1 packed | σ2 packed | AD encoding.

inline constexpr std::array<std::uint8_t, 4> signature_magic = {'M', 'S', 'I', 'G'};
inline constexpr std::uint8_t signature_version = 0x01;

inline Bytes encode_signature(const SanSignature& sig) {
    ByteWriter w;
    w.raw(ByteView(signature_magic.data(), signature_magic.size()));
    w.u8(signature_version);
    w.u16be(static_cast<std::uint16_t>(sig.sigma1.size()));
    w.raw(pack_elements(sig.sigma1));
    w.raw(pack_elements(sig.sigma2));
    w.raw(encode_ad(sig.ad));
    return w.take();
}

inline SanSignature decode_signature(ByteReader& r) {
    r.expect(ByteView(signature_magic.data(), signature_magic.size()), "signature file");
    if (r.u8() != signature_version) throw ParseError("unsupported signature file version");
    std::uint16_t n = r.u16be();
    if (n == 0) throw ParseError("signature dimension must be positive");
    SanSignature sig;
    sig.sigma1 = unpack_elements(r.raw((n + 1) / 2), n);
    sig.sigma2 = unpack_elements(r.raw((n + 1) / 2), n);
    sig.ad = decode_ad(r);
    return sig;
}

inline SanSignature decode_signature(ByteView bytes) {
    ByteReader r(bytes);
    SanSignature sig = decode_signature(r);
    r.finish("signature file");
    return sig;
}

} // namespace mulsan::sss
