#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>

#include "sanitizable.hpp"

// Single-node realization of the audit ledger: signature events on a
// hash-chained block sequence with Merkle record roots, plus the receiver's
// challenge / auditing-proof protocol. A receiver holding only the tip hash
// can check inclusion proofs without trusting the prover.

namespace mulsan::ledger {

enum class RecordKind : std::uint8_t { sign_event = 0, sanitize_event = 1 };

struct LedgerRecord {
    RecordKind kind = RecordKind::sign_event;
    Hash32 message_digest{};      // SHA3-256 of the serialized BlockMessage
    Bytes signature_bytes;        // complete MSIG file bytes
    Hash32 signer_pk_digest{};    // SHA3-256 of the key file bytes
    Hash32 sanitizer_pk_digest{};
    std::uint64_t timestamp = 0;

    Bytes encode() const {
        ByteWriter w;
        w.u8(static_cast<std::uint8_t>(kind));
        w.raw(ByteView(message_digest.data(), message_digest.size()));
        w.sized(signature_bytes);
        w.raw(ByteView(signer_pk_digest.data(), signer_pk_digest.size()));
        w.raw(ByteView(sanitizer_pk_digest.data(), sanitizer_pk_digest.size()));
        w.u64be(timestamp);
        return w.take();
    }

    static LedgerRecord decode(ByteReader& r) {
        LedgerRecord rec;
        std::uint8_t kind = r.u8();
        if (kind > 1) throw ParseError("unknown ledger record kind");
        rec.kind = static_cast<RecordKind>(kind);
        auto read32 = [&r](Hash32& out) {
            ByteView v = r.raw(32);
            std::copy(v.begin(), v.end(), out.begin());
        };
        read32(rec.message_digest);
        rec.signature_bytes = r.sized();
        read32(rec.signer_pk_digest);
        read32(rec.sanitizer_pk_digest);
        rec.timestamp = r.u64be();
        return rec;
    }

    Hash32 leaf_hash() const { return sha3_256(encode()); }

    // σ1 as stored inside the MSIG bytes; links sanitize events back to the
    // sign event they amend.
    Bytes sigma1_bytes() const {
        ByteReader r(signature_bytes);
        r.expect(ByteView(sss::signature_magic.data(), sss::signature_magic.size()),
                 "signature in ledger record");
        if (r.u8() != sss::signature_version)
            throw ParseError("unsupported signature version in ledger record");
        std::uint16_t n = r.u16be();
        ByteView s1 = r.raw((n + 1) / 2);
        return Bytes(s1.begin(), s1.end());
    }
};

struct BlockHeader {
    std::uint64_t index = 0;
    Hash32 prev_hash{}; // genesis: 32 zero bytes
    std::uint64_t timestamp = 0;
    Hash32 records_root{};

    Bytes encode() const {
        ByteWriter w;
        w.u64be(index);
        w.raw(ByteView(prev_hash.data(), prev_hash.size()));
        w.u64be(timestamp);
        w.raw(ByteView(records_root.data(), records_root.size()));
        return w.take();
    }

    static BlockHeader decode(ByteReader& r) {
        BlockHeader h;
        h.index = r.u64be();
        ByteView p = r.raw(32);
        std::copy(p.begin(), p.end(), h.prev_hash.begin());
        h.timestamp = r.u64be();
        ByteView m = r.raw(32);
        std::copy(m.begin(), m.end(), h.records_root.begin());
        return h;
    }

    Hash32 hash() const { return sha3_256(encode()); }
};

struct Block {
    BlockHeader header;
    std::vector<LedgerRecord> records;
};

// --- Merkle tree ---------------------------------------------------------------
// Pairwise SHA3-256 with the last leaf duplicated on odd levels. Always at
// least one hashing round, so a single record roots as H(leaf | leaf).

struct MerklePath {
    std::uint32_t leaf_index = 0;
    std::vector<Hash32> siblings;
};

namespace detail {

inline Hash32 node_hash(const Hash32& left, const Hash32& right) {
    return sha3_256_concat(ByteView(left.data(), left.size()),
                           ByteView(right.data(), right.size()));
}

inline Hash32 merkle_root(std::vector<Hash32> level) {
    do {
        if (level.size() % 2 != 0) level.push_back(level.back());
        std::vector<Hash32> next(level.size() / 2);
        for (std::size_t i = 0; i < next.size(); ++i)
            next[i] = node_hash(level[2 * i], level[2 * i + 1]);
        level = std::move(next);
    } while (level.size() > 1);
    return level[0];
}

inline MerklePath merkle_path(std::vector<Hash32> level, std::uint32_t index) {
    MerklePath path;
    path.leaf_index = index;
    std::uint32_t pos = index;
    do {
        if (level.size() % 2 != 0) level.push_back(level.back());
        path.siblings.push_back(level[pos ^ 1]);
        std::vector<Hash32> next(level.size() / 2);
        for (std::size_t i = 0; i < next.size(); ++i)
            next[i] = node_hash(level[2 * i], level[2 * i + 1]);
        level = std::move(next);
        pos >>= 1;
    } while (level.size() > 1);
    return path;
}

inline Hash32 merkle_path_root(const Hash32& leaf, const MerklePath& path) {
    Hash32 cur = leaf;
    std::uint32_t pos = path.leaf_index;
    for (const Hash32& sibling : path.siblings) {
        cur = pos & 1 ? node_hash(sibling, cur) : node_hash(cur, sibling);
        pos >>= 1;
    }
    return cur;
}

} // namespace detail

// --- challenge / proof -----------------------------------------------------------

struct RecordId {
    std::uint64_t block = 0;
    std::uint32_t position = 0;

    friend auto operator<=>(const RecordId&, const RecordId&) = default;
};

struct Challenge {
    std::array<std::uint8_t, 16> nonce{};
    std::vector<RecordId> ids;
};

struct AuditProof {
    struct Item {
        Bytes record_bytes;
        std::uint64_t block_index = 0;
        MerklePath path;
    };
    std::vector<Item> items;
    std::vector<BlockHeader> headers; // genesis through tip
    Hash32 binding{};                 // SHA3-256(nonce | challenged record hashes)
};

inline Challenge make_challenge(std::vector<RecordId> ids, Rng& rng) {
    Challenge ch;
    rng.fill(ch.nonce.data(), ch.nonce.size());
    ch.ids = std::move(ids);
    return ch;
}

namespace detail {

inline Hash32 binding_digest(const std::array<std::uint8_t, 16>& nonce,
                             const std::vector<Hash32>& record_hashes) {
    ByteWriter w;
    w.raw(ByteView(nonce.data(), nonce.size()));
    for (const Hash32& h : record_hashes) w.raw(ByteView(h.data(), h.size()));
    return sha3_256(w.bytes());
}

} // namespace detail

struct CheckResult {
    bool ok = false;
    std::string reason;

    static CheckResult accept() { return {true, {}}; }
    static CheckResult reject(std::string why) { return {false, std::move(why)}; }
};

struct ChainCheck {
    bool ok = false;
    std::string reason;
    std::uint64_t block = 0; // first offending block when rejecting
};

// --- the chain -------------------------------------------------------------------

class Chain {
public:
    // Queue a record for the next sealed block. Sanitize events must
    // reference the σ1 of a sign event already on (or queued for) the chain.
    RecordId append(LedgerRecord record) {
        Bytes s1 = record.sigma1_bytes();
        if (record.kind == RecordKind::sanitize_event) {
            if (!sign_sigma1s_.count(s1))
                throw DanglingSanitizeEvent("sanitize event references an unknown fixed-part signature");
        } else {
            sign_sigma1s_.insert(std::move(s1));
        }
        pending_.push_back(std::move(record));
        return RecordId{blocks_.size(), static_cast<std::uint32_t>(pending_.size() - 1)};
    }

    const Block& seal(std::uint64_t timestamp) {
        if (pending_.empty()) throw NothingPending("no records are pending");
        Block block;
        block.header.index = blocks_.size();
        block.header.prev_hash = blocks_.empty() ? Hash32{} : blocks_.back().header.hash();
        block.header.timestamp = timestamp;
        block.header.records_root = detail::merkle_root(leaf_hashes(pending_));
        block.records = std::move(pending_);
        pending_.clear();
        blocks_.push_back(std::move(block));
        return blocks_.back();
    }

    // Internal consistency: roots recompute, links hold, genesis anchors at
    // zero, indices are consecutive.
    ChainCheck verify() const {
        for (std::size_t i = 0; i < blocks_.size(); ++i) {
            const Block& b = blocks_[i];
            if (b.header.index != i)
                return {false, "block index is not consecutive", i};
            Hash32 expected_prev = i == 0 ? Hash32{} : blocks_[i - 1].header.hash();
            if (b.header.prev_hash != expected_prev)
                return {false, i == 0 ? "genesis prev_hash is not zero" : "broken chain link", i};
            if (b.records.empty())
                return {false, "block contains no records", i};
            if (b.header.records_root != detail::merkle_root(leaf_hashes(b.records)))
                return {false, "records root does not recompute", i};
        }
        return {true, {}, 0};
    }

    // Anchored variant: additionally pins the tip header to a known hash,
    // covering fields of the tip (its timestamp) that no later block links.
    ChainCheck verify(const Hash32& expected_tip) const {
        ChainCheck internal = verify();
        if (!internal.ok) return internal;
        if (blocks_.empty()) return {false, "chain has no blocks", 0};
        if (blocks_.back().header.hash() != expected_tip)
            return {false, "tip hash does not match the expected anchor", blocks_.size() - 1};
        return {true, {}, 0};
    }

    AuditProof build_proof(const Challenge& challenge) const {
        AuditProof proof;
        std::vector<Hash32> record_hashes;
        for (const RecordId& id : challenge.ids) {
            if (id.block >= blocks_.size())
                throw UnknownRecord("challenged block is not sealed");
            const Block& block = blocks_[id.block];
            if (id.position >= block.records.size())
                throw UnknownRecord("challenged record position does not exist");
            const LedgerRecord& rec = block.records[id.position];
            AuditProof::Item item;
            item.record_bytes = rec.encode();
            item.block_index = id.block;
            item.path = detail::merkle_path(leaf_hashes(block.records), id.position);
            record_hashes.push_back(rec.leaf_hash());
            proof.items.push_back(std::move(item));
        }
        for (const Block& b : blocks_) proof.headers.push_back(b.header);
        proof.binding = detail::binding_digest(challenge.nonce, record_hashes);
        return proof;
    }

    std::size_t block_count() const { return blocks_.size(); }
    std::size_t pending_count() const { return pending_.size(); }
    const Block& block(std::size_t i) const { return blocks_.at(i); }
    const std::vector<LedgerRecord>& pending() const { return pending_; }

    Hash32 tip_hash() const {
        if (blocks_.empty()) throw UnknownRecord("chain has no sealed blocks");
        return blocks_.back().header.hash();
    }

    // Full modification history of one signed message: every record, sealed
    // or pending, carrying the given σ1.
    std::vector<RecordId> find_by_sigma1(ByteView sigma1) const {
        std::vector<RecordId> out;
        Bytes key(sigma1.begin(), sigma1.end());
        for (std::size_t b = 0; b < blocks_.size(); ++b)
            for (std::size_t p = 0; p < blocks_[b].records.size(); ++p)
                if (blocks_[b].records[p].sigma1_bytes() == key)
                    out.push_back(RecordId{b, static_cast<std::uint32_t>(p)});
        for (std::size_t p = 0; p < pending_.size(); ++p)
            if (pending_[p].sigma1_bytes() == key)
                out.push_back(RecordId{blocks_.size(), static_cast<std::uint32_t>(p)});
        return out;
    }

    // --- persistence: directory of block_<index>.bin files -------------------
    // Block file: header | record count u32be | records. Pending records live
    // in pending.bin (count-prefixed) so append and seal can run as separate
    // processes.

    void save(const std::filesystem::path& dir) const {
        namespace fs = std::filesystem;
        fs::create_directories(dir);
        for (const Block& b : blocks_) {
            fs::path file = dir / ("block_" + std::to_string(b.header.index) + ".bin");
            if (fs::exists(file)) continue; // sealed blocks are immutable
            write_file(file, encode_block(b));
        }
        ByteWriter w;
        w.u32be(static_cast<std::uint32_t>(pending_.size()));
        for (const LedgerRecord& r : pending_) w.raw(r.encode());
        write_file(dir / "pending.bin", w.bytes());
    }

    static Chain load(const std::filesystem::path& dir) {
        namespace fs = std::filesystem;
        if (!fs::is_directory(dir)) throw ParseError("ledger directory does not exist: " + dir.string());
        Chain chain;
        for (std::uint64_t i = 0;; ++i) {
            fs::path file = dir / ("block_" + std::to_string(i) + ".bin");
            if (!fs::exists(file)) break;
            Block b = decode_block(read_file(file));
            for (const LedgerRecord& r : b.records)
                if (r.kind == RecordKind::sign_event) chain.sign_sigma1s_.insert(r.sigma1_bytes());
            chain.blocks_.push_back(std::move(b));
        }
        fs::path pending_file = dir / "pending.bin";
        if (fs::exists(pending_file)) {
            Bytes data = read_file(pending_file);
            ByteReader r(data);
            std::uint32_t count = r.u32be();
            for (std::uint32_t i = 0; i < count; ++i) {
                LedgerRecord rec = LedgerRecord::decode(r);
                if (rec.kind == RecordKind::sign_event)
                    chain.sign_sigma1s_.insert(rec.sigma1_bytes());
                chain.pending_.push_back(std::move(rec));
            }
            r.finish("pending records file");
        }
        return chain;
    }

    static Bytes encode_block(const Block& b) {
        ByteWriter w;
        w.raw(b.header.encode());
        w.u32be(static_cast<std::uint32_t>(b.records.size()));
        for (const LedgerRecord& r : b.records) w.raw(r.encode());
        return w.take();
    }

    static Block decode_block(ByteView bytes) {
        ByteReader r(bytes);
        Block b;
        b.header = BlockHeader::decode(r);
        std::uint32_t count = r.u32be();
        for (std::uint32_t i = 0; i < count; ++i) b.records.push_back(LedgerRecord::decode(r));
        r.finish("block file");
        return b;
    }

private:
    static std::vector<Hash32> leaf_hashes(const std::vector<LedgerRecord>& records) {
        std::vector<Hash32> leaves;
        leaves.reserve(records.size());
        for (const LedgerRecord& r : records) leaves.push_back(r.leaf_hash());
        return leaves;
    }

    static void write_file(const std::filesystem::path& path, const Bytes& data) {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw ParseError("cannot write " + path.string());
        out.write(reinterpret_cast<const char*>(data.data()),
                  static_cast<std::streamsize>(data.size()));
    }

    static Bytes read_file(const std::filesystem::path& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw ParseError("cannot read " + path.string());
        return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }

    std::vector<Block> blocks_;
    std::vector<LedgerRecord> pending_;
    std::set<Bytes> sign_sigma1s_;
};

// Verify an auditing proof against a challenge and a trusted tip hash. The
// headers must chain from a zero-anchored genesis to the tip, every record
// must root into its block, and the binding digest ties the response to this
// challenge's nonce.
inline CheckResult check_proof(const AuditProof& proof, const Challenge& challenge,
                               const Hash32& tip_hash) {
    if (proof.headers.empty()) return CheckResult::reject("proof contains no headers");
    if (proof.headers.front().prev_hash != Hash32{})
        return CheckResult::reject("genesis prev_hash is not zero");
    for (std::size_t i = 0; i < proof.headers.size(); ++i) {
        if (proof.headers[i].index != i)
            return CheckResult::reject("header indices are not consecutive");
        if (i > 0 && proof.headers[i].prev_hash != proof.headers[i - 1].hash())
            return CheckResult::reject("broken header link at block " + std::to_string(i));
    }
    if (proof.headers.back().hash() != tip_hash)
        return CheckResult::reject("header chain does not end at the trusted tip");

    if (proof.items.size() != challenge.ids.size())
        return CheckResult::reject("proof does not cover the challenged records");
    std::vector<Hash32> record_hashes;
    for (std::size_t i = 0; i < proof.items.size(); ++i) {
        const AuditProof::Item& item = proof.items[i];
        const RecordId& id = challenge.ids[i];
        if (item.block_index != id.block || item.path.leaf_index != id.position)
            return CheckResult::reject("proof item does not match the challenged record id");
        if (item.block_index >= proof.headers.size())
            return CheckResult::reject("proof item references a block beyond the tip");
        Hash32 leaf = sha3_256(item.record_bytes);
        if (detail::merkle_path_root(leaf, item.path) !=
            proof.headers[item.block_index].records_root)
            return CheckResult::reject("Merkle path does not root into block " +
                                       std::to_string(item.block_index));
        record_hashes.push_back(leaf);
    }
    if (proof.binding != detail::binding_digest(challenge.nonce, record_hashes))
        return CheckResult::reject("binding digest does not match the challenge nonce");
    return CheckResult::accept();
}

// --- challenge / proof files -------------------------------------------------

inline constexpr std::array<std::uint8_t, 4> challenge_magic = {'M', 'C', 'H', 'L'};
inline constexpr std::array<std::uint8_t, 4> proof_magic = {'M', 'P', 'R', 'F'};

inline Bytes encode_challenge(const Challenge& ch) {
    ByteWriter w;
    w.raw(ByteView(challenge_magic.data(), challenge_magic.size()));
    w.u8(0x01);
    w.raw(ByteView(ch.nonce.data(), ch.nonce.size()));
    w.u32be(static_cast<std::uint32_t>(ch.ids.size()));
    for (const RecordId& id : ch.ids) {
        w.u64be(id.block);
        w.u32be(id.position);
    }
    return w.take();
}

inline Challenge decode_challenge(ByteView bytes) {
    ByteReader r(bytes);
    r.expect(ByteView(challenge_magic.data(), challenge_magic.size()), "challenge file");
    if (r.u8() != 0x01) throw ParseError("unsupported challenge file version");
    Challenge ch;
    ByteView nonce = r.raw(ch.nonce.size());
    std::copy(nonce.begin(), nonce.end(), ch.nonce.begin());
    std::uint32_t count = r.u32be();
    for (std::uint32_t i = 0; i < count; ++i) {
        RecordId id;
        id.block = r.u64be();
        id.position = r.u32be();
        ch.ids.push_back(id);
    }
    r.finish("challenge file");
    return ch;
}

inline Bytes encode_proof(const AuditProof& proof) {
    ByteWriter w;
    w.raw(ByteView(proof_magic.data(), proof_magic.size()));
    w.u8(0x01);
    w.u32be(static_cast<std::uint32_t>(proof.items.size()));
    for (const auto& item : proof.items) {
        w.sized(item.record_bytes);
        w.u64be(item.block_index);
        w.u32be(item.path.leaf_index);
        w.u32be(static_cast<std::uint32_t>(item.path.siblings.size()));
        for (const Hash32& h : item.path.siblings) w.raw(ByteView(h.data(), h.size()));
    }
    w.u32be(static_cast<std::uint32_t>(proof.headers.size()));
    for (const BlockHeader& h : proof.headers) w.raw(h.encode());
    w.raw(ByteView(proof.binding.data(), proof.binding.size()));
    return w.take();
}

inline AuditProof decode_proof(ByteView bytes) {
    ByteReader r(bytes);
    r.expect(ByteView(proof_magic.data(), proof_magic.size()), "proof file");
    if (r.u8() != 0x01) throw ParseError("unsupported proof file version");
    AuditProof proof;
    std::uint32_t items = r.u32be();
    for (std::uint32_t i = 0; i < items; ++i) {
        AuditProof::Item item;
        item.record_bytes = r.sized();
        item.block_index = r.u64be();
        item.path.leaf_index = r.u32be();
        std::uint32_t siblings = r.u32be();
        for (std::uint32_t s = 0; s < siblings; ++s) {
            Hash32 h;
            ByteView v = r.raw(h.size());
            std::copy(v.begin(), v.end(), h.begin());
            item.path.siblings.push_back(h);
        }
        proof.items.push_back(std::move(item));
    }
    std::uint32_t headers = r.u32be();
    for (std::uint32_t i = 0; i < headers; ++i) proof.headers.push_back(BlockHeader::decode(r));
    ByteView binding = r.raw(proof.binding.size());
    std::copy(binding.begin(), binding.end(), proof.binding.begin());
    r.finish("proof file");
    return proof;
}

} // namespace mulsan::ledger
