// Command-line front end: key generation, signing, sanitization,
// verification, judging, and the audit ledger. Binary formats live on disk,
// hex digests go to the terminal. Exit codes: 0 success, 1 verification
// reject, 2 usage or I/O error, 3 cryptographic failure.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <fcntl.h>
#include <sys/file.h>
#include <sys/stat.h>
#include <unistd.h>

#include <CLI11.hpp>

#include <mulsan/mulsan.hpp>

namespace {

using namespace mulsan;

constexpr int exit_ok = 0;
constexpr int exit_reject = 1;
constexpr int exit_usage = 2;
constexpr int exit_crypto = 3;

Bytes read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read " + path);
    return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, ByteView data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ParseError("cannot write " + path);
    out.write(reinterpret_cast<const char*>(data.data()), std::streamsize(data.size()));
    if (!out) throw ParseError("short write to " + path);
}

Rng make_rng(const std::string& seed_hex) {
    if (seed_hex.empty()) return Rng::from_entropy();
    std::cerr << "warning: --seed fixes all randomness; outputs are deterministic"
                 " (testing only)\n";
    Bytes seed = from_hex(seed_hex);
    return Rng::from_seed(seed);
}

std::uint64_t now_or(std::uint64_t override_ts) {
    if (override_ts != 0) return override_ts;
    return static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::seconds>(
            std::chrono::system_clock::now().time_since_epoch())
            .count());
}

std::vector<std::string> split_csv(const std::string& csv) {
    std::vector<std::string> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

// Entries from a JSON-lines file, already validated against the schema.
std::vector<audit::AuditEntry> load_entries(const audit::LogSchema& schema,
                                            const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read " + path);
    std::vector<audit::AuditEntry> entries;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            entries.push_back(audit::entry_from_json_line(schema, line));
        } catch (const Error& e) {
            throw ParseError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (entries.empty()) throw ParseError(path + " contains no entries");
    return entries;
}

// Signature files hold one self-delimiting record per entry, concatenated.
std::vector<sss::SanSignature> load_signatures(const std::string& path) {
    Bytes data = read_file(path);
    ByteReader r(data);
    std::vector<sss::SanSignature> sigs;
    while (!r.done()) sigs.push_back(sss::decode_signature(r));
    if (sigs.empty()) throw ParseError(path + " contains no signatures");
    return sigs;
}

audit::LogConfig load_config(const std::string& path) {
    Bytes raw = read_file(path);
    return audit::config_from_json(std::string_view(reinterpret_cast<const char*>(raw.data()),
                                                    raw.size()));
}

uov::PublicKey load_public_key(const std::string& path, uov::Party expected) {
    uov::PublicKey pk = uov::decode_public_key(read_file(path));
    if (pk.party != expected)
        throw ParseError(path + " holds a " +
                         (pk.party == uov::Party::signer ? "signer" : "sanitizer") +
                         " key, expected the other party");
    return pk;
}

std::vector<ledger::RecordId> parse_record_ids(const std::string& csv) {
    std::vector<ledger::RecordId> ids;
    for (const std::string& item : split_csv(csv)) {
        auto colon = item.find(':');
        if (colon == std::string::npos) throw ParseError("record id must look like block:position");
        try {
            ledger::RecordId id;
            id.block = std::stoull(item.substr(0, colon));
            id.position = static_cast<std::uint32_t>(std::stoul(item.substr(colon + 1)));
            ids.push_back(id);
        } catch (const std::exception&) {
            throw ParseError("invalid record id: " + item);
        }
    }
    if (ids.empty()) throw ParseError("no record ids given");
    return ids;
}

// Advisory lock on the chain directory; released on destruction.
class DirLock {
public:
    explicit DirLock(const std::string& dir) {
        std::filesystem::create_directories(dir);
        fd_ = ::open((dir + "/.lock").c_str(), O_CREAT | O_RDWR, 0644);
        if (fd_ < 0 || ::flock(fd_, LOCK_EX) != 0)
            throw ParseError("cannot lock ledger directory " + dir);
    }
    ~DirLock() {
        if (fd_ >= 0) {
            ::flock(fd_, LOCK_UN);
            ::close(fd_);
        }
    }
    DirLock(const DirLock&) = delete;
    DirLock& operator=(const DirLock&) = delete;

private:
    int fd_ = -1;
};

std::string hex32(const Hash32& h) { return to_hex(ByteView(h.data(), h.size())); }

// --- subcommand implementations ----------------------------------------------

int cmd_keygen(const std::string& role, const std::string& params_name, const std::string& out,
               const std::string& seed_hex) {
    auto params = uov::Params::preset(params_name);
    if (!params) throw ParseError("unknown parameter preset: " + params_name);
    uov::Party party;
    if (role == "signer")
        party = uov::Party::signer;
    else if (role == "sanitizer")
        party = uov::Party::sanitizer;
    else
        throw ParseError("role must be signer or sanitizer");

    Rng rng = make_rng(seed_hex);
    uov::KeyPair kp = uov::keygen(*params, party, rng);
    Bytes sk = uov::encode_secret_key(kp.secret, kp.party);
    write_file(out + ".pk", kp.pub.encoded);
    write_file(out + ".sk", sk);
    ::chmod((out + ".sk").c_str(), 0600);
    std::cout << "wrote " << out << ".pk (" << kp.pub.encoded.size()
              << " bytes, digest " << hex32(kp.pub.digest()) << ")\n";
    std::cout << "wrote " << out << ".sk (" << sk.size() << " bytes)\n";
    return exit_ok;
}

int cmd_sign(const std::string& key_path, const std::string& sanitizer_pk_path,
             const std::string& policy_path, const std::string& in_path,
             const std::string& out_path, const std::string& seed_hex) {
    uov::KeyPair signer = uov::decode_secret_key(read_file(key_path));
    if (signer.party != uov::Party::signer) throw ParseError(key_path + " is not a signer key");
    uov::PublicKey sanitizer_pk = load_public_key(sanitizer_pk_path, uov::Party::sanitizer);
    audit::LogConfig cfg = load_config(policy_path);
    sss::AdmissibleDescription ad = audit::policy_to_ad(cfg.policy, cfg.schema);
    auto entries = load_entries(cfg.schema, in_path);

    Rng rng = make_rng(seed_hex);
    ByteWriter sigs;
    for (const auto& entry : entries) {
        sss::BlockMessage msg = audit::canonicalize_entry(cfg.schema, entry);
        sss::SanSignature sig = sss::sign(msg, signer, sanitizer_pk, ad, rng);
        sigs.raw(sss::encode_signature(sig));
    }
    write_file(out_path, sigs.bytes());
    std::cout << "signed " << entries.size() << " entries -> " << out_path << "\n";
    return exit_ok;
}

int cmd_sanitize(const std::string& key_path, const std::string& signer_pk_path,
                 const std::string& policy_path, const std::string& redact_csv,
                 const std::string& replacement, const std::string& in_path,
                 const std::string& sig_path, const std::string& out_sig,
                 const std::string& out_msg, const std::string& seed_hex) {
    uov::KeyPair sanitizer = uov::decode_secret_key(read_file(key_path));
    if (sanitizer.party != uov::Party::sanitizer)
        throw ParseError(key_path + " is not a sanitizer key");
    uov::PublicKey signer_pk = load_public_key(signer_pk_path, uov::Party::signer);
    audit::LogConfig cfg = load_config(policy_path);
    auto entries = load_entries(cfg.schema, in_path);
    auto sigs = load_signatures(sig_path);
    if (entries.size() != sigs.size())
        throw CountMismatch("entry count does not match signature count");

    sss::Modification mod = audit::redact(cfg.schema, split_csv(redact_csv), replacement);

    Rng rng = make_rng(seed_hex);
    ByteWriter new_sigs;
    std::ostringstream new_lines;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        sss::BlockMessage msg = audit::canonicalize_entry(cfg.schema, entries[i]);
        auto [sanitized, new_sig] = sss::sanitize(msg, mod, sigs[i], signer_pk, sanitizer, rng);
        new_sigs.raw(sss::encode_signature(new_sig));
        new_lines << audit::entry_to_json_line(audit::entry_from_blocks(cfg.schema, sanitized))
                  << "\n";
    }
    write_file(out_sig, new_sigs.bytes());
    std::string lines = new_lines.str();
    write_file(out_msg, as_bytes(lines));
    std::cout << "sanitized " << entries.size() << " entries -> " << out_msg << ", " << out_sig
              << "\n";
    return exit_ok;
}

struct VerifyInputs {
    audit::LogConfig cfg;
    std::vector<audit::AuditEntry> entries;
    std::vector<sss::SanSignature> sigs;
    uov::PublicKey signer_pk;
    uov::PublicKey sanitizer_pk;
};

VerifyInputs load_verify_inputs(const std::string& signer_pk_path,
                                const std::string& sanitizer_pk_path,
                                const std::string& policy_path, const std::string& in_path,
                                const std::string& sig_path) {
    VerifyInputs v{load_config(policy_path),
                   {},
                   load_signatures(sig_path),
                   load_public_key(signer_pk_path, uov::Party::signer),
                   load_public_key(sanitizer_pk_path, uov::Party::sanitizer)};
    v.entries = load_entries(v.cfg.schema, in_path);
    if (v.entries.size() != v.sigs.size())
        throw CountMismatch("entry count does not match signature count");
    return v;
}

int cmd_verify(const VerifyInputs& v) {
    bool all_ok = true;
    for (std::size_t i = 0; i < v.entries.size(); ++i) {
        sss::BlockMessage msg = audit::canonicalize_entry(v.cfg.schema, v.entries[i]);
        bool ok = sss::verify(msg, v.sigs[i], v.signer_pk, v.sanitizer_pk);
        std::cout << "entry " << i << ": " << (ok ? "accept" : "reject") << "\n";
        all_ok = all_ok && ok;
    }
    return all_ok ? exit_ok : exit_reject;
}

int cmd_judge(const VerifyInputs& v) {
    for (std::size_t i = 0; i < v.entries.size(); ++i) {
        sss::BlockMessage msg = audit::canonicalize_entry(v.cfg.schema, v.entries[i]);
        sss::Origin origin = sss::judge(msg, v.sigs[i], v.signer_pk, v.sanitizer_pk);
        std::cout << "entry " << i << ": "
                  << (origin == sss::Origin::signer ? "Sig" : "San") << "\n";
    }
    return exit_ok;
}

int cmd_ledger_append(const std::string& dir, const std::string& kind,
                      const VerifyInputs& v, std::uint64_t ts) {
    ledger::RecordKind record_kind;
    if (kind == "sign")
        record_kind = ledger::RecordKind::sign_event;
    else if (kind == "sanitize")
        record_kind = ledger::RecordKind::sanitize_event;
    else
        throw ParseError("kind must be sign or sanitize");

    DirLock lock(dir);
    ledger::Chain chain = ledger::Chain::load(dir);
    std::uint64_t when = now_or(ts);
    for (std::size_t i = 0; i < v.entries.size(); ++i) {
        sss::BlockMessage msg = audit::canonicalize_entry(v.cfg.schema, v.entries[i]);
        if (!sss::verify(msg, v.sigs[i], v.signer_pk, v.sanitizer_pk)) {
            std::cerr << "entry " << i << " does not verify; nothing was appended\n";
            return exit_reject;
        }
        ledger::LedgerRecord rec;
        rec.kind = record_kind;
        rec.message_digest = sha3_256(sss::encode_message(msg));
        rec.signature_bytes = sss::encode_signature(v.sigs[i]);
        rec.signer_pk_digest = v.signer_pk.digest();
        rec.sanitizer_pk_digest = v.sanitizer_pk.digest();
        rec.timestamp = when;
        ledger::RecordId id = chain.append(std::move(rec));
        std::cout << "appended record " << id.block << ":" << id.position << "\n";
    }
    chain.save(dir);
    return exit_ok;
}

int cmd_ledger_seal(const std::string& dir, std::uint64_t ts) {
    DirLock lock(dir);
    ledger::Chain chain = ledger::Chain::load(dir);
    const ledger::Block& block = chain.seal(now_or(ts));
    chain.save(dir);
    std::cout << "sealed block " << block.header.index << " (hash "
              << hex32(block.header.hash()) << ")\n";
    return exit_ok;
}

int cmd_ledger_verify(const std::string& dir, const std::string& tip_hex) {
    DirLock lock(dir);
    ledger::Chain chain = ledger::Chain::load(dir);
    ledger::ChainCheck check;
    if (tip_hex.empty()) {
        check = chain.verify();
    } else {
        Bytes tip = from_hex(tip_hex);
        if (tip.size() != 32) throw ParseError("--tip must be 32 hex-encoded bytes");
        Hash32 anchor;
        std::copy(tip.begin(), tip.end(), anchor.begin());
        check = chain.verify(anchor);
    }
    if (!check.ok) {
        std::cout << "reject: " << check.reason << " (block " << check.block << ")\n";
        return exit_reject;
    }
    std::cout << "chain ok: " << chain.block_count() << " blocks, "
              << chain.pending_count() << " pending";
    if (chain.block_count() > 0) std::cout << ", tip " << hex32(chain.tip_hash());
    std::cout << "\n";
    return exit_ok;
}

int cmd_ledger_challenge(const std::string& ids_csv, const std::string& out,
                         const std::string& seed_hex) {
    Rng rng = make_rng(seed_hex);
    ledger::Challenge ch = ledger::make_challenge(parse_record_ids(ids_csv), rng);
    write_file(out, ledger::encode_challenge(ch));
    std::cout << "challenge over " << ch.ids.size() << " records (nonce "
              << to_hex(ByteView(ch.nonce.data(), ch.nonce.size())) << ") -> " << out << "\n";
    return exit_ok;
}

int cmd_ledger_prove(const std::string& dir, const std::string& challenge_path,
                     const std::string& out) {
    DirLock lock(dir);
    ledger::Chain chain = ledger::Chain::load(dir);
    ledger::Challenge ch = ledger::decode_challenge(read_file(challenge_path));
    ledger::AuditProof proof = chain.build_proof(ch);
    write_file(out, ledger::encode_proof(proof));
    std::cout << "proof over " << proof.items.size() << " records -> " << out << "\n";
    return exit_ok;
}

int cmd_ledger_check(const std::string& proof_path, const std::string& challenge_path,
                     const std::string& tip_hex) {
    ledger::AuditProof proof = ledger::decode_proof(read_file(proof_path));
    ledger::Challenge ch = ledger::decode_challenge(read_file(challenge_path));
    Bytes tip = from_hex(tip_hex);
    if (tip.size() != 32) throw ParseError("--tip must be 32 hex-encoded bytes");
    Hash32 anchor;
    std::copy(tip.begin(), tip.end(), anchor.begin());
    ledger::CheckResult res = ledger::check_proof(proof, ch, anchor);
    if (!res.ok) {
        std::cout << "reject: " << res.reason << "\n";
        return exit_reject;
    }
    std::cout << "proof ok: " << proof.items.size() << " records verified against tip\n";
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mul-SAN sanitizable signatures for audit logs"};
    app.require_subcommand(1);

    std::function<int()> action;

    // keygen
    {
        auto* sub = app.add_subcommand("keygen", "generate a key pair");
        auto role = std::make_shared<std::string>();
        auto params = std::make_shared<std::string>("uov-toy");
        auto out = std::make_shared<std::string>();
        auto seed = std::make_shared<std::string>();
        sub->add_option("--role", *role, "signer or sanitizer")->required();
        sub->add_option("--params", *params, "uov-toy or uov-128");
        sub->add_option("--out", *out, "output path base (.pk/.sk appended)")->required();
        sub->add_option("--seed", *seed, "hex seed (testing only)");
        sub->callback([=, &action] {
            action = [=] { return cmd_keygen(*role, *params, *out, *seed); };
        });
    }

    // sign
    {
        auto* sub = app.add_subcommand("sign", "sign a JSON-lines log");
        auto key = std::make_shared<std::string>();
        auto sanit_pk = std::make_shared<std::string>();
        auto policy = std::make_shared<std::string>();
        auto in = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>();
        auto seed = std::make_shared<std::string>();
        sub->add_option("--key", *key, "signer secret key")->required();
        sub->add_option("--sanitizer-pk", *sanit_pk, "sanitizer public key")->required();
        sub->add_option("--policy", *policy, "schema/policy config")->required();
        sub->add_option("--in", *in, "JSON-lines log file")->required();
        sub->add_option("--out", *out, "signature output file")->required();
        sub->add_option("--seed", *seed, "hex seed (testing only)");
        sub->callback([=, &action] {
            action = [=] { return cmd_sign(*key, *sanit_pk, *policy, *in, *out, *seed); };
        });
    }

    // sanitize
    {
        auto* sub = app.add_subcommand("sanitize", "redact admissible fields and re-sign");
        auto key = std::make_shared<std::string>();
        auto signer_pk = std::make_shared<std::string>();
        auto policy = std::make_shared<std::string>();
        auto redact = std::make_shared<std::string>();
        auto replacement = std::make_shared<std::string>(std::string(audit::default_redaction_token));
        auto in = std::make_shared<std::string>();
        auto sig = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>();
        auto out_msg = std::make_shared<std::string>();
        auto seed = std::make_shared<std::string>();
        sub->add_option("--key", *key, "sanitizer secret key")->required();
        sub->add_option("--signer-pk", *signer_pk, "signer public key")->required();
        sub->add_option("--policy", *policy, "schema/policy config")->required();
        sub->add_option("--redact", *redact, "comma-separated field names")->required();
        sub->add_option("--replacement", *replacement, "replacement value");
        sub->add_option("--in", *in, "JSON-lines log file")->required();
        sub->add_option("--sig", *sig, "signature file to sanitize")->required();
        sub->add_option("--out", *out, "sanitized signature output")->required();
        sub->add_option("--out-msg", *out_msg, "sanitized JSON-lines output")->required();
        sub->add_option("--seed", *seed, "hex seed (testing only)");
        sub->callback([=, &action] {
            action = [=] {
                return cmd_sanitize(*key, *signer_pk, *policy, *redact, *replacement, *in, *sig,
                                    *out, *out_msg, *seed);
            };
        });
    }

    // verify / judge share inputs
    for (const char* name : {"verify", "judge"}) {
        auto* sub = app.add_subcommand(
            name, std::string(name) == "verify" ? "verify signatures over a log"
                                                : "attribute signatures to signer or sanitizer");
        auto signer_pk = std::make_shared<std::string>();
        auto sanit_pk = std::make_shared<std::string>();
        auto policy = std::make_shared<std::string>();
        auto in = std::make_shared<std::string>();
        auto sig = std::make_shared<std::string>();
        bool is_verify = std::string(name) == "verify";
        sub->add_option("--signer-pk", *signer_pk, "signer public key")->required();
        sub->add_option("--sanitizer-pk", *sanit_pk, "sanitizer public key")->required();
        sub->add_option("--policy", *policy, "schema/policy config")->required();
        sub->add_option("--in", *in, "JSON-lines log file")->required();
        sub->add_option("--sig", *sig, "signature file")->required();
        sub->callback([=, &action] {
            action = [=] {
                VerifyInputs v = load_verify_inputs(*signer_pk, *sanit_pk, *policy, *in, *sig);
                return is_verify ? cmd_verify(v) : cmd_judge(v);
            };
        });
    }

    // ledger
    {
        auto* led = app.add_subcommand("ledger", "tamper-evident audit chain");
        led->require_subcommand(1);

        {
            auto* sub = led->add_subcommand("init", "create an empty chain directory");
            auto dir = std::make_shared<std::string>();
            sub->add_option("--dir", *dir, "chain directory")->required();
            sub->callback([=, &action] {
                action = [=] {
                    DirLock lock(*dir);
                    if (std::filesystem::exists(*dir + "/block_0.bin") ||
                        std::filesystem::exists(*dir + "/pending.bin"))
                        throw ParseError(*dir + " already holds a ledger");
                    ledger::Chain().save(*dir);
                    std::cout << "initialized ledger at " << *dir << "\n";
                    return exit_ok;
                };
            });
        }
        {
            auto* sub = led->add_subcommand("append", "record signature events");
            auto dir = std::make_shared<std::string>();
            auto kind = std::make_shared<std::string>();
            auto signer_pk = std::make_shared<std::string>();
            auto sanit_pk = std::make_shared<std::string>();
            auto policy = std::make_shared<std::string>();
            auto in = std::make_shared<std::string>();
            auto sig = std::make_shared<std::string>();
            auto ts = std::make_shared<std::uint64_t>(0);
            sub->add_option("--dir", *dir, "chain directory")->required();
            sub->add_option("--kind", *kind, "sign or sanitize")->required();
            sub->add_option("--signer-pk", *signer_pk)->required();
            sub->add_option("--sanitizer-pk", *sanit_pk)->required();
            sub->add_option("--policy", *policy)->required();
            sub->add_option("--in", *in, "JSON-lines log file")->required();
            sub->add_option("--sig", *sig, "signature file")->required();
            sub->add_option("--timestamp", *ts, "fixed timestamp (testing)");
            sub->callback([=, &action] {
                action = [=] {
                    VerifyInputs v = load_verify_inputs(*signer_pk, *sanit_pk, *policy, *in, *sig);
                    return cmd_ledger_append(*dir, *kind, v, *ts);
                };
            });
        }
        {
            auto* sub = led->add_subcommand("seal", "seal pending records into a block");
            auto dir = std::make_shared<std::string>();
            auto ts = std::make_shared<std::uint64_t>(0);
            sub->add_option("--dir", *dir, "chain directory")->required();
            sub->add_option("--timestamp", *ts, "fixed timestamp (testing)");
            sub->callback([=, &action] {
                action = [=] { return cmd_ledger_seal(*dir, *ts); };
            });
        }
        {
            auto* sub = led->add_subcommand("verify", "check chain integrity");
            auto dir = std::make_shared<std::string>();
            auto tip = std::make_shared<std::string>();
            sub->add_option("--dir", *dir, "chain directory")->required();
            sub->add_option("--tip", *tip, "expected tip hash (hex)");
            sub->callback([=, &action] {
                action = [=] { return cmd_ledger_verify(*dir, *tip); };
            });
        }
        {
            auto* sub = led->add_subcommand("challenge", "create a receiver challenge");
            auto ids = std::make_shared<std::string>();
            auto out = std::make_shared<std::string>();
            auto seed = std::make_shared<std::string>();
            sub->add_option("--ids", *ids, "record ids, block:position[,...]")->required();
            sub->add_option("--out", *out, "challenge output file")->required();
            sub->add_option("--seed", *seed, "hex seed (testing only)");
            sub->callback([=, &action] {
                action = [=] { return cmd_ledger_challenge(*ids, *out, *seed); };
            });
        }
        {
            auto* sub = led->add_subcommand("prove", "answer a challenge with an auditing proof");
            auto dir = std::make_shared<std::string>();
            auto challenge = std::make_shared<std::string>();
            auto out = std::make_shared<std::string>();
            sub->add_option("--dir", *dir, "chain directory")->required();
            sub->add_option("--challenge", *challenge, "challenge file")->required();
            sub->add_option("--out", *out, "proof output file")->required();
            sub->callback([=, &action] {
                action = [=] { return cmd_ledger_prove(*dir, *challenge, *out); };
            });
        }
        {
            auto* sub = led->add_subcommand("check", "verify an auditing proof");
            auto proof = std::make_shared<std::string>();
            auto challenge = std::make_shared<std::string>();
            auto tip = std::make_shared<std::string>();
            sub->add_option("--proof", *proof, "proof file")->required();
            sub->add_option("--challenge", *challenge, "challenge file")->required();
            sub->add_option("--tip", *tip, "trusted tip hash (hex)")->required();
            sub->callback([=, &action] {
                action = [=] { return cmd_ledger_check(*proof, *challenge, *tip); };
            });
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        return action();
    } catch (const CryptoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_crypto;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (...) {
        std::cerr << "error: unknown failure\n";
        return exit_usage;
    }
}
