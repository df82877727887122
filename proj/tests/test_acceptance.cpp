#include <catch2/catch_amalgamated.hpp>

#include <chrono>
#include <iostream>

#include <mulsan/mulsan.hpp>

// Acceptance checks. Each criterion prints exactly one PASS/FAIL line; the
// numeric ones are exact, the game-style ones run at the toy parameter set.

using namespace mulsan;

namespace {

void report(int criterion, const std::string& what, bool ok) {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << "criterion " << criterion << ": " << what
              << std::endl;
    REQUIRE(ok);
}

Rng seeded(std::string_view label) { return Rng::from_seed(as_bytes(label)); }

struct ToyParties {
    uov::KeyPair signer;
    uov::KeyPair sanitizer;
};

ToyParties& toy_parties() {
    static ToyParties p = [] {
        Rng rng = seeded("acceptance-keys");
        return ToyParties{sss::kgen_sign(uov::Params::toy(), rng),
                          sss::kgen_sanit(uov::Params::toy(), rng)};
    }();
    return p;
}

uov::KeyPair& uov128_keypair() {
    static uov::KeyPair kp = [] {
        Rng rng = seeded("acceptance-128");
        return uov::keygen(uov::Params::uov128(), uov::Party::signer, rng);
    }();
    return kp;
}

} // namespace

TEST_CASE("criterion 1: public key size at (n=160, m=64)") {
    auto start = std::chrono::steady_clock::now();
    uov::KeyPair& kp = uov128_keypair();
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::size_t elements = 0;
    for (const auto& poly : kp.pub.map.polys)
        elements += poly.quad.size() + poly.lin.size() + 1;
    std::size_t payload_bytes = kp.pub.encoded.size() - 11; // header is 11 bytes

    bool ok = elements == 834624 && payload_bytes == 417312 && secs < 60.0;
    report(1,
           "uov-128 public map has m(n+2)(n+1)/2 = 834624 elements, 417312 payload bytes "
           "(keygen " +
               std::to_string(secs) + " s)",
           ok);
}

TEST_CASE("criterion 2: signature size at uov-128") {
    uov::KeyPair& signer = uov128_keypair();
    Rng rng = seeded("acceptance-sig-128");
    uov::KeyPair sanitizer = uov::keygen(uov::Params::uov128(), uov::Party::sanitizer, rng);

    sss::BlockMessage msg;
    msg.blocks = {to_bytes("fixed part"), to_bytes("open part")};
    sss::AdmissibleDescription ad;
    ad.block_count = 2;
    ad.modifiable = {false, true};
    sss::SanSignature sig = sss::sign(msg, signer, sanitizer.pub, ad, rng);

    std::size_t elements = sig.sigma1.size() + sig.sigma2.size();
    std::size_t sigma_payload = pack_elements(sig.sigma1).size() + pack_elements(sig.sigma2).size();
    bool ok = elements == 320 && sigma_payload == 160 &&
              sss::verify(msg, sig, signer.pub, sanitizer.pub);
    report(2, "signature holds 2n = 320 field elements = 160 payload bytes", ok);
}

TEST_CASE("criterion 3: central map and secret key element counts") {
    bool ok = true;
    std::string detail;
    for (uov::Params params : {uov::Params::toy(), uov::Params::uov128()}) {
        const std::size_t n = params.n, m = params.m, v = params.vinegar();
        const std::size_t expected_c = m * (v * (v + 1) / 2 + v * m + n + 1);

        Rng rng = seeded("acceptance-counts");
        uov::CentralMap f = uov::CentralMap::random(params, rng);
        std::size_t actual_c = 0;
        for (const auto& eq : f.eqs) actual_c += eq.vv.size() + eq.vo.size() + eq.lin.size() + 1;

        ok = ok && actual_c == expected_c && f.coefficient_count() == expected_c;

        const std::size_t paper_sk = n * n + m * m + expected_c;
        const std::size_t stored_sk = paper_sk + n + m; // plus the two affine offsets
        detail += " [n=" + std::to_string(n) + ": C=" + std::to_string(actual_c) +
                  ", sk formula n^2+m^2+C=" + std::to_string(paper_sk) + ", stored " +
                  std::to_string(stored_sk) + "]";

        // The serialized secret key carries exactly the stored count.
        if (params.n == uov::Params::toy().n) {
            uov::KeyPair kp = uov::keygen(params, uov::Party::signer, rng);
            Bytes sk = uov::encode_secret_key(kp.secret, kp.party);
            ok = ok && sk.size() == 11 + (stored_sk + 1) / 2;
        }
    }
    report(3, "central map count C = m(v(v+1)/2 + vm + n + 1) at both presets;" + detail, ok);
}

TEST_CASE("criterion 4: correctness over random entry, policy, redaction triples") {
    ToyParties& p = toy_parties();
    Rng rng = seeded("acceptance-correctness");
    const audit::LogSchema schema{{"timestamp", "actor", "action", "resource", "detail"}};

    int failures = 0;
    for (int trial = 0; trial < 100; ++trial) {
        audit::AuditEntry entry;
        for (const auto& name : schema.fields)
            entry.fields.emplace_back(name, to_hex(rng.bytes(4)));

        // Random nonempty redactable set, random subset actually redacted.
        audit::RedactionPolicy policy;
        std::vector<std::string> to_redact;
        for (const auto& name : schema.fields)
            if (rng.byte() % 2 == 0) policy.redactable.push_back(name);
        if (policy.redactable.empty()) policy.redactable.push_back("detail");
        for (const auto& name : policy.redactable)
            if (rng.byte() % 2 == 0) to_redact.push_back(name);

        sss::AdmissibleDescription ad = audit::policy_to_ad(policy, schema);
        sss::BlockMessage msg = audit::canonicalize_entry(schema, entry);
        sss::SanSignature sig = sss::sign(msg, p.signer, p.sanitizer.pub, ad, rng);
        if (!sss::verify(msg, sig, p.signer.pub, p.sanitizer.pub)) ++failures;
        if (sss::judge(msg, sig, p.signer.pub, p.sanitizer.pub) != sss::Origin::signer)
            ++failures;

        auto [sanitized, new_sig] = sss::sanitize(msg, audit::redact(schema, to_redact), sig,
                                                  p.signer.pub, p.sanitizer, rng);
        if (!sss::verify(sanitized, new_sig, p.signer.pub, p.sanitizer.pub)) ++failures;
        if (sss::judge(sanitized, new_sig, p.signer.pub, p.sanitizer.pub) !=
            sss::Origin::sanitizer)
            ++failures;
    }
    report(4, "sign/sanitize/verify/judge over 100 random triples, 0 failures", failures == 0);
}

TEST_CASE("criterion 5: immutability mechanics") {
    ToyParties& p = toy_parties();
    Rng rng = seeded("acceptance-immutability");
    sss::BlockMessage msg;
    msg.blocks = {to_bytes("one"), to_bytes("two"), to_bytes("three")};

    bool ok = true;
    for (unsigned mask = 0; mask < 8; ++mask) {
        sss::AdmissibleDescription ad;
        ad.block_count = 3;
        ad.modifiable = {(mask & 1) != 0, (mask & 2) != 0, (mask & 4) != 0};
        sss::SanSignature sig = sss::sign(msg, p.signer, p.sanitizer.pub, ad, rng);
        for (std::size_t i = 0; i < 3; ++i) {
            if (ad.modifiable[i]) continue;
            sss::BlockMessage mutated = msg;
            mutated.blocks[i] = to_bytes("forged");
            if (sss::verify(mutated, sig, p.signer.pub, p.sanitizer.pub)) ok = false;

            // Even the honest sanitizer key cannot rescue a fixed-block change.
            sss::SanSignature resigned = sig;
            resigned.sigma2 = uov::sign(p.sanitizer.secret,
                                        sss::full_digest(mutated, p.sanitizer.pub, p.signer.pub),
                                        rng);
            if (sss::verify(mutated, resigned, p.signer.pub, p.sanitizer.pub)) ok = false;
        }
    }
    report(5, "every fixed-block mutation rejected, with and without sanitizer re-signing", ok);
}

TEST_CASE("criterion 6: accountability mechanics") {
    ToyParties& p = toy_parties();
    Rng rng = seeded("acceptance-accountability");
    int crossovers = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        sss::BlockMessage msg;
        msg.blocks = {rng.bytes(8), rng.bytes(8)};
        sss::AdmissibleDescription ad;
        ad.block_count = 2;
        ad.modifiable = {false, true};

        sss::SanSignature sig = sss::sign(msg, p.signer, p.sanitizer.pub, ad, rng);
        if (sss::judge(msg, sig, p.signer.pub, p.sanitizer.pub) != sss::Origin::signer)
            ++crossovers;

        sss::Modification mod;
        mod.replacements[1] = rng.bytes(8);
        auto [sanitized, new_sig] = sss::sanitize(msg, mod, sig, p.signer.pub, p.sanitizer, rng);
        if (sss::judge(sanitized, new_sig, p.signer.pub, p.sanitizer.pub) !=
            sss::Origin::sanitizer)
            ++crossovers;
    }
    report(6, "1000 trials: fresh pairs never judge San, sanitized pairs never judge Sig",
           crossovers == 0);
}

TEST_CASE("criterion 7: hash framing separates tags and part boundaries") {
    Vec tag0 = hash_to_field(0x00, {as_bytes("ab"), as_bytes("c")}, 8);
    Vec tag1 = hash_to_field(0x01, {as_bytes("ab"), as_bytes("c")}, 8);
    Vec moved = hash_to_field(0x01, {as_bytes("a"), as_bytes("bc")}, 8);
    bool ok = tag0 != tag1 && tag1 != moved && tag0 != moved;
    report(7, "tag 0/1 and [\"ab\",\"c\"] vs [\"a\",\"bc\"] all produce distinct digests", ok);
}

TEST_CASE("criterion 8: MQ-core oracle equivalence") {
    bool ok = true;

    // fe_mul against an independent polynomial-reduction product.
    auto oracle_mul = [](std::uint8_t a, std::uint8_t b) {
        unsigned prod = 0;
        for (int i = 0; i < 4; ++i)
            if (a >> i & 1)
                for (int j = 0; j < 4; ++j)
                    if (b >> j & 1) prod ^= 1u << (i + j);
        for (int deg = 6; deg >= 4; --deg)
            if (prod >> deg & 1) prod ^= 0x13u << (deg - 4);
        return static_cast<std::uint8_t>(prod);
    };
    for (int a = 0; a < 16 && ok; ++a)
        for (int b = 0; b < 16 && ok; ++b)
            ok = (Gf16(std::uint8_t(a)) * Gf16(std::uint8_t(b))).value() ==
                 oracle_mul(std::uint8_t(a), std::uint8_t(b));

    // solve_linear against exhaustive search over F_16^2.
    Rng rng = seeded("acceptance-mq");
    int checked = 0;
    while (checked < 50 && ok) {
        Matrix a = Matrix::random(2, 2, rng);
        Vec b = rng.elements(2);
        int solutions = 0;
        Vec found(2);
        for (int x0 = 0; x0 < 16; ++x0)
            for (int x1 = 0; x1 < 16; ++x1) {
                Vec x = {Gf16(std::uint8_t(x0)), Gf16(std::uint8_t(x1))};
                if (a.mul(x) == b) {
                    ++solutions;
                    found = x;
                }
            }
        auto solved = solve_linear(a, b);
        if (solutions == 1) {
            ok = solved.has_value() && *solved == found;
            ++checked;
        } else {
            ok = !solved.has_value();
        }
    }

    // central_invert postcondition for 1000 random targets.
    uov::CentralMap f = uov::CentralMap::random(uov::Params::toy(), rng);
    for (int trial = 0; trial < 1000 && ok; ++trial) {
        Vec target = rng.elements(8);
        Vec x = uov::central_invert(f, target, rng, 256);
        ok = f.eval(x) == target;
    }

    report(8, "fe_mul (256 pairs), solve_linear (50 systems), central_invert (1000 targets)", ok);
}

TEST_CASE("criterion 9: ledger tamper evidence and auditing proofs") {
    ToyParties& p = toy_parties();
    Rng rng = seeded("acceptance-ledger");

    auto make_record = [&](std::string_view fixed, std::string_view open) {
        sss::BlockMessage msg;
        msg.blocks = {to_bytes(fixed), to_bytes(open)};
        sss::AdmissibleDescription ad;
        ad.block_count = 2;
        ad.modifiable = {false, true};
        sss::SanSignature sig = sss::sign(msg, p.signer, p.sanitizer.pub, ad, rng);
        ledger::LedgerRecord rec;
        rec.kind = ledger::RecordKind::sign_event;
        rec.message_digest = sha3_256(sss::encode_message(msg));
        rec.signature_bytes = sss::encode_signature(sig);
        rec.signer_pk_digest = p.signer.pub.digest();
        rec.sanitizer_pk_digest = p.sanitizer.pub.digest();
        rec.timestamp = 7;
        return rec;
    };

    ledger::Chain chain;
    chain.append(make_record("entry-a", "1"));
    chain.append(make_record("entry-b", "2"));
    chain.seal(100);
    chain.append(make_record("entry-c", "3"));
    chain.seal(200);
    Hash32 tip = chain.tip_hash();

    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / ("mulsan_acc_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    chain.save(dir);

    // Exhaustive single-byte sweep over both sealed block files: the
    // anchored check must reject every mutation.
    bool sweep_ok = true;
    for (int b = 0; b < 2 && sweep_ok; ++b) {
        fs::path file = dir / ("block_" + std::to_string(b) + ".bin");
        std::ifstream in(file, std::ios::binary);
        Bytes original((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        in.close();
        for (std::size_t pos = 0; pos < original.size() && sweep_ok; ++pos) {
            Bytes mutated = original;
            mutated[pos] ^= 0xFF;
            {
                std::ofstream out(file, std::ios::binary | std::ios::trunc);
                out.write(reinterpret_cast<const char*>(mutated.data()),
                          std::streamsize(mutated.size()));
            }
            bool detected = false;
            try {
                detected = !ledger::Chain::load(dir).verify(tip).ok;
            } catch (const ParseError&) {
                detected = true;
            }
            sweep_ok = detected;
        }
        std::ofstream restore(file, std::ios::binary | std::ios::trunc);
        restore.write(reinterpret_cast<const char*>(original.data()),
                      std::streamsize(original.size()));
    }
    fs::remove_all(dir);

    // Honest proof accepts; a replayed nonce and a substituted record reject.
    ledger::Challenge ch =
        ledger::make_challenge({ledger::RecordId{0, 0}, ledger::RecordId{1, 0}}, rng);
    ledger::AuditProof proof = chain.build_proof(ch);
    bool honest_ok = ledger::check_proof(proof, ch, tip).ok;

    ledger::Challenge replay = ledger::make_challenge(ch.ids, rng);
    bool replay_rejected = !ledger::check_proof(proof, replay, tip).ok;

    ledger::AuditProof substituted = proof;
    substituted.items[0].record_bytes = make_record("entry-x", "9").encode();
    bool substitution_rejected = !ledger::check_proof(substituted, ch, tip).ok;

    report(9,
           "single-byte chain mutations all detected; honest proof accepts; replay and "
           "substitution reject",
           sweep_ok && honest_ok && replay_rejected && substitution_rejected);
}

TEST_CASE("criterion 10: fixed-seed key generation and signing are byte-reproducible") {
    auto run_once = [] {
        Rng rng = seeded("acceptance-determinism");
        uov::KeyPair signer = sss::kgen_sign(uov::Params::toy(), rng);
        uov::KeyPair sanitizer = sss::kgen_sanit(uov::Params::toy(), rng);
        sss::BlockMessage msg;
        msg.blocks = {to_bytes("det-fixed"), to_bytes("det-open")};
        sss::AdmissibleDescription ad;
        ad.block_count = 2;
        ad.modifiable = {false, true};
        sss::SanSignature sig = sss::sign(msg, signer, sanitizer.pub, ad, rng);
        ByteWriter w;
        w.raw(signer.pub.encoded);
        w.raw(uov::encode_secret_key(signer.secret, signer.party));
        w.raw(sanitizer.pub.encoded);
        w.raw(sss::encode_signature(sig));
        return w.take();
    };
    Bytes first = run_once();
    Bytes second = run_once();
    report(10, "two runs from the same seed produce byte-identical keys and signatures",
           first == second);
}
