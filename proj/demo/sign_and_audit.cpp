// Round trip through the whole stack: generate keys, sign an audit entry,
// redact one field, verify and judge both versions, and anchor both events
// on the ledger with a challenge/proof exchange.

#include <iostream>

#include <mulsan/mulsan.hpp>

using namespace mulsan;

int main() {
    Rng rng = Rng::from_entropy();

    uov::Params params = uov::Params::toy();
    uov::KeyPair hospital = sss::kgen_sign(params, rng);
    uov::KeyPair compliance = sss::kgen_sanit(params, rng);

    audit::LogSchema schema{{"timestamp", "actor", "action", "resource", "detail"}};
    audit::RedactionPolicy policy{{"actor", "detail"}};
    sss::AdmissibleDescription ad = audit::policy_to_ad(policy, schema);

    audit::AuditEntry entry;
    entry.fields = {{"timestamp", "2026-08-01T10:22:31Z"},
                    {"actor", "dr-alice"},
                    {"action", "read"},
                    {"resource", "/charts/77"},
                    {"detail", "reviewed medication history"}};

    sss::BlockMessage msg = audit::canonicalize_entry(schema, entry);
    sss::SanSignature sig = sss::sign(msg, hospital, compliance.pub, ad, rng);
    std::cout << "fresh entry verifies: " << sss::verify(msg, sig, hospital.pub, compliance.pub)
              << ", origin: "
              << (sss::judge(msg, sig, hospital.pub, compliance.pub) == sss::Origin::signer
                      ? "Sig"
                      : "San")
              << "\n";

    auto [redacted, redacted_sig] = sss::sanitize(
        msg, audit::redact(schema, {"detail"}), sig, hospital.pub, compliance, rng);
    audit::AuditEntry shared = audit::entry_from_blocks(schema, redacted);
    std::cout << "shared entry: " << audit::entry_to_json_line(shared) << "\n";
    std::cout << "redacted entry verifies: "
              << sss::verify(redacted, redacted_sig, hospital.pub, compliance.pub)
              << ", origin: "
              << (sss::judge(redacted, redacted_sig, hospital.pub, compliance.pub) ==
                          sss::Origin::signer
                      ? "Sig"
                      : "San")
              << "\n";

    // Both events go on the chain; the receiver later audits them.
    ledger::Chain chain;
    auto record = [&](const sss::BlockMessage& m, const sss::SanSignature& s,
                      ledger::RecordKind kind) {
        ledger::LedgerRecord rec;
        rec.kind = kind;
        rec.message_digest = sha3_256(sss::encode_message(m));
        rec.signature_bytes = sss::encode_signature(s);
        rec.signer_pk_digest = hospital.pub.digest();
        rec.sanitizer_pk_digest = compliance.pub.digest();
        rec.timestamp = 1754042551;
        return chain.append(rec);
    };
    ledger::RecordId signed_id = record(msg, sig, ledger::RecordKind::sign_event);
    ledger::RecordId redacted_id = record(redacted, redacted_sig, ledger::RecordKind::sanitize_event);
    chain.seal(1754042600);

    Hash32 tip = chain.tip_hash();
    ledger::Challenge challenge = ledger::make_challenge({signed_id, redacted_id}, rng);
    ledger::AuditProof proof = chain.build_proof(challenge);
    std::cout << "auditing proof verifies against tip "
              << to_hex(ByteView(tip.data(), 8)).substr(0, 16) << "...: "
              << ledger::check_proof(proof, challenge, tip).ok << "\n";

    std::cout << "modification history of the signed entry: "
              << chain.find_by_sigma1(
                         ledger::LedgerRecord{ledger::RecordKind::sign_event,
                                              {},
                                              sss::encode_signature(sig),
                                              {},
                                              {},
                                              0}
                             .sigma1_bytes())
                     .size()
              << " records\n";
    return 0;
}
