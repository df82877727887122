#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>

#include <json.hpp>

#include "sanitizable.hpp"

// Mapping between structured audit-log entries and the block-message model:
// one block per schema field, redaction policies become admissible
// descriptions, and redactions become modifications.

namespace mulsan::audit {

// Field names in their fixed schema order. Blocks are emitted in this order
// regardless of input order, so block indices are stable.
struct LogSchema {
    std::vector<std::string> fields;

    std::optional<std::size_t> index_of(std::string_view name) const {
        auto it = std::find(fields.begin(), fields.end(), name);
        if (it == fields.end()) return std::nullopt;
        return static_cast<std::size_t>(it - fields.begin());
    }
};

struct RedactionPolicy {
    std::vector<std::string> redactable;
};

struct LogConfig {
    LogSchema schema;
    RedactionPolicy policy;
};

// An entry's (name, value) pairs; validated against the schema when
// canonicalized.
struct AuditEntry {
    std::vector<std::pair<std::string, std::string>> fields;

    friend bool operator==(const AuditEntry&, const AuditEntry&) = default;
};

inline constexpr std::string_view default_redaction_token = "[REDACTED]";

// One block per field, `name=value`, in schema order. Rejects unknown,
// duplicate, and missing fields.
inline sss::BlockMessage canonicalize_entry(const LogSchema& schema, const AuditEntry& entry) {
    std::vector<const std::string*> values(schema.fields.size(), nullptr);
    for (const auto& [name, value] : entry.fields) {
        auto idx = schema.index_of(name);
        if (!idx) throw SchemaViolation("unknown field: " + name);
        if (values[*idx]) throw SchemaViolation("duplicate field: " + name);
        values[*idx] = &value;
    }
    for (std::size_t i = 0; i < schema.fields.size(); ++i)
        if (!values[i]) throw SchemaViolation("missing field: " + schema.fields[i]);

    sss::BlockMessage msg;
    msg.blocks.reserve(schema.fields.size());
    for (std::size_t i = 0; i < schema.fields.size(); ++i) {
        Bytes block = to_bytes(schema.fields[i]);
        block.push_back('=');
        block.insert(block.end(), values[i]->begin(), values[i]->end());
        msg.blocks.push_back(std::move(block));
    }
    return msg;
}

// Inverse of canonicalize_entry on schema-valid block messages.
inline AuditEntry entry_from_blocks(const LogSchema& schema, const sss::BlockMessage& msg) {
    if (msg.blocks.size() != schema.fields.size())
        throw SchemaViolation("block count does not match the schema");
    AuditEntry entry;
    for (std::size_t i = 0; i < schema.fields.size(); ++i) {
        const std::string& name = schema.fields[i];
        const Bytes& block = msg.blocks[i];
        if (block.size() < name.size() + 1 ||
            !std::equal(name.begin(), name.end(), block.begin()) || block[name.size()] != '=')
            throw SchemaViolation("block " + std::to_string(i) + " does not start with " + name + "=");
        entry.fields.emplace_back(name,
                                  std::string(block.begin() + name.size() + 1, block.end()));
    }
    return entry;
}

inline sss::AdmissibleDescription policy_to_ad(const RedactionPolicy& policy,
                                               const LogSchema& schema) {
    sss::AdmissibleDescription ad;
    ad.block_count = static_cast<std::uint32_t>(schema.fields.size());
    ad.modifiable.assign(schema.fields.size(), false);
    for (const std::string& name : policy.redactable) {
        auto idx = schema.index_of(name);
        if (!idx) throw UnknownField("redactable field not in schema: " + name);
        ad.modifiable[*idx] = true;
    }
    return ad;
}

// Replace each named field's block with `name=<replacement>`. The visible
// tombstone lets auditors see that a segment was removed.
inline sss::Modification redact(const LogSchema& schema, const std::vector<std::string>& names,
                                std::string_view replacement = default_redaction_token) {
    sss::Modification mod;
    for (const std::string& name : names) {
        auto idx = schema.index_of(name);
        if (!idx) throw UnknownField("field not in schema: " + name);
        Bytes block = to_bytes(name);
        block.push_back('=');
        block.insert(block.end(), replacement.begin(), replacement.end());
        mod.replacements[static_cast<std::uint32_t>(*idx)] = std::move(block);
    }
    return mod;
}

// --- JSON interfaces ----------------------------------------------------------
//
// Config file: {"fields": [...names in order...], "redactable": [...names...]}.
// Entries: JSON lines, one object per entry, keys = schema names, string
// values only.

inline LogConfig config_from_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid config JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("fields") || !doc["fields"].is_array())
        throw ParseError("config must be an object with a \"fields\" array");
    LogConfig cfg;
    for (const auto& f : doc["fields"]) {
        if (!f.is_string()) throw ParseError("schema field names must be strings");
        cfg.schema.fields.push_back(f.get<std::string>());
    }
    if (cfg.schema.fields.empty()) throw ParseError("schema must declare at least one field");
    std::set<std::string> seen(cfg.schema.fields.begin(), cfg.schema.fields.end());
    if (seen.size() != cfg.schema.fields.size()) throw ParseError("schema fields must be unique");
    if (doc.contains("redactable")) {
        if (!doc["redactable"].is_array()) throw ParseError("\"redactable\" must be an array");
        for (const auto& f : doc["redactable"]) {
            if (!f.is_string()) throw ParseError("redactable field names must be strings");
            if (!seen.count(f.get<std::string>()))
                throw UnknownField("redactable field not in schema: " + f.get<std::string>());
            cfg.policy.redactable.push_back(f.get<std::string>());
        }
    }
    return cfg;
}

inline AuditEntry entry_from_json_line(const LogSchema& schema, std::string_view line) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid entry JSON: ") + e.what());
    }
    if (!doc.is_object()) throw SchemaViolation("entry line must be a JSON object");
    AuditEntry entry;
    for (const auto& [key, value] : doc.items()) {
        if (!value.is_string())
            throw SchemaViolation("field " + key + " must have a string value");
        entry.fields.emplace_back(key, value.get<std::string>());
    }
    // Validate and normalize to schema order by round-tripping the blocks.
    return entry_from_blocks(schema, canonicalize_entry(schema, entry));
}

inline std::string entry_to_json_line(const AuditEntry& entry) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::object();
    for (const auto& [name, value] : entry.fields) doc[name] = value;
    return doc.dump();
}

} // namespace mulsan::audit
