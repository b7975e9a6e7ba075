// Copyright (c) 2026 Netsight Contributors
// SPDX-License-Identifier: Apache-2.0
//
// Declarative policy rules evaluated over profiles, flows, and decoded
// events. Violations are deduplicated per (rule, device) with occurrence
// counts and the first offending timestamp.
#pragma once

#include <iosfwd>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "netsight/decode.hpp"
#include "netsight/identity.hpp"
#include "netsight/knowledge.hpp"
#include "netsight/profile.hpp"

namespace netsight {

enum class PolicyKind {
    RequireRegistered,
    RequireEncrypted,
    ForbidDeviceClass,
    ForbidDestGeo,
    ForbidDomainSuffix,
};

const char* to_string(PolicyKind k);

struct PolicyRule {
    std::string rule_id;
    PolicyKind kind = PolicyKind::RequireRegistered;
    std::string device_class;                      // ForbidDeviceClass
    std::set<std::string> countries;               // ForbidDestGeo
    std::vector<std::string> suffixes;             // ForbidDomainSuffix
    std::set<uint16_t> cleartext_ports{80, 8080};  // RequireEncrypted
};

enum class PolicyErrorKind { Parse, DuplicateRuleId };

class PolicyError : public std::runtime_error {
  public:
    PolicyError(PolicyErrorKind kind, const std::string& msg)
        : std::runtime_error(msg), kind_(kind) {}
    PolicyErrorKind kind() const { return kind_; }

  private:
    PolicyErrorKind kind_;
};

std::vector<PolicyRule> parse_policies(const nlohmann::json& doc);
std::vector<PolicyRule> load_policies(std::istream& in);
nlohmann::json policies_to_json(const std::vector<PolicyRule>& rules);

struct Violation {
    std::string rule_id;
    std::string device_key;
    Timestamp ts;          // first offending timestamp
    std::string evidence;  // summary of the first offending observation
    uint64_t count = 1;

    bool operator==(const Violation&) const = default;
};

// Device attribution follows the identity resolver at each event's
// timestamp, so epoch-isolated devices are charged separately.
std::vector<Violation> evaluate_policies(const std::vector<PolicyRule>& rules,
                                         const ProfileSet& profiles,
                                         const DecodeOutput& events,
                                         const IdentityIndex& identities,
                                         const KnowledgeBundle& knowledge);

// NDJSON, one object per violation, sorted by (rule_id, device_key).
std::string render_violations_ndjson(const std::vector<Violation>& violations);
std::string render_violations_text(const std::vector<Violation>& violations);

}  // namespace netsight
