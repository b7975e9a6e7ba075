// Copyright (c) 2026 Netsight Contributors
// SPDX-License-Identifier: Apache-2.0
//
// Offline knowledge tables: vendor prefixes, user-agent rules, domain
// ownership, IP geography, and the device registry, plus the analyzer rule
// files (cipher fingerprints, vendor-class normalization). All tables are
// immutable after load and safe for concurrent reads.
#pragma once

#include <array>
#include <map>
#include <optional>
#include <regex>
#include <stdexcept>
#include <string>
#include <vector>

#include "netsight/common.hpp"

namespace netsight {

class KnowledgeError : public std::runtime_error {
  public:
    explicit KnowledgeError(const std::string& msg) : std::runtime_error(msg) {}
};

struct VendorResult {
    std::optional<std::string> vendor;
    bool local_admin = false;  // set when the miss is a locally administered MAC
};

struct OuiTable {
    std::map<std::array<uint8_t, 3>, std::string> entries;

    // Exact 24-bit prefix match. Registered prefixes win even for locally
    // administered addresses (synthetic fixtures register 02:xx prefixes).
    VendorResult lookup(const MacAddress& mac) const;
};

struct UaRule {
    std::string rule_id;
    std::string pattern;
    std::regex re;
    std::map<std::string, std::string> attrs;
};

struct UaMatch {
    std::map<std::string, std::string> attrs;
    std::string rule_id;
};

struct UaRuleSet {
    std::vector<UaRule> rules;  // file order == significance order

    std::optional<UaMatch> match(const std::string& user_agent) const;
};

struct DomainOwner {
    std::string org;
    std::optional<std::string> country;

    bool operator==(const DomainOwner&) const = default;
};

struct DomainOwnershipTable {
    std::map<std::string, DomainOwner> entries;  // suffix (lowercase) -> owner

    // Longest-suffix match on whole labels; case-insensitive, ignores a
    // trailing dot on the query.
    std::optional<DomainOwner> lookup(std::string_view fqdn) const;
};

struct GeoEntry {
    uint32_t network = 0;
    int prefix_len = 0;
    std::string country;
};

struct GeoTable {
    std::vector<GeoEntry> entries;

    std::optional<std::string> lookup(const Ipv4Address& ip) const;  // longest prefix
};

struct RegistryEntry {
    std::string owner;
    std::string device_id;
    std::string device_class;
    bool authorized = false;

    bool operator==(const RegistryEntry&) const = default;
};

struct DeviceRegistry {
    std::map<MacAddress, RegistryEntry> entries;

    const RegistryEntry* lookup(const MacAddress& mac) const;
};

struct FingerprintTable {
    std::map<std::string, std::string> entries;  // fingerprint -> stack name

    std::optional<std::string> lookup(const std::string& fingerprint) const;
};

struct VendorNormTable {
    // substring (lowercase) -> canonical vendor, in file order
    std::vector<std::pair<std::string, std::string>> entries;

    std::optional<std::string> normalize(std::string_view raw_vendor_class) const;
};

struct LoadReport {
    std::vector<std::string> warnings;        // missing core files
    std::map<std::string, int> skipped;       // malformed lines / rules, per file

    int total_skipped() const;
};

// The canonical file names inside a knowledge directory. The first five are
// warned about when absent; the rule files are optional extras.
extern const std::array<const char*, 5> kCoreKnowledgeFiles;
extern const char* kFingerprintFile;
extern const char* kVendorNormFile;

struct KnowledgeBundle {
    OuiTable oui;
    UaRuleSet ua_rules;
    DomainOwnershipTable domains;
    GeoTable geo;
    DeviceRegistry registry;
    FingerprintTable tls_fingerprints;
    VendorNormTable vendor_norm;
    LoadReport report;

    // Missing files leave empty tables and a warning (core files only);
    // malformed lines are skipped and counted. Throws KnowledgeError only
    // when a present file cannot be read.
    static KnowledgeBundle load_dir(const std::string& dir);
};

}  // namespace netsight
