// Copyright (c) 2026 Netsight Contributors
// SPDX-License-Identifier: Apache-2.0

#include "netsight/knowledge.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;

namespace netsight {

const std::array<const char*, 5> kCoreKnowledgeFiles = {
    "oui.csv", "ua_rules.json", "domain_owners.csv", "geo.csv", "registry.csv"};
const char* kFingerprintFile = "tls_fingerprints.csv";
const char* kVendorNormFile = "vendor_norm.csv";

VendorResult OuiTable::lookup(const MacAddress& mac) const {
    auto it = entries.find(mac.oui());
    if (it != entries.end()) return {it->second, false};
    return {std::nullopt, mac.locally_administered()};
}

std::optional<UaMatch> UaRuleSet::match(const std::string& user_agent) const {
    for (const auto& r : rules)
        if (std::regex_search(user_agent, r.re)) return UaMatch{r.attrs, r.rule_id};
    return std::nullopt;
}

std::optional<DomainOwner> DomainOwnershipTable::lookup(std::string_view fqdn) const {
    std::string q = to_lower(fqdn);
    if (!q.empty() && q.back() == '.') q.pop_back();

    const DomainOwner* best = nullptr;
    size_t best_len = 0;
    for (const auto& [suffix, owner] : entries) {
        bool hit = q == suffix ||
                   (q.size() > suffix.size() &&
                    q.compare(q.size() - suffix.size(), suffix.size(), suffix) == 0 &&
                    q[q.size() - suffix.size() - 1] == '.');
        if (hit && suffix.size() >= best_len) {
            // >= so later (lexicographically larger) equal-length suffix
            // cannot shadow an identical-length earlier one arbitrarily;
            // equal-length distinct suffixes can't both match anyway
            best = &owner;
            best_len = suffix.size();
        }
    }
    if (!best) return std::nullopt;
    return *best;
}

std::optional<std::string> GeoTable::lookup(const Ipv4Address& ip) const {
    const GeoEntry* best = nullptr;
    for (const auto& e : entries) {
        uint32_t mask = e.prefix_len == 0 ? 0 : ~uint32_t{0} << (32 - e.prefix_len);
        if ((ip.value & mask) != (e.network & mask)) continue;
        if (!best || e.prefix_len > best->prefix_len) best = &e;
    }
    if (!best) return std::nullopt;
    return best->country;
}

const RegistryEntry* DeviceRegistry::lookup(const MacAddress& mac) const {
    auto it = entries.find(mac);
    return it == entries.end() ? nullptr : &it->second;
}

std::optional<std::string> FingerprintTable::lookup(const std::string& fingerprint) const {
    auto it = entries.find(fingerprint);
    if (it == entries.end()) return std::nullopt;
    return it->second;
}

std::optional<std::string> VendorNormTable::normalize(std::string_view raw) const {
    std::string lowered = to_lower(raw);
    for (const auto& [needle, canonical] : entries)
        if (lowered.find(needle) != std::string::npos) return canonical;
    return std::nullopt;
}

int LoadReport::total_skipped() const {
    int n = 0;
    for (const auto& [file, count] : skipped) n += count;
    return n;
}

namespace {

// Split a CSV line on commas. Values in these tables never contain commas or
// quotes, so no quoting dialect is needed.
std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

bool usable_line(const std::string& line) {
    auto t = trim(line);
    return !t.empty() && t[0] != '#';
}

// Opens a knowledge file. Returns false when it does not exist; throws when
// it exists but cannot be opened.
bool open_file(const fs::path& p, std::ifstream& in) {
    if (!fs::exists(p)) return false;
    in.open(p);
    if (!in.is_open()) throw KnowledgeError("unreadable file: " + p.string());
    return true;
}

std::optional<std::array<uint8_t, 3>> parse_prefix(const std::string& text) {
    auto mac = MacAddress::parse(text + ":00:00:00");
    if (!mac) return std::nullopt;
    return mac->oui();
}

std::optional<std::pair<uint32_t, int>> parse_cidr(const std::string& text) {
    size_t slash = text.find('/');
    if (slash == std::string::npos) return std::nullopt;
    auto ip = Ipv4Address::parse(text.substr(0, slash));
    if (!ip) return std::nullopt;
    int len = 0;
    try {
        size_t used = 0;
        len = std::stoi(text.substr(slash + 1), &used);
        if (used != text.size() - slash - 1) return std::nullopt;
    } catch (...) {
        return std::nullopt;
    }
    if (len < 0 || len > 32) return std::nullopt;
    return std::make_pair(ip->value, len);
}

void load_oui(const fs::path& p, OuiTable& table, LoadReport& rep) {
    std::ifstream in;
    if (!open_file(p, in)) {
        rep.warnings.push_back("missing knowledge file: oui.csv");
        return;
    }
    std::string line;
    while (std::getline(in, line)) {
        if (!usable_line(line)) continue;
        auto f = split_csv(line);
        auto prefix = f.size() == 2 ? parse_prefix(f[0])
                                    : std::optional<std::array<uint8_t, 3>>{};
        if (!prefix || f[1].empty()) {
            ++rep.skipped["oui.csv"];
            continue;
        }
        table.entries[*prefix] = f[1];
    }
}

void load_ua_rules(const fs::path& p, UaRuleSet& set, LoadReport& rep) {
    std::ifstream in;
    if (!open_file(p, in)) {
        rep.warnings.push_back("missing knowledge file: ua_rules.json");
        return;
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception&) {
        ++rep.skipped["ua_rules.json"];
        return;
    }
    if (!doc.is_array()) {
        ++rep.skipped["ua_rules.json"];
        return;
    }
    for (const auto& item : doc) {
        UaRule rule;
        try {
            rule.rule_id = item.at("rule_id").get<std::string>();
            rule.pattern = item.at("pattern").get<std::string>();
            for (const auto& [k, v] : item.at("attrs").items())
                rule.attrs[k] = v.get<std::string>();
            rule.re = std::regex(rule.pattern);
        } catch (...) {  // missing field or invalid regular expression
            ++rep.skipped["ua_rules.json"];
            continue;
        }
        set.rules.push_back(std::move(rule));
    }
}

void load_domains(const fs::path& p, DomainOwnershipTable& table, LoadReport& rep) {
    std::ifstream in;
    if (!open_file(p, in)) {
        rep.warnings.push_back("missing knowledge file: domain_owners.csv");
        return;
    }
    std::string line;
    while (std::getline(in, line)) {
        if (!usable_line(line)) continue;
        auto f = split_csv(line);
        if ((f.size() != 2 && f.size() != 3) || f[0].empty() || f[1].empty()) {
            ++rep.skipped["domain_owners.csv"];
            continue;
        }
        std::string suffix = to_lower(f[0]);
        if (suffix.back() == '.') suffix.pop_back();
        if (suffix.empty() || suffix.front() == '.') {
            ++rep.skipped["domain_owners.csv"];
            continue;
        }
        DomainOwner owner{f[1], std::nullopt};
        if (f.size() == 3 && !f[2].empty()) owner.country = f[2];
        table.entries[suffix] = owner;
    }
}

void load_geo(const fs::path& p, GeoTable& table, LoadReport& rep) {
    std::ifstream in;
    if (!open_file(p, in)) {
        rep.warnings.push_back("missing knowledge file: geo.csv");
        return;
    }
    std::string line;
    while (std::getline(in, line)) {
        if (!usable_line(line)) continue;
        auto f = split_csv(line);
        auto cidr = f.size() == 2 ? parse_cidr(f[0])
                                  : std::optional<std::pair<uint32_t, int>>{};
        if (!cidr || f[1].size() != 2) {
            ++rep.skipped["geo.csv"];
            continue;
        }
        table.entries.push_back(GeoEntry{cidr->first, cidr->second, f[1]});
    }
}

void load_registry(const fs::path& p, DeviceRegistry& reg, LoadReport& rep) {
    std::ifstream in;
    if (!open_file(p, in)) {
        rep.warnings.push_back("missing knowledge file: registry.csv");
        return;
    }
    std::string line;
    while (std::getline(in, line)) {
        if (!usable_line(line)) continue;
        auto f = split_csv(line);
        auto mac = f.size() == 5 ? MacAddress::parse(f[0])
                                 : std::optional<MacAddress>{};
        if (!mac || (f[4] != "true" && f[4] != "false")) {
            ++rep.skipped["registry.csv"];
            continue;
        }
        reg.entries[*mac] = RegistryEntry{f[1], f[2], f[3], f[4] == "true"};
    }
}

void load_fingerprints(const fs::path& p, FingerprintTable& table, LoadReport& rep) {
    std::ifstream in;
    if (!open_file(p, in)) return;  // optional, no warning
    std::string line;
    while (std::getline(in, line)) {
        if (!usable_line(line)) continue;
        auto f = split_csv(line);
        if (f.size() != 2 || f[0].empty() || f[1].empty()) {
            ++rep.skipped[kFingerprintFile];
            continue;
        }
        table.entries[to_lower(f[0])] = f[1];
    }
}

void load_vendor_norm(const fs::path& p, VendorNormTable& table, LoadReport& rep) {
    std::ifstream in;
    if (!open_file(p, in)) return;  // optional, no warning
    std::string line;
    while (std::getline(in, line)) {
        if (!usable_line(line)) continue;
        auto f = split_csv(line);
        if (f.size() != 2 || f[0].empty() || f[1].empty()) {
            ++rep.skipped[kVendorNormFile];
            continue;
        }
        table.entries.emplace_back(to_lower(f[0]), f[1]);
    }
}

}  // namespace

KnowledgeBundle KnowledgeBundle::load_dir(const std::string& dir) {
    KnowledgeBundle b;
    fs::path root(dir);
    load_oui(root / kCoreKnowledgeFiles[0], b.oui, b.report);
    load_ua_rules(root / kCoreKnowledgeFiles[1], b.ua_rules, b.report);
    load_domains(root / kCoreKnowledgeFiles[2], b.domains, b.report);
    load_geo(root / kCoreKnowledgeFiles[3], b.geo, b.report);
    load_registry(root / kCoreKnowledgeFiles[4], b.registry, b.report);
    load_fingerprints(root / kFingerprintFile, b.tls_fingerprints, b.report);
    load_vendor_norm(root / kVendorNormFile, b.vendor_norm, b.report);
    return b;
}

}  // namespace netsight
