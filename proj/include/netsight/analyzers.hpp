// Copyright (c) 2026 Netsight Contributors
// SPDX-License-Identifier: Apache-2.0
//
// Per-device classifiers. Each one is a pure function of decoded events,
// knowledge tables, and declared thresholds, emitting attribute claims for
// the composition stage.
#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "netsight/claims.hpp"
#include "netsight/events.hpp"
#include "netsight/flow.hpp"
#include "netsight/knowledge.hpp"

namespace netsight {

// Thresholds and evidence confidences, config-overridable.
struct AnalyzerParams {
    // IoT via DNS concentration
    int iot_min_queries = 5;
    double iot_dominance = 0.8;
    int iot_max_orgs = 3;
    double iot_conf_floor = 0.5;
    double iot_conf_ceil = 0.99;
    // manufacturer evidence confidences
    double conf_oui = 0.9;
    double conf_dhcp_vendor = 0.7;
    double conf_tls_issuer = 0.6;
    double conf_dns_org = 0.5;
    // other engines
    double conf_ua = 0.8;
    double conf_tls_fp = 0.7;
    double conf_behavior = 0.6;
    // behavior windows
    int64_t behavior_window_us = 60'000'000;
    double beacon_periodicity = 0.7;
    double idle_mean_bytes = 1024.0;
    double stream_mean_bytes = 100.0 * 1024.0;
    double stream_max_cv = 0.5;
    // occupancy
    int64_t occupancy_window_us = 900'000'000;
};

// --- DNS usage ---

struct DnsUsageSummary {
    uint64_t total_queries = 0;
    uint64_t owned_queries = 0;  // queries under a domain with a known owner
    std::set<std::string> domains;
    std::map<std::string, uint64_t> org_histogram;  // owned-domain queries per org
    double unresolved_fraction = 0.0;
    std::map<std::string, std::set<Ipv4Address>> name_to_ips;  // from A answers
    Timestamp last_ts;

    int distinct_domains() const { return static_cast<int>(domains.size()); }
    int distinct_orgs() const { return static_cast<int>(org_histogram.size()); }
    // (org, share of owned-domain queries) for the most queried org
    std::optional<std::pair<std::string, double>> dominant_org() const;
};

DnsUsageSummary summarize_dns(const std::vector<DnsEvent>& events,
                              const DomainOwnershipTable& owners);

// --- classifiers ---

// Claims is_iot when the device made enough owned-domain queries; stays
// silent otherwise.
std::optional<AttributeClaim> classify_iot(const std::string& device_key,
                                           const DnsUsageSummary& summary,
                                           const AnalyzerParams& params = {});

// Up to four independent manufacturer claims: hardware prefix, DHCP vendor
// class, TLS certificate issuer, and DNS traffic concentration.
std::vector<AttributeClaim> infer_manufacturer(
    const std::string& device_key, const std::optional<MacAddress>& mac,
    const OuiTable& oui, const std::vector<DhcpEvent>& dhcp,
    const std::vector<TlsEvent>& tls, const DnsUsageSummary& dns,
    const VendorNormTable& vendor_norm, const AnalyzerParams& params = {});

// Certificate issuer "Acme Devices CA" -> organization token "Acme Devices".
std::string issuer_org_token(const std::string& issuer_cn);

// One claim per attribute of the first matching rule, per distinct
// user-agent string; exact duplicate claims collapse.
std::vector<AttributeClaim> mine_user_agent(const std::string& device_key,
                                            const std::vector<HttpEvent>& http,
                                            const UaRuleSet& rules,
                                            const AnalyzerParams& params = {});

// Canonical fingerprint of an ordered cipher-suite list: lowercase 4-digit
// hex ids, hyphen-joined.
std::string cipher_fingerprint(const std::vector<uint16_t>& suites);

struct TlsFingerprintResult {
    std::vector<AttributeClaim> claims;
    std::vector<std::string> unknown_fingerprints;  // distinct, first-seen order
};

TlsFingerprintResult fingerprint_tls(const std::string& device_key,
                                     const std::vector<TlsEvent>& tls,
                                     const FingerprintTable& table,
                                     const AnalyzerParams& params = {});

// --- behavior ---

enum class BehaviorMode { Idle, PeriodicBeacon, Interactive, Streaming };
const char* to_string(BehaviorMode m);

struct BehaviorWindow {
    uint64_t bytes = 0;
    uint64_t pkts = 0;
    uint64_t flows = 0;
};

struct BehaviorProfile {
    int64_t window_us = 60'000'000;
    Timestamp anchor;  // first originated packet; windows tile from here
    std::vector<BehaviorWindow> series;
    double periodicity_score = 0.0;
    double burstiness = 0.0;
    BehaviorMode mode = BehaviorMode::Idle;
    double mean_bytes = 0.0;
};

// Normalized autocorrelation of `series` at lag k, negative values clamped
// to zero; exposed for oracle checks.
double autocorrelation(const std::vector<double>& series, size_t lag);

// Windows anchored at the device's first packet. Returns nothing when the
// observation spans fewer than 3 windows.
std::optional<BehaviorProfile> characterize_behavior(
    const std::vector<std::pair<Timestamp, uint32_t>>& packets,  // (ts, bytes)
    const std::vector<Timestamp>& flow_starts,
    const AnalyzerParams& params = {});

std::optional<AttributeClaim> behavior_claim(const std::string& device_key,
                                             const BehaviorProfile& profile,
                                             const AnalyzerParams& params = {});

// --- occupancy ---

struct OccupancyEstimate {
    Timestamp start;
    Timestamp end;
    std::set<std::string> present_persons;
    int unattributed_devices = 0;

    int count() const { return static_cast<int>(present_persons.size()); }
};

// Tiling windows from the global first packet. A person is present in a
// window when any device they own originated a packet in it; active devices
// with no owner are tallied as unattributed.
std::vector<OccupancyEstimate> estimate_occupancy(
    const std::map<std::string, std::vector<Timestamp>>& device_packets,
    const std::map<std::string, std::string>& device_owner,  // "" or absent = none
    const AnalyzerParams& params = {});

}  // namespace netsight
