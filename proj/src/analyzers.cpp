// Copyright (c) 2026 Netsight Contributors
// SPDX-License-Identifier: Apache-2.0
#include "netsight/analyzers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace netsight {

namespace {

double clamp01(double v, double lo, double hi) {
    return std::max(lo, std::min(hi, v));
}

}  // namespace

std::optional<std::pair<std::string, double>> DnsUsageSummary::dominant_org()
    const {
    if (owned_queries == 0) return std::nullopt;
    // map order breaks count ties toward the lexicographically smaller org
    const std::pair<const std::string, uint64_t>* best = nullptr;
    for (const auto& e : org_histogram)
        if (!best || e.second > best->second) best = &e;
    return std::make_pair(best->first,
                          static_cast<double>(best->second) /
                              static_cast<double>(owned_queries));
}

DnsUsageSummary summarize_dns(const std::vector<DnsEvent>& events,
                              const DomainOwnershipTable& owners) {
    DnsUsageSummary s;
    bool any = false;
    for (const auto& ev : events) {
        if (!any || ev.hdr.ts > s.last_ts) s.last_ts = ev.hdr.ts;
        any = true;
        if (ev.is_response) {
            for (const auto& a : ev.answers) s.name_to_ips[a.name].insert(a.addr);
            continue;
        }
        s.total_queries++;
        s.domains.insert(ev.query_name);
        if (auto own = owners.lookup(ev.query_name)) {
            s.owned_queries++;
            s.org_histogram[own->org]++;
        }
    }
    if (s.total_queries > 0)
        s.unresolved_fraction =
            static_cast<double>(s.total_queries - s.owned_queries) /
            static_cast<double>(s.total_queries);
    return s;
}

std::optional<AttributeClaim> classify_iot(const std::string& device_key,
                                           const DnsUsageSummary& summary,
                                           const AnalyzerParams& params) {
    if (summary.owned_queries <
        static_cast<uint64_t>(std::max(0, params.iot_min_queries)))
        return std::nullopt;
    auto dom = summary.dominant_org();
    double d = dom ? dom->second : 0.0;
    bool verdict = d >= params.iot_dominance &&
                   summary.distinct_orgs() <= params.iot_max_orgs;
    double conf = clamp01(verdict ? d : 1.0 - d, params.iot_conf_floor,
                          params.iot_conf_ceil);
    return AttributeClaim{device_key, "is_iot", verdict ? "true" : "false",
                          conf, "iot_dns", summary.last_ts};
}

std::string issuer_org_token(const std::string& issuer_cn) {
    // tokenize on whitespace, drop trailing PKI role words
    std::vector<std::string> tokens;
    std::string cur;
    for (char c : issuer_cn) {
        if (c == ' ' || c == '\t') {
            if (!cur.empty()) tokens.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) tokens.push_back(cur);
    while (!tokens.empty()) {
        std::string low = to_lower(tokens.back());
        if (low == "ca" || low == "root" || low == "authority" ||
            low == "certification") {
            tokens.pop_back();
        } else {
            break;
        }
    }
    std::string out;
    for (const auto& t : tokens) {
        if (!out.empty()) out.push_back(' ');
        out += t;
    }
    return out;
}

std::vector<AttributeClaim> infer_manufacturer(
    const std::string& device_key, const std::optional<MacAddress>& mac,
    const OuiTable& oui, const std::vector<DhcpEvent>& dhcp,
    const std::vector<TlsEvent>& tls, const DnsUsageSummary& dns,
    const VendorNormTable& vendor_norm, const AnalyzerParams& params) {
    std::vector<AttributeClaim> claims;
    auto add = [&](const std::string& value, double conf,
                   const std::string& source, Timestamp ts) {
        if (value.empty()) return;
        for (const auto& c : claims)
            if (c.engine_id == source && c.value == value) return;
        claims.push_back(AttributeClaim{device_key, "manufacturer", value, conf,
                                        source, ts});
    };
    if (mac) {
        VendorResult vr = oui.lookup(*mac);
        if (vr.vendor) add(*vr.vendor, params.conf_oui, "manufacturer.oui", {});
    }
    for (const auto& ev : dhcp) {
        if (!ev.vendor_class) continue;
        std::string raw = trim(*ev.vendor_class);
        if (raw.empty()) continue;
        std::string value = raw;
        if (auto canon = vendor_norm.normalize(raw)) value = *canon;
        add(value, params.conf_dhcp_vendor, "manufacturer.dhcp", ev.hdr.ts);
    }
    for (const auto& ev : tls) {
        if (!ev.issuer_cn) continue;
        add(issuer_org_token(*ev.issuer_cn), params.conf_tls_issuer,
            "manufacturer.tls", ev.hdr.ts);
    }
    if (auto dom = dns.dominant_org(); dom && dom->second >= params.iot_dominance)
        add(dom->first, params.conf_dns_org, "manufacturer.dns", dns.last_ts);
    return claims;
}

std::vector<AttributeClaim> mine_user_agent(const std::string& device_key,
                                            const std::vector<HttpEvent>& http,
                                            const UaRuleSet& rules,
                                            const AnalyzerParams& params) {
    std::vector<AttributeClaim> claims;
    std::set<std::string> seen_uas;
    for (const auto& ev : http) {
        if (!ev.user_agent) continue;
        if (!seen_uas.insert(*ev.user_agent).second) continue;
        auto m = rules.match(*ev.user_agent);
        if (!m) continue;
        for (const auto& [attr, value] : m->attrs) {
            if (!is_known_attribute(attr)) continue;
            bool dup = false;
            for (const auto& c : claims)
                if (c.attribute == attr && c.value == value) dup = true;
            if (dup) continue;
            claims.push_back(AttributeClaim{device_key, attr, value,
                                            params.conf_ua, "ua_miner",
                                            ev.hdr.ts});
        }
    }
    return claims;
}

std::string cipher_fingerprint(const std::vector<uint16_t>& suites) {
    std::string out;
    char buf[8];
    for (uint16_t s : suites) {
        if (!out.empty()) out.push_back('-');
        std::snprintf(buf, sizeof(buf), "%04x", s);
        out += buf;
    }
    return out;
}

TlsFingerprintResult fingerprint_tls(const std::string& device_key,
                                     const std::vector<TlsEvent>& tls,
                                     const FingerprintTable& table,
                                     const AnalyzerParams& params) {
    TlsFingerprintResult result;
    std::set<std::string> seen_fps;
    for (const auto& ev : tls) {
        if (ev.stage != TlsStage::ClientHello || !ev.cipher_suites) continue;
        std::string fp = cipher_fingerprint(*ev.cipher_suites);
        if (fp.empty() || !seen_fps.insert(fp).second) continue;
        if (auto name = table.lookup(fp)) {
            bool dup = false;
            for (const auto& c : result.claims)
                if (c.value == *name) dup = true;
            if (!dup)
                result.claims.push_back(AttributeClaim{device_key, "stack",
                                                       *name, params.conf_tls_fp,
                                                       "tls_fp", ev.hdr.ts});
        } else {
            result.unknown_fingerprints.push_back(fp);
        }
    }
    return result;
}

const char* to_string(BehaviorMode m) {
    switch (m) {
        case BehaviorMode::Idle: return "idle";
        case BehaviorMode::PeriodicBeacon: return "periodic_beacon";
        case BehaviorMode::Interactive: return "interactive";
        case BehaviorMode::Streaming: return "streaming";
    }
    return "idle";
}

double autocorrelation(const std::vector<double>& series, size_t lag) {
    size_t n = series.size();
    if (n == 0 || lag >= n) return 0.0;
    double mean = 0.0;
    for (double v : series) mean += v;
    mean /= static_cast<double>(n);
    double denom = 0.0;
    for (double v : series) denom += (v - mean) * (v - mean);
    if (denom == 0.0) return mean > 0.0 ? 1.0 : 0.0;
    double num = 0.0;
    for (size_t i = 0; i + lag < n; i++)
        num += (series[i] - mean) * (series[i + lag] - mean);
    double r = num / denom;
    return r < 0.0 ? 0.0 : r;
}

std::optional<BehaviorProfile> characterize_behavior(
    const std::vector<std::pair<Timestamp, uint32_t>>& packets,
    const std::vector<Timestamp>& flow_starts, const AnalyzerParams& params) {
    if (packets.empty() || params.behavior_window_us <= 0) return std::nullopt;
    Timestamp first = packets[0].first;
    Timestamp last = packets[0].first;
    for (const auto& [ts, bytes] : packets) {
        (void)bytes;
        if (ts < first) first = ts;
        if (ts > last) last = ts;
    }
    int64_t win = params.behavior_window_us;
    int64_t span = last - first;
    size_t len = static_cast<size_t>(span / win) + 1;
    if (len < 3) return std::nullopt;

    BehaviorProfile p;
    p.window_us = win;
    p.anchor = first;
    p.series.assign(len, BehaviorWindow{});
    for (const auto& [ts, bytes] : packets) {
        size_t idx = static_cast<size_t>((ts - first) / win);
        p.series[idx].bytes += bytes;
        p.series[idx].pkts++;
    }
    for (Timestamp ts : flow_starts) {
        if (ts < first) continue;
        size_t idx = static_cast<size_t>((ts - first) / win);
        if (idx < len) p.series[idx].flows++;
    }

    std::vector<double> xs(len);
    double mean = 0.0;
    for (size_t i = 0; i < len; i++) {
        xs[i] = static_cast<double>(p.series[i].bytes);
        mean += xs[i];
    }
    mean /= static_cast<double>(len);
    p.mean_bytes = mean;
    double var = 0.0;
    for (double v : xs) var += (v - mean) * (v - mean);
    if (var == 0.0) {
        p.periodicity_score = mean > 0.0 ? 1.0 : 0.0;
    } else {
        double best = 0.0;
        for (size_t k = 2; k <= len / 2; k++)
            best = std::max(best, autocorrelation(xs, k));
        p.periodicity_score = best;
    }
    double stddev = std::sqrt(var / static_cast<double>(len));
    p.burstiness = mean > 0.0 ? stddev / mean : 0.0;

    if (p.periodicity_score >= params.beacon_periodicity &&
        mean < params.stream_mean_bytes) {
        p.mode = BehaviorMode::PeriodicBeacon;
    } else if (mean >= params.stream_mean_bytes &&
               p.burstiness < params.stream_max_cv) {
        p.mode = BehaviorMode::Streaming;
    } else if (mean < params.idle_mean_bytes) {
        p.mode = BehaviorMode::Idle;
    } else {
        p.mode = BehaviorMode::Interactive;
    }
    return p;
}

std::optional<AttributeClaim> behavior_claim(const std::string& device_key,
                                             const BehaviorProfile& profile,
                                             const AnalyzerParams& params) {
    if (profile.series.size() < 3) return std::nullopt;
    Timestamp end = profile.anchor +
                    static_cast<int64_t>(profile.series.size()) *
                        profile.window_us;
    return AttributeClaim{device_key, "behavior_mode", to_string(profile.mode),
                          params.conf_behavior, "behavior", end};
}

std::vector<OccupancyEstimate> estimate_occupancy(
    const std::map<std::string, std::vector<Timestamp>>& device_packets,
    const std::map<std::string, std::string>& device_owner,
    const AnalyzerParams& params) {
    std::vector<OccupancyEstimate> out;
    if (params.occupancy_window_us <= 0) return out;
    bool any = false;
    Timestamp first, last;
    for (const auto& [dev, tss] : device_packets) {
        (void)dev;
        for (Timestamp ts : tss) {
            if (!any || ts < first) first = ts;
            if (!any || ts > last) last = ts;
            any = true;
        }
    }
    if (!any) return out;
    int64_t win = params.occupancy_window_us;
    size_t len = static_cast<size_t>((last - first) / win) + 1;
    std::vector<std::set<std::string>> active(len);
    for (const auto& [dev, tss] : device_packets)
        for (Timestamp ts : tss) {
            size_t idx = static_cast<size_t>((ts - first) / win);
            active[idx].insert(dev);
        }
    out.reserve(len);
    for (size_t i = 0; i < len; i++) {
        OccupancyEstimate e;
        e.start = first + static_cast<int64_t>(i) * win;
        e.end = e.start + win;
        for (const auto& dev : active[i]) {
            auto it = device_owner.find(dev);
            if (it != device_owner.end() && !it->second.empty())
                e.present_persons.insert(it->second);
            else
                e.unattributed_devices++;
        }
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace netsight
