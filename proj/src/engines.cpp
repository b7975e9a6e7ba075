// Copyright (c) 2026 Netsight Contributors
// SPDX-License-Identifier: Apache-2.0
//
// run_pipeline: decode a capture, replay the events onto the bus, let each
// configured engine drain its subscriptions and emit claims, then compose
// the claims and assemble the exported profiles.
#include <type_traits>
#include <utility>
#include <variant>

#include "netsight/pipeline.hpp"

namespace netsight {

namespace {

// What one engine pulled off the bus, split back into typed lists.
struct Drained {
    std::vector<DnsEvent> dns;
    std::vector<DhcpEvent> dhcp;
    std::vector<HttpEvent> http;
    std::vector<TlsEvent> tls;
    std::vector<FlowRecord> flows;
    uint64_t total = 0;
};

Drained drain(const TopicBus& bus, const std::vector<std::string>& topics) {
    Drained d;
    for (const auto& topic : topics) {
        auto sub = bus.subscribe(topic);
        while (auto msg = sub.next()) {
            ++d.total;
            std::visit(
                [&](const auto& ev) {
                    using T = std::decay_t<decltype(ev)>;
                    if constexpr (std::is_same_v<T, DnsEvent>) d.dns.push_back(ev);
                    if constexpr (std::is_same_v<T, DhcpEvent>) d.dhcp.push_back(ev);
                    if constexpr (std::is_same_v<T, HttpEvent>) d.http.push_back(ev);
                    if constexpr (std::is_same_v<T, TlsEvent>) d.tls.push_back(ev);
                    if constexpr (std::is_same_v<T, FlowRecord>) d.flows.push_back(ev);
                },
                msg->payload);
        }
    }
    return d;
}

// Evidence attribution. Application events belong to the client device:
// the sender of a query/hello/request, the receiver of a response or
// certificate. Resolving at the event's own timestamp keeps evidence inside
// the address epoch it was observed in.
std::optional<std::string> client_of(const DnsEvent& e, const IdentityIndex& ids) {
    const Ipv4Address& ip = e.is_response ? e.hdr.dst_ip : e.hdr.src_ip;
    return ids.resolve(ip, e.hdr.ts);
}

std::optional<std::string> client_of(const TlsEvent& e, const IdentityIndex& ids) {
    const Ipv4Address& ip =
        e.stage == TlsStage::Certificate ? e.hdr.dst_ip : e.hdr.src_ip;
    return ids.resolve(ip, e.hdr.ts);
}

std::optional<std::string> client_of(const HttpEvent& e, const IdentityIndex& ids) {
    return ids.resolve(e.hdr.src_ip, e.hdr.ts);
}

// DHCP speaks for the device named in chaddr, not the packet's sender.
std::optional<std::string> leased_device(const DhcpEvent& e, const IdentityIndex& ids) {
    std::string key = e.client_mac.to_string();
    if (ids.find(key)) return key;
    return std::nullopt;
}

std::optional<std::string> originator_of(const FlowRecord& f, const IdentityIndex& ids) {
    return ids.resolve(f.originator.ip, f.first_ts);
}

// Frames resolve by source IP first; pre-IP traffic falls back to the
// MAC-keyed identity when one exists.
std::optional<std::string> sender_of(const FrameSummary& f, const IdentityIndex& ids) {
    if (auto key = ids.resolve(f.src_ip, f.ts)) return key;
    std::string mk = f.src_mac.to_string();
    if (ids.find(mk)) return mk;
    return std::nullopt;
}

std::map<std::string, std::vector<DnsEvent>> group_dns(
    const std::vector<DnsEvent>& evs, const IdentityIndex& ids) {
    std::map<std::string, std::vector<DnsEvent>> by;
    for (const auto& e : evs)
        if (auto k = client_of(e, ids)) by[*k].push_back(e);
    return by;
}

struct EngineOutcome {
    std::vector<AttributeClaim> claims;
    // device -> counter name -> increment (e.g. unrecognized fingerprints)
    std::map<std::string, std::map<std::string, uint64_t>> counters;
    std::map<std::string, BehaviorProfile> behavior;
};

EngineOutcome run_registry(const EngineSpec& spec, const IdentityIndex& ids,
                           const KnowledgeBundle& kb) {
    EngineOutcome out;
    for (const auto& [key, dev] : ids.devices()) {
        if (!dev.mac) continue;
        const RegistryEntry* entry = kb.registry.lookup(*dev.mac);
        if (!entry) continue;
        if (!entry->owner.empty())
            out.claims.push_back(
                {key, "owner", entry->owner, 1.0, spec.engine_id, dev.first_seen});
        if (!entry->device_class.empty())
            out.claims.push_back({key, "device_type", entry->device_class, 1.0,
                                  spec.engine_id, dev.first_seen});
    }
    return out;
}

EngineOutcome run_manufacturer(const Drained& got, const IdentityIndex& ids,
                               const KnowledgeBundle& kb,
                               const AnalyzerParams& params) {
    EngineOutcome out;
    auto dns_by = group_dns(got.dns, ids);
    std::map<std::string, std::vector<DhcpEvent>> dhcp_by;
    for (const auto& e : got.dhcp)
        if (auto k = leased_device(e, ids)) dhcp_by[*k].push_back(e);
    std::map<std::string, std::vector<TlsEvent>> tls_by;
    for (const auto& e : got.tls)
        if (auto k = client_of(e, ids)) tls_by[*k].push_back(e);

    static const std::vector<DnsEvent> kNoDns;
    static const std::vector<DhcpEvent> kNoDhcp;
    static const std::vector<TlsEvent> kNoTls;
    for (const auto& [key, dev] : ids.devices()) {
        auto n = dns_by.find(key);
        auto d = dhcp_by.find(key);
        auto t = tls_by.find(key);
        DnsUsageSummary summary =
            summarize_dns(n == dns_by.end() ? kNoDns : n->second, kb.domains);
        auto claims = infer_manufacturer(
            key, dev.mac, kb.oui, d == dhcp_by.end() ? kNoDhcp : d->second,
            t == tls_by.end() ? kNoTls : t->second, summary, kb.vendor_norm, params);
        for (auto& c : claims) {
            // hardware-prefix evidence has no event time; anchor it at the
            // device's first sighting so it stays inside an observed epoch
            if (c.ts.us == 0) c.ts = dev.first_seen;
            out.claims.push_back(std::move(c));
        }
    }
    return out;
}

EngineOutcome run_ua_miner(const Drained& got, const IdentityIndex& ids,
                           const KnowledgeBundle& kb, const AnalyzerParams& params) {
    EngineOutcome out;
    std::map<std::string, std::vector<HttpEvent>> by;
    for (const auto& e : got.http)
        if (auto k = client_of(e, ids)) by[*k].push_back(e);
    for (const auto& [key, evs] : by) {
        auto claims = mine_user_agent(key, evs, kb.ua_rules, params);
        out.claims.insert(out.claims.end(), claims.begin(), claims.end());
    }
    return out;
}

EngineOutcome run_tls_fp(const Drained& got, const IdentityIndex& ids,
                         const KnowledgeBundle& kb, const AnalyzerParams& params) {
    EngineOutcome out;
    std::map<std::string, std::vector<TlsEvent>> by;
    for (const auto& e : got.tls)
        if (auto k = client_of(e, ids)) by[*k].push_back(e);
    for (const auto& [key, evs] : by) {
        TlsFingerprintResult r = fingerprint_tls(key, evs, kb.tls_fingerprints, params);
        out.claims.insert(out.claims.end(), r.claims.begin(), r.claims.end());
        for (const auto& fp : r.unknown_fingerprints)
            out.counters[key]["tls_fp_unknown:" + fp] += 1;
    }
    return out;
}

EngineOutcome run_iot_dns(const Drained& got, const IdentityIndex& ids,
                          const KnowledgeBundle& kb, const AnalyzerParams& params) {
    EngineOutcome out;
    for (const auto& [key, evs] : group_dns(got.dns, ids)) {
        DnsUsageSummary summary = summarize_dns(evs, kb.domains);
        if (auto claim = classify_iot(key, summary, params))
            out.claims.push_back(*claim);
    }
    return out;
}

EngineOutcome run_behavior(const Drained& got, const IdentityIndex& ids,
                           const std::vector<FrameSummary>& frames,
                           const AnalyzerParams& params) {
    EngineOutcome out;
    std::map<std::string, std::vector<std::pair<Timestamp, uint32_t>>> pkts;
    for (const auto& f : frames)
        if (auto k = sender_of(f, ids)) pkts[*k].push_back({f.ts, f.wire_bytes});
    std::map<std::string, std::vector<Timestamp>> starts;
    for (const auto& fl : got.flows)
        if (auto k = originator_of(fl, ids)) starts[*k].push_back(fl.first_ts);
    static const std::vector<Timestamp> kNoStarts;
    for (const auto& [key, series] : pkts) {
        auto st = starts.find(key);
        auto prof = characterize_behavior(
            series, st == starts.end() ? kNoStarts : st->second, params);
        if (!prof) continue;
        if (auto claim = behavior_claim(key, *prof, params))
            out.claims.push_back(*claim);
        out.behavior.emplace(key, std::move(*prof));
    }
    return out;
}

PipelineResult assemble(DecodeOutput&& events, const DecodeStats& dstats,
                        const ChainConfig& config, const KnowledgeBundle& kb,
                        const AccuracyTable* accuracy) {
    PipelineResult result;
    result.stats.decode = dstats;
    result.identities = IdentityIndex::build(events.dhcp, events.frames);
    const IdentityIndex& ids = result.identities;

    TopicBus bus;
    for (const auto& t : decoder_topics()) bus.declare(t);
    bus.declare("claims");
    for (const auto& e : events.dns) bus.publish("events.dns", e);
    for (const auto& e : events.dhcp) bus.publish("events.dhcp", e);
    for (const auto& e : events.http) bus.publish("events.http", e);
    for (const auto& e : events.tls) bus.publish("events.tls", e);
    for (const auto& f : events.flows) bus.publish("flows", f);

    std::map<std::string, std::vector<AttributeClaim>> claims_by_device;
    std::map<std::string, std::map<std::string, uint64_t>> extra_counters;
    std::map<std::string, BehaviorProfile> behavior_by_device;

    for (const auto& spec : config.engines) {
        AnalyzerParams params = params_for(spec);
        Drained got = drain(bus, spec.subscribes);
        EngineOutcome out;
        if (spec.engine_id == "registry") out = run_registry(spec, ids, kb);
        else if (spec.engine_id == "manufacturer") out = run_manufacturer(got, ids, kb, params);
        else if (spec.engine_id == "ua_miner") out = run_ua_miner(got, ids, kb, params);
        else if (spec.engine_id == "tls_fp") out = run_tls_fp(got, ids, kb, params);
        else if (spec.engine_id == "iot_dns") out = run_iot_dns(got, ids, kb, params);
        else if (spec.engine_id == "behavior") out = run_behavior(got, ids, events.frames, params);
        // "noop" and anything future: drained but emits nothing

        result.stats.engine_consumed[spec.engine_id] = got.total;
        result.stats.engine_claims[spec.engine_id] = out.claims.size();
        for (auto& c : out.claims) {
            bus.publish("claims", c);
            claims_by_device[c.device_key].push_back(std::move(c));
        }
        for (const auto& [dev, ctrs] : out.counters)
            for (const auto& [name, v] : ctrs) extra_counters[dev][name] += v;
        for (auto& [dev, prof] : out.behavior)
            behavior_by_device[dev] = std::move(prof);
    }

    for (const auto& [key, dev] : ids.devices()) {
        DeviceProfile p;
        p.device_key = key;
        p.mac = dev.mac;
        p.mac_conflict = dev.mac_conflict;
        p.epochs = dev.epochs;
        p.first_seen = dev.first_seen;
        p.last_seen = dev.last_seen;
        p.counters["packets"] = dev.frames_originated;
        p.counters["flows"] = 0;
        p.counters["bytes"] = 0;
        p.counters["dns_queries"] = 0;
        p.counters["distinct_dest_orgs"] = 0;
        if (auto c = claims_by_device.find(key); c != claims_by_device.end()) {
            p.claims = c->second;
            std::map<std::string, std::vector<AttributeClaim>> per_attr;
            for (const auto& cl : p.claims) per_attr[cl.attribute].push_back(cl);
            for (const auto& [attr, group] : per_attr)
                p.attributes[attr] = resolve_attribute(group, config.mode, accuracy);
        }
        if (auto b = behavior_by_device.find(key); b != behavior_by_device.end())
            p.behavior = b->second;
        if (auto ec = extra_counters.find(key); ec != extra_counters.end())
            for (const auto& [name, v] : ec->second) p.counters[name] += v;
        result.profiles.devices.emplace(key, std::move(p));
    }

    // traffic tallies are part of the profile contract, independent of which
    // engines the chain ran
    for (const auto& f : events.flows)
        if (auto k = originator_of(f, ids)) {
            auto it = result.profiles.devices.find(*k);
            if (it == result.profiles.devices.end()) continue;
            it->second.counters["flows"] += 1;
            it->second.counters["bytes"] += f.bytes_total();
        }
    for (const auto& [key, evs] : group_dns(events.dns, ids)) {
        auto it = result.profiles.devices.find(key);
        if (it == result.profiles.devices.end()) continue;
        DnsUsageSummary s = summarize_dns(evs, kb.domains);
        it->second.counters["dns_queries"] = s.total_queries;
        it->second.counters["distinct_dest_orgs"] =
            static_cast<uint64_t>(s.distinct_orgs());
    }

    for (const auto& [key, dev] : ids.devices())
        if (dev.mac)
            if (const RegistryEntry* entry = kb.registry.lookup(*dev.mac);
                entry && !entry->owner.empty())
                result.device_owner[key] = entry->owner;
    std::map<std::string, std::vector<Timestamp>> device_packets;
    for (const auto& f : events.frames)
        if (auto k = sender_of(f, ids)) device_packets[*k].push_back(f.ts);
    AnalyzerParams occ;
    occ.occupancy_window_us = config.occupancy_window_us;
    result.occupancy = estimate_occupancy(device_packets, result.device_owner, occ);

    for (const auto& t : decoder_topics())
        result.stats.topic_messages[t] = bus.message_count(t);
    result.stats.topic_messages["claims"] = bus.message_count("claims");
    result.stats.devices = result.profiles.devices.size();
    result.events = std::move(events);
    return result;
}

// Resolves the accuracy table for best-classifier mode; `storage` holds a
// table loaded from the file named by the config.
const AccuracyTable* prepare_accuracy(const ChainConfig& config,
                                      const AccuracyTable* accuracy,
                                      AccuracyTable& storage) {
    if (config.mode != CompositionMode::BestClassifier || accuracy) return accuracy;
    if (!config.accuracy_file || config.accuracy_file->empty())
        throw ConfigError(ConfigErrorKind::BadComposition,
                          "best-classifier composition requires an accuracy table");
    storage = AccuracyTable::load_csv(*config.accuracy_file);
    return &storage;
}

}  // namespace

PipelineResult run_pipeline(const std::vector<PacketRecord>& records,
                            const ChainConfig& config,
                            const KnowledgeBundle& knowledge,
                            const AccuracyTable* accuracy) {
    validate_chain(config);
    AccuracyTable loaded;
    accuracy = prepare_accuracy(config, accuracy, loaded);

    TrafficDecoder decoder(config.decoder);
    for (const auto& r : records) decoder.process(r);
    decoder.finish();
    DecodeStats dstats = decoder.stats();
    return assemble(decoder.take_output(), dstats, config, knowledge, accuracy);
}

PipelineResult run_pipeline(std::istream& pcap_stream, const ChainConfig& config,
                            const KnowledgeBundle& knowledge,
                            const AccuracyTable* accuracy) {
    validate_chain(config);
    PcapReader reader = PcapReader::open(pcap_stream);
    std::vector<PacketRecord> records;
    while (auto r = reader.next()) records.push_back(std::move(*r));
    return run_pipeline(records, config, knowledge, accuracy);
}

}  // namespace netsight
