// Copyright (c) 2026 Netsight Contributors
// SPDX-License-Identifier: Apache-2.0
#include "netsight/profile.hpp"

#include <ostream>
#include <sstream>

namespace netsight {

using nlohmann::json;

double ts_to_json(Timestamp ts) { return ts.seconds(); }

Timestamp ts_from_json(double seconds) {
    return Timestamp::from_seconds(seconds);
}

std::vector<std::string> ProfileSet::keys() const {
    std::vector<std::string> out;
    out.reserve(devices.size());
    for (const auto& [k, p] : devices) {
        (void)p;
        out.push_back(k);
    }
    return out;
}

namespace {

std::optional<BehaviorMode> behavior_mode_from(const std::string& s) {
    if (s == "idle") return BehaviorMode::Idle;
    if (s == "periodic_beacon") return BehaviorMode::PeriodicBeacon;
    if (s == "interactive") return BehaviorMode::Interactive;
    if (s == "streaming") return BehaviorMode::Streaming;
    return std::nullopt;
}

}  // namespace

json profile_to_json(const DeviceProfile& p) {
    json j;
    j["device_key"] = p.device_key;
    if (p.mac) j["mac"] = p.mac->to_string();
    j["mac_conflict"] = p.mac_conflict;
    json ips = json::array();
    for (const auto& e : p.epochs) {
        json ep;
        ep["ip"] = e.ip.to_string();
        ep["start"] = ts_to_json(e.start);
        if (e.end) ep["end"] = ts_to_json(*e.end);
        else ep["end"] = nullptr;
        ips.push_back(ep);
    }
    j["ips"] = ips;
    json attrs = json::object();
    for (const auto& [name, r] : p.attributes) {
        json a;
        a["value"] = r.value;
        a["confidence"] = r.confidence;
        a["engines"] = r.engines;
        attrs[name] = a;
    }
    j["attributes"] = attrs;
    j["counters"] = p.counters;
    json claims = json::array();
    for (const auto& c : p.claims) {
        json cj;
        cj["attribute"] = c.attribute;
        cj["value"] = c.value;
        cj["confidence"] = c.confidence;
        cj["engine_id"] = c.engine_id;
        cj["ts"] = ts_to_json(c.ts);
        claims.push_back(cj);
    }
    j["claims"] = claims;
    if (p.behavior) {
        const BehaviorProfile& b = *p.behavior;
        json bj;
        bj["mode"] = to_string(b.mode);
        bj["periodicity"] = b.periodicity_score;
        bj["burstiness"] = b.burstiness;
        bj["mean_bytes"] = b.mean_bytes;
        bj["window_seconds"] = static_cast<double>(b.window_us) / 1e6;
        bj["anchor"] = ts_to_json(b.anchor);
        bj["windows"] = b.series.size();
        j["behavior"] = bj;
    }
    j["first_seen"] = ts_to_json(p.first_seen);
    j["last_seen"] = ts_to_json(p.last_seen);
    j["violations"] = p.violations;
    return j;
}

std::string profile_to_line(const DeviceProfile& p) {
    return profile_to_json(p).dump();
}

void export_profiles(const ProfileSet& set, std::ostream& out) {
    for (const auto& [key, p] : set.devices) {
        (void)key;
        out << profile_to_line(p) << "\n";
    }
}

DeviceProfile profile_from_json(const json& j) {
    DeviceProfile p;
    p.device_key = j.at("device_key").get<std::string>();
    if (j.contains("mac") && j["mac"].is_string())
        p.mac = MacAddress::parse(j["mac"].get<std::string>());
    if (j.contains("mac_conflict") && j["mac_conflict"].is_boolean())
        p.mac_conflict = j["mac_conflict"].get<bool>();
    if (j.contains("ips"))
        for (const auto& ep : j["ips"]) {
            IpEpoch e;
            if (auto ip = Ipv4Address::parse(ep.at("ip").get<std::string>()))
                e.ip = *ip;
            e.start = ts_from_json(ep.at("start").get<double>());
            if (ep.contains("end") && !ep["end"].is_null())
                e.end = ts_from_json(ep["end"].get<double>());
            p.epochs.push_back(e);
        }
    if (j.contains("attributes"))
        for (const auto& [name, a] : j["attributes"].items()) {
            ResolvedAttribute r;
            r.value = a.at("value").get<std::string>();
            r.confidence = a.at("confidence").get<double>();
            if (a.contains("engines"))
                for (const auto& e : a["engines"])
                    r.engines.push_back(e.get<std::string>());
            p.attributes[name] = r;
        }
    if (j.contains("counters"))
        for (const auto& [name, v] : j["counters"].items())
            p.counters[name] = v.get<uint64_t>();
    if (j.contains("claims"))
        for (const auto& cj : j["claims"]) {
            AttributeClaim c;
            c.device_key = p.device_key;
            c.attribute = cj.at("attribute").get<std::string>();
            c.value = cj.at("value").get<std::string>();
            c.confidence = cj.at("confidence").get<double>();
            c.engine_id = cj.at("engine_id").get<std::string>();
            c.ts = ts_from_json(cj.at("ts").get<double>());
            p.claims.push_back(c);
        }
    if (j.contains("behavior") && j["behavior"].is_object()) {
        // summary only: the window series itself is not part of the export
        const json& bj = j["behavior"];
        BehaviorProfile b;
        if (bj.contains("mode"))
            if (auto m = behavior_mode_from(bj["mode"].get<std::string>())) b.mode = *m;
        if (bj.contains("periodicity")) b.periodicity_score = bj["periodicity"].get<double>();
        if (bj.contains("burstiness")) b.burstiness = bj["burstiness"].get<double>();
        if (bj.contains("mean_bytes")) b.mean_bytes = bj["mean_bytes"].get<double>();
        if (bj.contains("window_seconds"))
            b.window_us = static_cast<int64_t>(bj["window_seconds"].get<double>() * 1e6 + 0.5);
        if (bj.contains("anchor")) b.anchor = ts_from_json(bj["anchor"].get<double>());
        p.behavior = b;
    }
    if (j.contains("first_seen"))
        p.first_seen = ts_from_json(j["first_seen"].get<double>());
    if (j.contains("last_seen"))
        p.last_seen = ts_from_json(j["last_seen"].get<double>());
    if (j.contains("violations"))
        for (const auto& v : j["violations"])
            p.violations.push_back(v.get<std::string>());
    return p;
}

ProfileSet import_profiles(std::istream& in) {
    ProfileSet set;
    std::string line;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        json j = json::parse(line);
        DeviceProfile p = profile_from_json(j);
        std::string key = p.device_key;
        set.devices.emplace(std::move(key), std::move(p));
    }
    return set;
}

}  // namespace netsight
