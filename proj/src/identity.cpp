// Copyright (c) 2026 Netsight Contributors
// SPDX-License-Identifier: Apache-2.0

#include "netsight/identity.hpp"

#include <algorithm>

namespace netsight {

namespace {

std::string pseudo_key(const Ipv4Address& ip) { return ip.to_string() + "#0"; }

}  // namespace

IdentityIndex IdentityIndex::build(const std::vector<DhcpEvent>& dhcp,
                                   const std::vector<FrameSummary>& frames) {
    IdentityIndex idx;

    // Lease changes, in time order. Only Acks carrying an address cut epochs.
    struct AckRef {
        Timestamp ts;
        Ipv4Address ip;
        MacAddress mac;
    };
    std::vector<AckRef> acks;
    for (const auto& ev : dhcp) {
        if (ev.msg_type != DhcpMsgType::Ack || !ev.assigned_ip) continue;
        acks.push_back({ev.hdr.ts, *ev.assigned_ip, ev.client_mac});
        idx.dhcp_clients_.insert(*ev.assigned_ip);
    }
    std::stable_sort(acks.begin(), acks.end(),
                     [](const AckRef& a, const AckRef& b) { return a.ts < b.ts; });

    // Per IP: the boundary list. Renewals to the same MAC extend the epoch.
    std::map<Ipv4Address, std::vector<AckRef>> boundaries;
    for (const auto& a : acks) {
        auto& v = boundaries[a.ip];
        if (v.empty() || !(v.back().mac == a.mac)) v.push_back(a);
    }

    std::map<Ipv4Address, Timestamp> first_ack;
    for (const auto& [ip, cuts] : boundaries) {
        first_ack[ip] = cuts.front().ts;
        for (size_t i = 0; i < cuts.size(); ++i) {
            IpEpoch e;
            e.ip = ip;
            e.start = cuts[i].ts;
            if (i + 1 < cuts.size()) e.end = cuts[i + 1].ts;
            e.index = static_cast<int>(i) + 1;

            std::string key = cuts[i].mac.to_string();
            auto& dev = idx.devices_[key];
            if (dev.device_key.empty()) {
                dev.device_key = key;
                dev.mac = cuts[i].mac;
            }
            dev.epochs.push_back(e);
            idx.by_ip_[ip].emplace_back(e, key);
        }
    }

    // Pre-lease / never-leased traffic forms the pseudo-identity of each
    // internal address.
    struct PseudoAgg {
        Timestamp first;
        Timestamp last;
        std::set<MacAddress> macs;
        bool any = false;
    };
    std::map<Ipv4Address, PseudoAgg> pseudo;
    for (const auto& f : frames) {
        const auto& ip = f.src_ip;
        if (!idx.is_internal(ip)) continue;
        auto fa = first_ack.find(ip);
        if (fa != first_ack.end() && f.ts >= fa->second) continue;
        auto& agg = pseudo[ip];
        if (!agg.any || f.ts < agg.first) agg.first = f.ts;
        if (!agg.any || f.ts > agg.last) agg.last = f.ts;
        agg.any = true;
        agg.macs.insert(f.src_mac);
    }
    for (const auto& [ip, agg] : pseudo) {
        IpEpoch e;
        e.ip = ip;
        e.start = agg.first;
        auto fa = first_ack.find(ip);
        if (fa != first_ack.end()) e.end = fa->second;
        e.index = 0;

        std::string key = pseudo_key(ip);
        auto& dev = idx.devices_[key];
        dev.device_key = key;
        dev.epochs.push_back(e);
        if (agg.macs.size() == 1) {
            dev.mac = *agg.macs.begin();
        } else if (agg.macs.size() > 1) {
            // concurrent MACs behind one address with no lease evidence:
            // flag every identity involved
            dev.mac_conflict = true;
            for (const auto& m : agg.macs) {
                auto it = idx.devices_.find(m.to_string());
                if (it != idx.devices_.end()) it->second.mac_conflict = true;
            }
        }
        idx.by_ip_[ip].emplace_back(e, key);
    }

    for (auto& [ip, epochs] : idx.by_ip_)
        std::sort(epochs.begin(), epochs.end(),
                  [](const auto& a, const auto& b) { return a.first.start < b.first.start; });

    // Activity bounds over originated frames; DHCP-stage frames (src 0.0.0.0)
    // attach through the MAC.
    for (const auto& f : frames) {
        auto key = idx.resolve(f.src_ip, f.ts);
        if (!key) {
            auto it = idx.devices_.find(f.src_mac.to_string());
            if (it != idx.devices_.end()) key = it->first;
        }
        if (!key) continue;
        auto it = idx.devices_.find(*key);
        if (it == idx.devices_.end()) continue;
        auto& dev = it->second;
        if (dev.frames_originated == 0 || f.ts < dev.first_seen) dev.first_seen = f.ts;
        if (dev.frames_originated == 0 || f.ts > dev.last_seen) dev.last_seen = f.ts;
        ++dev.frames_originated;
    }

    return idx;
}

std::optional<std::string> IdentityIndex::resolve(const Ipv4Address& ip,
                                                  Timestamp ts) const {
    auto it = by_ip_.find(ip);
    if (it != by_ip_.end())
        for (const auto& [epoch, key] : it->second)
            if (epoch.contains(ts)) return key;
    if (!is_internal(ip)) return std::nullopt;
    // internal address outside every lease epoch: the pre-lease pseudo key
    return pseudo_key(ip);
}

const DeviceIdentity* IdentityIndex::find(const std::string& device_key) const {
    auto it = devices_.find(device_key);
    return it == devices_.end() ? nullptr : &it->second;
}

bool IdentityIndex::is_internal(const Ipv4Address& ip) const {
    if (ip.is_zero() || ip.is_broadcast()) return false;
    return dhcp_clients_.count(ip) > 0 || ip.is_rfc1918();
}

std::vector<std::string> IdentityIndex::device_keys() const {
    std::vector<std::string> out;
    for (const auto& [key, dev] : devices_) out.push_back(key);
    return out;
}

}  // namespace netsight
