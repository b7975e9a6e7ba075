// Copyright (c) 2026 Netsight Contributors
// SPDX-License-Identifier: Apache-2.0
//
// Device identity from passive observation. DHCP Acks are the authoritative
// marking points: an IP's timeline is cut into epochs at each Ack that hands
// the address to a different MAC. Traffic before the first Ack (or for IPs
// never leased) belongs to a pseudo-identity keyed "<ip>#0".
#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "netsight/decode.hpp"
#include "netsight/events.hpp"

namespace netsight {

struct IpEpoch {
    Ipv4Address ip;
    Timestamp start;               // inclusive; minimum timestamp for epoch 0
    std::optional<Timestamp> end;  // exclusive; open for the last epoch
    int index = 0;                 // 0 = pre-lease pseudo-epoch, 1.. = Ack order

    bool contains(Timestamp ts) const {
        return ts >= start && (!end || ts < *end);
    }
};

struct DeviceIdentity {
    std::string device_key;           // lowercase MAC, or "<ip>#0"
    std::optional<MacAddress> mac;    // attached MAC when known/unique
    bool mac_conflict = false;        // multiple MACs seen for one IP epoch
    std::vector<IpEpoch> epochs;      // the address history of this device
    Timestamp first_seen;             // over frames this device originated
    Timestamp last_seen;
    uint64_t frames_originated = 0;
};

// Identity index built once per capture from DHCP events plus the raw frame
// stream; resolution maps (ip, ts) to the device that held the address then.
class IdentityIndex {
  public:
    static IdentityIndex build(const std::vector<DhcpEvent>& dhcp,
                               const std::vector<FrameSummary>& frames);

    // device_key for an internal address at a point in time; nothing for
    // addresses outside the identity set (externals resolve to bare IPs at
    // the caller's discretion).
    std::optional<std::string> resolve(const Ipv4Address& ip, Timestamp ts) const;

    const std::map<std::string, DeviceIdentity>& devices() const { return devices_; }
    const DeviceIdentity* find(const std::string& device_key) const;

    // An address is internal when it was a DHCP client or is RFC1918.
    bool is_internal(const Ipv4Address& ip) const;

    std::vector<std::string> device_keys() const;  // sorted

  private:
    std::map<std::string, DeviceIdentity> devices_;
    // per IP: epochs sorted by start, each naming its owning device_key
    std::map<Ipv4Address, std::vector<std::pair<IpEpoch, std::string>>> by_ip_;
    std::set<Ipv4Address> dhcp_clients_;
};

}  // namespace netsight
