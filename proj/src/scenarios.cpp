// Copyright (c) 2026 Netsight Contributors
// SPDX-License-Identifier: Apache-2.0
//
// Bundled scenarios: one curated office, plus randomized families that each
// stress a single analytic (discovery, reassignment, dominance, policy,
// behavior, occupancy, throughput).

#include <cstdio>
#include <random>

#include "netsight/trafficgen.hpp"

namespace netsight::gen {
namespace {

// fixture vendor prefixes; must stay in step with the generator's tables
constexpr const char* kAcme = "02:ac:10";
constexpr const char* kBolt = "02:b0:17";
constexpr const char* kCirrus = "02:c1:55";
constexpr const char* kDyna = "02:d7:aa";

MacAddress mac_from(const char* prefix, int n) {
    char buf[18];
    std::snprintf(buf, sizeof buf, "%s:00:%02x:%02x", prefix, (n >> 8) & 0xff,
                  n & 0xff);
    return MacAddress::parse(buf).value();
}

DeviceSpec gateway_device() {
    DeviceSpec gw;
    gw.name = "gw";
    gw.mac = mac_from(kBolt, 1);
    gw.persona = Persona::Gateway;
    gw.dhcp = false;
    gw.static_ip = Ipv4Address::parse("10.0.0.1");
    gw.device_class = "gateway";
    return gw;
}

PolicyRule require_registered(const char* id) {
    PolicyRule r;
    r.rule_id = id;
    r.kind = PolicyKind::RequireRegistered;
    return r;
}

}  // namespace

Scenario office_small() {
    Scenario sc;
    sc.name = "office-small";
    sc.start_ts = 1767254400;  // a working day, 08:00 to 18:00
    sc.duration_s = 36000;
    sc.occupancy_window_s = 900;

    sc.devices.push_back(gateway_device());

    DeviceSpec nas;
    nas.name = "nas";
    nas.mac = mac_from(kBolt, 2);
    nas.persona = Persona::Server;
    nas.dhcp = false;
    nas.static_ip = Ipv4Address::parse("10.0.0.20");
    nas.device_class = "server";
    sc.devices.push_back(nas);

    DeviceSpec printer;
    printer.name = "printer";
    printer.mac = mac_from(kAcme, 3);
    printer.persona = Persona::Printer;
    printer.device_class = "printer";
    sc.devices.push_back(printer);

    DeviceSpec cam1;
    cam1.name = "cam-lobby";
    cam1.mac = mac_from(kAcme, 4);
    cam1.persona = Persona::IoTCamera;
    cam1.device_class = "camera";
    sc.devices.push_back(cam1);

    DeviceSpec cam2;
    cam2.name = "cam-dock";
    cam2.mac = mac_from(kAcme, 5);
    cam2.persona = Persona::IoTCamera;
    cam2.device_class = "camera";
    cam2.behavior = "stream";  // offloads footage for an hour
    cam2.active_start = 3600;
    cam2.active_end = 7200;
    sc.devices.push_back(cam2);

    DeviceSpec assistant;
    assistant.name = "assistant";
    assistant.mac = mac_from(kDyna, 6);
    assistant.persona = Persona::IoTCamera;
    assistant.vendor = "Dyna";
    assistant.device_class = "voice_assistant";
    assistant.behavior = "idle";
    assistant.dns_queries = 10;
    assistant.dns_dominance = 0.9;
    sc.devices.push_back(assistant);

    const char* owners[4] = {"alice", "bob", "carol", "dave"};
    for (int i = 0; i < 4; ++i) {
        DeviceSpec ws;
        ws.name = std::string("ws-") + owners[i];
        ws.mac = mac_from(kBolt, 0x11 + i);
        ws.persona = Persona::Workstation;
        ws.owner = owners[i];
        ws.device_class = "workstation";
        ws.cleartext_gets = 1;  // one legacy portal fetch per day
        ws.active_start = 3600;  // present 09:00 to 17:00
        ws.active_end = 32400;
        sc.devices.push_back(ws);
    }

    DeviceSpec phone;
    phone.name = "phone-alice";
    phone.mac = mac_from(kCirrus, 0x21);
    phone.persona = Persona::PhoneDualUse;
    phone.owner = "alice";
    phone.device_class = "phone";
    phone.renew_every_s = 7200;
    phone.active_start = 3600;
    phone.active_end = 32400;
    sc.devices.push_back(phone);

    DeviceSpec rogue;
    rogue.name = "phone-rogue";
    rogue.mac = mac_from(kCirrus, 0x22);
    rogue.persona = Persona::PhoneDualUse;
    rogue.registered = false;
    rogue.active_start = 14400;  // drops in around noon
    rogue.active_end = 21600;
    sc.devices.push_back(rogue);

    sc.policies.push_back(require_registered("reg-1"));
    PolicyRule cls;
    cls.rule_id = "cls-1";
    cls.kind = PolicyKind::ForbidDeviceClass;
    cls.device_class = "voice_assistant";
    sc.policies.push_back(cls);
    return sc;
}

Scenario random_scenario(uint32_t seed) {
    std::mt19937 rng(seed);
    Scenario sc;
    sc.name = "random-" + std::to_string(seed);
    sc.start_ts = 1767254400 + static_cast<double>(seed) * 3600;
    sc.duration_s = 1800 + static_cast<double>(rng() % 4) * 900;
    sc.devices.push_back(gateway_device());

    int n = 0;
    int ws_count = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < ws_count; ++i) {
        DeviceSpec ws;
        ws.name = "ws-" + std::to_string(i);
        ws.mac = mac_from(kBolt, 0x10 + n++);
        ws.persona = Persona::Workstation;
        ws.owner = "p" + std::to_string(i + 1);
        ws.device_class = "workstation";
        ws.dns_queries = 8 + static_cast<int>(rng() % 10);
        sc.devices.push_back(ws);
    }
    int cams = static_cast<int>(rng() % 3);
    for (int i = 0; i < cams; ++i) {
        DeviceSpec cam;
        cam.name = "cam-" + std::to_string(i);
        cam.mac = mac_from(kAcme, 0x30 + n++);
        cam.persona = Persona::IoTCamera;
        cam.device_class = "camera";
        cam.dns_queries = 6 + static_cast<int>(rng() % 8);
        sc.devices.push_back(cam);
    }
    if (rng() % 2) {
        DeviceSpec p;
        p.name = "printer-0";
        p.mac = mac_from(kAcme, 0x40 + n++);
        p.persona = Persona::Printer;
        p.device_class = "printer";
        sc.devices.push_back(p);
    }
    int phones = static_cast<int>(rng() % 3);
    for (int i = 0; i < phones; ++i) {
        DeviceSpec ph;
        ph.name = "phone-" + std::to_string(i);
        ph.mac = mac_from(kCirrus, 0x50 + n++);
        ph.persona = Persona::PhoneDualUse;
        ph.owner = "p" + std::to_string(i + 1);
        ph.device_class = "phone";
        sc.devices.push_back(ph);
    }
    return sc;
}

Scenario reassignment_scenario(uint32_t seed) {
    std::mt19937 rng(seed);
    Scenario sc;
    sc.name = "reassign-" + std::to_string(seed);
    sc.start_ts = 1767254400 + static_cast<double>(seed) * 7200;
    sc.duration_s = 5400;
    sc.devices.push_back(gateway_device());

    std::string shared = "10.0.0." + std::to_string(40 + seed % 20);

    // first tenant browses, leaves, and the pool hands its address on
    DeviceSpec a;
    a.name = "tenant-a";
    a.mac = mac_from(kBolt, 0x60 + static_cast<int>(rng() % 64));
    a.persona = Persona::Workstation;
    a.owner = "p1";
    a.device_class = "workstation";
    a.lease_ip = Ipv4Address::parse(shared);
    a.cleartext_gets = 2;
    a.dns_queries = 8 + static_cast<int>(rng() % 8);
    a.active_start = 0;
    a.active_end = 2640;
    sc.devices.push_back(a);

    DeviceSpec b;
    b.name = "tenant-b";
    b.mac = mac_from(kAcme, 0xa0 + static_cast<int>(rng() % 64));
    b.persona = Persona::Printer;
    b.device_class = "printer";
    b.lease_ip = Ipv4Address::parse(shared);
    b.dns_queries = 3 + static_cast<int>(rng() % 4);
    b.active_start = 2700;
    b.active_end = 5400;
    sc.devices.push_back(b);

    DeviceSpec c;
    c.name = "bystander";
    c.mac = mac_from(kCirrus, 0x70 + static_cast<int>(rng() % 64));
    c.persona = Persona::PhoneDualUse;
    c.owner = "p2";
    c.device_class = "phone";
    sc.devices.push_back(c);
    return sc;
}

Scenario random_iot_scenario(uint32_t seed) {
    std::mt19937 rng(seed);
    Scenario sc;
    sc.name = "iot-" + std::to_string(seed);
    sc.start_ts = 1767254400 + static_cast<double>(seed) * 3600;
    sc.duration_s = 1200;
    sc.devices.push_back(gateway_device());

    int n = 0;
    int iot = 2 + static_cast<int>(rng() % 3);
    for (int i = 0; i < iot; ++i) {
        DeviceSpec d;
        d.name = "sensor-" + std::to_string(i);
        d.mac = mac_from(i % 2 ? kAcme : kDyna, 0x10 + n++);
        d.persona = Persona::IoTCamera;
        d.vendor = i % 2 ? "Acme" : "Dyna";
        d.device_class = "camera";
        d.behavior = "idle";  // keep the captures small
        d.dns_queries = 8 + static_cast<int>(rng() % 12);
        d.dns_dominance = 0.9 + static_cast<double>(rng() % 11) / 100.0;
        sc.devices.push_back(d);
    }
    int plain = 2 + static_cast<int>(rng() % 2);
    for (int i = 0; i < plain; ++i) {
        DeviceSpec d;
        d.name = "ws-" + std::to_string(i);
        d.mac = mac_from(kBolt, 0x10 + n++);
        d.persona = Persona::Workstation;
        d.owner = "p" + std::to_string(i + 1);
        d.device_class = "workstation";
        d.dns_queries = 8 + static_cast<int>(rng() % 10);
        d.dns_dominance = 0.05 + static_cast<double>(rng() % 5) * 0.05;
        sc.devices.push_back(d);
    }
    // concentrated but too quiet to count
    DeviceSpec edge;
    edge.name = "edge-quiet";
    edge.mac = mac_from(kDyna, 0x10 + n++);
    edge.persona = Persona::IoTCamera;
    edge.vendor = "Dyna";
    edge.device_class = "camera";
    edge.behavior = "idle";
    edge.dns_queries = 4;
    edge.dns_dominance = 0.95;
    sc.devices.push_back(edge);
    return sc;
}

Scenario random_policy_scenario(uint32_t seed) {
    std::mt19937 rng(seed);
    Scenario sc;
    sc.name = "policy-" + std::to_string(seed);
    sc.start_ts = 1767254400 + static_cast<double>(seed) * 3600;
    sc.duration_s = 1800;
    sc.devices.push_back(gateway_device());

    int n = 0x10;
    DeviceSpec rogue;
    rogue.name = "rogue";
    rogue.mac = mac_from(kCirrus, n++);
    rogue.persona = Persona::PhoneDualUse;
    rogue.registered = false;
    rogue.dns_queries = 6;
    sc.devices.push_back(rogue);
    sc.policies.push_back(require_registered("reg-1"));

    if (rng() % 2) {
        DeviceSpec d;
        d.name = "revoked";
        d.mac = mac_from(kBolt, n++);
        d.persona = Persona::Workstation;
        d.owner = "p1";
        d.device_class = "workstation";
        d.authorized = false;
        d.dns_queries = 6;
        sc.devices.push_back(d);
    }
    if (rng() % 2) {
        DeviceSpec d;
        d.name = "assistant";
        d.mac = mac_from(kDyna, n++);
        d.persona = Persona::IoTCamera;
        d.vendor = "Dyna";
        d.device_class = "voice_assistant";
        d.behavior = "idle";
        d.dns_queries = 8;
        sc.devices.push_back(d);
        PolicyRule r;
        r.rule_id = "cls-1";
        r.kind = PolicyKind::ForbidDeviceClass;
        r.device_class = "voice_assistant";
        sc.policies.push_back(r);
    }
    if (rng() % 2) {
        DeviceSpec d;
        d.name = "exfil";
        d.mac = mac_from(kBolt, n++);
        d.persona = Persona::Workstation;
        d.owner = "p2";
        d.device_class = "workstation";
        d.bad_geo_flows = 1 + static_cast<int>(rng() % 3);
        d.dns_queries = 6;
        sc.devices.push_back(d);
        PolicyRule r;
        r.rule_id = "geo-1";
        r.kind = PolicyKind::ForbidDestGeo;
        r.countries = {"ru"};
        sc.policies.push_back(r);
    }
    if (rng() % 2) {
        DeviceSpec d;
        d.name = "lookup-bad";
        d.mac = mac_from(kBolt, n++);
        d.persona = Persona::Workstation;
        d.owner = "p3";
        d.device_class = "workstation";
        d.bad_suffix_queries = 1 + static_cast<int>(rng() % 3);
        d.dns_queries = 6;
        sc.devices.push_back(d);
        PolicyRule r;
        r.rule_id = "sfx-1";
        r.kind = PolicyKind::ForbidDomainSuffix;
        r.suffixes = {"badcorp.net"};
        sc.policies.push_back(r);
    }
    if (rng() % 2) {
        DeviceSpec d;
        d.name = "legacy-web";
        d.mac = mac_from(kBolt, n++);
        d.persona = Persona::Workstation;
        d.owner = "p4";
        d.device_class = "workstation";
        d.cleartext_gets = 1 + static_cast<int>(rng() % 2);
        d.dns_queries = 6;
        sc.devices.push_back(d);
        PolicyRule r;
        r.rule_id = "enc-1";
        r.kind = PolicyKind::RequireEncrypted;
        sc.policies.push_back(r);
    }
    return sc;
}

Scenario random_behavior_scenario(uint32_t seed) {
    std::mt19937 rng(seed);
    Scenario sc;
    sc.name = "behavior-" + std::to_string(seed);
    sc.start_ts = 1767254400 + static_cast<double>(seed) * 3600;
    sc.duration_s = 660 + static_cast<double>(rng() % 5) * 60;

    const char* cycle[3] = {"beacon", "stream", "idle"};
    int count = 3 + static_cast<int>(rng() % 4);
    for (int i = 0; i < count; ++i) {
        DeviceSpec d;
        d.name = "node-" + std::to_string(i);
        d.mac = mac_from(i % 2 ? kAcme : kDyna, 0x10 + i);
        d.persona = Persona::Server;  // no protocol chatter, just the pattern
        d.dhcp = false;
        d.static_ip = Ipv4Address::parse("10.0.1." + std::to_string(10 + i));
        d.device_class = "sensor";
        d.behavior = cycle[(static_cast<int>(seed) + i) % 3];
        sc.devices.push_back(d);
    }
    return sc;
}

Scenario random_occupancy_scenario(uint32_t seed) {
    std::mt19937 rng(seed);
    Scenario sc;
    sc.name = "occupancy-" + std::to_string(seed);
    sc.start_ts = 1767254400 + static_cast<double>(seed) * 3600;
    sc.duration_s = 3600;
    sc.occupancy_window_s = 300;
    sc.devices.push_back(gateway_device());

    int persons = 1 + static_cast<int>(seed % 10);
    int n = 0x10;
    for (int p = 0; p < persons; ++p) {
        int devs = 1 + static_cast<int>(rng() % 3);
        for (int k = 0; k < devs; ++k) {
            DeviceSpec d;
            d.name = "p" + std::to_string(p + 1) + "-dev" + std::to_string(k);
            d.mac = mac_from(k % 2 ? kCirrus : kBolt, n++);
            d.persona = Persona::Workstation;
            d.owner = "p" + std::to_string(p + 1);
            d.device_class = "workstation";
            d.dns_queries = 0;
            d.cleartext_gets = 0;
            d.behavior = "idle";  // sporadic presence, so windows can go quiet
            if (persons <= 2) {
                // trap a guaranteed silent stretch in the middle of the day
                d.active_start = k % 2 ? 2700.0 : 0.0;
                d.active_end = k % 2 ? 3600.0 : 900.0;
            } else {
                double from = static_cast<double>(rng() % 7) * 300;
                double len = 600 + static_cast<double>(rng() % 4) * 300;
                d.active_start = from;
                d.active_end = std::min(3600.0, from + len);
            }
            sc.devices.push_back(d);
        }
    }
    if (rng() % 2) {
        DeviceSpec d;  // ownerless but registered: lands in the unattributed tally
        d.name = "hallway-cam";
        d.mac = mac_from(kAcme, n++);
        d.persona = Persona::IoTCamera;
        d.device_class = "camera";
        d.behavior = "idle";
        d.dns_queries = 5;
        sc.devices.push_back(d);
    }
    return sc;
}

Scenario big_scenario(uint64_t target_packets) {
    Scenario sc;
    sc.name = "big-" + std::to_string(target_packets);
    sc.start_ts = 1767254400;
    // two streaming cameras carry most of the volume at ~132 packets each
    // per minute; size the day so the total clears the target
    double minutes = static_cast<double>(target_packets) / 260.0;
    sc.duration_s = std::max(1800.0, (minutes + 1) * 60.0);
    sc.devices.push_back(gateway_device());

    for (int i = 0; i < 2; ++i) {
        DeviceSpec cam;
        cam.name = "cam-" + std::to_string(i);
        cam.mac = mac_from(kAcme, 0x10 + i);
        cam.persona = Persona::IoTCamera;
        cam.device_class = "camera";
        cam.behavior = "stream";
        sc.devices.push_back(cam);
    }
    for (int i = 0; i < 2; ++i) {
        DeviceSpec ws;
        ws.name = "ws-" + std::to_string(i);
        ws.mac = mac_from(kBolt, 0x20 + i);
        ws.persona = Persona::Workstation;
        ws.owner = "p" + std::to_string(i + 1);
        ws.device_class = "workstation";
        sc.devices.push_back(ws);
    }
    return sc;
}

}  // namespace netsight::gen
