// Copyright (c) 2026 Netsight Contributors
// SPDX-License-Identifier: Apache-2.0
//
// Scenario-driven capture synthesis. Every labeled fact in the sidecar is
// either scheduled directly (identities, violations, epoch cuts) or measured
// back from the emitted frame ledger with the same arithmetic the analyzers
// use (occupancy, behavior), so the labels are exact by construction.

#include "netsight/trafficgen.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>
#include <sstream>

#include "netsight/analyzers.hpp"
#include "netsight/pipeline.hpp"
#include "netsight/wire.hpp"

namespace netsight::gen {
namespace {

using nlohmann::json;

constexpr int64_t kUs = 1'000'000;
constexpr int64_t kWindowUs = 60 * kUs;  // behavior window, analyzer default

int64_t to_us(double s) { return std::llround(s * 1e6); }

MacAddress mac_of(const char* text) { return MacAddress::parse(text).value(); }
Ipv4Address ip_of(const char* text) { return Ipv4Address::parse(text).value(); }

// --- fixture universe -------------------------------------------------
// Four gadget vendors with consistent OUI prefix, home domain, DHCP vendor
// class, TLS stack, and certificate issuer, so all manufacturer evidence
// routes agree on the canonical name.

struct VendorInfo {
    const char* name;    // canonical org name
    const char* prefix;  // oui, "aa:bb:cc"
    const char* domain;
    const char* issuer;  // certificate issuer CN
    const char* stack;   // fingerprint table value
    std::vector<uint16_t> ciphers;
};

const std::vector<VendorInfo>& vendors() {
    static const std::vector<VendorInfo> v = {
        {"Acme", "02:ac:10", "acmedevices.com", "Acme Root CA", "embedded-acme",
         {0xc02b, 0xc02f}},
        {"Bolt", "02:b0:17", "boltlabs.com", "Bolt CA", "desktop-bolt",
         {0x1301, 0x1302, 0x1303}},
        {"Cirrus", "02:c1:55", "cirrusmobile.com", "Cirrus Root CA",
         "mobile-cirrus", {0x1301, 0xc02c}},
        {"Dyna", "02:d7:aa", "dynahome.com", "Dyna Root CA", "embedded-dyna",
         {0xc02f, 0xcca8}},
    };
    return v;
}

const VendorInfo* vendor_named(const std::string& name) {
    for (const auto& v : vendors())
        if (name == v.name) return &v;
    return nullptr;
}

struct FillerOrg {
    const char* suffix;
    const char* org;
};
constexpr FillerOrg kFillers[4] = {
    {"cloudco.net", "CloudCo"},
    {"tracker.io", "AdCorp"},
    {"searchx.com", "SearchX"},
    {"streamnet.tv", "MediaNet"},
};

// Externals: 203.0.113/24 and 93.184.216/24 carry a US geo row, the
// 198.51.100/24 block is tagged RU and only planted geo offenders touch it.
const char* kWebServer = "203.0.113.80";
const char* kSinkHost = "203.0.113.200";
const char* kGeoOffenderHost = "198.51.100.9";
const char* kBadSuffix = "badcorp.net";

// --- persona knobs -----------------------------------------------------

struct Knobs {
    const VendorInfo* vendor = nullptr;
    int queries = 0;
    double dominance = 0.0;
    std::string behavior;
    std::string ua;
    int gets = 0;
    bool tls = false;
    bool cert = false;
    std::string vclass;  // dhcp option 60
};

std::string vclass_for(Persona p, const VendorInfo& v) {
    switch (p) {
        case Persona::Workstation: return std::string(v.name) + "Works 3.1";
        case Persona::IoTCamera: return std::string(v.name) + "Cam 1.0";
        case Persona::Printer: return std::string(v.name) + "Print OS 2.1";
        case Persona::PhoneDualUse: return std::string(v.name) + "OS 14";
        case Persona::Gateway:
        case Persona::Server: return std::string(v.name) + "Net 1.0";
    }
    return v.name;
}

Knobs knobs_for(const DeviceSpec& d) {
    Knobs k;
    const char* default_vendor = "Bolt";
    switch (d.persona) {
        case Persona::Workstation:
            k.queries = 24;
            k.dominance = 0.25;
            k.behavior = "interactive";
            k.ua = "BoltBrowser/7.0 (WorkOS 3.1)";
            k.tls = true;
            break;
        case Persona::IoTCamera:
            default_vendor = "Acme";
            k.queries = 12;
            k.dominance = 1.0;
            k.behavior = "beacon";
            k.tls = true;
            k.cert = true;
            break;
        case Persona::Printer:
            default_vendor = "Acme";
            k.queries = 3;
            k.dominance = 1.0;
            k.behavior = "idle";
            k.ua = "AcmePrint/2.1";
            k.gets = 1;
            break;
        case Persona::PhoneDualUse:
            default_vendor = "Cirrus";
            k.queries = 16;
            k.dominance = 0.3;
            k.behavior = "interactive";
            k.ua = "CirrusWeb/5.0 (CirrusOS 14)";
            k.tls = true;
            break;
        case Persona::Gateway:
        case Persona::Server: break;
    }
    const std::string vname = d.vendor.empty() ? default_vendor : d.vendor;
    k.vendor = vendor_named(vname);
    if (!k.vendor)
        throw InvalidScenario("device '" + d.name + "': unknown vendor '" +
                              vname + "'");
    if (d.dns_queries >= 0) k.queries = d.dns_queries;
    if (d.dns_dominance >= 0) k.dominance = d.dns_dominance;
    if (!d.behavior.empty()) k.behavior = d.behavior;
    if (d.cleartext_gets >= 0) k.gets = d.cleartext_gets;
    k.vclass = vclass_for(d.persona, *k.vendor);
    return k;
}

// attribute labels mined from user agents; mirrors ua_rules.json below
struct UaFacts {
    const char* browser;
    const char* os;
    const char* device_type;
};
UaFacts ua_facts(const std::string& ua) {
    if (ua.rfind("BoltBrowser/", 0) == 0) return {"BoltBrowser", "WorkOS", ""};
    if (ua.rfind("AcmePrint/", 0) == 0) return {"", "AcmePrint OS", "printer"};
    if (ua.rfind("CirrusWeb/", 0) == 0) return {"CirrusWeb", "CirrusOS", ""};
    return {"", "", ""};
}

// --- frame scheduling ---------------------------------------------------

struct Frame {
    int64_t ts_us = 0;
    uint64_t seq = 0;  // emission order, the tie-break for equal timestamps
    int sender = -1;   // device index, -1 = external/unattributed
    std::vector<uint8_t> bytes;
};

struct AckEvent {  // dhcp lease grants, the raw material for epoch cuts
    int64_t ts_us = 0;
    Ipv4Address ip;
    std::string key;
};

std::vector<uint8_t> payload_of(int len, uint8_t fill) {
    return std::vector<uint8_t>(static_cast<size_t>(len), fill);
}

class Builder {
  public:
    Builder(const Scenario& sc, uint32_t seed) : sc_(sc), seed_(seed) {}

    Generated run();

  private:
    struct Dev {
        Knobs knobs;
        Ipv4Address ip;       // address while active
        std::string key;      // expected device_key
        int64_t as_us = 0;    // active span start
        int64_t ae_us = 0;    // full-window end of scheduled activity
        int64_t windows = 0;  // behavior windows inside the span
    };

    void validate();
    void assign_addresses();
    std::vector<Frame> emit_device(size_t i, std::mt19937& rng,
                                   std::vector<AckEvent>& acks);
    void emit_dhcp(size_t i, std::vector<Frame>& out,
                   std::vector<AckEvent>& acks);
    void emit_dns(size_t i, std::mt19937& rng, std::vector<Frame>& out);
    void emit_http(size_t i, std::mt19937& rng, std::vector<Frame>& out);
    void emit_tls(size_t i, std::vector<Frame>& out);
    void emit_extras(size_t i, std::mt19937& rng, std::vector<Frame>& out);
    void emit_pattern(size_t i, std::mt19937& rng, std::vector<Frame>& out);
    bool pattern_realized(size_t i, const std::vector<Frame>& frames) const;

    void push(std::vector<Frame>& out, int64_t ts_us, int sender,
              std::vector<uint8_t> bytes) {
        out.push_back(Frame{ts_us, seq_++, sender, std::move(bytes)});
    }

    KnowledgeBundle build_knowledge(std::map<std::string, std::string>& files);
    void build_sidecar(Generated& g, const std::vector<AckEvent>& acks);

    const Scenario& sc_;
    uint32_t seed_;
    uint64_t seq_ = 0;
    std::vector<Dev> dev_;
    std::vector<Frame> frames_;
    int gw_ = -1;
    int server_ = -1;
    MacAddress sink_mac_ = mac_of("02:00:00:00:00:ee");
    Ipv4Address sink_ip_ = ip_of(kSinkHost);
};

void Builder::validate() {
    if (sc_.occupancy_window_s <= 0)
        throw InvalidScenario("occupancy window must be positive");
    if (!sc_.devices.empty() && sc_.duration_s <= 0)
        throw InvalidScenario("scenario duration must be positive");

    std::set<std::string> names;
    std::set<MacAddress> macs;
    std::set<Ipv4Address> statics;
    bool needs_gateway = false;
    for (const auto& d : sc_.devices) {
        if (d.name.empty()) throw InvalidScenario("device with empty name");
        if (!names.insert(d.name).second)
            throw InvalidScenario("duplicate device name '" + d.name + "'");
        if (!macs.insert(d.mac).second)
            throw InvalidScenario("duplicate mac " + d.mac.to_string());
        if (!d.dhcp && !d.static_ip)
            throw InvalidScenario("device '" + d.name +
                                  "' is static but has no static_ip");
        if (d.dhcp && d.static_ip)
            throw InvalidScenario("device '" + d.name +
                                  "' cannot be both dhcp and static");
        if (!d.dhcp && d.lease_ip)
            throw InvalidScenario("device '" + d.name +
                                  "' has a lease pin but no dhcp");
        if (d.static_ip && !statics.insert(*d.static_ip).second)
            throw InvalidScenario("static address " + d.static_ip->to_string() +
                                  " assigned twice");
        if (d.dns_dominance > 1.0)
            throw InvalidScenario("device '" + d.name +
                                  "': dominance above 1");
        if (d.renew_every_s < 0 || d.bad_geo_flows < 0 ||
            d.bad_suffix_queries < 0)
            throw InvalidScenario("device '" + d.name +
                                  "': negative traffic knob");
        double as = d.active_start.value_or(0);
        double ae = d.active_end.value_or(sc_.duration_s);
        if (as < 0 || ae > sc_.duration_s || ae <= as)
            throw InvalidScenario("device '" + d.name +
                                  "': active window outside the scenario");
        Knobs k = knobs_for(d);
        if (!k.behavior.empty() && k.behavior != "beacon" &&
            k.behavior != "stream" && k.behavior != "idle" &&
            k.behavior != "interactive")
            throw InvalidScenario("device '" + d.name +
                                  "': unknown behavior '" + k.behavior + "'");
        int64_t span_windows = (to_us(ae) - to_us(as)) / kWindowUs;
        if (!k.behavior.empty() && span_windows < 3)
            throw InvalidScenario("device '" + d.name +
                                  "': behavior needs at least 3 windows");
        if (k.behavior == "beacon" && span_windows < 10)
            throw InvalidScenario("device '" + d.name +
                                  "': beacon needs at least 10 windows");
        if (d.dhcp || k.queries > 0 || k.gets > 0 || k.tls ||
            d.bad_suffix_queries > 0 || d.bad_geo_flows > 0)
            needs_gateway = true;
        if (d.persona == Persona::Gateway && d.dhcp)
            throw InvalidScenario("gateway '" + d.name + "' must be static");
    }
    if (needs_gateway) {
        bool found = false;
        for (const auto& d : sc_.devices)
            if (d.persona == Persona::Gateway && d.static_ip) found = true;
        if (!found)
            throw InvalidScenario(
                "dhcp/dns/web traffic requires a static gateway device");
    }
}

void Builder::assign_addresses() {
    dev_.resize(sc_.devices.size());
    // pinned and pooled leases; overlapping tenants may not share an address
    std::set<Ipv4Address> taken;
    for (const auto& d : sc_.devices)
        if (d.static_ip) taken.insert(*d.static_ip);
    uint32_t pool = ip_of("10.0.0.100").value;
    struct Tenancy {
        Ipv4Address ip;
        int64_t as, ae;
        std::string name;
    };
    std::vector<Tenancy> tenancies;
    for (size_t i = 0; i < sc_.devices.size(); ++i) {
        const auto& d = sc_.devices[i];
        Dev& v = dev_[i];
        v.knobs = knobs_for(d);
        v.as_us = to_us(sc_.start_ts + d.active_start.value_or(0)) +
                  static_cast<int64_t>(i);  // stagger to keep anchors unique
        int64_t raw_end = to_us(sc_.start_ts + d.active_end.value_or(sc_.duration_s));
        v.windows = std::max<int64_t>(1, (raw_end - v.as_us) / kWindowUs);
        v.ae_us = v.as_us + v.windows * kWindowUs - 1000;
        if (d.static_ip) {
            v.ip = *d.static_ip;
            v.key = v.ip.to_string() + "#0";
        } else {
            if (d.lease_ip) {
                v.ip = *d.lease_ip;
            } else {
                while (taken.count(Ipv4Address{pool})) ++pool;
                v.ip = Ipv4Address{pool++};
            }
            v.key = d.mac.to_string();
            for (const auto& t : tenancies)
                if (t.ip == v.ip && v.as_us < t.ae && t.as < v.ae_us)
                    throw InvalidScenario("lease " + v.ip.to_string() +
                                          " overlaps between '" + t.name +
                                          "' and '" + d.name + "'");
            if (taken.count(v.ip) && d.lease_ip)
                throw InvalidScenario("lease " + v.ip.to_string() +
                                      " collides with a static address");
            tenancies.push_back({v.ip, v.as_us, v.ae_us, d.name});
        }
        if (d.persona == Persona::Gateway && gw_ < 0) gw_ = static_cast<int>(i);
        if (d.persona == Persona::Server && server_ < 0)
            server_ = static_cast<int>(i);
    }
}

void Builder::emit_dhcp(size_t i, std::vector<Frame>& out,
                        std::vector<AckEvent>& acks) {
    const auto& d = sc_.devices[i];
    const Dev& v = dev_[i];
    const auto& gd = sc_.devices[gw_];
    const Dev& gv = dev_[gw_];
    const MacAddress bcast = mac_of("ff:ff:ff:ff:ff:ff");
    const Ipv4Address zero{}, allones{0xFFFFFFFF};
    uint32_t xid = 0x5000 + static_cast<uint32_t>(i) * 16;

    auto client_msg = [&](int64_t ts, uint8_t msg_type, Ipv4Address ci,
                          bool broadcast) {
        wire::DhcpFields f;
        f.op = 1;
        f.xid = xid;
        f.client_mac = d.mac;
        f.ciaddr = ci;
        f.msg_type = msg_type;
        f.hostname = d.name;
        f.vendor_class = v.knobs.vclass;
        f.param_req_list = std::vector<uint8_t>{1, 3, 6};
        push(out, ts, static_cast<int>(i),
             wire::frame_udp(d.mac, broadcast ? bcast : gd.mac,
                             broadcast ? zero : v.ip,
                             broadcast ? allones : gv.ip, 68, 67,
                             wire::dhcp_message(f)));
    };
    auto server_msg = [&](int64_t ts, uint8_t msg_type, bool broadcast) {
        wire::DhcpFields f;
        f.op = 2;
        f.xid = xid;
        f.client_mac = d.mac;
        f.yiaddr = v.ip;
        f.msg_type = msg_type;
        push(out, ts, gw_,
             wire::frame_udp(gd.mac, broadcast ? bcast : d.mac, gv.ip,
                             broadcast ? allones : v.ip, 67, 68,
                             wire::dhcp_message(f)));
        if (msg_type == 5) acks.push_back({ts, v.ip, v.key});
    };

    client_msg(v.as_us, 1, zero, true);              // discover
    server_msg(v.as_us + 800, 2, true);              // offer
    client_msg(v.as_us + 1600, 3, zero, true);       // request
    server_msg(v.as_us + 2400, 5, true);             // ack
    if (d.renew_every_s > 0) {
        for (int64_t t = v.as_us + to_us(d.renew_every_s); t < v.ae_us;
             t += to_us(d.renew_every_s)) {
            ++xid;
            client_msg(t, 3, v.ip, false);  // unicast renewal
            server_msg(t + 1000, 5, false);
        }
    }
}

void Builder::emit_dns(size_t i, std::mt19937& rng, std::vector<Frame>& out) {
    const auto& d = sc_.devices[i];
    const Dev& v = dev_[i];
    const Knobs& k = v.knobs;
    int owned = k.queries;
    int noise = owned / 5;
    int vendor_q = 0, filler_q = 0, filler_orgs = 0;
    if (owned > 0) {
        vendor_q = static_cast<int>(std::lround(k.dominance * owned));
        vendor_q = std::clamp(vendor_q, 0, owned);
        filler_q = owned - vendor_q;
        filler_orgs = k.dominance >= 0.8 ? 1 : 4;
    }

    std::vector<std::string> names;
    for (int j = 0; j < vendor_q; ++j)
        names.push_back("h" + std::to_string(j) + "." + k.vendor->domain);
    for (int j = 0; j < filler_q; ++j)
        names.push_back("s" + std::to_string(j) + "." +
                        kFillers[j % filler_orgs].suffix);
    for (int j = 0; j < noise; ++j)
        names.push_back("n" + std::to_string(j) + ".example");
    for (int j = 0; j < d.bad_suffix_queries; ++j)
        names.push_back("x" + std::to_string(j) + "." + kBadSuffix);
    if (names.empty()) return;
    std::shuffle(names.begin(), names.end(), rng);

    const auto& gd = sc_.devices[gw_];
    const Dev& gv = dev_[gw_];
    int64_t lo = v.as_us + 3 * kUs, hi = v.ae_us - 2 * kUs;
    if (hi <= lo) hi = lo + 1;
    std::uniform_int_distribution<int64_t> when(lo, hi);
    uint16_t src_port = static_cast<uint16_t>(40000 + i);
    uint16_t id = 1;
    for (const auto& name : names) {
        int64_t t = when(rng);
        push(out, t, static_cast<int>(i),
             wire::frame_udp(d.mac, gd.mac, v.ip, gv.ip, src_port, 53,
                             wire::dns_query(id, name)));
        // answer with a stable per-name address outside the flagged block
        uint32_t h = 10;
        for (char c : name) h = h * 31 + static_cast<uint8_t>(c);
        Ipv4Address answer{ip_of("93.184.216.0").value + 10 + h % 200};
        push(out, t + 1500, gw_,
             wire::frame_udp(gd.mac, d.mac, gv.ip, v.ip, 53, src_port,
                             wire::dns_response(id, name, 1, {answer})));
        ++id;
    }
}

void Builder::emit_http(size_t i, std::mt19937& rng, std::vector<Frame>& out) {
    const auto& d = sc_.devices[i];
    const Dev& v = dev_[i];
    if (v.knobs.gets <= 0) return;
    const auto& gd = sc_.devices[gw_];
    int64_t lo = v.as_us + 4 * kUs, hi = v.ae_us - 2 * kUs;
    if (hi <= lo) hi = lo + 1;
    std::uniform_int_distribution<int64_t> when(lo, hi);
    for (int j = 0; j < v.knobs.gets; ++j) {
        wire::TcpFields f;
        f.src_port = static_cast<uint16_t>(41000 + i * 8 + j);
        f.dst_port = 80;
        f.seq = 1000;
        f.flags = 0x18;  // PSH|ACK
        std::string req = wire::http_request("GET", "/p" + std::to_string(j),
                                             "portal.example", v.knobs.ua);
        push(out, when(rng), static_cast<int>(i),
             wire::frame_tcp(d.mac, gd.mac, v.ip, ip_of(kWebServer), f,
                             std::vector<uint8_t>(req.begin(), req.end())));
    }
}

void Builder::emit_tls(size_t i, std::vector<Frame>& out) {
    const auto& d = sc_.devices[i];
    const Dev& v = dev_[i];
    const Knobs& k = v.knobs;
    if (!k.tls) return;
    const auto& gd = sc_.devices[gw_];
    size_t vendor_idx = static_cast<size_t>(k.vendor - vendors().data());
    Ipv4Address cloud{ip_of("203.0.113.10").value +
                      static_cast<uint32_t>(vendor_idx)};
    int64_t t = v.as_us + (v.ae_us - v.as_us) / 3;
    wire::TcpFields f;
    f.src_port = static_cast<uint16_t>(42000 + i);
    f.dst_port = 443;
    f.seq = 2000;
    f.flags = 0x18;
    push(out, t, static_cast<int>(i),
         wire::frame_tcp(d.mac, gd.mac, v.ip, cloud, f,
                         wire::tls_client_hello(
                             k.vendor->ciphers,
                             "cloud." + std::string(k.vendor->domain))));
    if (k.cert) {
        wire::TcpFields r;
        r.src_port = 443;
        r.dst_port = f.src_port;
        r.seq = 9000;
        r.flags = 0x18;
        push(out, t + 2000, -1,
             wire::frame_tcp(gd.mac, d.mac, cloud, v.ip, r,
                             wire::tls_certificate(
                                 k.vendor->issuer,
                                 "cloud." + std::string(k.vendor->domain))));
    }
}

void Builder::emit_extras(size_t i, std::mt19937& rng,
                          std::vector<Frame>& out) {
    const auto& d = sc_.devices[i];
    const Dev& v = dev_[i];
    // flows toward the flagged country block, one per source port
    if (d.bad_geo_flows > 0) {
        const auto& gd = sc_.devices[gw_];
        int64_t lo = v.as_us + 5 * kUs, hi = v.ae_us - kUs;
        if (hi <= lo) hi = lo + 1;
        std::uniform_int_distribution<int64_t> when(lo, hi);
        for (int j = 0; j < d.bad_geo_flows; ++j)
            push(out, when(rng), static_cast<int>(i),
                 wire::frame_udp(d.mac, gd.mac, v.ip, ip_of(kGeoOffenderHost),
                                 static_cast<uint16_t>(43000 + i * 4 + j),
                                 7777, payload_of(200, 0x42)));
    }
    // workstations exercise the file server, feeding the dependency map
    if (d.persona == Persona::Workstation && server_ >= 0) {
        const auto& sd = sc_.devices[server_];
        const Dev& sv = dev_[server_];
        int64_t span = v.ae_us - v.as_us;
        for (int j = 0; j < 5; ++j) {
            int64_t t = v.as_us + span * (j + 1) / 6;
            uint16_t sport = static_cast<uint16_t>(44000 + i * 8 + j);
            push(out, t, static_cast<int>(i),
                 wire::frame_udp(d.mac, sd.mac, v.ip, sv.ip, sport, 445,
                                 payload_of(400, 0x51)));
            push(out, t + 800, server_,
                 wire::frame_udp(sd.mac, d.mac, sv.ip, v.ip, 445, sport,
                                 payload_of(900, 0x52)));
        }
    }
}

void Builder::emit_pattern(size_t i, std::mt19937& rng,
                           std::vector<Frame>& out) {
    const auto& d = sc_.devices[i];
    const Dev& v = dev_[i];
    const std::string& b = v.knobs.behavior;
    if (b.empty()) return;
    // leased sources must not speak before their ack lands
    const int64_t t0 = v.as_us + (d.dhcp ? 10'000 : 0);
    const MacAddress dst_mac = gw_ >= 0 ? sc_.devices[gw_].mac : sink_mac_;
    auto udp = [&](int64_t ts, int payload, uint16_t dst_port) {
        push(out, ts, static_cast<int>(i),
             wire::frame_udp(d.mac, dst_mac, v.ip, sink_ip_,
                             static_cast<uint16_t>(45000 + i), dst_port,
                             payload_of(payload, 0x7e)));
    };
    std::uniform_int_distribution<int> jitter_b(-60, 60);
    if (b == "beacon") {
        // a short burst every other window reads as a clean lag-2 period
        for (int64_t w = 0; w < v.windows; w += 2) {
            int64_t base = t0 + w * kWindowUs;
            for (int j = 0; j < 3; ++j)
                udp(base + j * 15'000, 940 + jitter_b(rng), 8883);
        }
    } else if (b == "stream") {
        // ~180 KiB per window, comfortably above the volume threshold
        for (int64_t w = 0; w < v.windows; ++w) {
            int64_t base = t0 + w * kWindowUs;
            int pkts = 132 + (jitter_b(rng) / 12);
            for (int j = 0; j < pkts; ++j)
                udp(base + j * (kWindowUs / (pkts + 1)), 1372, 9999);
        }
    } else if (b == "idle") {
        // sparse and irregular: a power-on blip, then rare lone packets
        udp(t0, 120, 8883);
        std::uniform_int_distribution<int> gate(0, 99);
        std::uniform_int_distribution<int64_t> off(kUs, kWindowUs - 2 * kUs);
        for (int64_t w = 1; w < v.windows; ++w)
            if (gate(rng) < 25)
                udp(t0 + w * kWindowUs + off(rng), 80 + gate(rng), 8883);
    } else if (b == "interactive") {
        // mid-sized random bursts, no period and no dominating volume
        std::uniform_int_distribution<int> gate(0, 99);
        std::uniform_int_distribution<int> chunks(2, 7);
        std::uniform_int_distribution<int64_t> off(0, kWindowUs - 2 * kUs);
        for (int64_t w = 0; w < v.windows; ++w) {
            if (w > 0 && gate(rng) < 30) continue;
            int n = chunks(rng);
            for (int j = 0; j < n; ++j)
                udp(t0 + w * kWindowUs + (w == 0 && j == 0 ? 0 : off(rng)),
                    1200, 9999);
        }
    }
}

bool Builder::pattern_realized(size_t i, const std::vector<Frame>& frames) const {
    const Dev& v = dev_[i];
    if (v.knobs.behavior.empty()) return true;
    std::vector<std::pair<Timestamp, uint32_t>> pkts;
    for (const auto& f : frames)
        if (f.sender == static_cast<int>(i))
            pkts.push_back({Timestamp{f.ts_us},
                            static_cast<uint32_t>(f.bytes.size() - 14)});
    std::sort(pkts.begin(), pkts.end());
    auto prof = characterize_behavior(pkts, {});
    if (!prof) return false;
    BehaviorMode want = BehaviorMode::Idle;
    if (v.knobs.behavior == "beacon") want = BehaviorMode::PeriodicBeacon;
    else if (v.knobs.behavior == "stream") want = BehaviorMode::Streaming;
    else if (v.knobs.behavior == "interactive") want = BehaviorMode::Interactive;
    return prof->mode == want;
}

std::vector<Frame> Builder::emit_device(size_t i, std::mt19937& rng,
                                        std::vector<AckEvent>& acks) {
    std::vector<Frame> out;
    if (sc_.devices[i].dhcp) emit_dhcp(i, out, acks);
    emit_dns(i, rng, out);
    emit_http(i, rng, out);
    emit_tls(i, out);
    emit_extras(i, rng, out);
    emit_pattern(i, rng, out);
    return out;
}

KnowledgeBundle Builder::build_knowledge(
    std::map<std::string, std::string>& files) {
    KnowledgeBundle kb;
    std::ostringstream oui, owners, geo, reg, fps, norm;
    oui << "# oui prefix,vendor\n";
    for (const auto& v : vendors()) {
        oui << v.prefix << "," << v.name << "\n";
        auto mac = MacAddress::parse(std::string(v.prefix) + ":00:00:00");
        kb.oui.entries[mac->oui()] = v.name;
    }
    json rules = json::array();
    auto add_rule = [&](const char* id, const char* pattern,
                        std::map<std::string, std::string> attrs) {
        json r{{"rule_id", id}, {"pattern", pattern}};
        r["attrs"] = attrs;
        rules.push_back(r);
        UaRule rule;
        rule.rule_id = id;
        rule.pattern = pattern;
        rule.re = std::regex(pattern);
        rule.attrs = std::move(attrs);
        kb.ua_rules.rules.push_back(std::move(rule));
    };
    add_rule("ua-bolt", "^BoltBrowser/",
             {{"browser", "BoltBrowser"}, {"os", "WorkOS"}});
    add_rule("ua-acmeprint", "^AcmePrint/",
             {{"os", "AcmePrint OS"}, {"device_type", "printer"}});
    add_rule("ua-cirrus", "^CirrusWeb/",
             {{"browser", "CirrusWeb"}, {"os", "CirrusOS"}});

    owners << "# suffix,org,country\n";
    for (const auto& v : vendors()) {
        owners << v.domain << "," << v.name << ",US\n";
        kb.domains.entries[v.domain] = DomainOwner{v.name, "US"};
    }
    for (const auto& f : kFillers) {
        owners << f.suffix << "," << f.org << ",US\n";
        kb.domains.entries[f.suffix] = DomainOwner{f.org, "US"};
    }

    geo << "# cidr,country\n";
    auto add_geo = [&](const char* cidr, const char* cc, uint32_t net,
                       int bits) {
        geo << cidr << "," << cc << "\n";
        kb.geo.entries.push_back(GeoEntry{net, bits, cc});
    };
    add_geo("203.0.113.0/24", "US", ip_of("203.0.113.0").value, 24);
    add_geo("93.184.216.0/24", "US", ip_of("93.184.216.0").value, 24);
    add_geo("198.51.100.0/24", "RU", ip_of("198.51.100.0").value, 24);

    reg << "# mac,owner,device_id,device_class,authorized\n";
    for (size_t i = 0; i < sc_.devices.size(); ++i) {
        const auto& d = sc_.devices[i];
        if (!d.registered) continue;
        reg << d.mac.to_string() << "," << d.owner << "," << d.name << ","
            << d.device_class << "," << (d.authorized ? "true" : "false")
            << "\n";
        kb.registry.entries[d.mac] =
            RegistryEntry{d.owner, d.name, d.device_class, d.authorized};
    }

    fps << "# fingerprint,stack\n";
    norm << "# substring,canonical\n";
    for (const auto& v : vendors()) {
        std::string fp = cipher_fingerprint(v.ciphers);
        fps << fp << "," << v.stack << "\n";
        kb.tls_fingerprints.entries[fp] = v.stack;
        std::string sub(v.name);
        for (auto& c : sub) c = static_cast<char>(std::tolower(c));
        norm << sub << "," << v.name << "\n";
        kb.vendor_norm.entries.push_back({sub, v.name});
    }

    files["oui.csv"] = oui.str();
    files["ua_rules.json"] = rules.dump(2) + "\n";
    files["domain_owners.csv"] = owners.str();
    files["geo.csv"] = geo.str();
    files["registry.csv"] = reg.str();
    files["tls_fingerprints.csv"] = fps.str();
    files["vendor_norm.csv"] = norm.str();
    return kb;
}

void Builder::build_sidecar(Generated& g, const std::vector<AckEvent>& acks) {
    Sidecar& sc = g.sidecar;
    sc.scenario_name = sc_.name;
    sc.seed = seed_;
    sc.occupancy_window_s = sc_.occupancy_window_s;
    sc.packet_count = g.records.size();

    const AnalyzerParams defaults{};
    for (size_t i = 0; i < sc_.devices.size(); ++i) {
        const auto& d = sc_.devices[i];
        const Dev& v = dev_[i];
        const Knobs& k = v.knobs;
        sc.devices.push_back(
            SidecarDevice{v.key, d.name, d.mac, d.owner, d.registered});
        auto& labels = sc.labels[v.key];

        // manufacturer truth only when the mac prefix backs the vendor
        if (MacAddress::parse(std::string(k.vendor->prefix) + ":00:00:00")
                ->oui() == d.mac.oui())
            labels["manufacturer"] = k.vendor->name;
        if (d.registered && !d.owner.empty()) labels["owner"] = d.owner;
        if (d.registered && !d.device_class.empty())
            labels["device_type"] = d.device_class;
        UaFacts mined = ua_facts(k.ua);
        if (k.gets > 0) {
            if (*mined.browser) labels["browser"] = mined.browser;
            if (*mined.os) labels["os"] = mined.os;
            if (*mined.device_type && !labels.count("device_type"))
                labels["device_type"] = mined.device_type;
        }
        if (k.tls && !k.vendor->ciphers.empty()) labels["stack"] = k.vendor->stack;

        // the planted query split, pushed through the dominance rule
        if (k.queries > 0) {
            int vendor_q = std::clamp(
                static_cast<int>(std::lround(k.dominance * k.queries)), 0,
                k.queries);
            int filler_q = k.queries - vendor_q;
            int filler_orgs = k.dominance >= 0.8 ? 1 : 4;
            std::map<std::string, int> per_org;
            if (vendor_q > 0) per_org[k.vendor->name] = vendor_q;
            for (int j = 0; j < filler_q; ++j)
                per_org[kFillers[j % filler_orgs].org] += 1;
            int top = 0;
            for (const auto& [org, n] : per_org) top = std::max(top, n);
            bool iot = k.queries >= defaults.iot_min_queries &&
                       static_cast<double>(top) / k.queries >=
                           defaults.iot_dominance &&
                       static_cast<int>(per_org.size()) <= defaults.iot_max_orgs;
            labels["is_iot"] = iot ? "true" : "false";
        } else {
            labels["is_iot"] = "false";
        }
        if (!k.behavior.empty()) {
            const char* mode = "idle";
            if (k.behavior == "beacon") mode = "periodic_beacon";
            else if (k.behavior == "stream") mode = "streaming";
            else if (k.behavior == "interactive") mode = "interactive";
            labels["behavior_mode"] = mode;
        }
    }

    // epoch cuts: fold lease grants per address in time order
    std::vector<AckEvent> sorted = acks;
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
        return a.ts_us != b.ts_us ? a.ts_us < b.ts_us : a.ip < b.ip;
    });
    std::map<Ipv4Address, std::string> holder;
    for (const auto& a : sorted) {
        auto it = holder.find(a.ip);
        if (it != holder.end() && it->second != a.key)
            sc.boundaries.push_back(EpochBoundary{
                a.ip, static_cast<double>(a.ts_us) / 1e6, it->second, a.key});
        holder[a.ip] = a.key;
    }

    // violations: every rule is matched against the planted device fields
    for (const auto& rule : sc_.policies) {
        for (size_t i = 0; i < sc_.devices.size(); ++i) {
            const auto& d = sc_.devices[i];
            const Knobs& k = dev_[i].knobs;
            bool hit = false;
            switch (rule.kind) {
                case PolicyKind::RequireRegistered:
                    hit = !d.registered || !d.authorized;
                    break;
                case PolicyKind::RequireEncrypted:
                    hit = k.gets > 0 && rule.cleartext_ports.count(80) > 0;
                    break;
                case PolicyKind::ForbidDeviceClass: {
                    std::string cls;
                    if (d.registered && !d.device_class.empty())
                        cls = d.device_class;
                    else if (k.gets > 0 && *ua_facts(k.ua).device_type)
                        cls = ua_facts(k.ua).device_type;
                    hit = !cls.empty() && cls == rule.device_class;
                    break;
                }
                case PolicyKind::ForbidDestGeo:
                    // planted offenders always target the RU-tagged block
                    hit = d.bad_geo_flows > 0 && rule.countries.count("ru") > 0;
                    break;
                case PolicyKind::ForbidDomainSuffix:
                    for (const auto& s : rule.suffixes)
                        if (s == kBadSuffix && d.bad_suffix_queries > 0)
                            hit = true;
                    break;
            }
            if (hit) sc.violations.push_back({rule.rule_id, dev_[i].key});
        }
    }

    // occupancy: measured from the ledger with the analyzer itself
    std::map<std::string, std::vector<Timestamp>> device_packets;
    for (const auto& f : frames_)
        if (f.sender >= 0)
            device_packets[dev_[f.sender].key].push_back(Timestamp{f.ts_us});
    std::map<std::string, std::string> owners;
    for (size_t i = 0; i < sc_.devices.size(); ++i)
        if (sc_.devices[i].registered && !sc_.devices[i].owner.empty())
            owners[dev_[i].key] = sc_.devices[i].owner;
    AnalyzerParams occ;
    occ.occupancy_window_us = sc_.occupancy_window_s * kUs;
    for (const auto& est : estimate_occupancy(device_packets, owners, occ))
        sc.occupancy.push_back(OccupancyLabel{est.start.seconds(),
                                              est.end.seconds(),
                                              est.present_persons,
                                              est.unattributed_devices});
}

Generated Builder::run() {
    validate();
    assign_addresses();

    std::vector<AckEvent> acks;
    for (size_t i = 0; i < sc_.devices.size(); ++i) {
        std::mt19937 rng(seed_ * 1000003u + static_cast<uint32_t>(i));
        bool committed = false;
        for (int attempt = 0; attempt < 8 && !committed; ++attempt) {
            std::vector<AckEvent> dev_acks;
            uint64_t seq_mark = seq_;
            std::vector<Frame> candidate = emit_device(i, rng, dev_acks);
            if (!pattern_realized(i, candidate)) {
                seq_ = seq_mark;  // discard and redraw
                continue;
            }
            for (auto& f : candidate) frames_.push_back(std::move(f));
            for (const auto& a : dev_acks) acks.push_back(a);
            committed = true;
        }
        if (!committed)
            throw SelfCheckFailure("behavior '" + dev_[i].knobs.behavior +
                                   "' not realizable for device '" +
                                   sc_.devices[i].name + "'");
    }

    std::sort(frames_.begin(), frames_.end(), [](const Frame& a, const Frame& b) {
        return a.ts_us != b.ts_us ? a.ts_us < b.ts_us : a.seq < b.seq;
    });

    // every declared device must actually appear on the wire
    std::set<int> seen;
    for (const auto& f : frames_)
        if (f.sender >= 0) seen.insert(f.sender);
    for (size_t i = 0; i < sc_.devices.size(); ++i)
        if (!seen.count(static_cast<int>(i)))
            throw InvalidScenario("device '" + sc_.devices[i].name +
                                  "' emits no traffic");

    Generated g;
    g.records.reserve(frames_.size());
    for (size_t n = 0; n < frames_.size(); ++n) {
        PacketRecord r;
        r.index = n;
        r.ts = Timestamp{frames_[n].ts_us};
        r.captured_len = static_cast<uint32_t>(frames_[n].bytes.size());
        r.original_len = r.captured_len;
        r.data = frames_[n].bytes;
        g.records.push_back(std::move(r));
    }
    g.knowledge = build_knowledge(g.knowledge_files);
    g.policies = policies_to_json(sc_.policies);
    build_sidecar(g, acks);
    return g;
}

}  // namespace

// --- persona names ------------------------------------------------------

const char* to_string(Persona p) {
    switch (p) {
        case Persona::Workstation: return "workstation";
        case Persona::IoTCamera: return "iot_camera";
        case Persona::Printer: return "printer";
        case Persona::PhoneDualUse: return "phone";
        case Persona::Gateway: return "gateway";
        case Persona::Server: return "server";
    }
    return "workstation";
}

Persona persona_from(const std::string& name) {
    if (name == "workstation") return Persona::Workstation;
    if (name == "iot_camera") return Persona::IoTCamera;
    if (name == "printer") return Persona::Printer;
    if (name == "phone") return Persona::PhoneDualUse;
    if (name == "gateway") return Persona::Gateway;
    if (name == "server") return Persona::Server;
    throw InvalidScenario("unknown persona '" + name + "'");
}

// --- scenario json -------------------------------------------------------

Scenario Scenario::from_json(const json& doc) {
    try {
        Scenario sc;
        sc.schema_version = doc.value("schema_version", 1);
        sc.name = doc.value("name", "");
        sc.start_ts = doc.value("start_ts", 0.0);
        sc.duration_s = doc.value("duration_s", 0.0);
        sc.occupancy_window_s = doc.value("occupancy_window_s", int64_t{900});
        // a scenario without a devices array is a different kind of file
        for (const auto& jd : doc.at("devices")) {
            DeviceSpec d;
            d.name = jd.value("name", "");
            auto mac = MacAddress::parse(jd.value("mac", ""));
            if (!mac)
                throw InvalidScenario("device '" + d.name + "': bad mac");
            d.mac = *mac;
            d.persona = persona_from(jd.value("persona", "workstation"));
            d.owner = jd.value("owner", "");
            d.dhcp = jd.value("dhcp", true);
            if (jd.contains("static_ip")) {
                auto ip = Ipv4Address::parse(jd["static_ip"].get<std::string>());
                if (!ip)
                    throw InvalidScenario("device '" + d.name +
                                          "': bad static_ip");
                d.static_ip = *ip;
            }
            if (jd.contains("lease_ip")) {
                auto ip = Ipv4Address::parse(jd["lease_ip"].get<std::string>());
                if (!ip)
                    throw InvalidScenario("device '" + d.name +
                                          "': bad lease_ip");
                d.lease_ip = *ip;
            }
            d.registered = jd.value("registered", true);
            d.authorized = jd.value("authorized", true);
            d.device_class = jd.value("device_class", "");
            d.vendor = jd.value("vendor", "");
            d.dns_queries = jd.value("dns_queries", -1);
            d.dns_dominance = jd.value("dns_dominance", -1.0);
            d.behavior = jd.value("behavior", "");
            d.renew_every_s = jd.value("renew_every_s", 0.0);
            d.cleartext_gets = jd.value("cleartext_gets", -1);
            d.bad_geo_flows = jd.value("bad_geo_flows", 0);
            d.bad_suffix_queries = jd.value("bad_suffix_queries", 0);
            if (jd.contains("active_start"))
                d.active_start = jd["active_start"].get<double>();
            if (jd.contains("active_end"))
                d.active_end = jd["active_end"].get<double>();
            sc.devices.push_back(std::move(d));
        }
        if (doc.contains("policies")) sc.policies = parse_policies(doc["policies"]);
        return sc;
    } catch (const InvalidScenario&) {
        throw;
    } catch (const PolicyError& e) {
        throw InvalidScenario(std::string("bad policy block: ") + e.what());
    } catch (const json::exception& e) {
        throw InvalidScenario(std::string("bad scenario document: ") + e.what());
    }
}

json Scenario::to_json() const {
    json doc;
    doc["schema_version"] = schema_version;
    doc["name"] = name;
    doc["start_ts"] = start_ts;
    doc["duration_s"] = duration_s;
    doc["occupancy_window_s"] = occupancy_window_s;
    doc["devices"] = json::array();
    for (const auto& d : devices) {
        json jd;
        jd["name"] = d.name;
        jd["mac"] = d.mac.to_string();
        jd["persona"] = to_string(d.persona);
        if (!d.owner.empty()) jd["owner"] = d.owner;
        jd["dhcp"] = d.dhcp;
        if (d.static_ip) jd["static_ip"] = d.static_ip->to_string();
        if (d.lease_ip) jd["lease_ip"] = d.lease_ip->to_string();
        jd["registered"] = d.registered;
        jd["authorized"] = d.authorized;
        if (!d.device_class.empty()) jd["device_class"] = d.device_class;
        if (!d.vendor.empty()) jd["vendor"] = d.vendor;
        if (d.dns_queries >= 0) jd["dns_queries"] = d.dns_queries;
        if (d.dns_dominance >= 0) jd["dns_dominance"] = d.dns_dominance;
        if (!d.behavior.empty()) jd["behavior"] = d.behavior;
        if (d.renew_every_s > 0) jd["renew_every_s"] = d.renew_every_s;
        if (d.cleartext_gets >= 0) jd["cleartext_gets"] = d.cleartext_gets;
        if (d.bad_geo_flows > 0) jd["bad_geo_flows"] = d.bad_geo_flows;
        if (d.bad_suffix_queries > 0)
            jd["bad_suffix_queries"] = d.bad_suffix_queries;
        if (d.active_start) jd["active_start"] = *d.active_start;
        if (d.active_end) jd["active_end"] = *d.active_end;
        doc["devices"].push_back(jd);
    }
    doc["policies"] = policies_to_json(policies);
    return doc;
}

// --- sidecar json ---------------------------------------------------------

Sidecar Sidecar::from_json(const json& doc) {
    Sidecar sc;
    sc.schema_version = doc.value("schema_version", 1);
    sc.scenario_name = doc.value("scenario", "");
    sc.seed = doc.value("seed", 0u);
    sc.packet_count = doc.value("packet_count", uint64_t{0});
    sc.occupancy_window_s = doc.value("occupancy_window_s", int64_t{900});
    for (const auto& jd : doc.value("devices", json::array())) {
        SidecarDevice d;
        d.device_key = jd.value("device_key", "");
        d.name = jd.value("name", "");
        if (jd.contains("mac")) d.mac = MacAddress::parse(jd["mac"].get<std::string>());
        d.owner = jd.value("owner", "");
        d.registered = jd.value("registered", true);
        sc.devices.push_back(std::move(d));
    }
    if (doc.contains("labels"))
        for (auto it = doc["labels"].begin(); it != doc["labels"].end(); ++it)
            for (auto a = it.value().begin(); a != it.value().end(); ++a)
                sc.labels[it.key()][a.key()] = a.value().get<std::string>();
    for (const auto& jv : doc.value("violations", json::array()))
        sc.violations.push_back({jv.value("rule_id", ""), jv.value("device_key", "")});
    for (const auto& jo : doc.value("occupancy", json::array())) {
        OccupancyLabel l;
        l.start = jo.value("start", 0.0);
        l.end = jo.value("end", 0.0);
        for (const auto& p : jo.value("persons", json::array()))
            l.persons.insert(p.get<std::string>());
        l.unattributed = jo.value("unattributed", 0);
        sc.occupancy.push_back(std::move(l));
    }
    for (const auto& jb : doc.value("epoch_boundaries", json::array())) {
        EpochBoundary b;
        b.ip = Ipv4Address::parse(jb.value("ip", "0.0.0.0")).value_or(Ipv4Address{});
        b.ts = jb.value("ts", 0.0);
        b.before_key = jb.value("before", "");
        b.after_key = jb.value("after", "");
        sc.boundaries.push_back(std::move(b));
    }
    return sc;
}

json Sidecar::to_json() const {
    json doc;
    doc["schema_version"] = schema_version;
    doc["scenario"] = scenario_name;
    doc["seed"] = seed;
    doc["packet_count"] = packet_count;
    doc["occupancy_window_s"] = occupancy_window_s;
    doc["devices"] = json::array();
    for (const auto& d : devices) {
        json jd;
        jd["device_key"] = d.device_key;
        jd["name"] = d.name;
        if (d.mac) jd["mac"] = d.mac->to_string();
        jd["owner"] = d.owner;
        jd["registered"] = d.registered;
        doc["devices"].push_back(jd);
    }
    doc["labels"] = json::object();
    for (const auto& [key, attrs] : labels) {
        json ja = json::object();
        for (const auto& [a, v] : attrs) ja[a] = v;
        doc["labels"][key] = ja;
    }
    doc["violations"] = json::array();
    for (const auto& [rule, key] : violations)
        doc["violations"].push_back({{"rule_id", rule}, {"device_key", key}});
    doc["occupancy"] = json::array();
    for (const auto& l : occupancy) {
        json jo;
        jo["start"] = l.start;
        jo["end"] = l.end;
        jo["persons"] = json::array();
        for (const auto& p : l.persons) jo["persons"].push_back(p);
        jo["unattributed"] = l.unattributed;
        doc["occupancy"].push_back(jo);
    }
    doc["epoch_boundaries"] = json::array();
    for (const auto& b : boundaries)
        doc["epoch_boundaries"].push_back({{"ip", b.ip.to_string()},
                                           {"ts", b.ts},
                                           {"before", b.before_key},
                                           {"after", b.after_key}});
    return doc;
}

std::set<std::string> Sidecar::device_keys() const {
    std::set<std::string> keys;
    for (const auto& d : devices) keys.insert(d.device_key);
    return keys;
}

// --- entry points ----------------------------------------------------------

Generated generate(const Scenario& scenario, uint32_t seed) {
    Builder b(scenario, seed);
    return b.run();
}

void verify_sidecar(const Generated& g) {
    auto fail = [](const std::string& what) { throw SelfCheckFailure(what); };

    ChainConfig cfg = ChainConfig::defaults();
    cfg.occupancy_window_us = g.sidecar.occupancy_window_s * kUs;
    PipelineResult r = run_pipeline(g.records, cfg, g.knowledge);

    if (r.stats.decode.packets != g.sidecar.packet_count)
        fail("packet count drifted from the sidecar");
    uint64_t skipped = 0;
    for (uint64_t n : r.stats.decode.skips) skipped += n;
    if (skipped != 0) fail("generated capture tripped a decoder skip");

    std::set<std::string> found;
    for (const auto& k : r.identities.device_keys()) found.insert(k);
    if (found != g.sidecar.device_keys())
        fail("recovered device set differs from the sidecar");

    for (const auto& [key, attrs] : g.sidecar.labels) {
        auto pit = r.profiles.devices.find(key);
        if (pit == r.profiles.devices.end())
            fail("no profile for labeled device " + key);
        const DeviceProfile* p = &pit->second;
        for (const auto& [attr, want] : attrs) {
            if (attr == "behavior_mode") {
                if (!p->behavior || to_string(p->behavior->mode) != want)
                    fail(key + ": behavior label '" + want + "' not recovered");
                continue;
            }
            auto it = p->attributes.find(attr);
            if (attr == "is_iot" && want == "false") {
                if (it != p->attributes.end() && it->second.value != "false")
                    fail(key + ": labeled non-iot but classified otherwise");
                continue;
            }
            if (it == p->attributes.end() || it->second.value != want)
                fail(key + ": attribute '" + attr + "' != '" + want + "'");
        }
    }

    std::set<std::pair<std::string, std::string>> want_viol(
        g.sidecar.violations.begin(), g.sidecar.violations.end());
    std::set<std::pair<std::string, std::string>> got_viol;
    for (const auto& v : evaluate_policies(parse_policies(g.policies),
                                           r.profiles, r.events, r.identities,
                                           g.knowledge))
        got_viol.insert({v.rule_id, v.device_key});
    if (want_viol != got_viol) fail("violation set differs from the sidecar");

    if (r.occupancy.size() != g.sidecar.occupancy.size())
        fail("occupancy window count differs from the sidecar");
    for (size_t i = 0; i < r.occupancy.size(); ++i) {
        const auto& est = r.occupancy[i];
        const auto& lab = g.sidecar.occupancy[i];
        if (est.start.us != to_us(lab.start) || est.end.us != to_us(lab.end) ||
            est.present_persons != lab.persons ||
            est.unattributed_devices != lab.unattributed)
            fail("occupancy window " + std::to_string(i) + " differs");
    }

    for (const auto& b : g.sidecar.boundaries) {
        int64_t cut = to_us(b.ts);
        auto before = r.identities.resolve(b.ip, Timestamp{cut - kUs});
        auto at = r.identities.resolve(b.ip, Timestamp{cut});
        auto after = r.identities.resolve(b.ip, Timestamp{cut + kUs});
        if (!before || *before != b.before_key)
            fail("address " + b.ip.to_string() + " not held by " +
                 b.before_key + " before the cut");
        if (!at || *at != b.after_key || !after || *after != b.after_key)
            fail("address " + b.ip.to_string() + " not held by " +
                 b.after_key + " from the cut onward");
    }
}

}  // namespace netsight::gen
