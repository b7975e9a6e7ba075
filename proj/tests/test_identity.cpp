// Copyright (c) 2026 Netsight Contributors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "netsight/identity.hpp"

using namespace netsight;

namespace {

const MacAddress kMacA = *MacAddress::parse("02:c0:00:00:00:0a");
const MacAddress kMacB = *MacAddress::parse("02:c0:00:00:00:0b");
const MacAddress kGwMac = *MacAddress::parse("02:c0:00:00:00:01");
const Ipv4Address kIp = *Ipv4Address::parse("10.0.0.7");
const Ipv4Address kGwIp = *Ipv4Address::parse("10.0.0.1");

DhcpEvent ack(int64_t ts_us, const MacAddress& mac, const Ipv4Address& ip) {
    DhcpEvent ev;
    ev.hdr.ts = Timestamp{ts_us};
    ev.hdr.src_mac = kGwMac;
    ev.hdr.src_ip = kGwIp;
    ev.hdr.dst_ip = ip;
    ev.msg_type = DhcpMsgType::Ack;
    ev.client_mac = mac;
    ev.assigned_ip = ip;
    return ev;
}

FrameSummary frame(int64_t ts_us, const MacAddress& src_mac, const Ipv4Address& src_ip,
                   const Ipv4Address& dst_ip) {
    FrameSummary f;
    f.ts = Timestamp{ts_us};
    f.src_mac = src_mac;
    f.dst_mac = kGwMac;
    f.src_ip = src_ip;
    f.dst_ip = dst_ip;
    f.wire_bytes = 100;
    return f;
}

constexpr int64_t kSec = 1'000'000;

}  // namespace

TEST_CASE("lease reassignment cuts epochs exactly at the ack") {
    auto idx = IdentityIndex::build(
        {ack(100 * kSec, kMacA, kIp), ack(500 * kSec, kMacB, kIp)},
        {frame(150 * kSec, kMacA, kIp, kGwIp), frame(600 * kSec, kMacB, kIp, kGwIp)});

    CHECK_EQ(*idx.resolve(kIp, Timestamp{300 * kSec}), kMacA.to_string());
    CHECK_EQ(*idx.resolve(kIp, Timestamp{600 * kSec}), kMacB.to_string());
    // boundary: the ack instant belongs to the new holder; one tick before
    // belongs to the old one
    CHECK_EQ(*idx.resolve(kIp, Timestamp{500 * kSec}), kMacB.to_string());
    CHECK_EQ(*idx.resolve(kIp, Timestamp{500 * kSec - 1}), kMacA.to_string());
    CHECK_EQ(*idx.resolve(kIp, Timestamp{100 * kSec}), kMacA.to_string());
    // before any lease: pseudo-epoch key
    CHECK_EQ(*idx.resolve(kIp, Timestamp{99 * kSec}), "10.0.0.7#0");

    const auto* devA = idx.find(kMacA.to_string());
    REQUIRE(devA);
    REQUIRE_EQ(devA->epochs.size(), 1);
    CHECK_EQ(devA->epochs[0].index, 1);
    CHECK_EQ(devA->epochs[0].start.us, 100 * kSec);
    REQUIRE(devA->epochs[0].end.has_value());
    CHECK_EQ(devA->epochs[0].end->us, 500 * kSec);

    const auto* devB = idx.find(kMacB.to_string());
    REQUIRE(devB);
    CHECK_EQ(devB->epochs[0].index, 2);
    CHECK_FALSE(devB->epochs[0].end.has_value());  // last epoch stays open
}

TEST_CASE("renewal to the same mac does not start a new epoch") {
    auto idx = IdentityIndex::build(
        {ack(100 * kSec, kMacA, kIp), ack(400 * kSec, kMacA, kIp),
         ack(900 * kSec, kMacB, kIp)},
        {});
    const auto* devA = idx.find(kMacA.to_string());
    REQUIRE(devA);
    REQUIRE_EQ(devA->epochs.size(), 1);
    CHECK_EQ(devA->epochs[0].start.us, 100 * kSec);
    CHECK_EQ(devA->epochs[0].end->us, 900 * kSec);
    CHECK_EQ(*idx.resolve(kIp, Timestamp{450 * kSec}), kMacA.to_string());
}

TEST_CASE("static devices become pseudo identities with their unique mac") {
    auto idx = IdentityIndex::build(
        {}, {frame(10 * kSec, kGwMac, kGwIp, kIp), frame(20 * kSec, kGwMac, kGwIp, kIp),
             frame(30 * kSec, kMacA, kIp, kGwIp)});

    REQUIRE_EQ(idx.devices().size(), 2);
    const auto* gw = idx.find("10.0.0.1#0");
    REQUIRE(gw);
    REQUIRE(gw->mac.has_value());
    CHECK_EQ(gw->mac->to_string(), kGwMac.to_string());
    CHECK_FALSE(gw->mac_conflict);
    CHECK_EQ(gw->frames_originated, 2);
    CHECK_EQ(gw->first_seen.us, 10 * kSec);
    CHECK_EQ(gw->last_seen.us, 20 * kSec);
    CHECK_EQ(gw->epochs[0].index, 0);
    CHECK_FALSE(gw->epochs[0].end.has_value());

    CHECK_EQ(*idx.resolve(kGwIp, Timestamp{15 * kSec}), "10.0.0.1#0");
    // resolution is total for internal addresses, even outside observed frames
    CHECK_EQ(*idx.resolve(kGwIp, Timestamp{0}), "10.0.0.1#0");
}

TEST_CASE("two macs behind one static ip flag a conflict everywhere involved") {
    auto idx = IdentityIndex::build(
        {ack(1000 * kSec, kMacB, *Ipv4Address::parse("10.0.0.9"))},
        {frame(10 * kSec, kMacA, kIp, kGwIp), frame(20 * kSec, kMacB, kIp, kGwIp),
         frame(1100 * kSec, kMacB, *Ipv4Address::parse("10.0.0.9"), kGwIp)});

    const auto* pseudo = idx.find("10.0.0.7#0");
    REQUIRE(pseudo);
    CHECK(pseudo->mac_conflict);
    CHECK_FALSE(pseudo->mac.has_value());
    // the mac-keyed identity of one of the conflicting macs is flagged too
    const auto* devB = idx.find(kMacB.to_string());
    REQUIRE(devB);
    CHECK(devB->mac_conflict);
}

TEST_CASE("external addresses resolve to nothing") {
    auto idx = IdentityIndex::build(
        {}, {frame(10 * kSec, kMacA, kIp, *Ipv4Address::parse("93.184.216.34"))});
    CHECK_FALSE(idx.resolve(*Ipv4Address::parse("93.184.216.34"), Timestamp{10 * kSec})
                    .has_value());
    CHECK_FALSE(idx.is_internal(*Ipv4Address::parse("93.184.216.34")));
    CHECK(idx.is_internal(kIp));
    // broadcast and unspecified are never internal
    CHECK_FALSE(idx.is_internal(*Ipv4Address::parse("255.255.255.255")));
    CHECK_FALSE(idx.is_internal(Ipv4Address{0}));
}

TEST_CASE("dhcp handshake frames from 0.0.0.0 attach through the client mac") {
    auto idx = IdentityIndex::build(
        {ack(100 * kSec, kMacA, kIp)},
        {frame(99 * kSec, kMacA, Ipv4Address{0}, *Ipv4Address::parse("255.255.255.255")),
         frame(200 * kSec, kMacA, kIp, kGwIp)});
    const auto* dev = idx.find(kMacA.to_string());
    REQUIRE(dev);
    CHECK_EQ(dev->frames_originated, 2);
    CHECK_EQ(dev->first_seen.us, 99 * kSec);
    // no pseudo identity for 0.0.0.0
    CHECK_EQ(idx.devices().size(), 1);
}

TEST_CASE("a device leasing two addresses keeps one identity with two epochs") {
    auto ip2 = *Ipv4Address::parse("10.0.0.42");
    auto idx = IdentityIndex::build(
        {ack(100 * kSec, kMacA, kIp), ack(5000 * kSec, kMacA, ip2)}, {});
    const auto* dev = idx.find(kMacA.to_string());
    REQUIRE(dev);
    CHECK_EQ(dev->epochs.size(), 2);
    CHECK_EQ(*idx.resolve(kIp, Timestamp{200 * kSec}), kMacA.to_string());
    CHECK_EQ(*idx.resolve(ip2, Timestamp{6000 * kSec}), kMacA.to_string());
    // device keys are sorted
    auto keys = idx.device_keys();
    CHECK(std::is_sorted(keys.begin(), keys.end()));
}

TEST_CASE("dhcp-assigned addresses count as internal even outside rfc1918") {
    auto pub = *Ipv4Address::parse("100.64.0.7");  // not rfc1918
    auto idx = IdentityIndex::build({ack(100 * kSec, kMacA, pub)},
                                    {frame(200 * kSec, kMacA, pub, kGwIp)});
    CHECK(idx.is_internal(pub));
    CHECK_EQ(*idx.resolve(pub, Timestamp{200 * kSec}), kMacA.to_string());
}
