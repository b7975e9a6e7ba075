// Copyright (c) 2026 Netsight Contributors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "netsight/decode.hpp"
#include "netsight/wire.hpp"

using namespace netsight;

namespace {

const MacAddress kClientMac = *MacAddress::parse("02:c0:00:00:00:05");
const MacAddress kServerMac = *MacAddress::parse("02:c0:00:00:00:01");
const MacAddress kBroadcast = *MacAddress::parse("ff:ff:ff:ff:ff:ff");
const Ipv4Address kClientIp = *Ipv4Address::parse("10.0.0.5");
const Ipv4Address kServerIp = *Ipv4Address::parse("10.0.0.1");
const Ipv4Address kWebIp = *Ipv4Address::parse("93.184.216.34");

PacketRecord rec(uint64_t index, int64_t ts_us, std::vector<uint8_t> bytes) {
    PacketRecord r;
    r.index = index;
    r.ts = Timestamp{ts_us};
    r.captured_len = static_cast<uint32_t>(bytes.size());
    r.original_len = r.captured_len;
    r.data = std::move(bytes);
    return r;
}

}  // namespace

TEST_CASE("layer errors are counted per reason") {
    TrafficDecoder dec;
    // too short for ethernet
    dec.process(rec(0, 1'000'000, std::vector<uint8_t>(10, 0xAA)));
    // ARP ethertype
    dec.process(rec(1, 1'001'000,
                    wire::eth_frame(kClientMac, kBroadcast, 0x0806,
                                    std::vector<uint8_t>(28, 0))));
    // IPv6 version nibble inside an 0x0800 frame
    {
        auto pkt = wire::ipv4_packet(kClientIp, kServerIp, 17,
                                     std::vector<uint8_t>(8, 0));
        pkt[0] = 0x65;
        dec.process(rec(2, 1'002'000, wire::eth_frame(kClientMac, kServerMac, 0x0800, pkt)));
    }
    // header length larger than the bytes present
    {
        auto pkt = wire::ipv4_packet(kClientIp, kServerIp, 17,
                                     std::vector<uint8_t>(8, 0));
        pkt[0] = 0x4F;  // ihl 15 words = 60 bytes, packet is 40
        dec.process(rec(3, 1'003'000, wire::eth_frame(kClientMac, kServerMac, 0x0800, pkt)));
    }
    // ICMP echo
    dec.process(rec(4, 1'004'000,
                    wire::eth_frame(kClientMac, kServerMac, 0x0800,
                                    wire::ipv4_packet(kClientIp, kServerIp, 1,
                                                      std::vector<uint8_t>(8, 0)))));
    dec.finish();

    const auto& st = dec.stats();
    CHECK_EQ(st.packets, 5);
    CHECK_EQ(st.skip_count(SkipReason::EthTooShort), 1);
    CHECK_EQ(st.skip_count(SkipReason::EthNotIpv4), 1);
    CHECK_EQ(st.skip_count(SkipReason::Ipv4BadVersion), 1);
    CHECK_EQ(st.skip_count(SkipReason::Ipv4BadHeader), 1);
    CHECK_EQ(st.skip_count(SkipReason::TransportUnsupported), 1);
    CHECK_EQ(st.unsupported_protocols.at(1), 1);
    CHECK_EQ(st.frame_level_skips(), 4);
    CHECK_EQ(st.dirty_data_skips(), 0);
    // ICMP and bad-header packets still produced frame summaries if they got
    // through IPv4 decode; only the ICMP one did plus none else
    CHECK_EQ(st.datagrams, 1);
    CHECK_EQ(dec.output().frames.size(), 1);
    CHECK_EQ(st.flows, 0);
}

TEST_CASE("udp port 53 both directions and dhcp 67/68 produce events") {
    TrafficDecoder dec;
    auto query = wire::frame_udp(kClientMac, kServerMac, kClientIp, kServerIp,
                                 53123, 53, wire::dns_query(1, "a.example", 1));
    auto answer = wire::frame_udp(kServerMac, kClientMac, kServerIp, kClientIp,
                                  53, 53123,
                                  wire::dns_response(1, "a.example", 1, {kWebIp}, true));
    wire::DhcpFields df;
    df.op = 1;
    df.client_mac = kClientMac;
    df.msg_type = 1;
    auto discover = wire::frame_udp(kClientMac, kBroadcast, Ipv4Address{0},
                                    *Ipv4Address::parse("255.255.255.255"), 68, 67,
                                    wire::dhcp_message(df));
    dec.process(rec(0, 1'000'000, query));
    dec.process(rec(1, 1'050'000, answer));
    dec.process(rec(2, 2'000'000, discover));
    dec.finish();

    const auto& out = dec.output();
    REQUIRE_EQ(out.dns.size(), 2);
    CHECK_FALSE(out.dns[0].is_response);
    CHECK(out.dns[1].is_response);
    CHECK_EQ(out.dns[1].answers.size(), 1);
    REQUIRE_EQ(out.dhcp.size(), 1);
    CHECK_EQ(out.dhcp[0].msg_type, DhcpMsgType::Discover);
    CHECK_EQ(out.dhcp[0].hdr.src_mac, kClientMac);
    // broadcast destination is flagged on the frame summary
    REQUIRE_EQ(out.frames.size(), 3);
    CHECK(out.frames[0].unicast_dst);
    CHECK_FALSE(out.frames[2].unicast_dst);
    // dns query+response share one flow; dhcp is a second
    CHECK_EQ(dec.stats().flows, 2);
}

TEST_CASE("tcp parses only the first data segment per direction") {
    TrafficDecoder dec;
    auto http1 = wire::http_request("GET", "/one", "w.test", "Browser/1");
    auto http2 = wire::http_request("GET", "/two", "w.test", "Browser/1");
    wire::TcpFields syn{52000, 80, 1000, 0, 0x02, 65535};
    wire::TcpFields f1{52000, 80, 1001, 1, 0x18, 65535};
    wire::TcpFields f2{52000, 80, static_cast<uint32_t>(1001 + http1.size()), 1, 0x18, 65535};

    dec.process(rec(0, 1'000'000,
                    wire::frame_tcp(kClientMac, kServerMac, kClientIp, kWebIp, syn, {})));
    dec.process(rec(1, 1'010'000,
                    wire::frame_tcp(kClientMac, kServerMac, kClientIp, kWebIp, f1,
                                    std::vector<uint8_t>(http1.begin(), http1.end()))));
    dec.process(rec(2, 1'020'000,
                    wire::frame_tcp(kClientMac, kServerMac, kClientIp, kWebIp, f2,
                                    std::vector<uint8_t>(http2.begin(), http2.end()))));
    dec.finish();

    REQUIRE_EQ(dec.output().http.size(), 1);
    CHECK_EQ(dec.output().http[0].uri, "/one");
    CHECK_EQ(dec.stats().segments, 3);
    CHECK_EQ(dec.stats().flows, 1);
}

TEST_CASE("tls events decode from both directions of a 443 flow") {
    TrafficDecoder dec;
    auto hello = wire::tls_client_hello({0x1301, 0x1302}, "cam.acme.example");
    auto cert = wire::tls_certificate("Acme Device CA", "cam.acme.example");
    wire::TcpFields c2s{51000, 443, 100, 0, 0x18, 65535};
    wire::TcpFields s2c{443, 51000, 500, 0, 0x18, 65535};

    dec.process(rec(0, 1'000'000,
                    wire::frame_tcp(kClientMac, kServerMac, kClientIp, kWebIp, c2s, hello)));
    dec.process(rec(1, 1'030'000,
                    wire::frame_tcp(kServerMac, kClientMac, kWebIp, kClientIp, s2c, cert)));
    dec.finish();

    const auto& tls = dec.output().tls;
    REQUIRE_EQ(tls.size(), 2);
    CHECK_EQ(tls[0].stage, TlsStage::ClientHello);
    CHECK_EQ(*tls[0].sni, "cam.acme.example");
    CHECK_EQ(tls[1].stage, TlsStage::Certificate);
    CHECK_EQ(*tls[1].issuer_cn, "Acme Device CA");
    CHECK_EQ(dec.stats().tls_events, 2);
}

TEST_CASE("sequence regression after the first segment counts as reordered") {
    TrafficDecoder dec;
    std::vector<uint8_t> chunk(100, 'x');
    auto payload = wire::http_request("GET", "/r", "w.test", "B/1");
    wire::TcpFields first{52000, 80, 5000, 1, 0x18, 65535};
    wire::TcpFields ahead{52000, 80, 5000 + static_cast<uint32_t>(payload.size()) + 100, 1, 0x18, 65535};
    wire::TcpFields behind{52000, 80, 5000 + 10, 1, 0x18, 65535};  // regressed

    dec.process(rec(0, 1'000'000,
                    wire::frame_tcp(kClientMac, kServerMac, kClientIp, kWebIp, first,
                                    std::vector<uint8_t>(payload.begin(), payload.end()))));
    dec.process(rec(1, 1'001'000,
                    wire::frame_tcp(kClientMac, kServerMac, kClientIp, kWebIp, ahead, chunk)));
    dec.process(rec(2, 1'002'000,
                    wire::frame_tcp(kClientMac, kServerMac, kClientIp, kWebIp, behind, chunk)));
    dec.finish();

    CHECK_EQ(dec.stats().skip_count(SkipReason::TcpReordered), 1);
    CHECK(is_dirty_data(SkipReason::TcpReordered));
    CHECK_EQ(dec.stats().dirty_data_skips(), 1);
    CHECK_EQ(dec.output().http.size(), 1);
}

TEST_CASE("flow byte counters sum ip total lengths in both directions") {
    TrafficDecoder dec;
    auto q = wire::dns_query(9, "bytes.test", 1);
    auto r = wire::dns_response(9, "bytes.test", 1, {kWebIp}, true);
    auto qf = wire::frame_udp(kClientMac, kServerMac, kClientIp, kServerIp, 40000, 53, q);
    auto rf = wire::frame_udp(kServerMac, kClientMac, kServerIp, kClientIp, 53, 40000, r);
    dec.process(rec(0, 1'000'000, qf));
    dec.process(rec(1, 1'100'000, rf));
    dec.finish();

    REQUIRE_EQ(dec.output().flows.size(), 1);
    const auto& fl = dec.output().flows[0];
    // ip total length = frame minus the 14-byte ethernet header
    CHECK_EQ(fl.bytes_orig, qf.size() - 14);
    CHECK_EQ(fl.bytes_resp, rf.size() - 14);
    CHECK_EQ(fl.originator.ip, kClientIp);
    CHECK_EQ(fl.originator.port, 40000);
}

TEST_CASE("malformed app payloads are dirty data, not lost packets") {
    TrafficDecoder dec;
    // DNS header too short
    dec.process(rec(0, 1'000'000,
                    wire::frame_udp(kClientMac, kServerMac, kClientIp, kServerIp,
                                    40000, 53, {0x01, 0x02})));
    // DHCP without cookie
    dec.process(rec(1, 1'001'000,
                    wire::frame_udp(kClientMac, kServerMac, kClientIp, kServerIp,
                                    68, 67, std::vector<uint8_t>(260, 0))));
    // non-request HTTP on port 80
    std::string resp = "HTTP/1.1 404 Not Found\r\n\r\n";
    wire::TcpFields f{52000, 80, 1, 0, 0x18, 65535};
    dec.process(rec(2, 1'002'000,
                    wire::frame_tcp(kClientMac, kServerMac, kClientIp, kWebIp, f,
                                    std::vector<uint8_t>(resp.begin(), resp.end()))));
    dec.finish();

    const auto& st = dec.stats();
    CHECK_EQ(st.skip_count(SkipReason::DnsMalformed), 1);
    CHECK_EQ(st.skip_count(SkipReason::DhcpNoCookie), 1);
    CHECK_EQ(st.skip_count(SkipReason::HttpNotRequest), 1);
    CHECK_EQ(st.dirty_data_skips(), 3);
    // flows still tracked even when app payload is dirty
    CHECK_EQ(st.flows, 3);
    CHECK_EQ(st.dns_events + st.dhcp_events + st.http_events, 0);
}

TEST_CASE("a long-idle tcp five-tuple gets a fresh first-segment parse") {
    DecoderConfig cfg;
    cfg.flow_idle_timeout_us = 1'000'000;
    TrafficDecoder dec(cfg);
    auto h1 = wire::http_request("GET", "/first", "w.test", "B/1");
    auto h2 = wire::http_request("GET", "/second", "w.test", "B/1");
    wire::TcpFields f1{52000, 80, 10, 1, 0x18, 65535};
    wire::TcpFields f2{52000, 80, 99000, 1, 0x18, 65535};
    dec.process(rec(0, 1'000'000,
                    wire::frame_tcp(kClientMac, kServerMac, kClientIp, kWebIp, f1,
                                    std::vector<uint8_t>(h1.begin(), h1.end()))));
    dec.process(rec(1, 10'000'000,  // 9s later, past the 1s timeout
                    wire::frame_tcp(kClientMac, kServerMac, kClientIp, kWebIp, f2,
                                    std::vector<uint8_t>(h2.begin(), h2.end()))));
    dec.finish();

    REQUIRE_EQ(dec.output().http.size(), 2);
    CHECK_EQ(dec.output().http[1].uri, "/second");
    CHECK_EQ(dec.stats().flows, 2);
}
