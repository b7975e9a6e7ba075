// Copyright (c) 2026 Netsight Contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "netsight/events.hpp"
#include "netsight/flow.hpp"
#include "netsight/pcap.hpp"

namespace netsight {

// Every packet either decodes (contributing events and/or flow samples) or is
// skipped with a counted reason; nothing is dropped silently.
enum class SkipReason {
    EthTooShort,
    EthNotIpv4,
    Ipv4BadVersion,
    Ipv4BadHeader,
    TransportUnsupported,
    TransportBadHeader,
    DnsMalformed,
    DhcpNoCookie,
    DhcpMalformed,
    DhcpUnhandledType,
    HttpNotRequest,
    TlsMalformed,
    TlsNoEvent,
    TcpReordered,
};
constexpr size_t kSkipReasonCount = static_cast<size_t>(SkipReason::TcpReordered) + 1;

const char* to_string(SkipReason r);

// Reasons that indicate unparseable or dirty application data (as opposed to
// traffic we deliberately don't handle, like IPv6 or ICMP).
bool is_dirty_data(SkipReason r);

template <typename T>
struct Parsed {
    std::optional<T> value;
    SkipReason reason{};

    bool ok() const { return value.has_value(); }
    const T& operator*() const { return *value; }
    const T* operator->() const { return &*value; }
};

template <typename T>
Parsed<T> parsed(T v) {
    return Parsed<T>{std::move(v), {}};
}
template <typename T>
Parsed<T> skipped(SkipReason r) {
    return Parsed<T>{std::nullopt, r};
}

struct EthernetFrame {
    Timestamp ts;
    MacAddress src_mac;
    MacAddress dst_mac;
    uint16_t ethertype = 0;
    std::span<const uint8_t> payload;  // view into the packet record
};

struct Ipv4Datagram {
    Timestamp ts;
    MacAddress src_mac;
    MacAddress dst_mac;
    Ipv4Address src_ip;
    Ipv4Address dst_ip;
    uint8_t protocol = 0;
    uint16_t header_len = 0;
    uint16_t total_len = 0;
    bool truncated = false;  // capture held fewer bytes than total_len claims
    std::span<const uint8_t> payload;
};

struct TransportSegment {
    FlowProto proto = FlowProto::Udp;
    uint16_t src_port = 0;
    uint16_t dst_port = 0;
    std::optional<uint8_t> tcp_flags;
    uint32_t tcp_seq = 0;
    std::span<const uint8_t> payload;
};

Parsed<EthernetFrame> decode_ethernet(const PacketRecord& rec);
Parsed<Ipv4Datagram> decode_ipv4(const EthernetFrame& frame);
Parsed<TransportSegment> decode_transport(const Ipv4Datagram& dgram);

// Application decoders. The EventHeader carries addressing; payload is the
// transport payload (for TCP, the flow-ordered first data segment).
Parsed<DnsEvent> decode_dns(std::span<const uint8_t> payload, const EventHeader& hdr);
Parsed<DhcpEvent> decode_dhcp(std::span<const uint8_t> payload, const EventHeader& hdr);
Parsed<HttpEvent> decode_http(std::span<const uint8_t> payload, const EventHeader& hdr);
Parsed<TlsEvent> decode_tls(std::span<const uint8_t> payload, const EventHeader& hdr);

struct DecodeStats {
    uint64_t packets = 0;
    uint64_t frames = 0;
    uint64_t datagrams = 0;
    uint64_t segments = 0;
    uint64_t dns_events = 0;
    uint64_t dhcp_events = 0;
    uint64_t http_events = 0;
    uint64_t tls_events = 0;
    uint64_t flows = 0;
    std::array<uint64_t, kSkipReasonCount> skips{};
    std::map<int, uint64_t> unsupported_protocols;  // per IP protocol number

    void count(SkipReason r) { ++skips[static_cast<size_t>(r)]; }
    uint64_t skip_count(SkipReason r) const { return skips[static_cast<size_t>(r)]; }
    uint64_t frame_level_skips() const;  // skips before a transport segment existed
    uint64_t dirty_data_skips() const;
};

// One IPv4 packet as seen on the wire; the raw material for L2 topology,
// identity binding, behavior windows, and occupancy.
struct FrameSummary {
    Timestamp ts;
    MacAddress src_mac;
    MacAddress dst_mac;
    Ipv4Address src_ip;
    Ipv4Address dst_ip;
    uint32_t wire_bytes = 0;  // IPv4 total_length
    bool unicast_dst = true;
};

struct DecoderConfig {
    int64_t flow_idle_timeout_us = 300'000'000;
    std::set<uint16_t> http_ports{80, 8080};
    uint16_t dns_port = 53;
    uint16_t tls_port = 443;
};

struct DecodeOutput {
    std::vector<FrameSummary> frames;
    std::vector<FlowRecord> flows;
    std::vector<DnsEvent> dns;
    std::vector<DhcpEvent> dhcp;
    std::vector<HttpEvent> http;
    std::vector<TlsEvent> tls;
};

// Drives the full decode of a packet stream: layering, flow assembly, and
// port-dispatched application parsing (first data segment per TCP direction,
// no reassembly).
class TrafficDecoder {
  public:
    explicit TrafficDecoder(DecoderConfig cfg = {});

    void process(const PacketRecord& rec);
    void finish();

    const DecodeStats& stats() const { return stats_; }
    const DecodeOutput& output() const { return out_; }
    DecodeOutput take_output() { return std::move(out_); }

  private:
    struct DirState {
        bool attempted = false;
        bool have_seq = false;
        uint32_t next_seq = 0;
        Timestamp last_ts;
    };

    void dispatch_udp(const TransportSegment& seg, const EventHeader& hdr);
    void dispatch_tcp(const TransportSegment& seg, const EventHeader& hdr,
                      const FlowKey& key, bool from_a);

    DecoderConfig cfg_;
    DecodeStats stats_;
    DecodeOutput out_;
    FlowAssembler flows_;
    std::map<std::pair<FlowKey, bool>, DirState> tcp_dirs_;
};

}  // namespace netsight
