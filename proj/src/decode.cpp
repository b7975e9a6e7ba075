// Copyright (c) 2026 Netsight Contributors
// SPDX-License-Identifier: Apache-2.0

#include "netsight/decode.hpp"

#include "netsight/bytes.hpp"

namespace netsight {

const char* to_string(SkipReason r) {
    switch (r) {
        case SkipReason::EthTooShort: return "eth_too_short";
        case SkipReason::EthNotIpv4: return "eth_not_ipv4";
        case SkipReason::Ipv4BadVersion: return "ipv4_bad_version";
        case SkipReason::Ipv4BadHeader: return "ipv4_bad_header";
        case SkipReason::TransportUnsupported: return "transport_unsupported";
        case SkipReason::TransportBadHeader: return "transport_bad_header";
        case SkipReason::DnsMalformed: return "dns_malformed";
        case SkipReason::DhcpNoCookie: return "dhcp_no_cookie";
        case SkipReason::DhcpMalformed: return "dhcp_malformed";
        case SkipReason::DhcpUnhandledType: return "dhcp_unhandled_type";
        case SkipReason::HttpNotRequest: return "http_not_request";
        case SkipReason::TlsMalformed: return "tls_malformed";
        case SkipReason::TlsNoEvent: return "tls_no_event";
        case SkipReason::TcpReordered: return "tcp_reordered";
    }
    return "unknown";
}

bool is_dirty_data(SkipReason r) {
    switch (r) {
        case SkipReason::DnsMalformed:
        case SkipReason::DhcpNoCookie:
        case SkipReason::DhcpMalformed:
        case SkipReason::DhcpUnhandledType:
        case SkipReason::HttpNotRequest:
        case SkipReason::TlsMalformed:
        case SkipReason::TcpReordered:
            return true;
        default:
            return false;
    }
}

uint64_t DecodeStats::frame_level_skips() const {
    return skip_count(SkipReason::EthTooShort) + skip_count(SkipReason::EthNotIpv4) +
           skip_count(SkipReason::Ipv4BadVersion) + skip_count(SkipReason::Ipv4BadHeader);
}

uint64_t DecodeStats::dirty_data_skips() const {
    uint64_t n = 0;
    for (size_t i = 0; i < kSkipReasonCount; ++i)
        if (is_dirty_data(static_cast<SkipReason>(i))) n += skips[i];
    return n;
}

const char* to_string(DhcpMsgType t) {
    switch (t) {
        case DhcpMsgType::Discover: return "discover";
        case DhcpMsgType::Offer: return "offer";
        case DhcpMsgType::Request: return "request";
        case DhcpMsgType::Ack: return "ack";
        case DhcpMsgType::Release: return "release";
    }
    return "unknown";
}

Parsed<EthernetFrame> decode_ethernet(const PacketRecord& rec) {
    if (rec.data.size() < 14) return skipped<EthernetFrame>(SkipReason::EthTooShort);

    EthernetFrame f;
    f.ts = rec.ts;
    for (int i = 0; i < 6; ++i) {
        f.dst_mac.octets[static_cast<size_t>(i)] = rec.data[static_cast<size_t>(i)];
        f.src_mac.octets[static_cast<size_t>(i)] = rec.data[static_cast<size_t>(i) + 6];
    }
    f.ethertype = static_cast<uint16_t>(rec.data[12] << 8 | rec.data[13]);
    f.payload = std::span<const uint8_t>(rec.data).subspan(14);
    return parsed(std::move(f));
}

Parsed<Ipv4Datagram> decode_ipv4(const EthernetFrame& frame) {
    if (frame.ethertype != 0x0800) return skipped<Ipv4Datagram>(SkipReason::EthNotIpv4);
    if (frame.payload.size() < 20) return skipped<Ipv4Datagram>(SkipReason::Ipv4BadHeader);

    const auto& p = frame.payload;
    uint8_t version = p[0] >> 4;
    uint16_t header_len = static_cast<uint16_t>((p[0] & 0x0F) * 4);
    if (version != 4) return skipped<Ipv4Datagram>(SkipReason::Ipv4BadVersion);
    if (header_len < 20 || p.size() < header_len)
        return skipped<Ipv4Datagram>(SkipReason::Ipv4BadHeader);

    Ipv4Datagram d;
    d.ts = frame.ts;
    d.src_mac = frame.src_mac;
    d.dst_mac = frame.dst_mac;
    d.header_len = header_len;
    d.total_len = static_cast<uint16_t>(p[2] << 8 | p[3]);
    if (d.total_len < header_len) return skipped<Ipv4Datagram>(SkipReason::Ipv4BadHeader);
    d.protocol = p[9];
    d.src_ip.value = static_cast<uint32_t>(p[12]) << 24 | static_cast<uint32_t>(p[13]) << 16 |
                     static_cast<uint32_t>(p[14]) << 8 | p[15];
    d.dst_ip.value = static_cast<uint32_t>(p[16]) << 24 | static_cast<uint32_t>(p[17]) << 16 |
                     static_cast<uint32_t>(p[18]) << 8 | p[19];

    // Use the bytes that are actually present; Ethernet padding past
    // total_len is dropped, and short captures are flagged, not rejected.
    size_t end = std::min<size_t>(d.total_len, p.size());
    d.truncated = p.size() < d.total_len;
    d.payload = p.subspan(header_len, end - header_len);
    return parsed(std::move(d));
}

Parsed<TransportSegment> decode_transport(const Ipv4Datagram& dgram) {
    const auto& p = dgram.payload;
    TransportSegment seg;
    if (dgram.protocol == 6) {
        if (p.size() < 20) return skipped<TransportSegment>(SkipReason::TransportBadHeader);
        seg.proto = FlowProto::Tcp;
        seg.src_port = static_cast<uint16_t>(p[0] << 8 | p[1]);
        seg.dst_port = static_cast<uint16_t>(p[2] << 8 | p[3]);
        seg.tcp_seq = static_cast<uint32_t>(p[4]) << 24 | static_cast<uint32_t>(p[5]) << 16 |
                      static_cast<uint32_t>(p[6]) << 8 | p[7];
        size_t data_off = static_cast<size_t>(p[12] >> 4) * 4;
        if (data_off < 20 || data_off > p.size())
            return skipped<TransportSegment>(SkipReason::TransportBadHeader);
        seg.tcp_flags = p[13];
        seg.payload = p.subspan(data_off);
        return parsed(std::move(seg));
    }
    if (dgram.protocol == 17) {
        if (p.size() < 8) return skipped<TransportSegment>(SkipReason::TransportBadHeader);
        seg.proto = FlowProto::Udp;
        seg.src_port = static_cast<uint16_t>(p[0] << 8 | p[1]);
        seg.dst_port = static_cast<uint16_t>(p[2] << 8 | p[3]);
        seg.payload = p.subspan(8);
        return parsed(std::move(seg));
    }
    return skipped<TransportSegment>(SkipReason::TransportUnsupported);
}

TrafficDecoder::TrafficDecoder(DecoderConfig cfg)
    : cfg_(cfg), flows_(cfg.flow_idle_timeout_us) {}

void TrafficDecoder::process(const PacketRecord& rec) {
    ++stats_.packets;

    auto frame = decode_ethernet(rec);
    if (!frame.ok()) {
        stats_.count(frame.reason);
        return;
    }
    ++stats_.frames;

    auto dgram = decode_ipv4(*frame);
    if (!dgram.ok()) {
        stats_.count(dgram.reason);
        return;
    }
    ++stats_.datagrams;

    out_.frames.push_back(FrameSummary{dgram->ts, dgram->src_mac, dgram->dst_mac,
                                       dgram->src_ip, dgram->dst_ip, dgram->total_len,
                                       !dgram->dst_mac.is_multicast()});

    auto seg = decode_transport(*dgram);
    if (!seg.ok()) {
        stats_.count(seg.reason);
        if (seg.reason == SkipReason::TransportUnsupported)
            ++stats_.unsupported_protocols[dgram->protocol];
        return;
    }
    ++stats_.segments;

    FlowSample sample{dgram->ts,
                      {dgram->src_ip, seg->src_port},
                      {dgram->dst_ip, seg->dst_port},
                      seg->proto,
                      dgram->total_len};
    auto closed = flows_.add(sample);
    for (auto& f : closed) {
        out_.flows.push_back(f);
        ++stats_.flows;
    }

    EventHeader hdr{dgram->ts,     dgram->src_mac, dgram->src_ip,
                    dgram->dst_ip, seg->src_port,  seg->dst_port};
    if (seg->proto == FlowProto::Udp) {
        dispatch_udp(*seg, hdr);
    } else {
        FlowKey key = FlowKey::canonical(sample.src, sample.dst, FlowProto::Tcp);
        dispatch_tcp(*seg, hdr, key, sample.src == key.a);
    }
}

void TrafficDecoder::dispatch_udp(const TransportSegment& seg, const EventHeader& hdr) {
    if (seg.src_port == cfg_.dns_port || seg.dst_port == cfg_.dns_port) {
        auto ev = decode_dns(seg.payload, hdr);
        if (ev.ok()) {
            out_.dns.push_back(*ev);
            ++stats_.dns_events;
        } else {
            stats_.count(ev.reason);
        }
        return;
    }
    if (seg.src_port == 67 || seg.src_port == 68 || seg.dst_port == 67 ||
        seg.dst_port == 68) {
        auto ev = decode_dhcp(seg.payload, hdr);
        if (ev.ok()) {
            out_.dhcp.push_back(*ev);
            ++stats_.dhcp_events;
        } else {
            stats_.count(ev.reason);
        }
    }
}

void TrafficDecoder::dispatch_tcp(const TransportSegment& seg, const EventHeader& hdr,
                                  const FlowKey& key, bool from_a) {
    if (seg.payload.empty()) return;

    DirState& dir = tcp_dirs_[{key, from_a}];
    if (dir.last_ts.us != 0 && hdr.ts - dir.last_ts > cfg_.flow_idle_timeout_us) {
        // Same 5-tuple after the idle timeout is a fresh flow epoch; the
        // first-segment parse gets another chance.
        dir = DirState{};
    }
    dir.last_ts = hdr.ts;

    if (dir.attempted) {
        if (dir.have_seq && static_cast<int32_t>(seg.tcp_seq - dir.next_seq) < 0) {
            stats_.count(SkipReason::TcpReordered);
            return;
        }
        dir.next_seq = seg.tcp_seq + static_cast<uint32_t>(seg.payload.size());
        return;
    }
    dir.attempted = true;
    dir.have_seq = true;
    dir.next_seq = seg.tcp_seq + static_cast<uint32_t>(seg.payload.size());

    if (cfg_.http_ports.count(seg.dst_port)) {
        auto ev = decode_http(seg.payload, hdr);
        if (ev.ok()) {
            out_.http.push_back(*ev);
            ++stats_.http_events;
        } else {
            stats_.count(ev.reason);
        }
        return;
    }
    if (seg.dst_port == cfg_.tls_port || seg.src_port == cfg_.tls_port) {
        auto ev = decode_tls(seg.payload, hdr);
        if (ev.ok()) {
            out_.tls.push_back(*ev);
            ++stats_.tls_events;
        } else {
            stats_.count(ev.reason);
        }
    }
}

void TrafficDecoder::finish() {
    for (auto& f : flows_.finish()) {
        out_.flows.push_back(f);
        ++stats_.flows;
    }
}

}  // namespace netsight
