// Copyright (c) 2026 Netsight Contributors
// SPDX-License-Identifier: Apache-2.0

#include "netsight/wire.hpp"

#include <cstring>

#include "netsight/bytes.hpp"

namespace netsight::wire {

uint16_t internet_checksum(const uint8_t* data, size_t len, uint32_t seed) {
    uint32_t sum = seed;
    size_t i = 0;
    for (; i + 1 < len; i += 2)
        sum += static_cast<uint32_t>(data[i]) << 8 | data[i + 1];
    if (i < len) sum += static_cast<uint32_t>(data[i]) << 8;
    while (sum >> 16) sum = (sum & 0xFFFF) + (sum >> 16);
    return static_cast<uint16_t>(~sum & 0xFFFF);
}

std::vector<uint8_t> eth_frame(const MacAddress& src, const MacAddress& dst,
                               uint16_t ethertype,
                               const std::vector<uint8_t>& payload) {
    ByteWriter w;
    w.bytes(std::vector<uint8_t>(dst.octets.begin(), dst.octets.end()));
    w.bytes(std::vector<uint8_t>(src.octets.begin(), src.octets.end()));
    w.u16be(ethertype);
    w.bytes(payload);
    return w.release();
}

std::vector<uint8_t> ipv4_packet(const Ipv4Address& src, const Ipv4Address& dst,
                                 uint8_t protocol,
                                 const std::vector<uint8_t>& payload,
                                 uint8_t ttl, uint16_t ident) {
    ByteWriter w;
    w.u8(0x45);  // version 4, ihl 5
    w.u8(0);
    w.u16be(static_cast<uint16_t>(20 + payload.size()));
    w.u16be(ident);
    w.u16be(0x4000);  // don't fragment
    w.u8(ttl);
    w.u8(protocol);
    w.u16be(0);  // checksum placeholder
    w.u32be(src.value);
    w.u32be(dst.value);
    auto hdr = w.release();
    uint16_t ck = internet_checksum(hdr.data(), hdr.size());
    hdr[10] = static_cast<uint8_t>(ck >> 8);
    hdr[11] = static_cast<uint8_t>(ck & 0xFF);
    hdr.insert(hdr.end(), payload.begin(), payload.end());
    return hdr;
}

namespace {

// Pseudo-header seed for TCP/UDP checksums.
uint32_t pseudo_sum(const Ipv4Address& src, const Ipv4Address& dst,
                    uint8_t protocol, size_t seg_len) {
    uint32_t sum = 0;
    sum += src.value >> 16;
    sum += src.value & 0xFFFF;
    sum += dst.value >> 16;
    sum += dst.value & 0xFFFF;
    sum += protocol;
    sum += static_cast<uint32_t>(seg_len);
    return sum;
}

}  // namespace

std::vector<uint8_t> udp_datagram(const Ipv4Address& src, const Ipv4Address& dst,
                                  uint16_t src_port, uint16_t dst_port,
                                  const std::vector<uint8_t>& payload) {
    ByteWriter w;
    w.u16be(src_port);
    w.u16be(dst_port);
    w.u16be(static_cast<uint16_t>(8 + payload.size()));
    w.u16be(0);
    w.bytes(payload);
    auto seg = w.release();
    uint16_t ck = internet_checksum(seg.data(), seg.size(),
                                    pseudo_sum(src, dst, 17, seg.size()));
    if (ck == 0) ck = 0xFFFF;  // zero means "no checksum" for UDP
    seg[6] = static_cast<uint8_t>(ck >> 8);
    seg[7] = static_cast<uint8_t>(ck & 0xFF);
    return seg;
}

std::vector<uint8_t> tcp_segment(const Ipv4Address& src, const Ipv4Address& dst,
                                 const TcpFields& f,
                                 const std::vector<uint8_t>& payload) {
    ByteWriter w;
    w.u16be(f.src_port);
    w.u16be(f.dst_port);
    w.u32be(f.seq);
    w.u32be(f.ack);
    w.u8(5 << 4);  // data offset 5 words
    w.u8(f.flags);
    w.u16be(f.window);
    w.u16be(0);  // checksum placeholder
    w.u16be(0);  // urgent pointer
    w.bytes(payload);
    auto seg = w.release();
    uint16_t ck = internet_checksum(seg.data(), seg.size(),
                                    pseudo_sum(src, dst, 6, seg.size()));
    seg[16] = static_cast<uint8_t>(ck >> 8);
    seg[17] = static_cast<uint8_t>(ck & 0xFF);
    return seg;
}

std::vector<uint8_t> frame_udp(const MacAddress& src_mac, const MacAddress& dst_mac,
                               const Ipv4Address& src_ip, const Ipv4Address& dst_ip,
                               uint16_t src_port, uint16_t dst_port,
                               const std::vector<uint8_t>& payload,
                               uint16_t ident) {
    return eth_frame(src_mac, dst_mac, 0x0800,
                     ipv4_packet(src_ip, dst_ip, 17,
                                 udp_datagram(src_ip, dst_ip, src_port, dst_port, payload),
                                 64, ident));
}

std::vector<uint8_t> frame_tcp(const MacAddress& src_mac, const MacAddress& dst_mac,
                               const Ipv4Address& src_ip, const Ipv4Address& dst_ip,
                               const TcpFields& f,
                               const std::vector<uint8_t>& payload,
                               uint16_t ident) {
    return eth_frame(src_mac, dst_mac, 0x0800,
                     ipv4_packet(src_ip, dst_ip, 6,
                                 tcp_segment(src_ip, dst_ip, f, payload),
                                 64, ident));
}

std::vector<uint8_t> encode_dns_name(const std::string& name) {
    std::vector<uint8_t> out;
    size_t start = 0;
    while (start <= name.size()) {
        size_t dot = name.find('.', start);
        if (dot == std::string::npos) dot = name.size();
        size_t len = dot - start;
        if (len > 0) {
            out.push_back(static_cast<uint8_t>(len));
            for (size_t i = start; i < dot; ++i)
                out.push_back(static_cast<uint8_t>(name[i]));
        }
        if (dot >= name.size()) break;
        start = dot + 1;
    }
    out.push_back(0);
    return out;
}

std::vector<uint8_t> dns_query(uint16_t id, const std::string& name,
                               uint16_t qtype) {
    ByteWriter w;
    w.u16be(id);
    w.u16be(0x0100);  // recursion desired
    w.u16be(1);
    w.u16be(0);
    w.u16be(0);
    w.u16be(0);
    w.bytes(encode_dns_name(name));
    w.u16be(qtype);
    w.u16be(1);
    return w.release();
}

std::vector<uint8_t> dns_response(uint16_t id, const std::string& name,
                                  uint16_t qtype,
                                  const std::vector<Ipv4Address>& addrs,
                                  bool compress, uint32_t ttl) {
    ByteWriter w;
    w.u16be(id);
    w.u16be(0x8180);  // response, recursion available
    w.u16be(1);
    w.u16be(static_cast<uint16_t>(addrs.size()));
    w.u16be(0);
    w.u16be(0);
    w.bytes(encode_dns_name(name));
    w.u16be(qtype);
    w.u16be(1);
    for (const auto& a : addrs) {
        if (compress) {
            w.u16be(0xC00C);  // pointer to the question name at offset 12
        } else {
            w.bytes(encode_dns_name(name));
        }
        w.u16be(1);
        w.u16be(1);
        w.u32be(ttl);
        w.u16be(4);
        w.u32be(a.value);
    }
    return w.release();
}

std::vector<uint8_t> dhcp_message(const DhcpFields& f) {
    ByteWriter w;
    w.u8(f.op);
    w.u8(1);  // htype ethernet
    w.u8(6);  // hlen
    w.u8(0);  // hops
    w.u32be(f.xid);
    w.u16be(0);  // secs
    w.u16be(0);  // flags
    w.u32be(f.ciaddr.value);
    w.u32be(f.yiaddr.value);
    w.u32be(0);  // siaddr
    w.u32be(0);  // giaddr
    w.bytes(std::vector<uint8_t>(f.client_mac.octets.begin(), f.client_mac.octets.end()));
    w.fill(10);   // chaddr padding
    w.fill(64);   // sname
    w.fill(128);  // file
    w.u8(0x63);
    w.u8(0x82);
    w.u8(0x53);
    w.u8(0x63);
    w.u8(53);
    w.u8(1);
    w.u8(f.msg_type);
    if (f.hostname) {
        w.u8(12);
        w.u8(static_cast<uint8_t>(f.hostname->size()));
        w.str(*f.hostname);
    }
    if (f.vendor_class) {
        w.u8(60);
        w.u8(static_cast<uint8_t>(f.vendor_class->size()));
        w.str(*f.vendor_class);
    }
    if (f.param_req_list) {
        w.u8(55);
        w.u8(static_cast<uint8_t>(f.param_req_list->size()));
        w.bytes(*f.param_req_list);
    }
    w.u8(255);
    return w.release();
}

std::string http_request(const std::string& method, const std::string& uri,
                         const std::string& host, const std::string& user_agent,
                         const std::vector<std::string>& extra_headers) {
    std::string out = method + " " + uri + " HTTP/1.1\r\n";
    if (!host.empty()) out += "Host: " + host + "\r\n";
    if (!user_agent.empty()) out += "User-Agent: " + user_agent + "\r\n";
    for (const auto& h : extra_headers) out += h + "\r\n";
    out += "\r\n";
    return out;
}

namespace {

// DER length octets (definite form, up to two length bytes).
void der_len(ByteWriter& w, size_t n) {
    if (n < 0x80) {
        w.u8(static_cast<uint8_t>(n));
    } else if (n <= 0xFF) {
        w.u8(0x81);
        w.u8(static_cast<uint8_t>(n));
    } else {
        w.u8(0x82);
        w.u16be(static_cast<uint16_t>(n));
    }
}

std::vector<uint8_t> cn_attribute(const std::string& cn) {
    ByteWriter w;
    w.u8(0x06);
    w.u8(0x03);
    w.u8(0x55);
    w.u8(0x04);
    w.u8(0x03);
    w.u8(0x0C);  // UTF8String
    der_len(w, cn.size());
    w.str(cn);
    return w.release();
}

}  // namespace

std::vector<uint8_t> der_certificate(const std::string& issuer_cn,
                                     const std::string& subject_cn) {
    ByteWriter body;
    body.u8(0x02);  // a token INTEGER standing in for the serial number
    body.u8(0x01);
    body.u8(0x01);
    body.bytes(cn_attribute(issuer_cn));
    body.bytes(cn_attribute(subject_cn));
    auto inner = body.release();
    ByteWriter w;
    w.u8(0x30);
    der_len(w, inner.size());
    w.bytes(inner);
    return w.release();
}

namespace {

std::vector<uint8_t> handshake(uint8_t msg_type, const std::vector<uint8_t>& body) {
    ByteWriter w;
    w.u8(msg_type);
    w.u8(static_cast<uint8_t>(body.size() >> 16));
    w.u16be(static_cast<uint16_t>(body.size() & 0xFFFF));
    w.bytes(body);
    return w.release();
}

std::vector<uint8_t> tls_record(uint8_t content_type, const std::vector<uint8_t>& body) {
    ByteWriter w;
    w.u8(content_type);
    w.u16be(0x0303);
    w.u16be(static_cast<uint16_t>(body.size()));
    w.bytes(body);
    return w.release();
}

}  // namespace

std::vector<uint8_t> tls_client_hello(const std::vector<uint16_t>& cipher_suites,
                                      const std::optional<std::string>& sni) {
    ByteWriter b;
    b.u16be(0x0303);
    b.fill(32, 0x5A);  // fixed "random": generated captures stay deterministic
    b.u8(0);           // empty session id
    b.u16be(static_cast<uint16_t>(cipher_suites.size() * 2));
    for (uint16_t cs : cipher_suites) b.u16be(cs);
    b.u8(1);  // one compression method: null
    b.u8(0);
    if (sni) {
        ByteWriter ext;
        ext.u16be(0);  // server_name extension
        ByteWriter list;
        list.u8(0);  // host name
        list.u16be(static_cast<uint16_t>(sni->size()));
        list.str(*sni);
        auto entries = list.release();
        ext.u16be(static_cast<uint16_t>(entries.size() + 2));
        ext.u16be(static_cast<uint16_t>(entries.size()));
        ext.bytes(entries);
        auto exts = ext.release();
        b.u16be(static_cast<uint16_t>(exts.size()));
        b.bytes(exts);
    }
    return tls_record(22, handshake(1, b.release()));
}

std::vector<uint8_t> tls_certificate(const std::string& issuer_cn,
                                     const std::string& subject_cn) {
    auto cert = der_certificate(issuer_cn, subject_cn);
    ByteWriter b;
    b.u8(static_cast<uint8_t>((cert.size() + 3) >> 16));
    b.u16be(static_cast<uint16_t>((cert.size() + 3) & 0xFFFF));
    b.u8(static_cast<uint8_t>(cert.size() >> 16));
    b.u16be(static_cast<uint16_t>(cert.size() & 0xFFFF));
    b.bytes(cert);
    return tls_record(22, handshake(11, b.release()));
}

}  // namespace netsight::wire
