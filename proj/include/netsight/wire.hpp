// Copyright (c) 2026 Netsight Contributors
// SPDX-License-Identifier: Apache-2.0
//
// Builders for the byte formats the decoders consume. Used by the traffic
// generator and by tests as the encoding half of round-trip checks.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "netsight/common.hpp"
#include "netsight/events.hpp"

namespace netsight::wire {

// RFC 1071 ones-complement sum over 16-bit words.
uint16_t internet_checksum(const uint8_t* data, size_t len, uint32_t seed = 0);

std::vector<uint8_t> eth_frame(const MacAddress& src, const MacAddress& dst,
                               uint16_t ethertype,
                               const std::vector<uint8_t>& payload);

std::vector<uint8_t> ipv4_packet(const Ipv4Address& src, const Ipv4Address& dst,
                                 uint8_t protocol,
                                 const std::vector<uint8_t>& payload,
                                 uint8_t ttl = 64, uint16_t ident = 0);

std::vector<uint8_t> udp_datagram(const Ipv4Address& src, const Ipv4Address& dst,
                                  uint16_t src_port, uint16_t dst_port,
                                  const std::vector<uint8_t>& payload);

struct TcpFields {
    uint16_t src_port = 0;
    uint16_t dst_port = 0;
    uint32_t seq = 0;
    uint32_t ack = 0;
    uint8_t flags = 0;  // FIN=0x01 SYN=0x02 RST=0x04 PSH=0x08 ACK=0x10
    uint16_t window = 65535;
};

std::vector<uint8_t> tcp_segment(const Ipv4Address& src, const Ipv4Address& dst,
                                 const TcpFields& f,
                                 const std::vector<uint8_t>& payload);

// Complete ethernet frames carrying UDP / TCP over IPv4.
std::vector<uint8_t> frame_udp(const MacAddress& src_mac, const MacAddress& dst_mac,
                               const Ipv4Address& src_ip, const Ipv4Address& dst_ip,
                               uint16_t src_port, uint16_t dst_port,
                               const std::vector<uint8_t>& payload,
                               uint16_t ident = 0);

std::vector<uint8_t> frame_tcp(const MacAddress& src_mac, const MacAddress& dst_mac,
                               const Ipv4Address& src_ip, const Ipv4Address& dst_ip,
                               const TcpFields& f,
                               const std::vector<uint8_t>& payload,
                               uint16_t ident = 0);

// --- application payloads ---

std::vector<uint8_t> encode_dns_name(const std::string& name);

std::vector<uint8_t> dns_query(uint16_t id, const std::string& name,
                               uint16_t qtype = 1);

// Answers reference the question name via a compression pointer when
// `compress` is set; otherwise each answer repeats the full name.
std::vector<uint8_t> dns_response(uint16_t id, const std::string& name,
                                  uint16_t qtype,
                                  const std::vector<Ipv4Address>& addrs,
                                  bool compress = true, uint32_t ttl = 300);

struct DhcpFields {
    uint8_t op = 1;  // 1 request, 2 reply
    uint32_t xid = 0;
    MacAddress client_mac{};
    Ipv4Address ciaddr{};
    Ipv4Address yiaddr{};
    uint8_t msg_type = 1;  // option 53
    std::optional<std::string> hostname;
    std::optional<std::string> vendor_class;
    std::optional<std::vector<uint8_t>> param_req_list;
};

std::vector<uint8_t> dhcp_message(const DhcpFields& f);

std::string http_request(const std::string& method, const std::string& uri,
                         const std::string& host, const std::string& user_agent,
                         const std::vector<std::string>& extra_headers = {});

// Minimal DER blob containing common-name attributes that an X.509 scanner
// will find: first CN is the issuer, second the subject.
std::vector<uint8_t> der_certificate(const std::string& issuer_cn,
                                     const std::string& subject_cn);

std::vector<uint8_t> tls_client_hello(const std::vector<uint16_t>& cipher_suites,
                                      const std::optional<std::string>& sni);

std::vector<uint8_t> tls_certificate(const std::string& issuer_cn,
                                     const std::string& subject_cn);

}  // namespace netsight::wire
