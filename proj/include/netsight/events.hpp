// Copyright (c) 2026 Netsight Contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "netsight/common.hpp"

namespace netsight {

// Common envelope on every decoded application event: who sent it, to whom,
// and when. src_mac is the frame-level sender (useful before an IP is bound).
struct EventHeader {
    Timestamp ts;
    MacAddress src_mac;
    Ipv4Address src_ip;
    Ipv4Address dst_ip;
    uint16_t src_port = 0;
    uint16_t dst_port = 0;
};

struct DnsAnswer {
    std::string name;  // lowercased fqdn, no trailing dot
    Ipv4Address addr;

    bool operator==(const DnsAnswer&) const = default;
};

struct DnsEvent {
    EventHeader hdr;
    std::string query_name;  // lowercased fqdn from the first question
    uint16_t qtype = 0;
    bool is_response = false;
    std::vector<DnsAnswer> answers;  // A-record answers only
};

enum class DhcpMsgType { Discover = 1, Offer = 2, Request = 3, Ack = 5, Release = 7 };

const char* to_string(DhcpMsgType t);

struct DhcpEvent {
    EventHeader hdr;
    DhcpMsgType msg_type = DhcpMsgType::Discover;
    MacAddress client_mac;  // chaddr
    std::optional<Ipv4Address> assigned_ip;  // yiaddr, when nonzero
    std::optional<std::string> hostname;      // option 12
    std::optional<std::string> vendor_class;  // option 60
    std::optional<std::vector<int>> param_req_list;  // option 55
};

struct HttpEvent {
    EventHeader hdr;
    std::string method;
    std::string uri;
    std::optional<std::string> host;
    std::optional<std::string> user_agent;
};

enum class TlsStage { ClientHello, Certificate };

struct TlsEvent {
    EventHeader hdr;
    TlsStage stage = TlsStage::ClientHello;
    std::optional<std::string> sni;                       // ClientHello
    std::optional<std::vector<uint16_t>> cipher_suites;   // ClientHello, wire order
    std::optional<std::string> issuer_cn;                 // Certificate
    std::optional<std::string> subject_cn;                // Certificate
};

using ProtocolEvent = std::variant<DnsEvent, DhcpEvent, HttpEvent, TlsEvent>;

}  // namespace netsight
