// Copyright (c) 2026 Netsight Contributors
// SPDX-License-Identifier: Apache-2.0

#include "netsight/bytes.hpp"
#include "netsight/decode.hpp"

namespace netsight {

namespace {

// Strings in DHCP options are not NUL-terminated, but some encoders pad them;
// keep printable content only up to the first NUL.
std::string option_string(std::span<const uint8_t> data) {
    std::string s;
    for (uint8_t b : data) {
        if (b == 0) break;
        s.push_back(static_cast<char>(b));
    }
    return s;
}

}  // namespace

Parsed<DhcpEvent> decode_dhcp(std::span<const uint8_t> payload, const EventHeader& hdr) {
    // 236-byte BOOTP fixed section plus the 4-byte magic cookie.
    if (payload.size() < 240) return skipped<DhcpEvent>(SkipReason::DhcpNoCookie);
    if (!(payload[236] == 0x63 && payload[237] == 0x82 && payload[238] == 0x53 &&
          payload[239] == 0x63))
        return skipped<DhcpEvent>(SkipReason::DhcpNoCookie);

    DhcpEvent ev;
    ev.hdr = hdr;
    for (int i = 0; i < 6; ++i) ev.client_mac.octets[static_cast<size_t>(i)] = payload[28 + static_cast<size_t>(i)];
    Ipv4Address yiaddr{static_cast<uint32_t>(payload[16]) << 24 |
                       static_cast<uint32_t>(payload[17]) << 16 |
                       static_cast<uint32_t>(payload[18]) << 8 | payload[19]};
    if (!yiaddr.is_zero()) ev.assigned_ip = yiaddr;

    std::optional<int> msg_type;
    size_t pos = 240;
    bool terminated = false;
    while (pos < payload.size()) {
        uint8_t code = payload[pos++];
        if (code == 0) continue;  // pad
        if (code == 255) {
            terminated = true;
            break;
        }
        if (pos >= payload.size()) return skipped<DhcpEvent>(SkipReason::DhcpMalformed);
        uint8_t len = payload[pos++];
        if (pos + len > payload.size()) return skipped<DhcpEvent>(SkipReason::DhcpMalformed);
        auto data = payload.subspan(pos, len);
        pos += len;

        switch (code) {
            case 53:
                if (len >= 1) msg_type = data[0];
                break;
            case 12:
                ev.hostname = option_string(data);
                break;
            case 60:
                ev.vendor_class = option_string(data);
                break;
            case 55: {
                std::vector<int> params;
                for (uint8_t b : data) params.push_back(b);
                ev.param_req_list = std::move(params);
                break;
            }
            default:
                break;
        }
    }
    if (!terminated || !msg_type) return skipped<DhcpEvent>(SkipReason::DhcpMalformed);

    switch (*msg_type) {
        case 1: ev.msg_type = DhcpMsgType::Discover; break;
        case 2: ev.msg_type = DhcpMsgType::Offer; break;
        case 3: ev.msg_type = DhcpMsgType::Request; break;
        case 5: ev.msg_type = DhcpMsgType::Ack; break;
        case 7: ev.msg_type = DhcpMsgType::Release; break;
        default:
            return skipped<DhcpEvent>(SkipReason::DhcpUnhandledType);
    }
    return parsed(std::move(ev));
}

}  // namespace netsight
