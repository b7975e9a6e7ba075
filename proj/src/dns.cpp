// Copyright (c) 2026 Netsight Contributors
// SPDX-License-Identifier: Apache-2.0

#include <cctype>

#include "netsight/bytes.hpp"
#include "netsight/decode.hpp"

namespace netsight {

namespace {

constexpr int kMaxPointerJumps = 32;
constexpr size_t kMaxNameLen = 255;

// RFC 1035 name with compression pointers. `pos` is advanced past the name's
// in-place bytes (a pointer consumes two). Returns nullopt on malformed input:
// bad label tags, pointer loops past the jump budget, or out-of-range reads.
std::optional<std::string> read_name(std::span<const uint8_t> msg, size_t& pos) {
    std::string name;
    size_t cur = pos;
    bool jumped = false;
    int jumps = 0;

    while (true) {
        if (cur >= msg.size()) return std::nullopt;
        uint8_t len = msg[cur];
        if (len == 0) {
            if (!jumped) pos = cur + 1;
            break;
        }
        if ((len & 0xC0) == 0xC0) {
            if (cur + 1 >= msg.size()) return std::nullopt;
            if (++jumps > kMaxPointerJumps) return std::nullopt;
            size_t target = static_cast<size_t>(len & 0x3F) << 8 | msg[cur + 1];
            if (!jumped) pos = cur + 2;
            jumped = true;
            cur = target;
            continue;
        }
        if ((len & 0xC0) != 0) return std::nullopt;  // 0x40/0x80 tags are invalid
        if (cur + 1 + len > msg.size()) return std::nullopt;
        if (name.size() + len + 1 > kMaxNameLen) return std::nullopt;
        if (!name.empty()) name.push_back('.');
        for (size_t i = 0; i < len; ++i)
            name.push_back(static_cast<char>(
                std::tolower(static_cast<unsigned char>(msg[cur + 1 + i]))));
        cur += 1 + static_cast<size_t>(len);
    }
    return name;
}

}  // namespace

Parsed<DnsEvent> decode_dns(std::span<const uint8_t> payload, const EventHeader& hdr) {
    if (payload.size() < 12) return skipped<DnsEvent>(SkipReason::DnsMalformed);

    ByteCursor cur(payload);
    cur.skip(2);  // id
    uint16_t flags = cur.u16be();
    uint16_t qdcount = cur.u16be();
    uint16_t ancount = cur.u16be();
    cur.skip(4);  // nscount, arcount
    if (qdcount == 0) return skipped<DnsEvent>(SkipReason::DnsMalformed);

    DnsEvent ev;
    ev.hdr = hdr;
    ev.is_response = (flags & 0x8000) != 0;

    size_t pos = cur.pos();
    for (uint16_t q = 0; q < qdcount; ++q) {
        auto name = read_name(payload, pos);
        if (!name || pos + 4 > payload.size())
            return skipped<DnsEvent>(SkipReason::DnsMalformed);
        uint16_t qtype = static_cast<uint16_t>(payload[pos] << 8 | payload[pos + 1]);
        pos += 4;
        if (q == 0) {
            ev.query_name = std::move(*name);
            ev.qtype = qtype;
        }
    }

    // Answers only matter on responses; a query with a nonzero answer count
    // keeps its counts but contributes no cache entries.
    for (uint16_t a = 0; a < ancount; ++a) {
        auto name = read_name(payload, pos);
        if (!name || pos + 10 > payload.size())
            return skipped<DnsEvent>(SkipReason::DnsMalformed);
        uint16_t type = static_cast<uint16_t>(payload[pos] << 8 | payload[pos + 1]);
        uint16_t klass = static_cast<uint16_t>(payload[pos + 2] << 8 | payload[pos + 3]);
        uint16_t rdlen = static_cast<uint16_t>(payload[pos + 8] << 8 | payload[pos + 9]);
        pos += 10;
        if (pos + rdlen > payload.size()) return skipped<DnsEvent>(SkipReason::DnsMalformed);
        if (ev.is_response && type == 1 && klass == 1 && rdlen == 4) {
            Ipv4Address addr{static_cast<uint32_t>(payload[pos]) << 24 |
                             static_cast<uint32_t>(payload[pos + 1]) << 16 |
                             static_cast<uint32_t>(payload[pos + 2]) << 8 |
                             payload[pos + 3]};
            ev.answers.push_back(DnsAnswer{std::move(*name), addr});
        }
        pos += rdlen;
    }
    return parsed(std::move(ev));
}

}  // namespace netsight
