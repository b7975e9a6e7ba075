// Copyright (c) 2026 Netsight Contributors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>

#include "netsight/bytes.hpp"
#include "netsight/decode.hpp"

namespace netsight {

namespace {

// Minimal DER walk: find occurrences of the commonName AttributeType
// (OID 2.5.4.3, encoded 06 03 55 04 03) and take the string value that
// follows. In a TBSCertificate the issuer Name precedes the subject Name, so
// the first hit is the issuer CN and the second the subject CN. This is a
// deliberate shortcut -- no full X.509 parse -- and unrecognizable input
// simply yields no CNs.
void scan_der_cns(std::span<const uint8_t> der, std::optional<std::string>& issuer,
                  std::optional<std::string>& subject) {
    static const uint8_t kCnOid[5] = {0x06, 0x03, 0x55, 0x04, 0x03};
    for (size_t i = 0; i + sizeof(kCnOid) + 2 <= der.size(); ++i) {
        if (!std::equal(std::begin(kCnOid), std::end(kCnOid), der.begin() + static_cast<long>(i)))
            continue;
        size_t p = i + sizeof(kCnOid);
        uint8_t tag = der[p];
        // UTF8String, PrintableString, T61String, IA5String
        if (tag != 0x0C && tag != 0x13 && tag != 0x14 && tag != 0x16) continue;
        ++p;
        if (p >= der.size()) return;
        size_t len = der[p];
        ++p;
        if (len & 0x80) {  // long form
            size_t n = len & 0x7F;
            if (n == 0 || n > 2 || p + n > der.size()) continue;
            len = 0;
            for (size_t k = 0; k < n; ++k) len = len << 8 | der[p + k];
            p += n;
        }
        if (p + len > der.size()) continue;
        std::string cn(reinterpret_cast<const char*>(der.data() + p), len);
        if (!issuer)
            issuer = std::move(cn);
        else if (!subject) {
            subject = std::move(cn);
            return;
        }
    }
}

Parsed<TlsEvent> parse_client_hello(ByteCursor body, const EventHeader& hdr) {
    TlsEvent ev;
    ev.hdr = hdr;
    ev.stage = TlsStage::ClientHello;

    body.skip(2);   // client_version
    body.skip(32);  // random
    uint8_t sid_len = body.u8();
    body.skip(sid_len);
    uint16_t cs_len = body.u16be();
    if (!body.ok() || cs_len < 2 || cs_len % 2 != 0 || cs_len > body.remaining())
        return skipped<TlsEvent>(SkipReason::TlsMalformed);
    std::vector<uint16_t> suites;
    for (uint16_t i = 0; i < cs_len / 2; ++i) suites.push_back(body.u16be());
    ev.cipher_suites = std::move(suites);
    uint8_t comp_len = body.u8();
    body.skip(comp_len);
    if (!body.ok()) return skipped<TlsEvent>(SkipReason::TlsMalformed);

    if (body.remaining() >= 2) {
        uint16_t ext_total = body.u16be();
        if (ext_total > body.remaining()) return skipped<TlsEvent>(SkipReason::TlsMalformed);
        size_t ext_end = body.pos() + ext_total;
        while (body.pos() + 4 <= ext_end) {
            uint16_t ext_type = body.u16be();
            uint16_t ext_len = body.u16be();
            if (body.pos() + ext_len > ext_end)
                return skipped<TlsEvent>(SkipReason::TlsMalformed);
            if (ext_type == 0 && ext_len >= 5) {
                // server_name list: u16 list_len, u8 name_type, u16 name_len
                ByteCursor sni(body.take(ext_len));
                sni.skip(2);
                uint8_t name_type = sni.u8();
                uint16_t name_len = sni.u16be();
                if (sni.ok() && name_type == 0 && name_len <= sni.remaining())
                    ev.sni = to_lower(sni.str(name_len));
            } else {
                body.skip(ext_len);
            }
        }
    }
    if (!body.ok()) return skipped<TlsEvent>(SkipReason::TlsMalformed);
    return parsed(std::move(ev));
}

Parsed<TlsEvent> parse_certificate(ByteCursor body, const EventHeader& hdr) {
    TlsEvent ev;
    ev.hdr = hdr;
    ev.stage = TlsStage::Certificate;

    auto u24 = [&body]() -> uint32_t {
        uint32_t hi = body.u8();
        return hi << 16 | body.u16be();
    };
    uint32_t list_len = u24();
    if (!body.ok() || list_len > body.remaining())
        return skipped<TlsEvent>(SkipReason::TlsMalformed);
    if (list_len < 3) return parsed(std::move(ev));  // empty chain: event, no CNs
    uint32_t cert_len = u24();
    if (!body.ok() || cert_len > body.remaining())
        return skipped<TlsEvent>(SkipReason::TlsMalformed);
    scan_der_cns(body.take(cert_len), ev.issuer_cn, ev.subject_cn);
    return parsed(std::move(ev));
}

}  // namespace

// Walks handshake records in the segment and parses the first ClientHello or
// Certificate found. Other handshake messages (ServerHello etc.) are stepped
// over; a handshake-free segment is a counted non-event, not dirty data.
Parsed<TlsEvent> decode_tls(std::span<const uint8_t> payload, const EventHeader& hdr) {
    ByteCursor rec(payload);
    bool saw_handshake_record = false;

    while (rec.remaining() >= 5) {
        uint8_t content_type = rec.u8();
        rec.skip(2);  // record version
        uint16_t rec_len = rec.u16be();
        if (!rec.ok() || rec_len > rec.remaining())
            return skipped<TlsEvent>(SkipReason::TlsMalformed);
        auto record = rec.take(rec_len);
        if (content_type != 22) continue;
        saw_handshake_record = true;

        ByteCursor hs(record);
        while (hs.remaining() >= 4) {
            uint8_t msg_type = hs.u8();
            uint32_t msg_len = static_cast<uint32_t>(hs.u8()) << 16 | hs.u16be();
            if (!hs.ok() || msg_len > hs.remaining())
                return skipped<TlsEvent>(SkipReason::TlsMalformed);
            auto body = hs.take(msg_len);
            if (msg_type == 1) return parse_client_hello(ByteCursor(body), hdr);
            if (msg_type == 11) return parse_certificate(ByteCursor(body), hdr);
        }
    }
    return skipped<TlsEvent>(saw_handshake_record ? SkipReason::TlsNoEvent
                                                  : SkipReason::TlsMalformed);
}

}  // namespace netsight
