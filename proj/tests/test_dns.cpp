// Copyright (c) 2026 Netsight Contributors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "netsight/bytes.hpp"
#include "netsight/decode.hpp"
#include "netsight/wire.hpp"

using namespace netsight;

namespace {

EventHeader hdr() {
    EventHeader h;
    h.ts = Timestamp{1'000'000};
    h.src_ip = *Ipv4Address::parse("10.0.0.5");
    h.dst_ip = *Ipv4Address::parse("10.0.0.1");
    h.src_port = 5353;
    h.dst_port = 53;
    return h;
}

Parsed<DnsEvent> decode(const std::vector<uint8_t>& msg) {
    return decode_dns(std::span<const uint8_t>(msg.data(), msg.size()), hdr());
}

}  // namespace

TEST_CASE("query round trip") {
    auto msg = wire::dns_query(0x1234, "www.Example.COM", 1);
    auto ev = decode(msg);
    REQUIRE(ev.ok());
    CHECK_EQ(ev->query_name, "www.example.com");
    CHECK_EQ(ev->qtype, 1);
    CHECK_FALSE(ev->is_response);
    CHECK(ev->answers.empty());
}

TEST_CASE("response round trip, compressed and uncompressed give identical events") {
    std::vector<Ipv4Address> addrs{*Ipv4Address::parse("93.184.216.34"),
                                   *Ipv4Address::parse("93.184.216.35")};
    auto compressed = wire::dns_response(7, "cdn.video.example.com", 1, addrs, true);
    auto expanded = wire::dns_response(7, "cdn.video.example.com", 1, addrs, false);
    CHECK_LT(compressed.size(), expanded.size());

    auto a = decode(compressed);
    auto b = decode(expanded);
    REQUIRE(a.ok());
    REQUIRE(b.ok());
    CHECK(a->is_response);
    CHECK_EQ(a->query_name, b->query_name);
    REQUIRE_EQ(a->answers.size(), 2);
    CHECK(a->answers == b->answers);
    CHECK_EQ(a->answers[0].name, "cdn.video.example.com");
    CHECK_EQ(a->answers[0].addr.to_string(), "93.184.216.34");
    CHECK_EQ(a->answers[1].addr.to_string(), "93.184.216.35");
}

TEST_CASE("many random names survive the compression round trip") {
    Rng rng(99);
    std::vector<std::string> labels{"a",    "bb",    "media", "x9",
                                    "long-label-with-dashes", "cdn", "eu"};
    for (int iter = 0; iter < 200; ++iter) {
        std::string name;
        size_t n = rng.range(1, 5);
        for (size_t i = 0; i < n; ++i) {
            if (!name.empty()) name += '.';
            name += rng.pick(labels);
        }
        std::vector<Ipv4Address> addrs;
        size_t na = rng.range(0, 3);
        for (size_t i = 0; i < na; ++i)
            addrs.push_back(Ipv4Address{static_cast<uint32_t>(rng.next())});
        auto msg = wire::dns_response(static_cast<uint16_t>(iter), name, 1, addrs,
                                      rng.chance(0.5));
        auto ev = decode(msg);
        REQUIRE(ev.ok());
        CHECK_EQ(ev->query_name, name);
        REQUIRE_EQ(ev->answers.size(), addrs.size());
        for (size_t i = 0; i < addrs.size(); ++i) {
            CHECK_EQ(ev->answers[i].addr, addrs[i]);
            CHECK_EQ(ev->answers[i].name, name);
        }
    }
}

TEST_CASE("pointer chains resolve through multiple hops") {
    // message with question "a.b.example.com" whose answer name points into
    // the middle of the question name
    ByteWriter w;
    w.u16be(1);
    w.u16be(0x8180);
    w.u16be(1);
    w.u16be(1);
    w.u16be(0);
    w.u16be(0);
    // question name at offset 12: 1'a' 1'b' 7'example' 3'com' 0
    w.bytes(wire::encode_dns_name("a.b.example.com"));
    w.u16be(1);
    w.u16be(1);
    // answer name: pointer to offset 14 (skips the leading "a" label)
    w.u16be(0xC000 | 14);
    w.u16be(1);
    w.u16be(1);
    w.u32be(60);
    w.u16be(4);
    w.u32be(0x01020304);
    auto ev = decode(w.data());
    REQUIRE(ev.ok());
    CHECK_EQ(ev->query_name, "a.b.example.com");
    REQUIRE_EQ(ev->answers.size(), 1);
    CHECK_EQ(ev->answers[0].name, "b.example.com");
}

TEST_CASE("self-referencing pointer is rejected rather than looping") {
    ByteWriter w;
    w.u16be(1);
    w.u16be(0x0100);
    w.u16be(1);
    w.u16be(0);
    w.u16be(0);
    w.u16be(0);
    w.u16be(0xC00C);  // name at offset 12 points at itself
    w.u16be(1);
    w.u16be(1);
    auto ev = decode(w.data());
    CHECK_FALSE(ev.ok());
    CHECK_EQ(ev.reason, SkipReason::DnsMalformed);
}

TEST_CASE("two pointers bouncing between each other are rejected") {
    ByteWriter w;
    w.u16be(1);
    w.u16be(0x0100);
    w.u16be(1);
    w.u16be(0);
    w.u16be(0);
    w.u16be(0);
    w.u16be(0xC00E);  // offset 12 -> 14
    w.u16be(0xC00C);  // offset 14 -> 12
    w.u16be(1);
    w.u16be(1);
    auto ev = decode(w.data());
    CHECK_FALSE(ev.ok());
    CHECK_EQ(ev.reason, SkipReason::DnsMalformed);
}

TEST_CASE("reserved label tags and oversized names are rejected") {
    for (uint8_t tag : {uint8_t{0x40}, uint8_t{0x80}}) {
        ByteWriter w;
        w.u16be(1);
        w.u16be(0x0100);
        w.u16be(1);
        w.u16be(0);
        w.u16be(0);
        w.u16be(0);
        w.u8(tag | 3);
        w.str("abc");
        w.u8(0);
        w.u16be(1);
        w.u16be(1);
        auto ev = decode(w.data());
        CHECK_FALSE(ev.ok());
        CHECK_EQ(ev.reason, SkipReason::DnsMalformed);
    }

    // five 63-byte labels: 320 bytes of name, over the 255 limit
    std::string label(63, 'q');
    std::string big = label;
    for (int i = 0; i < 4; ++i) big += "." + label;
    auto msg = wire::dns_query(1, big, 1);
    auto ev = decode(msg);
    CHECK_FALSE(ev.ok());
    CHECK_EQ(ev.reason, SkipReason::DnsMalformed);
}

TEST_CASE("zero questions or short header is malformed") {
    ByteWriter w;
    w.u16be(9);
    w.u16be(0x8180);
    w.u16be(0);  // qdcount 0
    w.u16be(0);
    w.u16be(0);
    w.u16be(0);
    auto ev = decode(w.data());
    CHECK_FALSE(ev.ok());
    CHECK_EQ(ev.reason, SkipReason::DnsMalformed);

    std::vector<uint8_t> tiny{0x12, 0x34, 0x01};
    auto ev2 = decode(tiny);
    CHECK_FALSE(ev2.ok());
    CHECK_EQ(ev2.reason, SkipReason::DnsMalformed);
}

TEST_CASE("first question wins when several are present") {
    ByteWriter w;
    w.u16be(1);
    w.u16be(0x0100);
    w.u16be(2);
    w.u16be(0);
    w.u16be(0);
    w.u16be(0);
    w.bytes(wire::encode_dns_name("first.test"));
    w.u16be(28);
    w.u16be(1);
    w.bytes(wire::encode_dns_name("second.test"));
    w.u16be(1);
    w.u16be(1);
    auto ev = decode(w.data());
    REQUIRE(ev.ok());
    CHECK_EQ(ev->query_name, "first.test");
    CHECK_EQ(ev->qtype, 28);
}

TEST_CASE("answers are kept only from responses") {
    auto msg = wire::dns_response(3, "what.test", 1,
                                  {*Ipv4Address::parse("1.2.3.4")}, true);
    msg[2] = 0x01;  // clear QR: now claims to be a query with an answer section
    msg[3] = 0x00;
    auto ev = decode(msg);
    REQUIRE(ev.ok());
    CHECK_FALSE(ev->is_response);
    CHECK(ev->answers.empty());
}

TEST_CASE("non-A answer records are skipped but A records around them survive") {
    ByteWriter w;
    w.u16be(1);
    w.u16be(0x8180);
    w.u16be(1);
    w.u16be(3);
    w.u16be(0);
    w.u16be(0);
    w.bytes(wire::encode_dns_name("mix.test"));
    w.u16be(1);
    w.u16be(1);
    // CNAME answer
    w.u16be(0xC00C);
    w.u16be(5);
    w.u16be(1);
    w.u32be(60);
    auto cname = wire::encode_dns_name("alias.test");
    w.u16be(static_cast<uint16_t>(cname.size()));
    w.bytes(cname);
    // A answer
    w.u16be(0xC00C);
    w.u16be(1);
    w.u16be(1);
    w.u32be(60);
    w.u16be(4);
    w.u32be(0x08080808);
    // A answer with wrong rdlength: skipped
    w.u16be(0xC00C);
    w.u16be(1);
    w.u16be(1);
    w.u32be(60);
    w.u16be(6);
    w.fill(6);
    auto ev = decode(w.data());
    REQUIRE(ev.ok());
    REQUIRE_EQ(ev->answers.size(), 1);
    CHECK_EQ(ev->answers[0].addr.to_string(), "8.8.8.8");
}

TEST_CASE("truncated prefixes never crash and never fabricate answers") {
    auto msg = wire::dns_response(42, "trunc.example.net", 1,
                                  {*Ipv4Address::parse("10.1.2.3")}, true);
    for (size_t cut = 0; cut < msg.size(); ++cut) {
        std::vector<uint8_t> part(msg.begin(), msg.begin() + cut);
        auto ev = decode(part);
        if (ev.ok()) {
            // a shorter prefix may legitimately parse once the full question
            // is present; it must never invent answer bytes it doesn't have
            CHECK_LE(ev->answers.size(), 1);
            CHECK_EQ(ev->query_name, "trunc.example.net");
        } else {
            CHECK_EQ(ev.reason, SkipReason::DnsMalformed);
        }
    }
}
