// Copyright (c) 2026 Netsight Contributors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "netsight/bytes.hpp"
#include "netsight/decode.hpp"
#include "netsight/wire.hpp"

using namespace netsight;

namespace {

Parsed<TlsEvent> decode(const std::vector<uint8_t>& bytes) {
    EventHeader h;
    h.src_port = 51000;
    h.dst_port = 443;
    return decode_tls(std::span<const uint8_t>(bytes.data(), bytes.size()), h);
}

}  // namespace

TEST_CASE("client hello round trip with sni") {
    std::vector<uint16_t> suites{0x1301, 0x1302, 0xC02F};
    auto ev = decode(wire::tls_client_hello(suites, "Video.Example.COM"));
    REQUIRE(ev.ok());
    CHECK_EQ(ev->stage, TlsStage::ClientHello);
    REQUIRE(ev->sni.has_value());
    CHECK_EQ(*ev->sni, "video.example.com");
    REQUIRE(ev->cipher_suites.has_value());
    CHECK_EQ(*ev->cipher_suites, suites);
    CHECK_FALSE(ev->issuer_cn.has_value());
}

TEST_CASE("client hello without extensions") {
    auto ev = decode(wire::tls_client_hello({0x002F}, std::nullopt));
    REQUIRE(ev.ok());
    CHECK_FALSE(ev->sni.has_value());
    REQUIRE(ev->cipher_suites.has_value());
    CHECK_EQ(ev->cipher_suites->size(), 1);
}

TEST_CASE("certificate round trip extracts issuer then subject") {
    auto ev = decode(wire::tls_certificate("Acme Device CA", "kitchen-cam.acme.example"));
    REQUIRE(ev.ok());
    CHECK_EQ(ev->stage, TlsStage::Certificate);
    REQUIRE(ev->issuer_cn.has_value());
    CHECK_EQ(*ev->issuer_cn, "Acme Device CA");
    REQUIRE(ev->subject_cn.has_value());
    CHECK_EQ(*ev->subject_cn, "kitchen-cam.acme.example");
    CHECK_FALSE(ev->sni.has_value());
}

TEST_CASE("random suite lists survive the round trip in wire order") {
    Rng rng(5);
    for (int iter = 0; iter < 100; ++iter) {
        std::vector<uint16_t> suites;
        size_t n = rng.range(1, 24);
        for (size_t i = 0; i < n; ++i)
            suites.push_back(static_cast<uint16_t>(rng.next()));
        auto ev = decode(wire::tls_client_hello(suites, "x.test"));
        REQUIRE(ev.ok());
        CHECK_EQ(*ev->cipher_suites, suites);
    }
}

TEST_CASE("garbage and truncated records are malformed") {
    CHECK_EQ(decode({0x16, 0x03}).reason, SkipReason::TlsMalformed);
    CHECK_EQ(decode({'G', 'E', 'T', ' ', '/'}).reason, SkipReason::TlsMalformed);

    auto hello = wire::tls_client_hello({0x1301}, "cut.test");
    for (size_t cut = 1; cut < hello.size(); ++cut) {
        std::vector<uint8_t> part(hello.begin(), hello.begin() + cut);
        auto ev = decode(part);
        if (ev.ok()) CHECK_EQ(ev->stage, TlsStage::ClientHello);
    }
}

TEST_CASE("odd or oversized cipher suite lengths are malformed") {
    auto hello = wire::tls_client_hello({0x1301, 0x1302}, std::nullopt);
    // cipher suite length lives after record(5) + hs(4) + ver(2) + random(32) + sid(1)
    size_t cs_off = 5 + 4 + 2 + 32 + 1;
    auto odd = hello;
    odd[cs_off + 1] = 3;  // odd length
    CHECK_EQ(decode(odd).reason, SkipReason::TlsMalformed);
    auto big = hello;
    big[cs_off] = 0x7F;  // claims ~32k bytes of suites
    CHECK_EQ(decode(big).reason, SkipReason::TlsMalformed);
}

TEST_CASE("handshake records without hello or certificate yield no event") {
    // a finished (type 20) handshake message
    ByteWriter w;
    w.u8(22);
    w.u16be(0x0303);
    w.u16be(8);
    w.u8(20);
    w.u8(0);
    w.u16be(4);
    w.u32be(0);
    auto ev = decode(w.data());
    CHECK_FALSE(ev.ok());
    CHECK_EQ(ev.reason, SkipReason::TlsNoEvent);
}

TEST_CASE("application-data-only payload is malformed, not silent") {
    ByteWriter w;
    w.u8(23);
    w.u16be(0x0303);
    w.u16be(5);
    w.fill(5, 0xEE);
    auto ev = decode(w.data());
    CHECK_FALSE(ev.ok());
    CHECK_EQ(ev.reason, SkipReason::TlsMalformed);
}

TEST_CASE("hello hidden behind a change-cipher-spec record is still found") {
    ByteWriter w;
    w.u8(20);  // change_cipher_spec record first
    w.u16be(0x0303);
    w.u16be(1);
    w.u8(1);
    auto hello = wire::tls_client_hello({0xCCA8}, "deep.test");
    w.bytes(hello);
    auto ev = decode(w.data());
    REQUIRE(ev.ok());
    CHECK_EQ(*ev->sni, "deep.test");
}

TEST_CASE("empty certificate chain still emits a certificate event") {
    ByteWriter w;
    w.u8(22);
    w.u16be(0x0303);
    w.u16be(7);   // record length
    w.u8(11);     // certificate
    w.u8(0);
    w.u16be(3);   // handshake length
    w.u8(0);
    w.u16be(0);   // empty list
    auto ev = decode(w.data());
    REQUIRE(ev.ok());
    CHECK_EQ(ev->stage, TlsStage::Certificate);
    CHECK_FALSE(ev->issuer_cn.has_value());
    CHECK_FALSE(ev->subject_cn.has_value());
}
