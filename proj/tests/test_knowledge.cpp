// Copyright (c) 2026 Netsight Contributors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "netsight/knowledge.hpp"

using namespace netsight;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("netsight_know_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int& counter() {
        static int c = 0;
        return c;
    }
    void write(const std::string& name, const std::string& content) const {
        std::ofstream out(path / name);
        out << content;
    }
};

}  // namespace

TEST_CASE("empty directory loads five empty tables with five warnings") {
    TempDir dir;
    auto b = KnowledgeBundle::load_dir(dir.path.string());
    CHECK_EQ(b.report.warnings.size(), 5);
    CHECK(b.oui.entries.empty());
    CHECK(b.ua_rules.rules.empty());
    CHECK(b.domains.entries.empty());
    CHECK(b.geo.entries.empty());
    CHECK(b.registry.entries.empty());
    CHECK(b.tls_fingerprints.entries.empty());
    CHECK(b.vendor_norm.entries.empty());
    CHECK_EQ(b.report.total_skipped(), 0);
    // lookups on empty tables are total
    CHECK_FALSE(b.oui.lookup(*MacAddress::parse("aa:bb:cc:00:00:01")).vendor.has_value());
    CHECK_FALSE(b.geo.lookup(*Ipv4Address::parse("8.8.8.8")).has_value());
}

TEST_CASE("vendor lookup: registered prefix wins, local-admin miss is flagged") {
    TempDir dir;
    dir.write("oui.csv", "02:00:00,TestVendor\nAC:DE:48,RealCorp\nbad line here\n");
    auto b = KnowledgeBundle::load_dir(dir.path.string());
    CHECK_EQ(b.report.skipped.at("oui.csv"), 1);

    auto hit = b.oui.lookup(*MacAddress::parse("02:00:00:00:00:07"));
    REQUIRE(hit.vendor.has_value());
    CHECK_EQ(*hit.vendor, "TestVendor");
    CHECK_FALSE(hit.local_admin);

    auto real = b.oui.lookup(*MacAddress::parse("ac:de:48:12:34:56"));
    CHECK_EQ(*real.vendor, "RealCorp");

    auto local_miss = b.oui.lookup(*MacAddress::parse("06:11:22:33:44:55"));
    CHECK_FALSE(local_miss.vendor.has_value());
    CHECK(local_miss.local_admin);

    auto global_miss = b.oui.lookup(*MacAddress::parse("ac:de:49:00:00:01"));
    CHECK_FALSE(global_miss.vendor.has_value());
    CHECK_FALSE(global_miss.local_admin);

    // purity: same query twice
    auto again = b.oui.lookup(*MacAddress::parse("02:00:00:00:00:07"));
    CHECK_EQ(*again.vendor, "TestVendor");
}

TEST_CASE("user-agent rules: first match wins, bad regex skipped") {
    TempDir dir;
    dir.write("ua_rules.json", R"([
      {"rule_id": "r1", "pattern": "LaserJet", "attrs": {"device_type": "printer"}},
      {"rule_id": "bad", "pattern": "([", "attrs": {"os": "x"}},
      {"rule_id": "r2", "pattern": "Laser", "attrs": {"device_type": "engraver"}},
      {"rule_id": "r3", "pattern": "Firefox/[0-9]+", "attrs": {"browser": "firefox", "os": "linux"}}
    ])");
    auto b = KnowledgeBundle::load_dir(dir.path.string());
    CHECK_EQ(b.ua_rules.rules.size(), 3);
    CHECK_EQ(b.report.skipped.at("ua_rules.json"), 1);

    auto m = b.ua_rules.match("Mozilla/5.0 LaserJet/2.1");
    REQUIRE(m.has_value());
    CHECK_EQ(m->rule_id, "r1");  // earlier rule beats the also-matching r2
    CHECK_EQ(m->attrs.at("device_type"), "printer");

    auto ff = b.ua_rules.match("Mozilla/5.0 (X11) Firefox/115.2");
    REQUIRE(ff.has_value());
    CHECK_EQ(ff->rule_id, "r3");
    CHECK_EQ(ff->attrs.at("browser"), "firefox");

    CHECK_FALSE(b.ua_rules.match("").has_value());
    CHECK_FALSE(b.ua_rules.match("curl/8.0").has_value());
}

TEST_CASE("domain ownership: longest suffix on label boundaries") {
    TempDir dir;
    dir.write("domain_owners.csv",
              "com,Generic,\n"
              "vendor.com,AcmeCorp,US\n"
              "api.vendor.com,AcmeApi,US\n"
              "dor.com,Mismatch,\n");
    auto b = KnowledgeBundle::load_dir(dir.path.string());

    CHECK_EQ(b.domains.lookup("api.vendor.com")->org, "AcmeApi");
    CHECK_EQ(b.domains.lookup("x.api.vendor.com")->org, "AcmeApi");
    CHECK_EQ(b.domains.lookup("a.vendor.com")->org, "AcmeCorp");
    CHECK_EQ(b.domains.lookup("vendor.com")->org, "AcmeCorp");
    CHECK_EQ(b.domains.lookup("other.com")->org, "Generic");
    // "vendor.com" must not match entry "dor.com" (label boundary)
    CHECK_EQ(b.domains.lookup("ven.dor.com")->org, "Mismatch");
    CHECK_FALSE(b.domains.lookup("vendor.org").has_value());
    // case and trailing dot insensitivity
    CHECK_EQ(b.domains.lookup("API.Vendor.COM.")->org, "AcmeApi");
    REQUIRE(b.domains.lookup("vendor.com")->country.has_value());
    CHECK_EQ(*b.domains.lookup("vendor.com")->country, "US");
    CHECK_FALSE(b.domains.lookup("other.com")->country.has_value());
}

TEST_CASE("domain lookup agrees with a brute-force scan on random queries") {
    TempDir dir;
    dir.write("domain_owners.csv",
              "com,C1,\nnet,C2,\nexample.com,C3,\napi.example.com,C4,\n"
              "cdn.example.com,C5,\nexample.net,C6,\nwidgets.io,C7,\n");
    auto b = KnowledgeBundle::load_dir(dir.path.string());

    // brute force: try every entry, keep longest that matches on a boundary
    auto brute = [&](const std::string& q) -> std::optional<std::string> {
        std::optional<std::string> best;
        size_t best_len = 0;
        for (const auto& [suffix, owner] : b.domains.entries) {
            bool match = q == suffix ||
                         (q.size() > suffix.size() &&
                          q.substr(q.size() - suffix.size()) == suffix &&
                          q[q.size() - suffix.size() - 1] == '.');
            if (match && suffix.size() > best_len) {
                best = owner.org;
                best_len = suffix.size();
            }
        }
        return best;
    };

    Rng rng(17);
    std::vector<std::string> parts{"api", "cdn",     "example", "com", "net",
                                   "io",  "widgets", "x",       "deep"};
    for (int i = 0; i < 500; ++i) {
        std::string q;
        size_t n = rng.range(1, 4);
        for (size_t j = 0; j < n; ++j) {
            if (!q.empty()) q += '.';
            q += rng.pick(parts);
        }
        auto got = b.domains.lookup(q);
        auto want = brute(q);
        CHECK_EQ(got.has_value(), want.has_value());
        if (got && want) CHECK_EQ(got->org, *want);
    }
}

TEST_CASE("geo lookup: longest prefix, verified against brute force") {
    TempDir dir;
    dir.write("geo.csv",
              "10.0.0.0/8,AA\n10.1.0.0/16,BB\n10.1.2.0/24,CC\n"
              "93.184.0.0/16,US\n0.0.0.0/0,ZZ\n198.51.100.0/24,DE\n");
    auto b = KnowledgeBundle::load_dir(dir.path.string());

    CHECK_EQ(*b.geo.lookup(*Ipv4Address::parse("10.1.2.3")), "CC");
    CHECK_EQ(*b.geo.lookup(*Ipv4Address::parse("10.1.3.3")), "BB");
    CHECK_EQ(*b.geo.lookup(*Ipv4Address::parse("10.2.3.4")), "AA");
    CHECK_EQ(*b.geo.lookup(*Ipv4Address::parse("93.184.216.34")), "US");
    CHECK_EQ(*b.geo.lookup(*Ipv4Address::parse("8.8.8.8")), "ZZ");

    auto brute = [&](Ipv4Address ip) -> std::optional<std::string> {
        std::optional<std::string> best;
        int best_len = -1;
        for (const auto& e : b.geo.entries) {
            uint32_t mask = e.prefix_len == 0 ? 0 : ~uint32_t{0} << (32 - e.prefix_len);
            if ((ip.value & mask) == (e.network & mask) && e.prefix_len > best_len) {
                best = e.country;
                best_len = e.prefix_len;
            }
        }
        return best;
    };
    Rng rng(31);
    for (int i = 0; i < 1000; ++i) {
        Ipv4Address ip{static_cast<uint32_t>(rng.next())};
        if (rng.chance(0.5)) ip.value = (10u << 24) | (ip.value & 0x00FFFFFF);
        auto got = b.geo.lookup(ip);
        auto want = brute(ip);
        REQUIRE_EQ(got.has_value(), want.has_value());
        if (got) CHECK_EQ(*got, *want);
    }
}

TEST_CASE("registry round trip with authorized flag") {
    TempDir dir;
    dir.write("registry.csv",
              "02:c0:00:00:00:10,alice,WS-0001,workstation,true\n"
              "02:c0:00:00:00:11,,GW-0001,gateway,true\n"
              "02:c0:00:00:00:12,bob,BYOD-7,phone,false\n"
              "not-a-mac,x,y,z,true\n"
              "02:c0:00:00:00:13,carol,BAD-BOOL,phone,maybe\n");
    auto b = KnowledgeBundle::load_dir(dir.path.string());
    CHECK_EQ(b.registry.entries.size(), 3);
    CHECK_EQ(b.report.skipped.at("registry.csv"), 2);

    auto* ws = b.registry.lookup(*MacAddress::parse("02:c0:00:00:00:10"));
    REQUIRE(ws);
    CHECK_EQ(ws->owner, "alice");
    CHECK_EQ(ws->device_id, "WS-0001");
    CHECK_EQ(ws->device_class, "workstation");
    CHECK(ws->authorized);

    auto* gw = b.registry.lookup(*MacAddress::parse("02:c0:00:00:00:11"));
    REQUIRE(gw);
    CHECK_EQ(gw->owner, "");  // unowned infrastructure

    auto* byod = b.registry.lookup(*MacAddress::parse("02:c0:00:00:00:12"));
    REQUIRE(byod);
    CHECK_FALSE(byod->authorized);

    CHECK_EQ(b.registry.lookup(*MacAddress::parse("02:c0:00:00:00:99")), nullptr);
}

TEST_CASE("rule files load without warnings and normalize as substrings") {
    TempDir dir;
    dir.write("tls_fingerprints.csv", "1301-1302-c02f,acme-telemetry\nc02f,legacy-embedded\n");
    dir.write("vendor_norm.csv", "acmecam,Acme\nvoicehub,VoiceHub Inc\n");
    auto b = KnowledgeBundle::load_dir(dir.path.string());
    CHECK_EQ(b.report.warnings.size(), 5);  // core files still missing

    CHECK_EQ(*b.tls_fingerprints.lookup("1301-1302-c02f"), "acme-telemetry");
    CHECK_FALSE(b.tls_fingerprints.lookup("dead-beef").has_value());

    CHECK_EQ(*b.vendor_norm.normalize("AcmeCam OS 1.2"), "Acme");
    CHECK_EQ(*b.vendor_norm.normalize("udhcp VoiceHub-3000"), "VoiceHub Inc");
    CHECK_FALSE(b.vendor_norm.normalize("generic linux").has_value());
}

TEST_CASE("comments and blank lines are ignored, not counted as malformed") {
    TempDir dir;
    dir.write("geo.csv", "# country map\n\n10.0.0.0/8,AA\n\n# end\n");
    auto b = KnowledgeBundle::load_dir(dir.path.string());
    CHECK_EQ(b.geo.entries.size(), 1);
    CHECK_EQ(b.report.total_skipped(), 0);
}
