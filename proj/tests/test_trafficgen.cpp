// Copyright (c) 2026 Netsight Contributors
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "netsight/pcap.hpp"
#include "netsight/pipeline.hpp"
#include "netsight/trafficgen.hpp"

using namespace netsight;
using namespace netsight::gen;

namespace {

Scenario tiny_valid() {
    Scenario sc;
    sc.name = "tiny";
    sc.start_ts = 1000;
    sc.duration_s = 600;
    DeviceSpec gw;
    gw.name = "gw";
    gw.mac = MacAddress::parse("02:b0:17:00:00:01").value();
    gw.persona = Persona::Gateway;
    gw.dhcp = false;
    gw.static_ip = Ipv4Address::parse("10.0.0.1");
    gw.device_class = "gateway";
    sc.devices.push_back(gw);
    DeviceSpec ws;
    ws.name = "ws";
    ws.mac = MacAddress::parse("02:b0:17:00:00:02").value();
    ws.persona = Persona::Workstation;
    ws.owner = "p1";
    ws.device_class = "workstation";
    ws.behavior = "interactive";
    sc.devices.push_back(ws);
    return sc;
}

}  // namespace

TEST_CASE("scenario json round trip") {
    Scenario sc = office_small();
    auto doc = sc.to_json();
    Scenario back = Scenario::from_json(doc);
    CHECK(back.to_json().dump() == doc.dump());
    CHECK(back.devices.size() == sc.devices.size());
    CHECK(back.policies.size() == sc.policies.size());
}

TEST_CASE("contradictory scenarios are rejected") {
    CHECK_THROWS_AS(persona_from("toaster"), InvalidScenario);

    Scenario sc = tiny_valid();
    sc.devices[1].mac = sc.devices[0].mac;
    CHECK_THROWS_AS(generate(sc, 1), InvalidScenario);  // duplicate mac

    sc = tiny_valid();
    sc.devices[1].name = "gw";
    CHECK_THROWS_AS(generate(sc, 1), InvalidScenario);  // duplicate name

    sc = tiny_valid();
    sc.devices[0].static_ip.reset();
    CHECK_THROWS_AS(generate(sc, 1), InvalidScenario);  // static without ip

    sc = tiny_valid();
    sc.devices[1].dhcp = true;
    sc.devices[1].static_ip = Ipv4Address::parse("10.0.0.9");
    CHECK_THROWS_AS(generate(sc, 1), InvalidScenario);  // both address modes

    sc = tiny_valid();
    sc.devices[1].dns_dominance = 1.5;
    CHECK_THROWS_AS(generate(sc, 1), InvalidScenario);

    sc = tiny_valid();
    sc.devices[1].behavior = "jogging";
    CHECK_THROWS_AS(generate(sc, 1), InvalidScenario);

    sc = tiny_valid();
    sc.devices[1].behavior = "beacon";  // needs 10 windows, only 9 fit
    sc.devices[1].active_end = 540;
    CHECK_THROWS_AS(generate(sc, 1), InvalidScenario);

    sc = tiny_valid();
    sc.devices[1].vendor = "Globex";
    CHECK_THROWS_AS(generate(sc, 1), InvalidScenario);

    sc = tiny_valid();
    sc.devices[1].active_end = 9999;  // beyond the scenario span
    CHECK_THROWS_AS(generate(sc, 1), InvalidScenario);

    sc = tiny_valid();  // two overlapping tenants pinned to one address
    DeviceSpec other = sc.devices[1];
    other.name = "ws2";
    other.mac = MacAddress::parse("02:b0:17:00:00:03").value();
    sc.devices[1].lease_ip = Ipv4Address::parse("10.0.0.50");
    other.lease_ip = sc.devices[1].lease_ip;
    sc.devices.push_back(other);
    CHECK_THROWS_AS(generate(sc, 1), InvalidScenario);

    sc = tiny_valid();  // clients with nobody to serve them
    sc.devices.erase(sc.devices.begin());
    CHECK_THROWS_AS(generate(sc, 1), InvalidScenario);
}

TEST_CASE("generation is deterministic per seed") {
    Generated a = generate(office_small(), 7);
    Generated b = generate(office_small(), 7);
    CHECK(write_pcap(a.records) == write_pcap(b.records));
    CHECK(a.sidecar.to_json().dump() == b.sidecar.to_json().dump());
    CHECK(a.knowledge_files == b.knowledge_files);

    Generated c = generate(office_small(), 8);
    CHECK(write_pcap(a.records) != write_pcap(c.records));
}

TEST_CASE("empty scenario yields an empty capture") {
    Scenario sc;
    sc.name = "void";
    Generated g = generate(sc, 1);
    CHECK(g.records.empty());
    CHECK(g.sidecar.packet_count == 0);
    CHECK(g.sidecar.devices.empty());
    CHECK(g.sidecar.occupancy.empty());
    verify_sidecar(g);  // nothing claimed, nothing to contradict
}

TEST_CASE("office scenario composition") {
    Scenario sc = office_small();
    Generated g = generate(sc, 3);

    CHECK(g.sidecar.devices.size() == 12);
    CHECK(g.sidecar.packet_count == g.records.size());
    CHECK(g.sidecar.boundaries.empty());  // no address ever changes hands

    int iot = 0;
    for (const auto& [key, attrs] : g.sidecar.labels) {
        auto it = attrs.find("is_iot");
        if (it != attrs.end() && it->second == "true") ++iot;
    }
    CHECK(iot == 3);

    std::set<std::pair<std::string, std::string>> viol(
        g.sidecar.violations.begin(), g.sidecar.violations.end());
    std::string rogue_key, assistant_key;
    for (const auto& d : g.sidecar.devices) {
        if (d.name == "phone-rogue") rogue_key = d.device_key;
        if (d.name == "assistant") assistant_key = d.device_key;
    }
    CHECK(viol ==
          std::set<std::pair<std::string, std::string>>{
              {"cls-1", assistant_key}, {"reg-1", rogue_key}});

    // ten hours tiled in quarter hours
    CHECK(g.sidecar.occupancy.size() == 40);
    std::set<std::string> everyone;
    for (const auto& w : g.sidecar.occupancy)
        everyone.insert(w.persons.begin(), w.persons.end());
    CHECK(everyone == std::set<std::string>{"alice", "bob", "carol", "dave"});

    // planted modes survive the generator's own measurement
    CHECK(g.sidecar.labels.at(assistant_key).at("behavior_mode") == "idle");
    for (const auto& d : g.sidecar.devices)
        if (d.name == "cam-dock")
            CHECK(g.sidecar.labels.at(d.device_key).at("behavior_mode") ==
                  "streaming");
}

TEST_CASE("office scenario survives end-to-end verification") {
    verify_sidecar(generate(office_small(), 1));
}

TEST_CASE("randomized scenario families survive verification") {
    for (uint32_t seed : {1u, 2u, 3u}) {
        CAPTURE(seed);
        verify_sidecar(generate(random_scenario(seed), seed));
        verify_sidecar(generate(reassignment_scenario(seed), seed));
        verify_sidecar(generate(random_iot_scenario(seed), seed));
        verify_sidecar(generate(random_policy_scenario(seed), seed));
        verify_sidecar(generate(random_behavior_scenario(seed), seed));
        verify_sidecar(generate(random_occupancy_scenario(seed), seed));
    }
}

TEST_CASE("reassignment scenarios plant a visible epoch cut") {
    Generated g = generate(reassignment_scenario(5), 5);
    REQUIRE(g.sidecar.boundaries.size() == 1);
    const auto& b = g.sidecar.boundaries[0];
    CHECK(b.before_key != b.after_key);
    // the tenants run different software, so the labels must not bleed
    CHECK(g.sidecar.labels.at(b.before_key).at("os") == "WorkOS");
    CHECK(g.sidecar.labels.at(b.after_key).at("os") == "AcmePrint OS");
}

TEST_CASE("tampered sidecars fail verification") {
    Generated g = generate(office_small(), 2);

    Generated fake_dev = g;
    fake_dev.sidecar.devices.push_back(
        SidecarDevice{"02:99:99:99:99:99", "ghost", std::nullopt, "", false});
    CHECK_THROWS_AS(verify_sidecar(fake_dev), SelfCheckFailure);

    Generated wrong_label = g;
    wrong_label.sidecar.labels[g.sidecar.devices[2].device_key]["os"] =
        "BeOS";
    CHECK_THROWS_AS(verify_sidecar(wrong_label), SelfCheckFailure);

    Generated extra_viol = g;
    extra_viol.sidecar.violations.push_back(
        {"reg-1", g.sidecar.devices[0].device_key});
    CHECK_THROWS_AS(verify_sidecar(extra_viol), SelfCheckFailure);
}

TEST_CASE("sidecar json round trip") {
    Sidecar sc = generate(office_small(), 4).sidecar;
    auto doc = sc.to_json();
    Sidecar back = Sidecar::from_json(doc);
    CHECK(back.to_json().dump() == doc.dump());
    CHECK(back.device_keys() == sc.device_keys());
}

TEST_CASE("knowledge text files load back into the same tables") {
    Generated g = generate(office_small(), 6);
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "netsight_gen_kb_test";
    fs::create_directories(dir);
    for (const auto& [name, text] : g.knowledge_files) {
        std::ofstream out(dir / name, std::ios::binary);
        out << text;
    }
    KnowledgeBundle loaded = KnowledgeBundle::load_dir(dir.string());
    fs::remove_all(dir);

    CHECK(loaded.report.warnings.empty());
    CHECK(loaded.report.total_skipped() == 0);
    CHECK(loaded.oui.entries == g.knowledge.oui.entries);
    CHECK(loaded.domains.entries == g.knowledge.domains.entries);
    CHECK(loaded.registry.entries == g.knowledge.registry.entries);
    CHECK(loaded.tls_fingerprints.entries == g.knowledge.tls_fingerprints.entries);
    CHECK(loaded.vendor_norm.entries == g.knowledge.vendor_norm.entries);
    REQUIRE(loaded.ua_rules.rules.size() == g.knowledge.ua_rules.rules.size());
    for (size_t i = 0; i < loaded.ua_rules.rules.size(); ++i) {
        CHECK(loaded.ua_rules.rules[i].rule_id ==
              g.knowledge.ua_rules.rules[i].rule_id);
        CHECK(loaded.ua_rules.rules[i].pattern ==
              g.knowledge.ua_rules.rules[i].pattern);
        CHECK(loaded.ua_rules.rules[i].attrs ==
              g.knowledge.ua_rules.rules[i].attrs);
    }
    CHECK(loaded.geo.entries.size() == g.knowledge.geo.entries.size());
    for (size_t i = 0; i < loaded.geo.entries.size(); ++i) {
        CHECK(loaded.geo.entries[i].network == g.knowledge.geo.entries[i].network);
        CHECK(loaded.geo.entries[i].prefix_len ==
              g.knowledge.geo.entries[i].prefix_len);
        CHECK(loaded.geo.entries[i].country == g.knowledge.geo.entries[i].country);
    }
}
