// Copyright (c) 2026 Netsight Contributors
// SPDX-License-Identifier: Apache-2.0
//
// Ground-truth scenario generator. Writes synthetic captures plus a label
// sidecar describing exactly what a correct analysis must recover, so every
// analytic has an oracle. Personas shape per-device traffic: IoT cameras
// concentrate DNS on one vendor and beacon or stream, workstations browse
// widely, printers mostly sleep, phones renew leases and browse in bursts.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "netsight/claims.hpp"
#include "netsight/knowledge.hpp"
#include "netsight/pcap.hpp"
#include "netsight/policy.hpp"

namespace netsight::gen {

class InvalidScenario : public std::runtime_error {
  public:
    explicit InvalidScenario(const std::string& msg) : std::runtime_error(msg) {}
};

class SelfCheckFailure : public std::runtime_error {
  public:
    explicit SelfCheckFailure(const std::string& msg) : std::runtime_error(msg) {}
};

enum class Persona { Workstation, IoTCamera, Printer, PhoneDualUse, Gateway, Server };

const char* to_string(Persona p);
Persona persona_from(const std::string& name);  // throws InvalidScenario

struct DeviceSpec {
    std::string name;  // stable handle, unique within the scenario
    MacAddress mac;
    Persona persona = Persona::Workstation;
    std::string owner;  // person id, "" = unowned
    bool dhcp = true;
    std::optional<Ipv4Address> static_ip;  // required when !dhcp
    std::optional<Ipv4Address> lease_ip;   // pin the dhcp-assigned address
    bool registered = true;
    bool authorized = true;
    std::string device_class;  // registry column and device_type truth
    std::string vendor;        // "" = persona default
    int dns_queries = -1;      // owned-domain queries; -1 = persona default
    double dns_dominance = -1.0;  // top-org share of owned queries; -1 = default
    std::string behavior;  // "", "beacon", "stream", "idle", "interactive"
    double renew_every_s = 0;  // dhcp renewal period, 0 = no renewals
    int cleartext_gets = -1;   // http requests; -1 = persona default
    int bad_geo_flows = 0;     // flows to the flagged-country address
    int bad_suffix_queries = 0;  // queries under the banned suffix
    std::optional<double> active_start;  // offsets from scenario start
    std::optional<double> active_end;
};

struct Scenario {
    int schema_version = 1;
    std::string name;
    double start_ts = 0;    // epoch seconds of the first activity
    double duration_s = 0;  // scenario span
    int64_t occupancy_window_s = 900;
    std::vector<DeviceSpec> devices;
    std::vector<PolicyRule> policies;

    static Scenario from_json(const nlohmann::json& doc);  // throws InvalidScenario
    nlohmann::json to_json() const;
};

struct SidecarDevice {
    std::string device_key;
    std::string name;
    std::optional<MacAddress> mac;
    std::string owner;
    bool registered = true;
};

struct EpochBoundary {
    Ipv4Address ip;
    double ts = 0;  // ack that moved the address
    std::string before_key;
    std::string after_key;
};

struct OccupancyLabel {
    double start = 0;
    double end = 0;
    std::set<std::string> persons;
    int unattributed = 0;

    bool operator==(const OccupancyLabel&) const = default;
};

struct Sidecar {
    int schema_version = 1;
    std::string scenario_name;
    uint32_t seed = 0;
    uint64_t packet_count = 0;
    int64_t occupancy_window_s = 900;    // tiling used for the labels below
    std::vector<SidecarDevice> devices;  // expected identity set
    LabelMap labels;                     // device_key -> attribute -> value
    // planted (rule_id, device_key) pairs the policy engine must flag
    std::vector<std::pair<std::string, std::string>> violations;
    std::vector<OccupancyLabel> occupancy;
    std::vector<EpochBoundary> boundaries;  // dhcp reassignment cut points

    static Sidecar from_json(const nlohmann::json& doc);
    nlohmann::json to_json() const;

    std::set<std::string> device_keys() const;
};

struct Generated {
    std::vector<PacketRecord> records;
    Sidecar sidecar;
    KnowledgeBundle knowledge;  // same content as knowledge_files
    std::map<std::string, std::string> knowledge_files;  // filename -> text
    nlohmann::json policies;  // policy pack for the scenario
};

// Deterministic for (scenario, seed). Throws InvalidScenario on contradictory
// specs and SelfCheckFailure when a planted behavior label cannot be realized.
Generated generate(const Scenario& scenario, uint32_t seed);

// Re-analyzes the generated capture end to end and confirms every labeled
// fact is evidenced; throws SelfCheckFailure listing the first mismatch.
void verify_sidecar(const Generated& g);

// --- bundled and randomized scenarios ---

Scenario office_small();
Scenario random_scenario(uint32_t seed);             // device discovery mix
Scenario reassignment_scenario(uint32_t seed);       // one ip, two tenants
Scenario random_iot_scenario(uint32_t seed);         // planted dominance split
Scenario random_policy_scenario(uint32_t seed);      // planted violations
Scenario random_behavior_scenario(uint32_t seed);    // beacon/stream/idle mix
Scenario random_occupancy_scenario(uint32_t seed);   // 1-10 persons, gaps
Scenario big_scenario(uint64_t target_packets);      // throughput runs

}  // namespace netsight::gen
