// Copyright (c) 2026 Netsight Contributors
// SPDX-License-Identifier: Apache-2.0
//
// Passive topology reconstruction: link-layer adjacency as seen from the
// tap, flow-level graphs keyed by device identity, service dependency
// inference, and criticality reporting (articulation points, fan-in,
// hidden low-traffic providers).
#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "netsight/decode.hpp"
#include "netsight/identity.hpp"

namespace netsight {

struct L2Graph {
    std::map<MacAddress, bool> nodes;  // mac -> is_gateway_candidate
    // undirected, stored once with the smaller mac first
    std::map<std::pair<MacAddress, MacAddress>, uint64_t> edges;
    uint64_t broadcast_frames = 0;  // multicast/broadcast kept out of edges
};

L2Graph build_l2(const std::vector<FrameSummary>& frames);

// A MAC fronting many IPs on either side of it behaves like a router.
std::set<MacAddress> infer_gateways(const std::vector<FrameSummary>& frames,
                                    int gw_k = 5);
void flag_gateways(L2Graph& graph, const std::vector<FrameSummary>& frames,
                   int gw_k = 5);

struct L3EdgeWeight {
    uint64_t flows = 0;
    uint64_t bytes = 0;
};

struct L3Graph {
    std::map<std::string, bool> nodes;  // node key -> is_internal
    // directed originator -> responder
    std::map<std::pair<std::string, std::string>, L3EdgeWeight> edges;
};

// Internal endpoints become device keys via the resolver; external ones
// stay as bare IP strings.
L3Graph build_l3(const std::vector<FlowRecord>& flows,
                 const IdentityIndex& identities);

enum class ServiceKind { Dns, Dhcp, Other };
const char* to_string(ServiceKind s);

struct DependencyEdge {
    std::string dependent;
    std::string provider;
    ServiceKind service = ServiceKind::Other;
    uint16_t port = 0;  // meaningful for Other only
    uint64_t evidence_count = 0;

    bool operator==(const DependencyEdge&) const = default;
};

// DNS/DHCP dependencies come from decoded events; generic ones from
// repeated flows to a port that serves at least two distinct internal
// dependents (DNS/DHCP ports excluded from the generic rule).
std::vector<DependencyEdge> infer_dependencies(const DecodeOutput& events,
                                               const IdentityIndex& identities,
                                               int min_evidence = 3);

// Articulation points of the undirected graph over internal nodes only:
// nodes whose removal increases the connected-component count.
std::vector<std::string> find_articulation_points(const L3Graph& graph);

struct ProviderRank {
    std::string provider;
    int dependents = 0;
    uint64_t provider_bytes = 0;  // bytes on edges touching the provider
    double byte_share = 0.0;
};

struct ResiliencyReport {
    std::vector<std::string> articulation_points;
    std::vector<ProviderRank> fan_in;  // descending dependents, then name
    std::vector<std::string> hidden_components;
    uint64_t total_bytes = 0;
};

ResiliencyReport report_resiliency(const L3Graph& graph,
                                   const std::vector<DependencyEdge>& deps,
                                   int hidden_k = 3,
                                   double hidden_share = 0.01);

std::string topology_dot(const L3Graph& graph, const ResiliencyReport& report);
nlohmann::json topology_to_json(const L2Graph& l2, const L3Graph& l3,
                                const std::vector<DependencyEdge>& deps,
                                const ResiliencyReport& report);

}  // namespace netsight
