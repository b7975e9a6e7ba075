// Copyright (c) 2026 Netsight Contributors
// SPDX-License-Identifier: Apache-2.0
#include "netsight/topology.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace netsight {

using nlohmann::json;

L2Graph build_l2(const std::vector<FrameSummary>& frames) {
    L2Graph g;
    for (const auto& f : frames) {
        g.nodes.emplace(f.src_mac, false);
        if (!f.unicast_dst) {
            g.broadcast_frames++;
            continue;
        }
        g.nodes.emplace(f.dst_mac, false);
        auto key = f.src_mac < f.dst_mac ? std::make_pair(f.src_mac, f.dst_mac)
                                         : std::make_pair(f.dst_mac, f.src_mac);
        g.edges[key]++;
    }
    return g;
}

std::set<MacAddress> infer_gateways(const std::vector<FrameSummary>& frames,
                                    int gw_k) {
    std::map<MacAddress, std::set<Ipv4Address>> src_ips, dst_ips;
    for (const auto& f : frames) {
        src_ips[f.src_mac].insert(f.src_ip);
        if (f.unicast_dst) dst_ips[f.dst_mac].insert(f.dst_ip);
    }
    std::set<MacAddress> out;
    for (const auto& [mac, ips] : src_ips)
        if (ips.size() >= static_cast<size_t>(gw_k)) out.insert(mac);
    for (const auto& [mac, ips] : dst_ips)
        if (ips.size() >= static_cast<size_t>(gw_k)) out.insert(mac);
    return out;
}

void flag_gateways(L2Graph& graph, const std::vector<FrameSummary>& frames,
                   int gw_k) {
    for (const MacAddress& mac : infer_gateways(frames, gw_k)) {
        auto it = graph.nodes.find(mac);
        if (it != graph.nodes.end()) it->second = true;
    }
}

namespace {

// device key for internal endpoints, bare IP string otherwise
std::string node_key(const Ipv4Address& ip, Timestamp ts,
                     const IdentityIndex& identities) {
    if (auto key = identities.resolve(ip, ts)) return *key;
    return ip.to_string();
}

}  // namespace

L3Graph build_l3(const std::vector<FlowRecord>& flows,
                 const IdentityIndex& identities) {
    L3Graph g;
    for (const auto& f : flows) {
        Endpoint resp = f.responder();
        std::string src = node_key(f.originator.ip, f.first_ts, identities);
        std::string dst = node_key(resp.ip, f.first_ts, identities);
        g.nodes.emplace(src, identities.is_internal(f.originator.ip));
        g.nodes.emplace(dst, identities.is_internal(resp.ip));
        auto& w = g.edges[{src, dst}];
        w.flows++;
        w.bytes += f.bytes_total();
    }
    return g;
}

const char* to_string(ServiceKind s) {
    switch (s) {
        case ServiceKind::Dns: return "dns";
        case ServiceKind::Dhcp: return "dhcp";
        case ServiceKind::Other: return "other";
    }
    return "?";
}

std::vector<DependencyEdge> infer_dependencies(const DecodeOutput& events,
                                               const IdentityIndex& identities,
                                               int min_evidence) {
    std::vector<DependencyEdge> out;
    uint64_t bar = min_evidence < 0 ? 0 : static_cast<uint64_t>(min_evidence);

    // name-service lookups: querier depends on the responder it asks
    std::map<std::pair<std::string, std::string>, uint64_t> dns_counts;
    for (const auto& ev : events.dns) {
        if (ev.is_response) continue;
        auto dep = identities.resolve(ev.hdr.src_ip, ev.hdr.ts);
        if (!dep) continue;
        std::string prov = node_key(ev.hdr.dst_ip, ev.hdr.ts, identities);
        dns_counts[{*dep, prov}]++;
    }
    for (const auto& [key, n] : dns_counts)
        if (n >= bar)
            out.push_back({key.first, key.second, ServiceKind::Dns, 0, n});

    // address leases: the client depends on whoever offers/acks
    std::map<std::pair<std::string, std::string>, uint64_t> dhcp_counts;
    for (const auto& ev : events.dhcp) {
        if (ev.msg_type != DhcpMsgType::Offer && ev.msg_type != DhcpMsgType::Ack)
            continue;
        std::string dep = ev.client_mac.to_string();
        std::string prov = node_key(ev.hdr.src_ip, ev.hdr.ts, identities);
        dhcp_counts[{dep, prov}]++;
    }
    for (const auto& [key, n] : dhcp_counts)
        if (n >= bar)
            out.push_back({key.first, key.second, ServiceKind::Dhcp, 0, n});

    // generic port services; the well-known lease/lookup ports are covered
    // above and excluded here
    std::map<std::tuple<std::string, std::string, uint16_t>, uint64_t> flow_counts;
    std::map<std::pair<std::string, uint16_t>, std::set<std::string>> port_clients;
    for (const auto& f : events.flows) {
        Endpoint resp = f.responder();
        if (resp.port == 53 || resp.port == 67 || resp.port == 68) continue;
        auto dep = identities.resolve(f.originator.ip, f.first_ts);
        if (!dep) continue;
        std::string prov = node_key(resp.ip, f.first_ts, identities);
        flow_counts[{*dep, prov, resp.port}] += 1;
        port_clients[{prov, resp.port}].insert(*dep);
    }
    for (const auto& [key, n] : flow_counts) {
        const auto& [dep, prov, port] = key;
        if (n < bar) continue;
        if (port_clients[{prov, port}].size() < 2) continue;
        out.push_back({dep, prov, ServiceKind::Other, port, n});
    }
    return out;
}

std::vector<std::string> find_articulation_points(const L3Graph& graph) {
    // undirected adjacency over internal nodes only
    std::vector<std::string> nodes;
    for (const auto& [key, internal] : graph.nodes)
        if (internal) nodes.push_back(key);
    std::map<std::string, int> index;
    for (size_t i = 0; i < nodes.size(); i++) index[nodes[i]] = int(i);
    std::vector<std::set<int>> adj(nodes.size());
    for (const auto& [key, w] : graph.edges) {
        (void)w;
        auto a = index.find(key.first);
        auto b = index.find(key.second);
        if (a == index.end() || b == index.end()) continue;
        if (a->second == b->second) continue;
        adj[a->second].insert(b->second);
        adj[b->second].insert(a->second);
    }

    int n = static_cast<int>(nodes.size());
    std::vector<int> disc(n, -1), low(n, 0), parent(n, -1);
    std::vector<bool> is_art(n, false);
    int timer = 0;
    // iterative lowlink DFS; child counting marks roots separately
    for (int root = 0; root < n; root++) {
        if (disc[root] != -1) continue;
        int root_children = 0;
        std::vector<std::pair<int, std::set<int>::iterator>> stack;
        disc[root] = low[root] = timer++;
        stack.push_back({root, adj[root].begin()});
        while (!stack.empty()) {
            auto& [u, it] = stack.back();
            if (it != adj[u].end()) {
                int v = *it;
                ++it;
                if (v == parent[u]) continue;
                if (disc[v] != -1) {
                    low[u] = std::min(low[u], disc[v]);
                    continue;
                }
                parent[v] = u;
                if (u == root) root_children++;
                disc[v] = low[v] = timer++;
                stack.push_back({v, adj[v].begin()});
            } else {
                stack.pop_back();
                if (!stack.empty()) {
                    int p = stack.back().first;
                    low[p] = std::min(low[p], low[u]);
                    if (p != root && low[u] >= disc[p]) is_art[p] = true;
                }
            }
        }
        if (root_children >= 2) is_art[root] = true;
    }

    std::vector<std::string> out;
    for (int i = 0; i < n; i++)
        if (is_art[i]) out.push_back(nodes[i]);
    std::sort(out.begin(), out.end());
    return out;
}

ResiliencyReport report_resiliency(const L3Graph& graph,
                                   const std::vector<DependencyEdge>& deps,
                                   int hidden_k, double hidden_share) {
    ResiliencyReport rep;
    rep.articulation_points = find_articulation_points(graph);

    std::map<std::string, std::set<std::string>> dependents;
    for (const auto& d : deps) dependents[d.provider].insert(d.dependent);

    uint64_t total = 0;
    std::map<std::string, uint64_t> incident;
    for (const auto& [key, w] : graph.edges) {
        total += w.bytes;
        incident[key.first] += w.bytes;
        if (key.second != key.first) incident[key.second] += w.bytes;
    }
    rep.total_bytes = total;

    for (const auto& [prov, deps_set] : dependents) {
        ProviderRank r;
        r.provider = prov;
        r.dependents = static_cast<int>(deps_set.size());
        auto it = incident.find(prov);
        r.provider_bytes = it == incident.end() ? 0 : it->second;
        r.byte_share = total == 0 ? 0.0
                                  : static_cast<double>(r.provider_bytes) /
                                        static_cast<double>(total);
        rep.fan_in.push_back(std::move(r));
    }
    std::sort(rep.fan_in.begin(), rep.fan_in.end(),
              [](const ProviderRank& a, const ProviderRank& b) {
                  if (a.dependents != b.dependents)
                      return a.dependents > b.dependents;
                  return a.provider < b.provider;
              });
    for (const auto& r : rep.fan_in)
        if (r.dependents >= hidden_k && r.byte_share < hidden_share)
            rep.hidden_components.push_back(r.provider);
    return rep;
}

std::string topology_dot(const L3Graph& graph, const ResiliencyReport& report) {
    std::set<std::string> art(report.articulation_points.begin(),
                              report.articulation_points.end());
    std::set<std::string> hidden(report.hidden_components.begin(),
                                 report.hidden_components.end());
    std::ostringstream os;
    os << "digraph l3 {\n";
    for (const auto& [key, internal] : graph.nodes) {
        os << "  \"" << key << "\" [";
        os << "internal=" << (internal ? "true" : "false");
        if (art.count(key)) os << ", articulation=true";
        if (hidden.count(key)) os << ", hidden_component=true";
        if (!internal) os << ", shape=box";
        os << "];\n";
    }
    for (const auto& [key, w] : graph.edges) {
        os << "  \"" << key.first << "\" -> \"" << key.second
           << "\" [label=\"" << w.flows << "f/" << w.bytes << "B\"];\n";
    }
    os << "}\n";
    return os.str();
}

json topology_to_json(const L2Graph& l2, const L3Graph& l3,
                      const std::vector<DependencyEdge>& deps,
                      const ResiliencyReport& report) {
    json j;
    json l2j;
    json l2nodes = json::array();
    for (const auto& [mac, gw] : l2.nodes) {
        json n;
        n["mac"] = mac.to_string();
        n["is_gateway_candidate"] = gw;
        l2nodes.push_back(n);
    }
    l2j["nodes"] = l2nodes;
    json l2edges = json::array();
    for (const auto& [key, frames] : l2.edges) {
        json e;
        e["a"] = key.first.to_string();
        e["b"] = key.second.to_string();
        e["frames"] = frames;
        l2edges.push_back(e);
    }
    l2j["edges"] = l2edges;
    l2j["broadcast_frames"] = l2.broadcast_frames;
    j["l2"] = l2j;

    json l3j;
    json l3nodes = json::array();
    for (const auto& [key, internal] : l3.nodes) {
        json n;
        n["key"] = key;
        n["internal"] = internal;
        l3nodes.push_back(n);
    }
    l3j["nodes"] = l3nodes;
    json l3edges = json::array();
    for (const auto& [key, w] : l3.edges) {
        json e;
        e["src"] = key.first;
        e["dst"] = key.second;
        e["flows"] = w.flows;
        e["bytes"] = w.bytes;
        l3edges.push_back(e);
    }
    l3j["edges"] = l3edges;
    j["l3"] = l3j;

    json dj = json::array();
    for (const auto& d : deps) {
        json e;
        e["dependent"] = d.dependent;
        e["provider"] = d.provider;
        e["service"] = to_string(d.service);
        if (d.service == ServiceKind::Other) e["port"] = d.port;
        e["evidence_count"] = d.evidence_count;
        dj.push_back(e);
    }
    j["dependencies"] = dj;

    json rj;
    rj["articulation_points"] = report.articulation_points;
    json fj = json::array();
    for (const auto& r : report.fan_in) {
        json e;
        e["provider"] = r.provider;
        e["dependents"] = r.dependents;
        e["bytes"] = r.provider_bytes;
        e["byte_share"] = r.byte_share;
        fj.push_back(e);
    }
    rj["fan_in"] = fj;
    rj["hidden_components"] = report.hidden_components;
    rj["total_bytes"] = report.total_bytes;
    j["resiliency"] = rj;
    return j;
}

}  // namespace netsight
