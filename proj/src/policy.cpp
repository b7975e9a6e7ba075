// Copyright (c) 2026 Netsight Contributors
// SPDX-License-Identifier: Apache-2.0
#include "netsight/policy.hpp"

#include <sstream>

namespace netsight {

using nlohmann::json;

const char* to_string(PolicyKind k) {
    switch (k) {
        case PolicyKind::RequireRegistered: return "require_registered";
        case PolicyKind::RequireEncrypted: return "require_encrypted";
        case PolicyKind::ForbidDeviceClass: return "forbid_device_class";
        case PolicyKind::ForbidDestGeo: return "forbid_dest_geo";
        case PolicyKind::ForbidDomainSuffix: return "forbid_domain_suffix";
    }
    return "?";
}

namespace {

std::optional<PolicyKind> kind_from_string(const std::string& s) {
    if (s == "require_registered") return PolicyKind::RequireRegistered;
    if (s == "require_encrypted") return PolicyKind::RequireEncrypted;
    if (s == "forbid_device_class") return PolicyKind::ForbidDeviceClass;
    if (s == "forbid_dest_geo") return PolicyKind::ForbidDestGeo;
    if (s == "forbid_domain_suffix") return PolicyKind::ForbidDomainSuffix;
    return std::nullopt;
}

[[noreturn]] void parse_fail(size_t index, const std::string& what) {
    std::ostringstream os;
    os << "policy rule " << index << ": " << what;
    throw PolicyError(PolicyErrorKind::Parse, os.str());
}

// label-boundary suffix match, case-insensitive, trailing-dot tolerant
bool suffix_matches(const std::string& fqdn, const std::string& suffix) {
    std::string name = to_lower(fqdn);
    if (!name.empty() && name.back() == '.') name.pop_back();
    std::string suf = to_lower(suffix);
    if (!suf.empty() && suf.back() == '.') suf.pop_back();
    if (suf.empty()) return false;
    if (name == suf) return true;
    return name.size() > suf.size() &&
           name.compare(name.size() - suf.size(), suf.size(), suf) == 0 &&
           name[name.size() - suf.size() - 1] == '.';
}

}  // namespace

std::vector<PolicyRule> parse_policies(const json& doc) {
    if (!doc.is_array())
        throw PolicyError(PolicyErrorKind::Parse,
                          "policy file must be a JSON array");
    std::vector<PolicyRule> rules;
    std::set<std::string> seen_ids;
    for (size_t i = 0; i < doc.size(); i++) {
        const json& item = doc[i];
        if (!item.is_object()) parse_fail(i, "rule must be an object");
        PolicyRule r;
        if (!item.contains("rule_id") || !item["rule_id"].is_string() ||
            item["rule_id"].get<std::string>().empty())
            parse_fail(i, "missing or empty rule_id");
        r.rule_id = item["rule_id"].get<std::string>();
        if (!seen_ids.insert(r.rule_id).second)
            throw PolicyError(PolicyErrorKind::DuplicateRuleId,
                              "duplicate rule_id: " + r.rule_id);
        if (!item.contains("kind") || !item["kind"].is_string())
            parse_fail(i, "missing kind");
        auto kind = kind_from_string(item["kind"].get<std::string>());
        if (!kind) parse_fail(i, "unknown kind: " + item["kind"].get<std::string>());
        r.kind = *kind;
        json params = item.value("params", json::object());
        if (!params.is_object()) parse_fail(i, "params must be an object");
        switch (r.kind) {
            case PolicyKind::RequireRegistered:
                break;
            case PolicyKind::RequireEncrypted:
                if (params.contains("cleartext_ports")) {
                    r.cleartext_ports.clear();
                    for (const auto& p : params["cleartext_ports"]) {
                        if (!p.is_number_integer() || p.get<int64_t>() < 0 ||
                            p.get<int64_t>() > 65535)
                            parse_fail(i, "bad cleartext port");
                        r.cleartext_ports.insert(
                            static_cast<uint16_t>(p.get<int64_t>()));
                    }
                    if (r.cleartext_ports.empty())
                        parse_fail(i, "cleartext_ports must be nonempty");
                }
                break;
            case PolicyKind::ForbidDeviceClass:
                if (!params.contains("class") || !params["class"].is_string() ||
                    params["class"].get<std::string>().empty())
                    parse_fail(i, "forbid_device_class needs a class");
                r.device_class = params["class"].get<std::string>();
                break;
            case PolicyKind::ForbidDestGeo:
                if (!params.contains("countries") ||
                    !params["countries"].is_array() ||
                    params["countries"].empty())
                    parse_fail(i, "forbid_dest_geo needs countries");
                for (const auto& c : params["countries"]) {
                    if (!c.is_string()) parse_fail(i, "bad country entry");
                    r.countries.insert(to_lower(c.get<std::string>()));
                }
                break;
            case PolicyKind::ForbidDomainSuffix:
                if (!params.contains("suffixes") ||
                    !params["suffixes"].is_array() || params["suffixes"].empty())
                    parse_fail(i, "forbid_domain_suffix needs suffixes");
                for (const auto& s : params["suffixes"]) {
                    if (!s.is_string() || s.get<std::string>().empty())
                        parse_fail(i, "bad suffix entry");
                    r.suffixes.push_back(s.get<std::string>());
                }
                break;
        }
        rules.push_back(std::move(r));
    }
    return rules;
}

std::vector<PolicyRule> load_policies(std::istream& in) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw PolicyError(PolicyErrorKind::Parse, e.what());
    }
    return parse_policies(doc);
}

json policies_to_json(const std::vector<PolicyRule>& rules) {
    json doc = json::array();
    for (const auto& r : rules) {
        json item;
        item["rule_id"] = r.rule_id;
        item["kind"] = to_string(r.kind);
        json params = json::object();
        switch (r.kind) {
            case PolicyKind::RequireRegistered:
                break;
            case PolicyKind::RequireEncrypted: {
                json ports = json::array();
                for (uint16_t p : r.cleartext_ports) ports.push_back(p);
                params["cleartext_ports"] = ports;
                break;
            }
            case PolicyKind::ForbidDeviceClass:
                params["class"] = r.device_class;
                break;
            case PolicyKind::ForbidDestGeo: {
                json cs = json::array();
                for (const auto& c : r.countries) cs.push_back(c);
                params["countries"] = cs;
                break;
            }
            case PolicyKind::ForbidDomainSuffix:
                params["suffixes"] = r.suffixes;
                break;
        }
        item["params"] = params;
        doc.push_back(item);
    }
    return doc;
}

std::vector<Violation> evaluate_policies(const std::vector<PolicyRule>& rules,
                                         const ProfileSet& profiles,
                                         const DecodeOutput& events,
                                         const IdentityIndex& identities,
                                         const KnowledgeBundle& knowledge) {
    // (rule_id, device_key) -> accumulated violation
    std::map<std::pair<std::string, std::string>, Violation> acc;
    auto record = [&](const PolicyRule& r, const std::string& device,
                      Timestamp ts, const std::string& evidence) {
        auto key = std::make_pair(r.rule_id, device);
        auto it = acc.find(key);
        if (it == acc.end()) {
            acc.emplace(key, Violation{r.rule_id, device, ts, evidence, 1});
            return;
        }
        it->second.count++;
        if (ts < it->second.ts) {
            it->second.ts = ts;
            it->second.evidence = evidence;
        }
    };

    for (const auto& rule : rules) {
        switch (rule.kind) {
            case PolicyKind::RequireRegistered: {
                for (const auto& [key, p] : profiles.devices) {
                    const RegistryEntry* entry =
                        p.mac ? knowledge.registry.lookup(*p.mac) : nullptr;
                    if (entry && entry->authorized) continue;
                    std::string why;
                    if (!p.mac) why = "no stable mac observed";
                    else if (!entry) why = "mac " + p.mac->to_string() +
                                           " not in registry";
                    else why = "mac " + p.mac->to_string() + " not authorized";
                    record(rule, key, p.first_seen, why);
                }
                break;
            }
            case PolicyKind::RequireEncrypted: {
                for (const auto& ev : events.http) {
                    if (!rule.cleartext_ports.count(ev.hdr.dst_port)) continue;
                    auto dev = identities.resolve(ev.hdr.src_ip, ev.hdr.ts);
                    if (!dev) continue;
                    std::string evidence = "cleartext http " + ev.method + " " +
                                           ev.uri + " to " +
                                           ev.hdr.dst_ip.to_string() + ":" +
                                           std::to_string(ev.hdr.dst_port);
                    record(rule, *dev, ev.hdr.ts, evidence);
                }
                break;
            }
            case PolicyKind::ForbidDeviceClass: {
                for (const auto& [key, p] : profiles.devices) {
                    auto it = p.attributes.find("device_type");
                    if (it == p.attributes.end()) continue;
                    if (it->second.value != rule.device_class) continue;
                    record(rule, key, p.first_seen,
                           "device_type=" + it->second.value);
                }
                break;
            }
            case PolicyKind::ForbidDestGeo: {
                for (const auto& f : events.flows) {
                    Endpoint resp = f.responder();
                    auto country = knowledge.geo.lookup(resp.ip);
                    if (!country || !rule.countries.count(to_lower(*country)))
                        continue;
                    auto dev = identities.resolve(f.originator.ip, f.first_ts);
                    if (!dev) continue;
                    record(rule, *dev, f.first_ts,
                           "flow to " + resp.ip.to_string() + " (" + *country +
                               ")");
                }
                break;
            }
            case PolicyKind::ForbidDomainSuffix: {
                for (const auto& ev : events.dns) {
                    if (ev.is_response) continue;
                    bool hit = false;
                    for (const auto& suf : rule.suffixes)
                        if (suffix_matches(ev.query_name, suf)) hit = true;
                    if (!hit) continue;
                    auto dev = identities.resolve(ev.hdr.src_ip, ev.hdr.ts);
                    if (!dev) continue;
                    record(rule, *dev, ev.hdr.ts,
                           "dns query " + ev.query_name);
                }
                break;
            }
        }
    }

    std::vector<Violation> out;
    out.reserve(acc.size());
    for (auto& [key, v] : acc) {
        (void)key;
        out.push_back(std::move(v));
    }
    return out;  // map key order == (rule_id, device_key)
}

std::string render_violations_ndjson(const std::vector<Violation>& violations) {
    std::string out;
    for (const auto& v : violations) {
        json j;
        j["rule_id"] = v.rule_id;
        j["device_key"] = v.device_key;
        j["ts"] = ts_to_json(v.ts);
        j["count"] = v.count;
        j["evidence"] = v.evidence;
        out += j.dump();
        out += "\n";
    }
    return out;
}

std::string render_violations_text(const std::vector<Violation>& violations) {
    std::ostringstream os;
    for (const auto& v : violations) {
        os << v.rule_id << " " << v.device_key << " count=" << v.count
           << " first=" << v.ts.seconds() << " " << v.evidence << "\n";
    }
    return os.str();
}

}  // namespace netsight
