// Copyright (c) 2026 Netsight Contributors
// SPDX-License-Identifier: Apache-2.0
#include "netsight/chain.hpp"

#include <functional>
#include <map>
#include <set>

namespace netsight {

using nlohmann::json;

const std::vector<std::string>& decoder_topics() {
    static const std::vector<std::string> topics = {
        "flows", "events.dns", "events.dhcp", "events.http", "events.tls"};
    return topics;
}

const std::vector<std::string>& builtin_engine_ids() {
    static const std::vector<std::string> ids = {
        "registry", "manufacturer", "ua_miner",
        "tls_fp",   "iot_dns",      "behavior",
        "noop"};
    return ids;
}

EngineSpec builtin_engine(const std::string& engine_id) {
    EngineSpec s;
    s.engine_id = engine_id;
    s.kind = "CPE";
    s.emits = {"claims"};
    if (engine_id == "registry") {
        s.kind = "PPE";
        s.subscribes = {};
    } else if (engine_id == "manufacturer") {
        s.subscribes = {"events.dhcp", "events.tls", "events.dns"};
    } else if (engine_id == "ua_miner") {
        s.subscribes = {"events.http"};
    } else if (engine_id == "tls_fp") {
        s.subscribes = {"events.tls"};
    } else if (engine_id == "iot_dns") {
        s.subscribes = {"events.dns", "flows"};
    } else if (engine_id == "behavior") {
        s.subscribes = {"flows"};
    } else if (engine_id == "noop") {
        s.subscribes = {};
        s.emits = {};
    } else {
        throw ConfigError(ConfigErrorKind::UnknownEngine,
                          "unknown engine: " + engine_id);
    }
    return s;
}

ChainConfig ChainConfig::defaults() {
    ChainConfig c;
    for (const auto& id : builtin_engine_ids())
        if (id != "noop") c.engines.push_back(builtin_engine(id));
    return c;
}

ChainConfig ChainConfig::from_json(const json& doc) {
    if (!doc.is_object())
        throw ConfigError(ConfigErrorKind::Parse,
                          "chain config must be a JSON object");
    ChainConfig c;
    if (!doc.contains("engines") || !doc["engines"].is_array())
        throw ConfigError(ConfigErrorKind::Parse, "missing engines array");
    for (const auto& e : doc["engines"]) {
        if (!e.is_object() || !e.contains("engine_id") ||
            !e["engine_id"].is_string())
            throw ConfigError(ConfigErrorKind::Parse,
                              "engine entry needs an engine_id");
        std::string id = e["engine_id"].get<std::string>();
        EngineSpec spec = builtin_engine(id);  // defaults for this engine
        if (e.contains("kind")) {
            if (!e["kind"].is_string())
                throw ConfigError(ConfigErrorKind::Parse, "kind must be a string");
            std::string kind = e["kind"].get<std::string>();
            if (kind != "PPE" && kind != "CPE")
                throw ConfigError(ConfigErrorKind::Parse,
                                  "kind must be PPE or CPE");
            spec.kind = kind;
        }
        if (e.contains("subscribes")) {
            if (!e["subscribes"].is_array())
                throw ConfigError(ConfigErrorKind::Parse,
                                  "subscribes must be an array");
            spec.subscribes.clear();
            for (const auto& t : e["subscribes"])
                spec.subscribes.push_back(t.get<std::string>());
        }
        if (e.contains("emits")) {
            if (!e["emits"].is_array())
                throw ConfigError(ConfigErrorKind::Parse,
                                  "emits must be an array");
            spec.emits.clear();
            for (const auto& t : e["emits"])
                spec.emits.push_back(t.get<std::string>());
        }
        if (e.contains("params")) {
            if (!e["params"].is_object())
                throw ConfigError(ConfigErrorKind::Parse,
                                  "params must be an object");
            spec.params = e["params"];
        }
        c.engines.push_back(std::move(spec));
    }
    if (doc.contains("composition")) {
        const json& comp = doc["composition"];
        if (!comp.is_object())
            throw ConfigError(ConfigErrorKind::Parse,
                              "composition must be an object");
        std::string mode = comp.value("mode", "ensemble");
        if (mode == "ensemble") c.mode = CompositionMode::Ensemble;
        else if (mode == "best") c.mode = CompositionMode::BestClassifier;
        else
            throw ConfigError(ConfigErrorKind::Parse,
                              "composition mode must be ensemble or best");
        if (comp.contains("accuracy_file")) {
            if (!comp["accuracy_file"].is_string())
                throw ConfigError(ConfigErrorKind::Parse,
                                  "accuracy_file must be a string");
            c.accuracy_file = comp["accuracy_file"].get<std::string>();
        }
    }
    if (doc.contains("decoder")) {
        const json& d = doc["decoder"];
        if (!d.is_object())
            throw ConfigError(ConfigErrorKind::Parse,
                              "decoder must be an object");
        if (d.contains("flow_idle_timeout_seconds"))
            c.decoder.flow_idle_timeout_us = static_cast<int64_t>(
                d["flow_idle_timeout_seconds"].get<double>() * 1e6);
    }
    if (doc.contains("occupancy")) {
        const json& o = doc["occupancy"];
        if (!o.is_object())
            throw ConfigError(ConfigErrorKind::Parse,
                              "occupancy must be an object");
        if (o.contains("window_seconds"))
            c.occupancy_window_us = static_cast<int64_t>(
                o["window_seconds"].get<double>() * 1e6);
    }
    return c;
}

json ChainConfig::to_json() const {
    json doc;
    json engines = json::array();
    for (const auto& e : this->engines) {
        json ej;
        ej["engine_id"] = e.engine_id;
        ej["kind"] = e.kind;
        ej["subscribes"] = e.subscribes;
        ej["emits"] = e.emits;
        ej["params"] = e.params;
        engines.push_back(ej);
    }
    doc["engines"] = engines;
    json comp;
    comp["mode"] = mode == CompositionMode::Ensemble ? "ensemble" : "best";
    if (accuracy_file) comp["accuracy_file"] = *accuracy_file;
    doc["composition"] = comp;
    doc["decoder"] = {
        {"flow_idle_timeout_seconds",
         static_cast<double>(decoder.flow_idle_timeout_us) / 1e6}};
    doc["occupancy"] = {
        {"window_seconds", static_cast<double>(occupancy_window_us) / 1e6}};
    return doc;
}

void validate_chain(const ChainConfig& config) {
    std::set<std::string> known(builtin_engine_ids().begin(),
                                builtin_engine_ids().end());
    std::set<std::string> ids;
    for (const auto& e : config.engines) {
        if (!known.count(e.engine_id))
            throw ConfigError(ConfigErrorKind::UnknownEngine,
                              "unknown engine: " + e.engine_id);
        if (!ids.insert(e.engine_id).second)
            throw ConfigError(ConfigErrorKind::Parse,
                              "duplicate engine: " + e.engine_id);
    }

    // topic -> producing engines (decoder topics are source-produced)
    std::set<std::string> decoder_set(decoder_topics().begin(),
                                      decoder_topics().end());
    std::map<std::string, std::vector<size_t>> producers;
    for (size_t i = 0; i < config.engines.size(); i++)
        for (const auto& t : config.engines[i].emits) producers[t].push_back(i);

    for (const auto& e : config.engines) {
        for (const auto& t : e.subscribes) {
            if (decoder_set.count(t)) continue;
            if (producers.count(t)) continue;
            throw ConfigError(ConfigErrorKind::UnsatisfiedDependency,
                              "engine " + e.engine_id + " subscribes to " + t +
                                  " which nothing emits");
        }
    }

    // cycle check over the engine graph induced by topic production
    size_t n = config.engines.size();
    std::vector<std::vector<size_t>> adj(n);
    for (size_t i = 0; i < n; i++) {
        for (const auto& t : config.engines[i].subscribes) {
            auto it = producers.find(t);
            if (it == producers.end()) continue;
            for (size_t p : it->second) adj[p].push_back(i);
        }
    }
    std::vector<int> color(n, 0);  // 0 new, 1 on stack, 2 done
    std::function<void(size_t)> dfs = [&](size_t u) {
        color[u] = 1;
        for (size_t v : adj[u]) {
            if (color[v] == 1)
                throw ConfigError(ConfigErrorKind::Cycle,
                                  "subscription cycle through engine " +
                                      config.engines[v].engine_id);
            if (color[v] == 0) dfs(v);
        }
        color[u] = 2;
    };
    for (size_t i = 0; i < n; i++)
        if (color[i] == 0) dfs(i);
}

AnalyzerParams params_for(const EngineSpec& spec) {
    AnalyzerParams p;
    const json& o = spec.params;
    if (!o.is_object()) return p;
    auto num = [&](const char* key, double& target) {
        if (o.contains(key) && o[key].is_number())
            target = o[key].get<double>();
    };
    auto num_int = [&](const char* key, int& target) {
        if (o.contains(key) && o[key].is_number())
            target = o[key].get<int>();
    };
    num_int("iot_min_queries", p.iot_min_queries);
    num("iot_dominance", p.iot_dominance);
    num_int("iot_max_orgs", p.iot_max_orgs);
    num("conf_oui", p.conf_oui);
    num("conf_dhcp_vendor", p.conf_dhcp_vendor);
    num("conf_tls_issuer", p.conf_tls_issuer);
    num("conf_dns_org", p.conf_dns_org);
    num("conf_ua", p.conf_ua);
    num("conf_tls_fp", p.conf_tls_fp);
    num("conf_behavior", p.conf_behavior);
    if (o.contains("behavior_window_seconds") &&
        o["behavior_window_seconds"].is_number())
        p.behavior_window_us = static_cast<int64_t>(
            o["behavior_window_seconds"].get<double>() * 1e6);
    num("beacon_periodicity", p.beacon_periodicity);
    num("idle_mean_bytes", p.idle_mean_bytes);
    num("stream_mean_bytes", p.stream_mean_bytes);
    num("stream_max_cv", p.stream_max_cv);
    return p;
}

}  // namespace netsight
