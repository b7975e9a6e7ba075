// Copyright (c) 2026 Netsight Contributors
// SPDX-License-Identifier: Apache-2.0

#include "netsight/app.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "netsight/claims.hpp"
#include "netsight/knowledge.hpp"
#include "netsight/pcap.hpp"
#include "netsight/pipeline.hpp"
#include "netsight/policy.hpp"
#include "netsight/topology.hpp"
#include "netsight/trafficgen.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace netsight::app {
namespace {

constexpr int kOk = 0;
constexpr int kBadConfig = 1;
constexpr int kIoError = 2;

std::optional<std::string> slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.is_open()) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool spill(const fs::path& path, std::string_view text, std::ostream& err) {
    std::ofstream out(path, std::ios::binary);
    if (!out.is_open()) {
        err << "cannot write " << path.string() << "\n";
        return false;
    }
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out.good()) {
        err << "short write to " << path.string() << "\n";
        return false;
    }
    return true;
}

double wall_now() {
    using namespace std::chrono;
    return duration<double>(system_clock::now().time_since_epoch()).count();
}

// Digest over the knowledge directory's file names and bytes, independent of
// directory iteration order.
std::string dir_digest(const std::string& dir) {
    std::map<std::string, std::string> files;
    for (const auto& e : fs::directory_iterator(dir)) {
        if (!e.is_regular_file()) continue;
        auto text = slurp(e.path().string());
        files[e.path().filename().string()] = text.value_or("");
    }
    std::string blob;
    for (const auto& [name, text] : files) {
        blob += name;
        blob += '\0';
        blob += text;
        blob += '\0';
    }
    return to_hex(fnv1a64(blob));
}

json run_stats_json(const IngestStats& ingest, const RunStats& stats) {
    json skips = json::object();
    for (size_t i = 0; i < kSkipReasonCount; ++i) {
        auto r = static_cast<SkipReason>(i);
        if (uint64_t n = stats.decode.skip_count(r); n > 0) skips[to_string(r)] = n;
    }
    return json{
        {"ingest",
         {{"packets_read", ingest.packets_read},
          {"bytes_read", ingest.bytes_read},
          {"errors", ingest.errors}}},
        {"decode",
         {{"packets", stats.decode.packets},
          {"frames", stats.decode.frames},
          {"datagrams", stats.decode.datagrams},
          {"segments", stats.decode.segments},
          {"dns_events", stats.decode.dns_events},
          {"dhcp_events", stats.decode.dhcp_events},
          {"http_events", stats.decode.http_events},
          {"tls_events", stats.decode.tls_events},
          {"flows", stats.decode.flows},
          {"skips", skips}}},
        {"engine_consumed", stats.engine_consumed},
        {"engine_claims", stats.engine_claims},
        {"topic_messages", stats.topic_messages},
        {"devices", stats.devices}};
}

}  // namespace

int run_analyze(const AnalyzeOptions& opt, std::ostream& err) {
    const double started = wall_now();

    std::ifstream pcap_in(opt.pcap_path, std::ios::binary);
    if (!pcap_in.is_open()) {
        err << "cannot open capture: " << opt.pcap_path << "\n";
        return kIoError;
    }

    ChainConfig cfg;
    try {
        if (opt.config_path.empty()) {
            cfg = ChainConfig::defaults();
        } else {
            auto text = slurp(opt.config_path);
            if (!text) {
                err << "cannot open config: " << opt.config_path << "\n";
                return kIoError;
            }
            cfg = ChainConfig::from_json(json::parse(*text));
        }
        validate_chain(cfg);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kBadConfig;
    } catch (const json::exception& e) {
        err << "config error: " << e.what() << "\n";
        return kBadConfig;
    }

    KnowledgeBundle knowledge;
    std::string knowledge_hash;
    if (!opt.knowledge_dir.empty()) {
        if (!fs::is_directory(opt.knowledge_dir)) {
            err << "knowledge directory not found: " << opt.knowledge_dir << "\n";
            return kIoError;
        }
        try {
            knowledge = KnowledgeBundle::load_dir(opt.knowledge_dir);
            knowledge_hash = dir_digest(opt.knowledge_dir);
        } catch (const KnowledgeError& e) {
            err << "knowledge error: " << e.what() << "\n";
            return kIoError;
        }
    }

    std::vector<PolicyRule> rules;
    if (!opt.policies_path.empty()) {
        auto text = slurp(opt.policies_path);
        if (!text) {
            err << "cannot open policies: " << opt.policies_path << "\n";
            return kIoError;
        }
        try {
            rules = parse_policies(json::parse(*text));
        } catch (const PolicyError& e) {
            err << "policy error: " << e.what() << "\n";
            return kBadConfig;
        } catch (const json::exception& e) {
            err << "policy error: " << e.what() << "\n";
            return kBadConfig;
        }
    }

    AccuracyTable accuracy;
    const AccuracyTable* acc_ptr = nullptr;
    if (cfg.accuracy_file) {
        try {
            accuracy = AccuracyTable::load_csv(*cfg.accuracy_file);
        } catch (const CompositionError& e) {
            err << "accuracy table: " << e.what() << "\n";
            return kIoError;
        }
        acc_ptr = &accuracy;
    }

    std::vector<PacketRecord> records;
    IngestStats ingest;
    try {
        auto reader = PcapReader::open(pcap_in);
        while (auto rec = reader.next()) records.push_back(std::move(*rec));
        ingest = reader.stats();
    } catch (const CaptureError& e) {
        err << "capture error: " << e.what() << "\n";
        return kIoError;
    }

    PipelineResult result;
    try {
        result = run_pipeline(records, cfg, knowledge, acc_ptr);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kBadConfig;
    }

    auto violations = evaluate_policies(rules, result.profiles, result.events,
                                        result.identities, knowledge);
    for (const auto& v : violations) {
        auto it = result.profiles.devices.find(v.device_key);
        if (it != result.profiles.devices.end()) it->second.violations.push_back(v.rule_id);
    }
    for (auto& [key, p] : result.profiles.devices) {
        (void)key;
        std::sort(p.violations.begin(), p.violations.end());
    }

    L2Graph l2 = build_l2(result.events.frames);
    flag_gateways(l2, result.events.frames);
    L3Graph l3 = build_l3(result.events.flows, result.identities);
    auto deps = infer_dependencies(result.events, result.identities);
    auto report = report_resiliency(l3, deps);

    std::error_code ec;
    fs::create_directories(opt.out_dir, ec);
    if (ec) {
        err << "cannot create output directory: " << opt.out_dir << "\n";
        return kIoError;
    }
    const fs::path out(opt.out_dir);

    std::ostringstream profiles_text;
    export_profiles(result.profiles, profiles_text);
    if (!spill(out / "profiles.ndjson", profiles_text.str(), err)) return kIoError;
    if (!spill(out / "violations.ndjson", render_violations_ndjson(violations), err))
        return kIoError;
    if (!spill(out / "topology.json", topology_to_json(l2, l3, deps, report).dump(2) + "\n",
               err))
        return kIoError;
    if (!spill(out / "topology.dot", topology_dot(l3, report), err)) return kIoError;

    std::ostringstream occ_text;
    for (const auto& w : result.occupancy) {
        json line = {{"start", ts_to_json(w.start)},
                     {"end", ts_to_json(w.end)},
                     {"count", w.count()},
                     {"persons", w.present_persons},
                     {"unattributed", w.unattributed_devices}};
        occ_text << line.dump() << "\n";
    }
    if (!spill(out / "occupancy.ndjson", occ_text.str(), err)) return kIoError;

    json manifest = {{"tool", "netsight"},
                     {"version", kToolVersion},
                     {"inputs",
                      {{"pcap", opt.pcap_path},
                       {"config", opt.config_path},
                       {"knowledge_dir", opt.knowledge_dir},
                       {"policies", opt.policies_path}}},
                     {"config_hash", to_hex(fnv1a64(cfg.to_json().dump()))},
                     {"knowledge_hash", knowledge_hash},
                     {"started", started},
                     {"finished", wall_now()},
                     {"stats", run_stats_json(ingest, result.stats)}};
    if (!spill(out / "manifest.json", manifest.dump(2) + "\n", err)) return kIoError;
    return kOk;
}

int run_generate(const GenerateOptions& opt, std::ostream& err) {
    try {
        gen::Scenario sc;
        if (opt.scenario == "office-small") {
            sc = gen::office_small();
        } else {
            auto text = slurp(opt.scenario);
            if (!text) {
                err << "cannot open scenario: " << opt.scenario << "\n";
                return kIoError;
            }
            sc = gen::Scenario::from_json(json::parse(*text));
        }

        gen::Generated g = gen::generate(sc, opt.seed);
        gen::verify_sidecar(g);

        std::error_code ec;
        fs::create_directories(fs::path(opt.out_dir) / "knowledge", ec);
        if (ec) {
            err << "cannot create output directory: " << opt.out_dir << "\n";
            return kIoError;
        }
        const fs::path out(opt.out_dir);

        auto pcap_bytes = write_pcap(g.records);
        std::string_view pcap_view(reinterpret_cast<const char*>(pcap_bytes.data()),
                                   pcap_bytes.size());
        if (!spill(out / "capture.pcap", pcap_view, err)) return kIoError;
        if (!spill(out / "sidecar.json", g.sidecar.to_json().dump(2) + "\n", err))
            return kIoError;
        if (!spill(out / "scenario.json", sc.to_json().dump(2) + "\n", err)) return kIoError;
        if (!spill(out / "policies.json", g.policies.dump(2) + "\n", err)) return kIoError;
        for (const auto& [name, text] : g.knowledge_files)
            if (!spill(out / "knowledge" / name, text, err)) return kIoError;
        return kOk;
    } catch (const gen::InvalidScenario& e) {
        err << "invalid scenario: " << e.what() << "\n";
        return kBadConfig;
    } catch (const gen::SelfCheckFailure& e) {
        err << "self-check failure: " << e.what() << "\n";
        return kBadConfig;
    } catch (const json::exception& e) {
        err << "invalid scenario: " << e.what() << "\n";
        return kBadConfig;
    }
}

int run_score(const std::string& profiles_path, const std::string& labels_path,
              std::ostream& out, std::ostream& err) {
    std::ifstream pin(profiles_path);
    if (!pin.is_open()) {
        err << "cannot open profiles: " << profiles_path << "\n";
        return kIoError;
    }
    auto labels_text = slurp(labels_path);
    if (!labels_text) {
        err << "cannot open labels: " << labels_path << "\n";
        return kIoError;
    }

    ProfileSet profiles;
    LabelMap labels;
    try {
        profiles = import_profiles(pin);
        json doc = json::parse(*labels_text);
        if (doc.is_object() && doc.contains("labels")) {
            labels = gen::Sidecar::from_json(doc).labels;  // full sidecar file
        } else {
            // bare label map: device_key -> attribute -> value
            for (const auto& [key, attrs] : doc.items())
                for (const auto& [attr, value] : attrs.items())
                    labels[key][attr] = value.get<std::string>();
        }
    } catch (const json::exception& e) {
        err << "schema mismatch: " << e.what() << "\n";
        return kBadConfig;
    } catch (const gen::InvalidScenario& e) {
        err << "schema mismatch: " << e.what() << "\n";
        return kBadConfig;
    }

    std::vector<AttributeClaim> claims;
    for (const auto& [key, p] : profiles.devices) {
        (void)key;
        claims.insert(claims.end(), p.claims.begin(), p.claims.end());
    }
    out << score_claims(claims, labels).to_csv();
    return kOk;
}

int run_query(const std::string& profiles_path,
              const std::vector<std::pair<std::string, std::string>>& filters,
              std::ostream& out, std::ostream& err) {
    for (const auto& [attr, value] : filters) {
        (void)value;
        if (!is_known_attribute(attr)) {
            err << "unknown attribute: " << attr << "\n";
            return kBadConfig;
        }
    }

    std::ifstream pin(profiles_path);
    if (!pin.is_open()) {
        err << "cannot open profiles: " << profiles_path << "\n";
        return kIoError;
    }

    // matching input lines pass through untouched, in file order
    std::string line;
    while (std::getline(pin, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        DeviceProfile p;
        try {
            p = profile_from_json(json::parse(line));
        } catch (const json::exception& e) {
            err << "schema mismatch: " << e.what() << "\n";
            return kBadConfig;
        }
        bool keep = true;
        for (const auto& [attr, value] : filters) {
            auto it = p.attributes.find(attr);
            if (it == p.attributes.end() || it->second.value != value) {
                keep = false;
                break;
            }
        }
        if (keep) out << line << "\n";
    }
    return kOk;
}

}  // namespace netsight::app
