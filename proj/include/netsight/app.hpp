// Copyright (c) 2026 Netsight Contributors
// SPDX-License-Identifier: Apache-2.0
//
// Command implementations behind the CLI binary, exposed as library calls so
// tests can run them in-process. Exit codes: 0 success, 1 bad configuration
// or bad scenario, 2 I/O trouble.
#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace netsight::app {

inline constexpr const char* kToolVersion = "0.1.0";

struct AnalyzeOptions {
    std::string pcap_path;
    std::string config_path;     // empty = built-in default chain
    std::string knowledge_dir;   // empty = no knowledge tables
    std::string policies_path;   // empty = no policy checks
    std::string out_dir;
};

// Writes profiles.ndjson, violations.ndjson, topology.json, topology.dot,
// occupancy.ndjson, manifest.json into out_dir.
int run_analyze(const AnalyzeOptions& opt, std::ostream& err);

struct GenerateOptions {
    std::string scenario;  // path to a scenario file, or "office-small"
    uint32_t seed = 1;
    std::string out_dir;
};

// Writes capture.pcap, sidecar.json, scenario.json, policies.json, and a
// knowledge/ directory; the capture is re-analyzed and cross-checked against
// the sidecar before anything is persisted.
int run_generate(const GenerateOptions& opt, std::ostream& err);

// Accuracy CSV (engine_id,attribute,accuracy) for the pre-composition claims
// in a profile export, measured against sidecar labels.
int run_score(const std::string& profiles_path, const std::string& labels_path,
              std::ostream& out, std::ostream& err);

// Profiles whose resolved attributes satisfy every k=v filter, as NDJSON.
int run_query(const std::string& profiles_path,
              const std::vector<std::pair<std::string, std::string>>& filters,
              std::ostream& out, std::ostream& err);

}  // namespace netsight::app
