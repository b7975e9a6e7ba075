// Copyright (c) 2026 Netsight Contributors
// SPDX-License-Identifier: Apache-2.0
//
// Chain configuration: which engines run, what they subscribe to, and how
// their claims are composed. Validated for acyclicity and satisfied topic
// dependencies before any packet is processed.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "netsight/analyzers.hpp"
#include "netsight/claims.hpp"
#include "netsight/decode.hpp"

namespace netsight {

struct EngineSpec {
    std::string engine_id;
    std::string kind;                     // "PPE" or "CPE"
    std::vector<std::string> subscribes;  // topic names
    std::vector<std::string> emits;       // topic names
    nlohmann::json params = nlohmann::json::object();
};

enum class ConfigErrorKind {
    Parse,
    Cycle,
    UnknownEngine,
    UnsatisfiedDependency,
    BadComposition,
};

class ConfigError : public std::runtime_error {
  public:
    ConfigError(ConfigErrorKind kind, const std::string& msg)
        : std::runtime_error(msg), kind_(kind) {}
    ConfigErrorKind kind() const { return kind_; }

  private:
    ConfigErrorKind kind_;
};

struct ChainConfig {
    std::vector<EngineSpec> engines;
    CompositionMode mode = CompositionMode::Ensemble;
    std::optional<std::string> accuracy_file;
    DecoderConfig decoder;
    int64_t occupancy_window_us = 900'000'000;

    static ChainConfig defaults();
    static ChainConfig from_json(const nlohmann::json& doc);
    nlohmann::json to_json() const;
};

// Topics produced by the decoding front end (the implicit chain source).
const std::vector<std::string>& decoder_topics();

// Engine ids with built-in implementations; `defaults()` runs all of them
// except the no-op.
const std::vector<std::string>& builtin_engine_ids();

// Default subscribes/emits for a built-in engine id.
EngineSpec builtin_engine(const std::string& engine_id);

// Throws ConfigError on unknown engines, duplicate ids, subscription
// cycles, or topics nothing emits. Engines are checked in config order.
void validate_chain(const ChainConfig& config);

// Analyzer thresholds with the engine's params overlaid on the defaults.
AnalyzerParams params_for(const EngineSpec& spec);

}  // namespace netsight
