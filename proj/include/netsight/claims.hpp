// Copyright (c) 2026 Netsight Contributors
// SPDX-License-Identifier: Apache-2.0
//
// Attribute claims and their composition. Multiple engines may assert values
// for the same device attribute; composition resolves them either as a
// confidence-weighted ensemble or by deferring to the most accurate engine.
#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "netsight/common.hpp"

namespace netsight {

struct AttributeClaim {
    std::string device_key;
    std::string attribute;
    std::string value;
    double confidence = 0.0;  // in [0, 1]
    std::string engine_id;
    Timestamp ts;

    bool operator==(const AttributeClaim&) const = default;
};

// The attribute names engines are allowed to claim.
const std::set<std::string>& attribute_vocabulary();
bool is_known_attribute(const std::string& name);

enum class CompositionMode { Ensemble, BestClassifier };

class CompositionError : public std::runtime_error {
  public:
    explicit CompositionError(const std::string& msg) : std::runtime_error(msg) {}
};

// (engine_id, attribute) -> accuracy in [0,1]. CSV columns:
// engine_id,attribute,accuracy.
struct AccuracyTable {
    std::map<std::pair<std::string, std::string>, double> entries;

    std::optional<double> get(const std::string& engine_id,
                              const std::string& attribute) const;
    void set(const std::string& engine_id, const std::string& attribute, double acc);

    static AccuracyTable load_csv(const std::string& path);  // throws on I/O error
    std::string to_csv() const;                              // sorted rows
};

struct ResolvedAttribute {
    std::string value;
    double confidence = 0.0;
    std::vector<std::string> engines;  // contributors to the winning value, sorted

    bool operator==(const ResolvedAttribute&) const = default;
};

// All claims must share one (device_key, attribute). Ensemble: the value with
// the largest summed confidence wins (ties: lexicographically smallest value),
// confidence = winning sum / total sum. BestClassifier: the claim of the
// engine with the highest accuracy for this attribute wins (ties:
// lexicographically smallest engine_id); throws CompositionError when a
// contributing engine has no accuracy entry.
ResolvedAttribute resolve_attribute(const std::vector<AttributeClaim>& claims,
                                    CompositionMode mode,
                                    const AccuracyTable* accuracy = nullptr);

// Ground-truth labels: device_key -> attribute -> expected value.
using LabelMap = std::map<std::string, std::map<std::string, std::string>>;

// Per-engine accuracy: the fraction of an engine's claims (pre-composition)
// whose value matches the label, per attribute, over labeled devices.
// Engines with no claims on a labeled attribute are absent.
AccuracyTable score_claims(const std::vector<AttributeClaim>& claims,
                           const LabelMap& labels);

}  // namespace netsight
