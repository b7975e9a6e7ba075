// Copyright (c) 2026 Netsight Contributors
// SPDX-License-Identifier: Apache-2.0

#include "netsight/claims.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace netsight {

const std::set<std::string>& attribute_vocabulary() {
    static const std::set<std::string> kVocabulary = {
        "manufacturer", "os",   "browser",       "device_type",
        "is_iot",       "stack", "behavior_mode", "owner"};
    return kVocabulary;
}

bool is_known_attribute(const std::string& name) {
    return attribute_vocabulary().count(name) > 0;
}

std::optional<double> AccuracyTable::get(const std::string& engine_id,
                                         const std::string& attribute) const {
    auto it = entries.find({engine_id, attribute});
    if (it == entries.end()) return std::nullopt;
    return it->second;
}

void AccuracyTable::set(const std::string& engine_id, const std::string& attribute,
                        double acc) {
    entries[{engine_id, attribute}] = acc;
}

AccuracyTable AccuracyTable::load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in.is_open())
        throw CompositionError("cannot open accuracy file: " + path);
    AccuracyTable t;
    std::string line;
    while (std::getline(in, line)) {
        auto l = trim(line);
        if (l.empty() || l[0] == '#') continue;
        size_t c1 = l.find(',');
        size_t c2 = c1 == std::string::npos ? std::string::npos : l.find(',', c1 + 1);
        if (c2 == std::string::npos) continue;
        try {
            double acc = std::stod(l.substr(c2 + 1));
            t.entries[{trim(l.substr(0, c1)), trim(l.substr(c1 + 1, c2 - c1 - 1))}] = acc;
        } catch (...) {
            continue;  // unparsable accuracy value: skip the row
        }
    }
    return t;
}

std::string AccuracyTable::to_csv() const {
    std::ostringstream out;
    out << "engine_id,attribute,accuracy\n";
    for (const auto& [key, acc] : entries) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6f", acc);
        out << key.first << ',' << key.second << ',' << buf << '\n';
    }
    return out.str();
}

ResolvedAttribute resolve_attribute(const std::vector<AttributeClaim>& claims,
                                    CompositionMode mode,
                                    const AccuracyTable* accuracy) {
    if (claims.empty()) throw CompositionError("resolve_attribute: no claims");

    if (mode == CompositionMode::BestClassifier) {
        if (!accuracy)
            throw CompositionError("best-classifier composition needs an accuracy table");
        // Rank: accuracy desc, then engine_id asc; within one engine (it may
        // have emitted several claims) confidence desc, then value asc.
        const AttributeClaim* best = nullptr;
        double best_acc = -1.0;
        for (const auto& c : claims) {
            auto acc = accuracy->get(c.engine_id, c.attribute);
            if (!acc)
                throw CompositionError("missing accuracy for engine '" + c.engine_id +
                                       "' on attribute '" + c.attribute + "'");
            bool wins;
            if (!best) {
                wins = true;
            } else if (*acc != best_acc) {
                wins = *acc > best_acc;
            } else if (c.engine_id != best->engine_id) {
                wins = c.engine_id < best->engine_id;
            } else if (c.confidence != best->confidence) {
                wins = c.confidence > best->confidence;
            } else {
                wins = c.value < best->value;
            }
            if (wins) {
                best = &c;
                best_acc = *acc;
            }
        }
        return ResolvedAttribute{best->value, best->confidence, {best->engine_id}};
    }

    // Ensemble: confidence-weighted vote per value.
    std::map<std::string, double> sums;
    double total = 0.0;
    for (const auto& c : claims) {
        sums[c.value] += c.confidence;
        total += c.confidence;
    }
    const std::string* winner = nullptr;
    double win_sum = 0.0;
    for (const auto& [value, sum] : sums) {
        // std::map iterates values in lexicographic order, so strictly-greater
        // keeps the smallest value on ties
        if (!winner || sum > win_sum) {
            winner = &value;
            win_sum = sum;
        }
    }
    ResolvedAttribute r;
    r.value = *winner;
    r.confidence = total > 0.0 ? win_sum / total : 0.0;
    std::set<std::string> engines;
    for (const auto& c : claims)
        if (c.value == r.value) engines.insert(c.engine_id);
    r.engines.assign(engines.begin(), engines.end());
    return r;
}

AccuracyTable score_claims(const std::vector<AttributeClaim>& claims,
                           const LabelMap& labels) {
    std::map<std::pair<std::string, std::string>, std::pair<int, int>> tallies;
    for (const auto& c : claims) {
        auto dev = labels.find(c.device_key);
        if (dev == labels.end()) continue;
        auto attr = dev->second.find(c.attribute);
        if (attr == dev->second.end()) continue;
        auto& [correct, total] = tallies[{c.engine_id, c.attribute}];
        ++total;
        if (c.value == attr->second) ++correct;
    }
    AccuracyTable t;
    for (const auto& [key, tally] : tallies)
        t.entries[key] = static_cast<double>(tally.first) / tally.second;
    return t;
}

}  // namespace netsight
