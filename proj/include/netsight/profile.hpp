// Copyright (c) 2026 Netsight Contributors
// SPDX-License-Identifier: Apache-2.0
//
// The per-device profile store: resolved attributes, counters, identity
// epochs, and the raw claims that produced them, with a stable NDJSON
// serialization (one device per line, keys sorted).
#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "netsight/analyzers.hpp"
#include "netsight/claims.hpp"
#include "netsight/identity.hpp"

namespace netsight {

struct DeviceProfile {
    std::string device_key;
    std::optional<MacAddress> mac;
    bool mac_conflict = false;
    std::vector<IpEpoch> epochs;
    std::map<std::string, ResolvedAttribute> attributes;
    std::map<std::string, uint64_t> counters;
    std::vector<AttributeClaim> claims;  // pre-composition, kept for scoring
    std::optional<BehaviorProfile> behavior;
    std::vector<std::string> violations;  // rule ids, sorted
    Timestamp first_seen;
    Timestamp last_seen;
};

struct ProfileSet {
    std::map<std::string, DeviceProfile> devices;

    // device-key order == map order, so exports are stable
    std::vector<std::string> keys() const;
};

// One-line JSON object per the published export schema.
nlohmann::json profile_to_json(const DeviceProfile& p);
std::string profile_to_line(const DeviceProfile& p);
void export_profiles(const ProfileSet& set, std::ostream& out);

// Rebuilds the queryable parts (identity fields, attributes, counters,
// claims) from an export; used by the score and query commands.
DeviceProfile profile_from_json(const nlohmann::json& j);
ProfileSet import_profiles(std::istream& in);

// seconds-as-double encoding used across all exports (microsecond exact)
double ts_to_json(Timestamp ts);
Timestamp ts_from_json(double seconds);

}  // namespace netsight
