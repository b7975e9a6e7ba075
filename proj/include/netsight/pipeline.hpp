// Copyright (c) 2026 Netsight Contributors
// SPDX-License-Identifier: Apache-2.0
//
// End-to-end run: decode a capture, bind identities, fan events out over
// the bus to the configured engines, compose claims, and assemble the
// exported profile set plus occupancy estimates.
#pragma once

#include <iosfwd>

#include "netsight/bus.hpp"
#include "netsight/chain.hpp"
#include "netsight/pcap.hpp"
#include "netsight/profile.hpp"

namespace netsight {

struct RunStats {
    DecodeStats decode;
    std::map<std::string, uint64_t> engine_consumed;  // messages read
    std::map<std::string, uint64_t> engine_claims;    // claims emitted
    std::map<std::string, uint64_t> topic_messages;
    uint64_t devices = 0;
};

struct PipelineResult {
    ProfileSet profiles;
    RunStats stats;
    IdentityIndex identities;
    DecodeOutput events;
    std::vector<OccupancyEstimate> occupancy;
    std::map<std::string, std::string> device_owner;  // registry attribution
};

// Validates the config up front (ConfigError before any processing); with
// best-classifier composition an accuracy table must be supplied here or
// named by the config.
PipelineResult run_pipeline(const std::vector<PacketRecord>& records,
                            const ChainConfig& config,
                            const KnowledgeBundle& knowledge,
                            const AccuracyTable* accuracy = nullptr);

PipelineResult run_pipeline(std::istream& pcap_stream,
                            const ChainConfig& config,
                            const KnowledgeBundle& knowledge,
                            const AccuracyTable* accuracy = nullptr);

}  // namespace netsight
