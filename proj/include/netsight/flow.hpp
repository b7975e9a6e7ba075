// Copyright (c) 2026 Netsight Contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <tuple>
#include <vector>

#include "netsight/common.hpp"

namespace netsight {

struct Endpoint {
    Ipv4Address ip;
    uint16_t port = 0;

    auto operator<=>(const Endpoint&) const = default;
};

enum class FlowProto { Tcp, Udp };

// Canonical 5-tuple: endpoints ordered so key(a->b) == key(b->a). Which side
// originated is kept on the FlowRecord, not the key.
struct FlowKey {
    Endpoint a;  // lexicographically smaller (ip, port)
    Endpoint b;
    FlowProto proto = FlowProto::Udp;

    static FlowKey canonical(Endpoint src, Endpoint dst, FlowProto proto) {
        FlowKey k;
        k.proto = proto;
        if (dst < src) {
            k.a = dst;
            k.b = src;
        } else {
            k.a = src;
            k.b = dst;
        }
        return k;
    }

    auto operator<=>(const FlowKey&) const = default;
};

struct FlowRecord {
    FlowKey key;
    Endpoint originator;  // endpoint that sent the first packet of this flow
    Timestamp first_ts;
    Timestamp last_ts;
    uint64_t pkts_orig = 0;
    uint64_t pkts_resp = 0;
    uint64_t bytes_orig = 0;  // IPv4 total_length sums
    uint64_t bytes_resp = 0;

    Endpoint responder() const { return originator == key.a ? key.b : key.a; }
    uint64_t bytes_total() const { return bytes_orig + bytes_resp; }
    uint64_t pkts_total() const { return pkts_orig + pkts_resp; }
};

// One transport packet, already addressed. wire_bytes is the IPv4
// total_length (the flow byte counters sum these).
struct FlowSample {
    Timestamp ts;
    Endpoint src;
    Endpoint dst;
    FlowProto proto = FlowProto::Udp;
    uint32_t wire_bytes = 0;
};

// Groups packets into flows; a flow closes when idle longer than the timeout
// (checked lazily when its next packet arrives) or at end of stream.
class FlowAssembler {
  public:
    explicit FlowAssembler(int64_t idle_timeout_us = 300'000'000);

    // Returns flows closed by this sample's arrival (usually empty).
    std::vector<FlowRecord> add(const FlowSample& s);

    // Flush all open flows, ordered by (first_ts, key).
    std::vector<FlowRecord> finish();

  private:
    int64_t idle_timeout_us_;
    std::map<FlowKey, FlowRecord> open_;
};

}  // namespace netsight
