// Copyright (c) 2026 Netsight Contributors
// SPDX-License-Identifier: Apache-2.0

#include "netsight/flow.hpp"

#include <algorithm>

namespace netsight {

FlowAssembler::FlowAssembler(int64_t idle_timeout_us)
    : idle_timeout_us_(idle_timeout_us) {}

std::vector<FlowRecord> FlowAssembler::add(const FlowSample& s) {
    std::vector<FlowRecord> closed;
    FlowKey key = FlowKey::canonical(s.src, s.dst, s.proto);

    auto it = open_.find(key);
    if (it != open_.end() && s.ts - it->second.last_ts > idle_timeout_us_) {
        closed.push_back(it->second);
        open_.erase(it);
        it = open_.end();
    }

    if (it == open_.end()) {
        FlowRecord rec;
        rec.key = key;
        rec.originator = s.src;
        rec.first_ts = s.ts;
        rec.last_ts = s.ts;
        it = open_.emplace(key, rec).first;
    }

    FlowRecord& rec = it->second;
    rec.last_ts = std::max(rec.last_ts, s.ts);
    if (s.src == rec.originator) {
        ++rec.pkts_orig;
        rec.bytes_orig += s.wire_bytes;
    } else {
        ++rec.pkts_resp;
        rec.bytes_resp += s.wire_bytes;
    }
    return closed;
}

std::vector<FlowRecord> FlowAssembler::finish() {
    std::vector<FlowRecord> out;
    out.reserve(open_.size());
    for (auto& [key, rec] : open_) out.push_back(rec);
    open_.clear();
    std::sort(out.begin(), out.end(), [](const FlowRecord& x, const FlowRecord& y) {
        return std::tie(x.first_ts, x.key) < std::tie(y.first_ts, y.key);
    });
    return out;
}

}  // namespace netsight
