// Copyright (c) 2026 Netsight Contributors
// SPDX-License-Identifier: Apache-2.0
//
// In-process topic bus. Topics are append-only logs of decoded events, flow
// records, and attribute claims; subscribers replay a topic in publish order
// through independent cursors, so every subscriber sees every message of its
// topic exactly once per run.
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "netsight/claims.hpp"
#include "netsight/events.hpp"
#include "netsight/flow.hpp"

namespace netsight {

using Payload = std::variant<DnsEvent, DhcpEvent, HttpEvent, TlsEvent, FlowRecord,
                             AttributeClaim>;

struct Message {
    uint64_t seq = 0;  // per-topic, starts at 0, gap-free
    Payload payload;
};

enum class BusErrorCode { UnknownTopic, DuplicateTopic };

class BusError : public std::runtime_error {
  public:
    BusError(BusErrorCode code, const std::string& msg)
        : std::runtime_error(msg), code_(code) {}
    BusErrorCode code() const { return code_; }

  private:
    BusErrorCode code_;
};

class TopicBus;

// Read cursor over one topic. Messages published after the cursor was created
// are still delivered; next() returns nothing once the cursor caught up.
class Subscription {
  public:
    std::optional<Message> next();
    const std::string& topic() const { return topic_; }

  private:
    friend class TopicBus;
    Subscription(const TopicBus* bus, std::string topic)
        : bus_(bus), topic_(std::move(topic)) {}

    const TopicBus* bus_;
    std::string topic_;
    uint64_t cursor_ = 0;
};

class TopicBus {
  public:
    // Topics must be declared before use; declaring twice is an error.
    void declare(const std::string& topic);
    bool has_topic(const std::string& topic) const;

    uint64_t publish(const std::string& topic, Payload payload);  // returns seq
    Subscription subscribe(const std::string& topic) const;

    const std::vector<Message>& log(const std::string& topic) const;
    std::vector<std::string> topics() const;  // sorted
    uint64_t message_count(const std::string& topic) const;

  private:
    friend class Subscription;
    std::map<std::string, std::vector<Message>> logs_;
};

}  // namespace netsight
