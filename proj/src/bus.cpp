// Copyright (c) 2026 Netsight Contributors
// SPDX-License-Identifier: Apache-2.0

#include "netsight/bus.hpp"

namespace netsight {

std::optional<Message> Subscription::next() {
    const auto& log = bus_->log(topic_);
    if (cursor_ >= log.size()) return std::nullopt;
    return log[cursor_++];
}

void TopicBus::declare(const std::string& topic) {
    if (topic.empty())
        throw BusError(BusErrorCode::UnknownTopic, "empty topic name");
    if (logs_.count(topic))
        throw BusError(BusErrorCode::DuplicateTopic, "topic already declared: " + topic);
    logs_[topic];
}

bool TopicBus::has_topic(const std::string& topic) const {
    return logs_.count(topic) > 0;
}

uint64_t TopicBus::publish(const std::string& topic, Payload payload) {
    auto it = logs_.find(topic);
    if (it == logs_.end())
        throw BusError(BusErrorCode::UnknownTopic, "publish to undeclared topic: " + topic);
    uint64_t seq = it->second.size();
    it->second.push_back(Message{seq, std::move(payload)});
    return seq;
}

Subscription TopicBus::subscribe(const std::string& topic) const {
    if (!logs_.count(topic))
        throw BusError(BusErrorCode::UnknownTopic,
                       topic.empty() ? "subscribe to empty topic name"
                                     : "subscribe to undeclared topic: " + topic);
    return Subscription(this, topic);
}

const std::vector<Message>& TopicBus::log(const std::string& topic) const {
    auto it = logs_.find(topic);
    if (it == logs_.end())
        throw BusError(BusErrorCode::UnknownTopic, "unknown topic: " + topic);
    return it->second;
}

std::vector<std::string> TopicBus::topics() const {
    std::vector<std::string> out;
    for (const auto& [name, log] : logs_) out.push_back(name);
    return out;
}

uint64_t TopicBus::message_count(const std::string& topic) const {
    return log(topic).size();
}

}  // namespace netsight
