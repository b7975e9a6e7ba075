// Copyright (c) 2026 Netsight Contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace netsight {

// Microsecond-resolution wall-clock time. pcap stores (sec, usec) pairs; we
// keep a single signed microsecond count so interval arithmetic stays exact.
struct Timestamp {
    int64_t us = 0;

    static Timestamp from_parts(uint32_t sec, uint32_t usec) {
        return Timestamp{static_cast<int64_t>(sec) * 1'000'000 + usec};
    }
    static Timestamp from_seconds(double s) {
        return Timestamp{static_cast<int64_t>(s * 1e6 + (s >= 0 ? 0.5 : -0.5))};
    }

    uint32_t sec() const { return static_cast<uint32_t>(us / 1'000'000); }
    uint32_t usec() const { return static_cast<uint32_t>(us % 1'000'000); }
    double seconds() const { return static_cast<double>(us) / 1e6; }

    Timestamp operator+(int64_t delta_us) const { return Timestamp{us + delta_us}; }
    int64_t operator-(const Timestamp& o) const { return us - o.us; }
    auto operator<=>(const Timestamp&) const = default;
};

struct MacAddress {
    std::array<uint8_t, 6> octets{};

    bool is_broadcast() const;
    bool is_multicast() const { return (octets[0] & 0x01) != 0; }
    bool locally_administered() const { return (octets[0] & 0x02) != 0; }
    std::array<uint8_t, 3> oui() const { return {octets[0], octets[1], octets[2]}; }

    std::string to_string() const;  // lowercase "aa:bb:cc:dd:ee:ff"
    static std::optional<MacAddress> parse(std::string_view text);

    auto operator<=>(const MacAddress&) const = default;
};

struct Ipv4Address {
    uint32_t value = 0;  // host byte order

    bool is_zero() const { return value == 0; }
    bool is_broadcast() const { return value == 0xFFFFFFFF; }
    // RFC1918 private ranges: 10/8, 172.16/12, 192.168/16.
    bool is_rfc1918() const {
        return (value >> 24) == 10 || (value >> 20) == 0xAC1 ||
               (value >> 16) == 0xC0A8;
    }

    std::string to_string() const;
    static std::optional<Ipv4Address> parse(std::string_view text);

    auto operator<=>(const Ipv4Address&) const = default;
};

// FNV-1a 64-bit. Used for config/knowledge manifests; not cryptographic.
uint64_t fnv1a64(std::span<const uint8_t> data);
uint64_t fnv1a64(std::string_view data);
std::string to_hex(uint64_t v);

std::string to_lower(std::string_view s);
std::string trim(std::string_view s);

// Deterministic RNG for the traffic generator and tests. Wraps mt19937_64 and
// avoids std::uniform_*_distribution, whose output is implementation-defined.
class Rng {
  public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    uint64_t next() { return gen_(); }
    // inclusive range [lo, hi]
    uint64_t range(uint64_t lo, uint64_t hi) {
        return hi <= lo ? lo : lo + next() % (hi - lo + 1);
    }
    double unit() { return static_cast<double>(next() >> 11) / 9007199254740992.0; }
    bool chance(double p) { return unit() < p; }

    template <typename T>
    const T& pick(const std::vector<T>& v) {
        return v[static_cast<size_t>(range(0, v.size() - 1))];
    }

  private:
    std::mt19937_64 gen_;
};

}  // namespace netsight
