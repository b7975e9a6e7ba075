// Copyright (c) 2026 Netsight Contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "netsight/common.hpp"

namespace netsight {

// Classic pcap only (magic 0xA1B2C3D4 in either byte order, microsecond
// timestamps, Ethernet link type). The nanosecond variant and pcapng are
// rejected up front rather than half-supported.
enum class ByteOrder { Big, Little };

struct CaptureHeader {
    ByteOrder byte_order = ByteOrder::Little;
    uint16_t version_major = 2;
    uint16_t version_minor = 4;
    uint32_t snap_length = 0;
    uint32_t link_type = 0;  // must be 1 (Ethernet)
};

struct PacketRecord {
    uint64_t index = 0;  // 0-based position in the capture
    Timestamp ts;
    uint32_t captured_len = 0;
    uint32_t original_len = 0;
    std::vector<uint8_t> data;

    bool operator==(const PacketRecord&) const = default;
};

struct IngestStats {
    uint64_t packets_read = 0;
    uint64_t bytes_read = 0;  // sum of captured_len over emitted records
    uint64_t errors = 0;
};

enum class CaptureErrorCode {
    UnknownMagic,
    UnsupportedLinkType,
    TruncatedHeader,
    InvalidSnapLength,
};

class CaptureError : public std::runtime_error {
  public:
    CaptureError(CaptureErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    CaptureErrorCode code() const { return code_; }

  private:
    CaptureErrorCode code_;
};

class PcapReader {
  public:
    // Throws CaptureError if the global header is absent or unusable.
    static PcapReader open(std::istream& in);

    // Next packet in file order, or nullopt at end of capture. A per-packet
    // header that claims more bytes than remain ends the stream; the index of
    // the offending packet is kept in truncated_at(). Records whose declared
    // lengths violate captured_len <= min(original_len, snap_length) are
    // skipped and counted in stats().errors.
    std::optional<PacketRecord> next();

    const CaptureHeader& header() const { return header_; }
    const IngestStats& stats() const { return stats_; }
    std::optional<uint64_t> truncated_at() const { return truncated_at_; }

  private:
    explicit PcapReader(std::istream& in) : in_(&in) {}

    std::istream* in_;
    CaptureHeader header_;
    IngestStats stats_;
    uint64_t next_index_ = 0;
    bool done_ = false;
    std::optional<uint64_t> truncated_at_;
};

class PcapWriter {
  public:
    PcapWriter(std::ostream& out, ByteOrder order = ByteOrder::Little,
               uint32_t snap_length = 262144);

    void write(const PacketRecord& rec);

  private:
    std::ostream* out_;
    ByteOrder order_;
};

// Convenience for the generator and tests: serialize records to a buffer.
std::vector<uint8_t> write_pcap(const std::vector<PacketRecord>& records,
                                ByteOrder order = ByteOrder::Little,
                                uint32_t snap_length = 262144);

}  // namespace netsight
