// Copyright (c) 2026 Netsight Contributors
// SPDX-License-Identifier: Apache-2.0

#include "netsight/pcap.hpp"

#include <cstring>
#include <sstream>

#include "netsight/bytes.hpp"

namespace netsight {

namespace {

constexpr uint32_t kMagicHost = 0xA1B2C3D4;     // file written big-endian
constexpr uint32_t kMagicSwapped = 0xD4C3B2A1;  // file written little-endian
constexpr uint32_t kMagicNanos = 0xA1B23C4D;
constexpr uint32_t kMagicNanosSwapped = 0x4D3CB2A1;

bool read_exact(std::istream& in, uint8_t* buf, size_t n, size_t& got) {
    in.read(reinterpret_cast<char*>(buf), static_cast<std::streamsize>(n));
    got = static_cast<size_t>(in.gcount());
    return got == n;
}

}  // namespace

PcapReader PcapReader::open(std::istream& in) {
    uint8_t hdr[24];
    size_t got = 0;
    if (!read_exact(in, hdr, sizeof(hdr), got))
        throw CaptureError(CaptureErrorCode::TruncatedHeader,
                           "capture shorter than 24-byte global header");

    ByteCursor magic_cur(std::span<const uint8_t>(hdr, 4));
    uint32_t magic = magic_cur.u32be();  // as stored, first byte most significant

    ByteOrder order;
    if (magic == kMagicHost)
        order = ByteOrder::Big;
    else if (magic == kMagicSwapped)
        order = ByteOrder::Little;
    else if (magic == kMagicNanos || magic == kMagicNanosSwapped)
        throw CaptureError(CaptureErrorCode::UnknownMagic,
                           "nanosecond pcap variant not supported");
    else
        throw CaptureError(CaptureErrorCode::UnknownMagic, "not a classic pcap");

    bool be = order == ByteOrder::Big;
    ByteCursor cur(std::span<const uint8_t>(hdr + 4, 20));
    PcapReader reader(in);
    reader.header_.byte_order = order;
    reader.header_.version_major = cur.u16(be);
    reader.header_.version_minor = cur.u16(be);
    cur.u32(be);  // thiszone
    cur.u32(be);  // sigfigs
    reader.header_.snap_length = cur.u32(be);
    reader.header_.link_type = cur.u32(be);

    if (reader.header_.snap_length == 0)
        throw CaptureError(CaptureErrorCode::InvalidSnapLength, "snap length is zero");
    if (reader.header_.link_type != 1)
        throw CaptureError(CaptureErrorCode::UnsupportedLinkType,
                           "link type " + std::to_string(reader.header_.link_type) +
                               " (only Ethernet/1 supported)");
    return reader;
}

std::optional<PacketRecord> PcapReader::next() {
    bool be = header_.byte_order == ByteOrder::Big;
    while (!done_) {
        uint8_t hdr[16];
        size_t got = 0;
        if (!read_exact(*in_, hdr, sizeof(hdr), got)) {
            if (got != 0) {
                // Partial per-packet header: truncated capture.
                truncated_at_ = next_index_;
                ++stats_.errors;
            }
            done_ = true;
            return std::nullopt;
        }

        ByteCursor cur(std::span<const uint8_t>(hdr, sizeof(hdr)));
        uint32_t ts_sec = cur.u32(be);
        uint32_t ts_usec = cur.u32(be);
        uint32_t incl_len = cur.u32(be);
        uint32_t orig_len = cur.u32(be);
        uint64_t index = next_index_++;

        PacketRecord rec;
        rec.index = index;
        rec.ts = Timestamp::from_parts(ts_sec, ts_usec);
        rec.captured_len = incl_len;
        rec.original_len = orig_len;
        rec.data.resize(incl_len);
        if (incl_len > 0 && !read_exact(*in_, rec.data.data(), incl_len, got)) {
            truncated_at_ = index;
            ++stats_.errors;
            done_ = true;
            return std::nullopt;
        }

        // Declared lengths must satisfy captured_len <= min(orig, snaplen);
        // offenders have their bytes present, so skip and keep reading.
        if (incl_len > header_.snap_length || incl_len > orig_len) {
            ++stats_.errors;
            continue;
        }

        ++stats_.packets_read;
        stats_.bytes_read += incl_len;
        return rec;
    }
    return std::nullopt;
}

PcapWriter::PcapWriter(std::ostream& out, ByteOrder order, uint32_t snap_length)
    : out_(&out), order_(order) {
    bool be = order == ByteOrder::Big;
    ByteWriter w;
    w.u32(kMagicHost, be);
    w.u16(2, be);
    w.u16(4, be);
    w.u32(0, be);  // thiszone
    w.u32(0, be);  // sigfigs
    w.u32(snap_length, be);
    w.u32(1, be);  // Ethernet
    out_->write(reinterpret_cast<const char*>(w.data().data()),
                static_cast<std::streamsize>(w.size()));
}

void PcapWriter::write(const PacketRecord& rec) {
    bool be = order_ == ByteOrder::Big;
    ByteWriter w;
    w.u32(rec.ts.sec(), be);
    w.u32(rec.ts.usec(), be);
    w.u32(static_cast<uint32_t>(rec.data.size()), be);
    w.u32(rec.original_len, be);
    w.bytes(rec.data);
    out_->write(reinterpret_cast<const char*>(w.data().data()),
                static_cast<std::streamsize>(w.size()));
}

std::vector<uint8_t> write_pcap(const std::vector<PacketRecord>& records,
                                ByteOrder order, uint32_t snap_length) {
    std::ostringstream out(std::ios::binary);
    PcapWriter writer(out, order, snap_length);
    for (const auto& rec : records) writer.write(rec);
    auto s = out.str();
    return std::vector<uint8_t>(s.begin(), s.end());
}

}  // namespace netsight
