// Copyright (c) 2026 Netsight Contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <vector>

namespace netsight {

// Bounds-checked forward cursor over a byte buffer. Reads past the end set a
// sticky failure flag and return zeros, so parsers can read a whole structure
// and check ok() once at the end.
class ByteCursor {
  public:
    explicit ByteCursor(std::span<const uint8_t> buf) : buf_(buf) {}

    uint8_t u8() {
        if (!need(1)) return 0;
        return buf_[pos_++];
    }
    uint16_t u16be() {
        if (!need(2)) return 0;
        uint16_t v = static_cast<uint16_t>(buf_[pos_] << 8 | buf_[pos_ + 1]);
        pos_ += 2;
        return v;
    }
    uint32_t u32be() {
        if (!need(4)) return 0;
        uint32_t v = static_cast<uint32_t>(buf_[pos_]) << 24 |
                     static_cast<uint32_t>(buf_[pos_ + 1]) << 16 |
                     static_cast<uint32_t>(buf_[pos_ + 2]) << 8 |
                     static_cast<uint32_t>(buf_[pos_ + 3]);
        pos_ += 4;
        return v;
    }
    uint16_t u16le() {
        if (!need(2)) return 0;
        uint16_t v = static_cast<uint16_t>(buf_[pos_ + 1] << 8 | buf_[pos_]);
        pos_ += 2;
        return v;
    }
    uint32_t u32le() {
        if (!need(4)) return 0;
        uint32_t v = static_cast<uint32_t>(buf_[pos_ + 3]) << 24 |
                     static_cast<uint32_t>(buf_[pos_ + 2]) << 16 |
                     static_cast<uint32_t>(buf_[pos_ + 1]) << 8 |
                     static_cast<uint32_t>(buf_[pos_]);
        pos_ += 4;
        return v;
    }
    uint16_t u16(bool big_endian) { return big_endian ? u16be() : u16le(); }
    uint32_t u32(bool big_endian) { return big_endian ? u32be() : u32le(); }

    std::span<const uint8_t> take(size_t n) {
        if (!need(n)) return {};
        auto s = buf_.subspan(pos_, n);
        pos_ += n;
        return s;
    }
    std::string str(size_t n) {
        auto s = take(n);
        return std::string(reinterpret_cast<const char*>(s.data()), s.size());
    }
    void skip(size_t n) { (void)take(n); }

    size_t pos() const { return pos_; }
    void seek(size_t p) {
        if (p > buf_.size())
            ok_ = false;
        else
            pos_ = p;
    }
    size_t remaining() const { return buf_.size() - pos_; }
    bool ok() const { return ok_; }

  private:
    bool need(size_t n) {
        if (!ok_ || pos_ + n > buf_.size()) {
            ok_ = false;
            return false;
        }
        return true;
    }

    std::span<const uint8_t> buf_;
    size_t pos_ = 0;
    bool ok_ = true;
};

// Growable output buffer with length backpatching, used by the pcap writer
// and the synthetic packet builders.
class ByteWriter {
  public:
    void u8(uint8_t v) { out_.push_back(v); }
    void u16be(uint16_t v) {
        out_.push_back(static_cast<uint8_t>(v >> 8));
        out_.push_back(static_cast<uint8_t>(v));
    }
    void u32be(uint32_t v) {
        u16be(static_cast<uint16_t>(v >> 16));
        u16be(static_cast<uint16_t>(v));
    }
    void u16le(uint16_t v) {
        out_.push_back(static_cast<uint8_t>(v));
        out_.push_back(static_cast<uint8_t>(v >> 8));
    }
    void u32le(uint32_t v) {
        u16le(static_cast<uint16_t>(v));
        u16le(static_cast<uint16_t>(v >> 16));
    }
    void u16(uint16_t v, bool big_endian) { big_endian ? u16be(v) : u16le(v); }
    void u32(uint32_t v, bool big_endian) { big_endian ? u32be(v) : u32le(v); }
    void bytes(std::span<const uint8_t> b) { out_.insert(out_.end(), b.begin(), b.end()); }
    void bytes(const std::vector<uint8_t>& b) { out_.insert(out_.end(), b.begin(), b.end()); }
    void str(std::string_view s) {
        out_.insert(out_.end(), s.begin(), s.end());
    }
    void fill(size_t n, uint8_t v = 0) { out_.insert(out_.end(), n, v); }

    void patch_u8(size_t pos, uint8_t v) { out_[pos] = v; }
    void patch_u16be(size_t pos, uint16_t v) {
        out_[pos] = static_cast<uint8_t>(v >> 8);
        out_[pos + 1] = static_cast<uint8_t>(v);
    }

    size_t size() const { return out_.size(); }
    const std::vector<uint8_t>& data() const { return out_; }
    std::vector<uint8_t> release() { return std::move(out_); }

  private:
    std::vector<uint8_t> out_;
};

}  // namespace netsight
