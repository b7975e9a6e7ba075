// Copyright (c) 2026 Netsight Contributors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <array>
#include <cctype>
#include <string_view>

#include "netsight/decode.hpp"

namespace netsight {

namespace {

constexpr size_t kHeaderCap = 8192;

constexpr std::array<std::string_view, 6> kMethods = {"GET",    "POST",   "PUT",
                                                      "HEAD",   "DELETE", "OPTIONS"};

bool iequals(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (std::tolower(static_cast<unsigned char>(a[i])) !=
            std::tolower(static_cast<unsigned char>(b[i])))
            return false;
    return true;
}

std::string_view trim_view(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

}  // namespace

// Request-head parser for the first data segment of a cleartext connection.
// Responses and continuation segments are never fed here, so anything that
// does not open with a known method is NotRequest.
Parsed<HttpEvent> decode_http(std::span<const uint8_t> payload, const EventHeader& hdr) {
    std::string_view text(reinterpret_cast<const char*>(payload.data()),
                          std::min(payload.size(), kHeaderCap));

    bool is_request = false;
    for (auto m : kMethods) {
        if (text.size() > m.size() && text.substr(0, m.size()) == m &&
            text[m.size()] == ' ') {
            is_request = true;
            break;
        }
    }
    if (!is_request) return skipped<HttpEvent>(SkipReason::HttpNotRequest);

    size_t line_end = text.find("\r\n");
    if (line_end == std::string_view::npos)
        return skipped<HttpEvent>(SkipReason::HttpNotRequest);
    std::string_view request_line = text.substr(0, line_end);

    size_t sp1 = request_line.find(' ');
    size_t sp2 = request_line.find(' ', sp1 + 1);
    if (sp2 == std::string_view::npos)
        return skipped<HttpEvent>(SkipReason::HttpNotRequest);
    std::string_view uri = request_line.substr(sp1 + 1, sp2 - sp1 - 1);
    std::string_view version = request_line.substr(sp2 + 1);
    if (uri.empty() || version.substr(0, 5) != "HTTP/")
        return skipped<HttpEvent>(SkipReason::HttpNotRequest);

    HttpEvent ev;
    ev.hdr = hdr;
    ev.method = std::string(request_line.substr(0, sp1));
    ev.uri = std::string(uri);

    // Header lines until the blank line, the cap, or the end of the segment --
    // whichever comes first. A trailing partial line is ignored.
    size_t pos = line_end + 2;
    while (pos < text.size()) {
        size_t eol = text.find("\r\n", pos);
        if (eol == std::string_view::npos) break;
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 2;
        if (line.empty()) break;
        size_t colon = line.find(':');
        if (colon == std::string_view::npos) continue;
        std::string_view name = trim_view(line.substr(0, colon));
        std::string_view value = trim_view(line.substr(colon + 1));
        if (iequals(name, "host"))
            ev.host = std::string(value);
        else if (iequals(name, "user-agent"))
            ev.user_agent = std::string(value);
    }
    return parsed(std::move(ev));
}

}  // namespace netsight
