#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "spectrex/errors.hpp"
#include "spectrex/graph.hpp"

namespace spectrex {

/// Malformed graph6 text; `offset` is the byte where parsing failed.
struct g6_parse_error : input_error {
    std::size_t offset;
    g6_parse_error(const std::string& what, std::size_t at)
        : input_error(what + " (byte " + std::to_string(at) + ")"), offset(at) {}
};

namespace g6 {

/// Standard graph6: order header, then the upper triangle x(0,1), x(0,2),
/// x(1,2), x(0,3), ... packed into 6-bit groups offset by 63.
template <std::size_t W>
std::string encode(const basic_graph<W>& g) {
    int n = g.order();
    std::string out;
    if (n <= 62) {
        out.push_back(static_cast<char>(n + 63));
    } else {
        // 63 <= n <= 258047: '~' then 18 bits, high group first.
        out.push_back('~');
        out.push_back(static_cast<char>(((n >> 12) & 63) + 63));
        out.push_back(static_cast<char>(((n >> 6) & 63) + 63));
        out.push_back(static_cast<char>((n & 63) + 63));
    }
    int acc = 0, nbits = 0;
    for (int v = 1; v < n; ++v) {
        for (int u = 0; u < v; ++u) {
            acc = (acc << 1) | (g.has_edge(u, v) ? 1 : 0);
            if (++nbits == 6) {
                out.push_back(static_cast<char>(acc + 63));
                acc = 0;
                nbits = 0;
            }
        }
    }
    if (nbits > 0) out.push_back(static_cast<char>((acc << (6 - nbits)) + 63));
    return out;
}

template <std::size_t W = 1>
basic_graph<W> decode(std::string_view text) {
    if (text.empty()) throw g6_parse_error("empty graph6 string", 0);
    auto group = [&](std::size_t at) -> int {
        if (at >= text.size()) throw g6_parse_error("graph6 string truncated", text.size());
        unsigned char c = static_cast<unsigned char>(text[at]);
        if (c < 63 || c > 126) throw g6_parse_error("invalid graph6 byte", at);
        return c - 63;
    };

    std::size_t pos = 0;
    long long n;
    if (text[0] == '~') {
        if (text.size() >= 2 && text[1] == '~')
            throw capability_error("graph6 orders above 258047 are not supported");
        n = (static_cast<long long>(group(1)) << 12) | (group(2) << 6) | group(3);
        pos = 4;
    } else {
        n = group(0);
        pos = 1;
    }
    if (n > basic_graph<W>::max_vertices)
        throw capability_error("graph6 order " + std::to_string(n) + " exceeds capacity " +
                               std::to_string(basic_graph<W>::max_vertices));

    basic_graph<W> g(static_cast<int>(n));
    long long bits_needed = n * (n - 1) / 2;
    int acc = 0, have = 0;
    int u = 0, v = 1;
    for (long long b = 0; b < bits_needed; ++b) {
        if (have == 0) {
            acc = group(pos);
            ++pos;
            have = 6;
        }
        if ((acc >> (have - 1)) & 1) g.set_edge(u, v, true);
        --have;
        if (++u == v) {
            u = 0;
            ++v;
        }
    }
    // Padding bits must be zero and nothing may trail the body.
    if (have > 0 && (acc & ((1 << have) - 1)) != 0)
        throw g6_parse_error("nonzero padding bits", pos - 1);
    if (pos != text.size()) throw g6_parse_error("trailing bytes after graph6 body", pos);
    return g;
}

} // namespace g6
} // namespace spectrex
