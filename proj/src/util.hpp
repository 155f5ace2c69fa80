#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace wne {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed document text; line is 1-based.
struct parse_error : error {
    size_t line;
    parse_error(size_t line_no, const std::string& msg)
        : error("line " + std::to_string(line_no) + ": " + msg), line(line_no) {}
};

struct issue {
    std::string code;
    std::string detail;
};

struct validation_error : error {
    std::vector<issue> issues;
    explicit validation_error(std::vector<issue> found)
        : error(found.empty() ? "invalid" : found.front().code + ": " + found.front().detail),
          issues(std::move(found)) {}
};

struct cap_error : error {
    uint64_t required;
    uint64_t cap;
    cap_error(uint64_t req, uint64_t limit)
        : error("CapExceeded: requires " + std::to_string(req) + " rows, cap is " +
                std::to_string(limit)),
          required(req), cap(limit) {}
};

constexpr uint64_t default_row_cap = uint64_t{1} << 24;

// Agent sets are bitmasks; agent indices stay below 64 everywhere.
using agent_set = uint64_t;

constexpr bool has_agent(agent_set w, size_t i) { return (w >> i) & 1; }
constexpr agent_set with_agent(agent_set w, size_t i) { return w | (agent_set{1} << i); }
constexpr agent_set all_agents(size_t k) {
    return k >= 64 ? ~agent_set{0} : (agent_set{1} << k) - 1;
}

// Bit vectors are MSB-first: element 0 is variable 0, the most significant bit.
using bits = std::vector<uint8_t>;

inline bits bits_from_value(uint64_t value, size_t width) {
    bits out(width, 0);
    for (size_t i = 0; i < width; ++i)
        out[i] = static_cast<uint8_t>((value >> (width - 1 - i)) & 1);
    return out;
}

inline uint64_t value_from_bits(std::span<const uint8_t> b) {
    uint64_t v = 0;
    for (uint8_t bit : b) v = (v << 1) | (bit & 1);
    return v;
}

inline std::string bits_to_string(std::span<const uint8_t> b) {
    std::string s;
    s.reserve(b.size());
    for (uint8_t bit : b) s.push_back(bit ? '1' : '0');
    return s;
}

inline bool checked_mul(uint64_t a, uint64_t b, uint64_t& out) {
    if (a != 0 && b > UINT64_MAX / a) return false;
    out = a * b;
    return true;
}

} // namespace wne
