#pragma once

#include "util.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace wne {

enum class tm_dir : uint8_t { left, right };

struct dtm_rule {
    uint32_t state = 0;
    uint32_t symbol = 0;
    uint32_t next_state = 0;
    uint32_t write = 0;
    tm_dir dir = tm_dir::right;
};

// A deterministic machine over a finite alphabet that contains the blank
// symbol. The transition function is total on non-accepting states.
struct det_tm {
    std::vector<std::string> state_names;
    std::vector<std::string> alphabet; // includes the blank
    uint32_t blank = 0;
    uint32_t init = 0;
    std::vector<uint8_t> accepting; // membership per state
    std::vector<dtm_rule> rules;

    [[nodiscard]] std::optional<dtm_rule> rule_for(uint32_t state, uint32_t symbol) const {
        for (const dtm_rule& r : rules)
            if (r.state == state && r.symbol == symbol) return r;
        return std::nullopt;
    }
};

std::vector<issue> validate_dtm(const det_tm& m);

enum class alt_label : uint8_t { accept, reject, exist, univ, det };

struct atm_rule {
    uint32_t state = 0;
    uint32_t symbol = 0;
    uint32_t next_state = 0;
    uint32_t write = 0;
    tm_dir dir = tm_dir::right;
};

// An alternating machine with fan-out at most two per (state, symbol).
struct alt_tm {
    std::vector<std::string> state_names;
    std::vector<std::string> alphabet;
    uint32_t blank = 0;
    uint32_t init = 0;
    std::vector<alt_label> labels; // per state
    std::vector<atm_rule> rules;

    [[nodiscard]] std::vector<atm_rule> rules_for(uint32_t state, uint32_t symbol) const {
        std::vector<atm_rule> out;
        for (const atm_rule& r : rules)
            if (r.state == state && r.symbol == symbol) out.push_back(r);
        return out;
    }
};

std::vector<issue> validate_atm(const alt_tm& m);

// A complete snapshot of a space-bounded run: per cell the tape symbol and
// whether the head sits there (and in which control state). Exactly one
// cell carries the head.
struct machine_id {
    struct cell {
        uint32_t symbol = 0;
        int64_t head_state = -1; // -1 = head not here
    };
    std::vector<cell> cells;

    [[nodiscard]] size_t head_position() const {
        for (size_t i = 0; i < cells.size(); ++i)
            if (cells[i].head_state >= 0) return i;
        throw error("MalformedID: no head");
    }

    friend bool operator==(const machine_id&, const machine_id&) = default;
    friend auto operator<=>(const machine_id& a, const machine_id& b) {
        if (auto c = a.cells.size() <=> b.cells.size(); c != 0) return c;
        for (size_t i = 0; i < a.cells.size(); ++i) {
            if (auto c = a.cells[i].symbol <=> b.cells[i].symbol; c != 0) return c;
            if (auto c = a.cells[i].head_state <=> b.cells[i].head_state; c != 0) return c;
        }
        return std::strong_ordering::equal;
    }
};

machine_id initial_id(uint32_t blank, uint32_t init_state, uint32_t n);

struct tm_accept {};
struct tm_out_of_bounds {};
using tm_step_result = std::variant<machine_id, tm_accept, tm_out_of_bounds>;

// Acceptance is tested before the move, so halting in an accepting state on
// the last in-bounds cell still accepts.
tm_step_result tm_step(const det_tm& m, const machine_id& id);

// Direct simulation from the empty tape with visited-snapshot loop
// detection; false on repetition or when the head leaves the n cells.
bool dtm_accepts(const det_tm& m, uint32_t n);

// Decides alternating acceptance by solving the reachability game over the
// reachable snapshots: the existential player owns or-states, the universal
// player owns and-states, out-of-bounds moves reject.
bool atm_accepts(const alt_tm& m, uint32_t n, uint64_t cap_nodes = default_row_cap);

} // namespace wne
