#pragma once

#include "util.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace wne {

// A turn-based two-player game: Agent 0 (the reacher) tries to visit the
// goal set, Agent 1 (the avoider) tries to keep the play out of it forever.
// State indices follow declaration order, which is the canonical order used
// for strategy tie-breaking.
struct reachability_game {
    std::vector<std::string> state_names;
    std::vector<uint8_t> owner; // 0 or 1 per state
    std::optional<uint32_t> init;
    std::vector<std::vector<uint32_t>> succ; // sorted adjacency per state
    std::vector<uint8_t> goal;               // membership per state

    [[nodiscard]] size_t state_count() const { return owner.size(); }
};

std::vector<issue> validate_game(const reachability_game& g);

// Win0/Win1 partition plus memoryless witness strategies. rank[v] is the
// attractor layer for v in win0 (goal states have rank 0); strat0 moves
// strictly down in rank, strat1 stays inside win1.
struct win_partition {
    std::vector<uint8_t> winner;
    std::vector<uint32_t> rank;
    std::vector<int64_t> strat0;
    std::vector<int64_t> strat1;
};

win_partition solve(const reachability_game& g);

// 0 iff the initial state is in Win0. Throws MissingInit without one.
int who_wins(const reachability_game& g);

// Replays the winner's strategy from init against the supplied opponent
// choices (canonically least successor once they run out). Stops when the
// goal is reached or after |V|+1 states.
std::vector<uint32_t> play(const reachability_game& g, const win_partition& wp, uint32_t init,
                           std::span<const uint32_t> opponent_moves);

} // namespace wne
