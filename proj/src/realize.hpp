#pragma once

#include "game.hpp"
#include "system.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace wne {

// Buchi automaton over decision words that accepts exactly the valid
// primary traces for coalition W: every goal of an agent in W is visited,
// no goal of an agent outside W ever is. States are (system state, pending
// agents) trackers, materialized reachable-only from (v0, W).
struct buchi_aw {
    agent_set coalition = 0;
    uint64_t decision_count = 0;
    std::vector<std::pair<uint32_t, agent_set>> states; // discovery order, 0 = initial
    std::vector<int64_t> trans;                         // |states| * |D|, -1 = undefined
    std::vector<uint8_t> accepting;                     // pending empty

    // Set when the initial state already satisfies a goal outside W; the
    // language is empty and no tracker states are materialized.
    bool empty_language = false;

    [[nodiscard]] int64_t next(size_t state, uint64_t d) const {
        return trans[state * decision_count + d];
    }
};

buchi_aw build_AW(const explicit_system& sys, agent_set coalition);

// The turn-based game where the coalition announces full decisions at
// system states and agent j may replace only its own component, trying to
// reach G_j. Nodes: the reachable system states, then one node per
// (state, decision) announcement.
struct deviation_game {
    reachability_game game;
    std::vector<uint32_t> state_nodes;   // reachable system states, discovery order
    std::vector<int64_t> node_of_state;  // system state -> node id, -1 if unreachable
    uint64_t decision_count = 0;

    [[nodiscard]] int64_t pair_node(uint32_t v, uint64_t d) const {
        const int64_t base = node_of_state[v];
        if (base < 0) return -1;
        return static_cast<int64_t>(state_nodes.size()) +
               static_cast<int64_t>(static_cast<uint64_t>(base) * decision_count + d);
    }
};

deviation_game build_deviation_game(const explicit_system& sys, size_t j);

struct deviation_solution {
    size_t agent = 0;
    deviation_game game;
    win_partition partition;

    [[nodiscard]] bool deviator_wins_state(uint32_t v) const {
        const int64_t node = game.node_of_state[v];
        return node >= 0 && partition.winner[static_cast<size_t>(node)] == 0;
    }
    [[nodiscard]] bool deviator_wins_pair(uint32_t v, uint64_t d) const {
        const int64_t node = game.pair_node(v, d);
        return node >= 0 && partition.winner[static_cast<size_t>(node)] == 0;
    }
};

deviation_solution solve_deviation_game(const explicit_system& sys, size_t j);

// Removes tracker states whose system state is winning for some deviator
// outside W, and transitions through dangerous (state, decision) pairs.
buchi_aw prune(const buchi_aw& aw, const std::vector<deviation_solution>& partitions);

// An ultimately periodic decision word, stored as flat decision indices.
struct lasso_word {
    std::vector<uint64_t> prefix;
    std::vector<uint64_t> cycle;
};

// Shortest-prefix, lexicographically-least accepted lasso, or nullopt when
// the language is empty. Total witness length never exceeds the reachable
// state count.
std::optional<lasso_word> nonempty(const buchi_aw& aw);

struct witness_certificate {
    lasso_trace trace;
    agent_set winning;
    // For each agent outside W: the (state, decision) pairs along the lasso,
    // each confirmed to lie in the avoider's region of that deviation game.
    std::vector<std::pair<uint32_t, std::vector<std::pair<uint32_t, uint64_t>>>> receipts;
};

struct realizability_verdict {
    bool yes = false;
    std::optional<lasso_word> witness;
    std::optional<witness_certificate> certificate;
    size_t aw_states = 0;     // reachable tracker states before pruning
    size_t pruned_states = 0; // reachable tracker states after pruning
};

realizability_verdict realize_explicit(const explicit_system& sys, agent_set coalition);

// Same verdict semantics on a circuit system; only the fragment reachable
// from the initial assignment is ever materialized.
realizability_verdict realize_circuit(const circuit_system& cs, agent_set coalition,
                                      uint64_t cap_rows = default_row_cap);

// Replays the word from the initial state and re-derives both W-NE
// conditions with fresh game solves: the induced trace wins exactly W, and
// no visited (state, decision) pair is winning for a deviator outside W.
bool certify_witness(const explicit_system& sys, agent_set coalition, const lasso_word& w);

// The trace induced by an accepted lasso word. Throws DecodeError when the
// word is not executable from the initial state or does not close a cycle.
lasso_trace induced_trace(const explicit_system& sys, const lasso_word& w);

} // namespace wne
