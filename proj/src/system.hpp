#pragma once

#include "circuit.hpp"
#include "util.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace wne {

// A concurrent multi-agent system with an explicit transition table.
// A decision is one action per agent; decisions are indexed agent-0-major
// over the action declaration order, and that flat index is the canonical
// decision order used for all tie-breaking.
struct explicit_system {
    std::vector<std::string> states;
    uint32_t init = 0;
    std::vector<std::vector<std::string>> actions; // per agent, declaration order
    std::vector<std::vector<uint8_t>> goals;       // per agent, membership over states
    std::vector<int64_t> table;                    // |V|*|D| successor indices, -1 = missing
    std::vector<std::pair<uint32_t, uint64_t>> duplicate_rows;

    [[nodiscard]] size_t agent_count() const { return actions.size(); }
    [[nodiscard]] size_t state_count() const { return states.size(); }

    [[nodiscard]] uint64_t decision_count() const {
        uint64_t d = 1;
        for (const auto& a : actions) d *= a.empty() ? 1 : a.size();
        return d;
    }

    [[nodiscard]] uint64_t decision_index(std::span<const uint32_t> components) const {
        uint64_t d = 0;
        for (size_t i = 0; i < actions.size(); ++i) d = d * actions[i].size() + components[i];
        return d;
    }

    [[nodiscard]] std::vector<uint32_t> decision_at(uint64_t d) const {
        std::vector<uint32_t> comp(actions.size());
        for (size_t i = actions.size(); i-- > 0;) {
            comp[i] = static_cast<uint32_t>(d % actions[i].size());
            d /= actions[i].size();
        }
        return comp;
    }

    // d with its j-th component replaced by action a.
    [[nodiscard]] uint64_t replace_component(uint64_t d, size_t j, uint32_t a) const {
        uint64_t stride = 1;
        for (size_t i = actions.size(); i-- > j + 1;) stride *= actions[i].size();
        const uint64_t old = (d / stride) % actions[j].size();
        return d + (uint64_t{a} - old) * stride;
    }

    [[nodiscard]] uint32_t step(uint32_t v, uint64_t d) const {
        return static_cast<uint32_t>(table[v * decision_count() + d]);
    }

    [[nodiscard]] bool in_goal(size_t agent, uint32_t v) const {
        return goals[agent][v] != 0;
    }

    void set_row(uint32_t v, uint64_t d, uint32_t succ) {
        int64_t& slot = table[v * decision_count() + d];
        if (slot >= 0) duplicate_rows.emplace_back(v, d);
        slot = succ;
    }
};

std::vector<issue> validate_system(const explicit_system& sys);

// States reachable from init under every decision, in BFS discovery order.
std::vector<uint32_t> reachable_states(const explicit_system& sys);

// An ultimately periodic trace prefix.cycle^w, stored as state indices.
struct lasso_trace {
    std::vector<uint32_t> prefix;
    std::vector<uint32_t> cycle;
};

// Agents whose goal is visited by the trace (the first state counts).
// Throws NotATrace when consecutive states are not related by any decision.
agent_set winning_set(const explicit_system& sys, const lasso_trace& t);

// A multi-agent system whose transition function and goals are circuits.
// States are assignments to state_vars bits; bit 0 is most significant.
struct circuit_system {
    uint32_t state_vars = 0;
    bits init;
    std::vector<uint32_t> agent_action_vars;
    std::vector<circuit> goal_circuits; // state_vars -> 1 each
    circuit phi;                        // state_vars + sum(action_vars) -> state_vars

    [[nodiscard]] size_t agent_count() const { return agent_action_vars.size(); }

    [[nodiscard]] uint64_t decision_count() const {
        uint64_t d = 1;
        for (uint32_t av : agent_action_vars) d <<= av;
        return d;
    }

    [[nodiscard]] uint32_t total_action_vars() const {
        uint32_t n = 0;
        for (uint32_t av : agent_action_vars) n += av;
        return n;
    }
};

std::vector<issue> validate_circuit_system(const circuit_system& cs);

// Expands a circuit system into the equivalent explicit one over all
// 2^state_vars states. State and action identifiers are the bit strings.
explicit_system unfold(const circuit_system& cs, uint64_t cap_rows = default_row_cap);

// Like unfold but materializes only the states reachable from the initial
// assignment; used by the circuit-model decision procedures.
explicit_system unfold_reachable(const circuit_system& cs, uint64_t cap_rows = default_row_cap);

} // namespace wne
