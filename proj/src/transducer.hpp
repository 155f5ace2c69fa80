#pragma once

#include "system.hpp"

#include <string>
#include <utility>
#include <vector>

namespace wne {

// A Moore machine strategy. The action applied at a system state v is the
// output of the transducer state reached after reading v.
struct explicit_transducer {
    std::vector<std::string> states;
    uint32_t init = 0;
    std::vector<std::string> inputs;  // the system's state identifiers
    std::vector<std::string> actions; // this agent's action identifiers
    std::vector<int64_t> trans;       // |S|*|V| -> S, -1 = missing
    std::vector<int64_t> output;      // |S| -> action, -1 = missing
    std::vector<std::pair<uint32_t, uint32_t>> duplicate_rows;

    [[nodiscard]] uint32_t step(uint32_t s, uint32_t v) const {
        return static_cast<uint32_t>(trans[size_t{s} * inputs.size() + v]);
    }
    [[nodiscard]] uint32_t output_at(uint32_t s) const {
        return static_cast<uint32_t>(output[s]);
    }

    void set_row(uint32_t s, uint32_t v, uint32_t succ) {
        int64_t& slot = trans[size_t{s} * inputs.size() + v];
        if (slot >= 0) duplicate_rows.emplace_back(s, v);
        slot = succ;
    }
};

std::vector<issue> validate_transducer(const explicit_transducer& tr);

// Moore step: advance on v, then report the output of the state reached.
inline std::pair<uint32_t, uint32_t> transducer_step(const explicit_transducer& tr, uint32_t s,
                                                     uint32_t v) {
    const uint32_t next = tr.step(s, v);
    return {next, tr.output_at(next)};
}

struct circuit_transducer {
    uint32_t state_vars = 0;
    bits init;
    circuit omega;  // state_vars + system state_vars -> state_vars
    circuit output; // state_vars -> action_vars
};

// Arities are checked against the paired system and the owning agent.
std::vector<issue> validate_circuit_transducer(const circuit_transducer& ct,
                                               const circuit_system& cs, size_t agent);

explicit_transducer unfold_transducer(const circuit_transducer& ct, const circuit_system& cs,
                                      uint64_t cap_rows = default_row_cap);

struct explicit_profile {
    std::vector<explicit_transducer> strategies;
};

struct circuit_profile {
    std::vector<circuit_transducer> strategies;
};

} // namespace wne
