#pragma once

#include "product.hpp"

#include <optional>
#include <string>
#include <variant>

namespace wne {

using explicit_trace_report = product_trace<explicit_product_model>;
using circuit_trace_report = product_trace<circuit_product_model>;
using explicit_deviation = deviation_hit<explicit_product_model>;
using circuit_deviation = deviation_hit<circuit_product_model>;

// Follows the unique trace of the profile until a product configuration
// repeats; the winning set covers every visited system state, including the
// initial one.
explicit_trace_report primary_trace(const explicit_system& sys, const explicit_profile& prof);
circuit_trace_report primary_trace(const circuit_system& sys, const circuit_profile& prof);

// One product step: every transducer advances on the current system state,
// the decision collects the outputs of the states just reached, and the
// system moves on that decision.
std::pair<explicit_product_model::config, std::vector<uint32_t>>
product_step(const explicit_system& sys, const explicit_profile& prof,
             const explicit_product_model::config& cfg);

std::optional<explicit_deviation> deviation_reachable(const explicit_system& sys,
                                                      const explicit_profile& prof, size_t j);
std::optional<circuit_deviation> deviation_reachable(const circuit_system& sys,
                                                     const circuit_profile& prof, size_t j);

struct goal_mismatch {
    agent_set expected;
    agent_set observed;
};

struct deviation_witness {
    uint32_t agent = 0;
    std::vector<std::string> actions; // action identifiers, or bit strings
    std::string reached_state;
};

struct verify_verdict {
    bool is_wne = false;
    agent_set observed = 0;
    std::optional<std::variant<goal_mismatch, deviation_witness>> counterexample;
    size_t trace_length = 0; // configurations on the primary trace path
};

// The W-NE check: the primary trace wins exactly W and no agent outside W
// has a profitable unilateral deviation. Goal mismatches are reported before
// deviations; deviating agents are scanned in ascending index order.
verify_verdict verify(const explicit_system& sys, const explicit_profile& prof, agent_set w);
verify_verdict verify(const circuit_system& sys, const circuit_profile& prof, agent_set w);

} // namespace wne
