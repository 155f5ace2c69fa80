#pragma once

#include "realize.hpp"
#include "transducer.hpp"

#include <cstdint>
#include <string>

namespace wne {

// Brute-force cross-checks for the main engines. These share only the data
// types with the engines: the tracker graph and the deviation games are
// fully materialized over the whole state space, the games are solved by
// naive fixpoint iteration, and emptiness is decided through strongly
// connected components instead of the on-the-fly lasso search.

struct random_system_params {
    uint32_t state_count = 4;  // at most 6
    uint32_t agent_count = 2;  // at most 3
    uint32_t actions_per_agent = 2;
    double goal_density = 0.25;
    uint64_t seed = 0;
};

explicit_system gen_random_explicit(const random_system_params& p);

reachability_game gen_random_game(uint32_t max_states, uint64_t seed);

explicit_profile gen_random_profile(const explicit_system& sys, uint32_t max_trans_states,
                                    uint64_t seed);

bool brute_realize(const explicit_system& sys, agent_set coalition,
                   uint64_t cap = default_row_cap);

bool brute_deviation(const explicit_system& sys, const explicit_profile& prof, size_t j,
                     uint64_t cap = default_row_cap);

struct suite_report {
    uint64_t seed = 0;
    uint32_t count = 0;
    uint64_t realize_checks = 0;
    uint64_t certificate_checks = 0;
    uint64_t deviation_checks = 0;
    uint64_t mismatches = 0;
    std::string first_mismatch; // empty when everything agreed

    [[nodiscard]] bool passed() const { return mismatches == 0; }
};

// Draws `count` random systems and compares realize_explicit against
// brute_realize on every coalition, certifies every YES witness, and
// compares deviation_reachable against brute_deviation on random profiles.
suite_report consistency_suite(uint64_t seed, uint32_t count);

} // namespace wne
