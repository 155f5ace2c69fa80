#pragma once

#include "game.hpp"
#include "system.hpp"
#include "tm.hpp"
#include "transducer.hpp"

#include <utility>

namespace wne {

// Encodes a two-player reachability game as a two-agent system whose
// empty-coalition equilibria exist exactly when the avoider wins the game.
// Both agents name a target state each round; only the owner's choice is
// read, and naming a non-edge sends the play to the mover's penalty sink.
// The avoider's sink satisfies the reacher's goal, the reacher's sink is
// dead. Requires at least two game states so each action set has two
// actions.
explicit_system game_to_system(const reachability_game& g);

// Encodes alternating space-bounded acceptance as a two-agent circuit
// system: the state holds a machine snapshot plus accept/reject sink flags,
// and the transition circuit applies whichever agent's announced head move
// is legal for the current snapshot. Agent 0 (existential) is penalized
// into the rejecting sink for illegal moves, agent 1 (universal) into the
// accepting one. No empty-coalition equilibrium exists iff the machine
// accepts.
circuit_system atm_to_circuit_system(const alt_tm& m, uint32_t n);

struct turnbased_gadget {
    explicit_system sys;
    explicit_profile profile;
};

// Encodes deterministic space-bounded acceptance as an n-agent turn-based
// system plus a profile that simulates the machine: agent i tracks the
// cells around position i and announces the machine's move whenever the
// head sits on its cell. Every agent's goal is the shared accept state, so
// the profile is an all-agents equilibrium iff the machine accepts.
turnbased_gadget dtm_to_turnbased(const det_tm& m, uint32_t n);

struct one_agent_gadget {
    circuit_system sys;
    circuit_profile profile;
};

// Single-agent circuit variant of the same idea: system states are machine
// snapshots plus an error bit, the lone strategy mirrors the system state
// and announces the move chosen by the transition function, and the goal
// recognizes snapshots whose head state is accepting.
one_agent_gadget dtm_to_one_agent_circuit(const det_tm& m, uint32_t n);

} // namespace wne
