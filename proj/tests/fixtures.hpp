#pragma once

#include "circuit.hpp"
#include "system.hpp"
#include "transducer.hpp"

#include <initializer_list>
#include <random>
#include <string>
#include <vector>

namespace wne::test {

inline agent_set agents(std::initializer_list<size_t> indices) {
    agent_set w = 0;
    for (size_t i : indices) w = with_agent(w, i);
    return w;
}

// The running two-agent fixture: reaching s1 needs cooperation (a and x),
// s2 is reachable unilaterally under b, both goal states are sinks.
//   tau: (s0,a,x)->s1  (s0,a,y)->s0  (s0,b,x)->s2  (s0,b,y)->s2
//   G_0 = {s1}, G_1 = {s2}
inline explicit_system make_sys1() {
    explicit_system sys;
    sys.states = {"s0", "s1", "s2"};
    sys.init = 0;
    sys.actions = {{"a", "b"}, {"x", "y"}};
    sys.goals = {{0, 1, 0}, {0, 0, 1}};
    sys.table.assign(12, -1);
    const auto row = [&](uint32_t v, uint32_t a0, uint32_t a1, uint32_t succ) {
        sys.set_row(v, sys.decision_index(std::vector<uint32_t>{a0, a1}), succ);
    };
    row(0, 0, 0, 1);
    row(0, 0, 1, 0);
    row(0, 1, 0, 2);
    row(0, 1, 1, 2);
    for (uint32_t a0 = 0; a0 < 2; ++a0)
        for (uint32_t a1 = 0; a1 < 2; ++a1) {
            row(1, a0, a1, 1);
            row(2, a0, a1, 2);
        }
    return sys;
}

inline uint64_t didx(const explicit_system& sys, std::initializer_list<uint32_t> comp) {
    return sys.decision_index(std::vector<uint32_t>(comp));
}

inline explicit_transducer constant_strategy(const explicit_system& sys, size_t agent,
                                             uint32_t action) {
    explicit_transducer tr;
    tr.states = {"t0"};
    tr.init = 0;
    tr.inputs = sys.states;
    tr.actions = sys.actions[agent];
    tr.trans.assign(sys.states.size(), 0);
    tr.output = {action};
    return tr;
}

// P1 plays (a, x) forever, P-empty plays (a, y), P-bx plays (b, x).
inline explicit_profile make_p1(const explicit_system& sys) {
    return {{constant_strategy(sys, 0, 0), constant_strategy(sys, 1, 0)}};
}
inline explicit_profile make_pempty(const explicit_system& sys) {
    return {{constant_strategy(sys, 0, 0), constant_strategy(sys, 1, 1)}};
}
inline explicit_profile make_pbx(const explicit_system& sys) {
    return {{constant_strategy(sys, 0, 1), constant_strategy(sys, 1, 0)}};
}

// SYS1 with states packed into two bits (s0=00, s1=01, s2=10) and one
// action bit per agent (a=0/b=1, x=0/y=1). The unused pattern 11 self-loops.
inline circuit_system make_sys1_circuit() {
    circuit_system cs;
    cs.state_vars = 2;
    cs.init = {0, 0};
    cs.agent_action_vars = {1, 1};

    circuit_builder b(4);
    const ref hi = b.input(0), lo = b.input(1), act0 = b.input(2), act1 = b.input(3);
    const ref is_s0 = b.land(b.lnot(hi), b.lnot(lo));
    const ref is_s1 = b.land(b.lnot(hi), lo);
    const ref is_s2 = b.land(hi, b.lnot(lo));
    const ref is_s3 = b.land(hi, lo);
    const ref next_hi = b.lor(b.lor(b.land(is_s0, act0), is_s2), is_s3);
    const ref next_lo =
        b.lor(b.lor(b.land(is_s0, b.land(b.lnot(act0), b.lnot(act1))), is_s1), is_s3);
    cs.phi = b.build({next_hi, next_lo});

    {
        circuit_builder gb(2);
        cs.goal_circuits.push_back(gb.build({gb.land(gb.lnot(gb.input(0)), gb.input(1))}));
    }
    {
        circuit_builder gb(2);
        cs.goal_circuits.push_back(gb.build({gb.land(gb.input(0), gb.lnot(gb.input(1)))}));
    }
    return cs;
}

inline circuit_transducer constant_circuit_strategy(const circuit_system& cs, size_t agent,
                                                    bool bit) {
    circuit_transducer tr;
    tr.state_vars = 1;
    tr.init = {0};
    circuit_builder ob(1 + cs.state_vars);
    tr.omega = ob.build({ob.constant(false)});
    circuit_builder out(1);
    std::vector<ref> outs(cs.agent_action_vars[agent], out.constant(bit));
    tr.output = out.build(outs);
    return tr;
}

inline circuit_profile make_p1_circuit(const circuit_system& cs) {
    return {{constant_circuit_strategy(cs, 0, false), constant_circuit_strategy(cs, 1, false)}};
}

inline circuit gen_random_circuit(std::mt19937_64& rng, uint32_t inputs, uint32_t outputs,
                                  uint32_t max_gates) {
    std::uniform_int_distribution<uint32_t> pick_gates(1, max_gates);
    std::uniform_int_distribution<int> pick_op(0, 4);
    circuit_builder b(inputs);
    std::vector<ref> pool;
    for (uint32_t i = 0; i < inputs; ++i) pool.push_back(b.input(i));
    const uint32_t gates = pick_gates(rng);
    for (uint32_t g = 0; g < gates; ++g) {
        std::uniform_int_distribution<size_t> pick_ref(0, pool.size() - 1);
        const ref a = pool[pick_ref(rng)];
        const ref c = pool[pick_ref(rng)];
        switch (pick_op(rng)) {
        case 0: pool.push_back(b.constant(false)); break;
        case 1: pool.push_back(b.constant(true)); break;
        case 2: pool.push_back(b.lnot(a)); break;
        case 3: pool.push_back(b.land(a, c)); break;
        default: pool.push_back(b.lor(a, c)); break;
        }
    }
    std::uniform_int_distribution<size_t> pick_ref(0, pool.size() - 1);
    std::vector<ref> outs;
    for (uint32_t i = 0; i < outputs; ++i) outs.push_back(pool[pick_ref(rng)]);
    return b.build(outs);
}

inline circuit_system gen_random_circuit_system(uint64_t seed, uint32_t state_vars,
                                                uint32_t agent_count = 2,
                                                uint32_t action_vars = 1) {
    std::mt19937_64 rng(seed);
    circuit_system cs;
    cs.state_vars = state_vars;
    cs.init.assign(state_vars, 0);
    for (uint32_t i = 0; i < state_vars; ++i) cs.init[i] = rng() & 1;
    cs.agent_action_vars.assign(agent_count, action_vars);
    for (uint32_t i = 0; i < agent_count; ++i)
        cs.goal_circuits.push_back(gen_random_circuit(rng, state_vars, 1, 4));
    cs.phi = gen_random_circuit(rng, state_vars + agent_count * action_vars, state_vars,
                                3 * state_vars + 2);
    return cs;
}

inline circuit_profile gen_random_circuit_profile(const circuit_system& cs, uint64_t seed) {
    std::mt19937_64 rng(seed);
    circuit_profile prof;
    for (size_t i = 0; i < cs.agent_count(); ++i) {
        circuit_transducer tr;
        std::uniform_int_distribution<uint32_t> pick_vars(1, 2);
        tr.state_vars = pick_vars(rng);
        tr.init.assign(tr.state_vars, 0);
        tr.omega = gen_random_circuit(rng, tr.state_vars + cs.state_vars, tr.state_vars, 5);
        tr.output = gen_random_circuit(rng, tr.state_vars, cs.agent_action_vars[i], 4);
        prof.strategies.push_back(std::move(tr));
    }
    return prof;
}

} // namespace wne::test
