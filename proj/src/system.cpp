#include "system.hpp"

#include <algorithm>
#include <map>

namespace wne {

std::vector<issue> validate_system(const explicit_system& sys) {
    std::vector<issue> out;
    if (sys.states.empty()) {
        out.push_back({"UnknownState", "empty state set"});
        return out;
    }
    if (sys.init >= sys.states.size())
        out.push_back({"UnknownState", "init index " + std::to_string(sys.init)});
    if (sys.actions.size() != sys.goals.size())
        out.push_back({"UnknownState", "agent count mismatch between actions and goals"});
    for (size_t i = 0; i < sys.actions.size(); ++i) {
        if (sys.actions[i].size() < 2)
            out.push_back({"SingletonActionSet", "agent " + std::to_string(i)});
    }
    for (size_t i = 0; i < sys.goals.size(); ++i) {
        if (sys.goals[i].size() != sys.states.size())
            out.push_back({"UnknownState", "goal " + std::to_string(i) + " size mismatch"});
    }
    const uint64_t dcount = sys.decision_count();
    uint64_t expected = 0;
    if (!checked_mul(sys.states.size(), dcount, expected) || sys.table.size() != expected) {
        out.push_back({"MissingTransitionRow",
                       "table has " + std::to_string(sys.table.size()) + " slots, expected " +
                           std::to_string(expected)});
        return out;
    }
    for (uint32_t v = 0; v < sys.states.size(); ++v) {
        for (uint64_t d = 0; d < dcount; ++d) {
            const int64_t succ = sys.table[v * dcount + d];
            if (succ < 0) {
                out.push_back({"MissingTransitionRow",
                               "state " + sys.states[v] + " decision " + std::to_string(d)});
            } else if (static_cast<uint64_t>(succ) >= sys.states.size()) {
                out.push_back({"UnknownState", "successor of " + sys.states[v]});
            }
        }
    }
    for (const auto& [v, d] : sys.duplicate_rows) {
        out.push_back({"DuplicateRow",
                       "state " + sys.states[v] + " decision " + std::to_string(d)});
    }
    return out;
}

std::vector<uint32_t> reachable_states(const explicit_system& sys) {
    const uint64_t dcount = sys.decision_count();
    std::vector<uint8_t> seen(sys.states.size(), 0);
    std::vector<uint32_t> order;
    order.push_back(sys.init);
    seen[sys.init] = 1;
    for (size_t head = 0; head < order.size(); ++head) {
        const uint32_t v = order[head];
        for (uint64_t d = 0; d < dcount; ++d) {
            const uint32_t w = sys.step(v, d);
            if (!seen[w]) {
                seen[w] = 1;
                order.push_back(w);
            }
        }
    }
    return order;
}

namespace {

bool adjacent(const explicit_system& sys, uint32_t a, uint32_t b) {
    const uint64_t dcount = sys.decision_count();
    for (uint64_t d = 0; d < dcount; ++d)
        if (sys.step(a, d) == b) return true;
    return false;
}

} // namespace

agent_set winning_set(const explicit_system& sys, const lasso_trace& t) {
    if (t.cycle.empty()) throw error("NotATrace: empty cycle");
    const uint32_t first = t.prefix.empty() ? t.cycle.front() : t.prefix.front();
    if (first != sys.init) throw error("NotATrace: does not start at the initial state");
    std::vector<uint32_t> seq = t.prefix;
    seq.insert(seq.end(), t.cycle.begin(), t.cycle.end());
    for (size_t i = 0; i + 1 < seq.size(); ++i) {
        if (!adjacent(sys, seq[i], seq[i + 1]))
            throw error("NotATrace: no decision relates " + sys.states[seq[i]] + " and " +
                        sys.states[seq[i + 1]]);
    }
    if (!adjacent(sys, t.cycle.back(), t.cycle.front()))
        throw error("NotATrace: cycle does not close");
    agent_set w = 0;
    for (uint32_t v : seq) {
        for (size_t i = 0; i < sys.goals.size(); ++i)
            if (sys.in_goal(i, v)) w = with_agent(w, i);
    }
    return w;
}

std::vector<issue> validate_circuit_system(const circuit_system& cs) {
    std::vector<issue> out;
    if (cs.state_vars == 0) out.push_back({"ArityMismatch", "no state variables"});
    if (cs.init.size() != cs.state_vars)
        out.push_back({"ArityMismatch", "init width != state variable count"});
    if (cs.goal_circuits.size() != cs.agent_action_vars.size())
        out.push_back({"ArityMismatch", "one goal circuit per agent required"});
    for (size_t i = 0; i < cs.agent_action_vars.size(); ++i) {
        if (cs.agent_action_vars[i] == 0)
            out.push_back({"SingletonActionSet", "agent " + std::to_string(i)});
    }
    for (size_t i = 0; i < cs.goal_circuits.size(); ++i) {
        const circuit& g = cs.goal_circuits[i];
        if (g.input_arity != cs.state_vars || g.output_arity() != 1)
            out.push_back({"ArityMismatch", "goal circuit " + std::to_string(i)});
        for (issue& is : validate_circuit(g)) out.push_back(std::move(is));
    }
    if (cs.phi.input_arity != cs.state_vars + cs.total_action_vars() ||
        cs.phi.output_arity() != cs.state_vars)
        out.push_back({"ArityMismatch", "phi arity"});
    for (issue& is : validate_circuit(cs.phi)) out.push_back(std::move(is));
    return out;
}

namespace {

uint64_t unfolded_rows_or_throw(const circuit_system& cs, uint64_t cap_rows) {
    if (cs.state_vars + cs.total_action_vars() >= 63) throw cap_error(UINT64_MAX, cap_rows);
    const uint64_t rows = uint64_t{1} << (cs.state_vars + cs.total_action_vars());
    if (rows > cap_rows) throw cap_error(rows, cap_rows);
    return rows;
}

std::vector<std::vector<std::string>> unfolded_actions(const circuit_system& cs) {
    std::vector<std::vector<std::string>> actions(cs.agent_count());
    for (size_t i = 0; i < cs.agent_count(); ++i) {
        const uint64_t count = uint64_t{1} << cs.agent_action_vars[i];
        for (uint64_t a = 0; a < count; ++a)
            actions[i].push_back(bits_to_string(bits_from_value(a, cs.agent_action_vars[i])));
    }
    return actions;
}

// phi input layout: state bits, then each agent's action bits in agent order.
bits phi_input(const circuit_system& cs, std::span<const uint8_t> state, uint64_t decision) {
    bits in(state.begin(), state.end());
    in.reserve(cs.phi.input_arity);
    uint64_t rest = decision;
    std::vector<uint64_t> parts(cs.agent_count());
    for (size_t i = cs.agent_count(); i-- > 0;) {
        const uint64_t count = uint64_t{1} << cs.agent_action_vars[i];
        parts[i] = rest % count;
        rest /= count;
    }
    for (size_t i = 0; i < cs.agent_count(); ++i) {
        const bits ab = bits_from_value(parts[i], cs.agent_action_vars[i]);
        in.insert(in.end(), ab.begin(), ab.end());
    }
    return in;
}

} // namespace

explicit_system unfold(const circuit_system& cs, uint64_t cap_rows) {
    unfolded_rows_or_throw(cs, cap_rows);
    const uint64_t nstates = uint64_t{1} << cs.state_vars;
    const uint64_t dcount = cs.decision_count();

    explicit_system sys;
    sys.actions = unfolded_actions(cs);
    sys.goals.assign(cs.agent_count(), std::vector<uint8_t>(nstates, 0));
    sys.states.reserve(nstates);
    for (uint64_t v = 0; v < nstates; ++v) {
        const bits sb = bits_from_value(v, cs.state_vars);
        sys.states.push_back(bits_to_string(sb));
        for (size_t i = 0; i < cs.agent_count(); ++i)
            sys.goals[i][v] = eval(cs.goal_circuits[i], sb)[0];
    }
    sys.init = static_cast<uint32_t>(value_from_bits(cs.init));
    sys.table.assign(nstates * dcount, -1);
    for (uint64_t v = 0; v < nstates; ++v) {
        const bits sb = bits_from_value(v, cs.state_vars);
        for (uint64_t d = 0; d < dcount; ++d) {
            const bits succ = eval(cs.phi, phi_input(cs, sb, d));
            sys.table[v * dcount + d] = static_cast<int64_t>(value_from_bits(succ));
        }
    }
    return sys;
}

explicit_system unfold_reachable(const circuit_system& cs, uint64_t cap_rows) {
    const uint64_t dcount = cs.decision_count();

    std::map<bits, uint32_t> index;
    std::vector<bits> order;
    std::vector<std::vector<uint32_t>> succs;
    order.push_back(cs.init);
    index.emplace(cs.init, 0);

    for (size_t head = 0; head < order.size(); ++head) {
        uint64_t rows = 0;
        if (!checked_mul(order.size(), dcount, rows) || rows > cap_rows)
            throw cap_error(rows, cap_rows);
        const bits state = order[head];
        std::vector<uint32_t> row(dcount);
        for (uint64_t d = 0; d < dcount; ++d) {
            bits succ = eval(cs.phi, phi_input(cs, state, d));
            auto [it, fresh] = index.emplace(succ, static_cast<uint32_t>(order.size()));
            if (fresh) order.push_back(std::move(succ));
            row[d] = it->second;
        }
        succs.push_back(std::move(row));
    }
    uint64_t rows = 0;
    if (!checked_mul(order.size(), dcount, rows) || rows > cap_rows)
        throw cap_error(rows, cap_rows);

    explicit_system sys;
    sys.actions = unfolded_actions(cs);
    sys.init = 0;
    sys.goals.assign(cs.agent_count(), std::vector<uint8_t>(order.size(), 0));
    for (uint32_t v = 0; v < order.size(); ++v) {
        sys.states.push_back(bits_to_string(order[v]));
        for (size_t i = 0; i < cs.agent_count(); ++i)
            sys.goals[i][v] = eval(cs.goal_circuits[i], order[v])[0];
    }
    sys.table.assign(order.size() * dcount, -1);
    for (uint32_t v = 0; v < order.size(); ++v)
        for (uint64_t d = 0; d < dcount; ++d)
            sys.table[v * dcount + d] = succs[v][d];
    return sys;
}

} // namespace wne
