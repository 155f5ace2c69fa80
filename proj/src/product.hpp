#pragma once

#include "transducer.hpp"

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace wne {

// Shared machinery for the system x profile product: the primary trace is
// followed with a visited map until a configuration repeats, and deviation
// queries run a breadth-first search where one agent's action component is
// free. Both the explicit and the circuit representation plug in as models;
// a config is the system state followed by every transducer state.

template <class Model>
struct product_trace {
    std::vector<typename Model::config> path; // up to and including the first repeat
    size_t cycle_start = 0;
    std::vector<typename Model::decision> decisions; // one per step taken
    agent_set winning = 0;
};

template <class Model>
product_trace<Model> run_primary_trace(const Model& m) {
    product_trace<Model> report;
    std::map<typename Model::config, size_t> seen;
    typename Model::config cfg = m.initial();
    while (true) {
        auto [it, fresh] = seen.emplace(cfg, report.path.size());
        report.path.push_back(cfg);
        for (size_t i = 0; i < m.agent_count(); ++i)
            if (m.goal(cfg, i)) report.winning = with_agent(report.winning, i);
        if (!fresh) {
            report.cycle_start = it->second;
            return report;
        }
        auto [next, d] = m.step(cfg);
        report.decisions.push_back(std::move(d));
        cfg = std::move(next);
    }
}

template <class Model>
struct deviation_hit {
    std::vector<uint32_t> actions; // the free agent's choices, in step order
    typename Model::config reached;
};

// Shortest profitable deviation for agent j, ties broken by canonical
// action order; the initial configuration counts as visited.
template <class Model>
std::optional<deviation_hit<Model>> search_deviation(const Model& m, size_t j) {
    struct entry {
        typename Model::config cfg;
        int64_t parent;
        uint32_t action;
    };
    std::vector<entry> nodes;
    std::map<typename Model::config, size_t> seen;

    auto witness = [&](size_t at) {
        deviation_hit<Model> hit;
        hit.reached = nodes[at].cfg;
        for (int64_t i = static_cast<int64_t>(at); nodes[i].parent >= 0; i = nodes[i].parent)
            hit.actions.push_back(nodes[i].action);
        std::reverse(hit.actions.begin(), hit.actions.end());
        return hit;
    };

    nodes.push_back({m.initial(), -1, 0});
    seen.emplace(nodes[0].cfg, 0);
    if (m.goal(nodes[0].cfg, j)) return witness(0);

    for (size_t head = 0; head < nodes.size(); ++head) {
        const size_t fan = m.free_action_count(j);
        for (uint32_t a = 0; a < fan; ++a) {
            typename Model::config next = m.step_deviant(nodes[head].cfg, j, a);
            auto [it, fresh] = seen.emplace(next, nodes.size());
            if (!fresh) continue;
            nodes.push_back({std::move(next), static_cast<int64_t>(head), a});
            if (m.goal(nodes.back().cfg, j)) return witness(nodes.size() - 1);
        }
    }
    return std::nullopt;
}

// Explicit representation: a config is [system state, transducer states...].
struct explicit_product_model {
    const explicit_system* sys;
    const explicit_profile* prof;

    using config = std::vector<uint32_t>;
    using decision = std::vector<uint32_t>;

    [[nodiscard]] size_t agent_count() const { return sys->agent_count(); }

    [[nodiscard]] config initial() const {
        config c{sys->init};
        for (const explicit_transducer& tr : prof->strategies) c.push_back(tr.init);
        return c;
    }

    [[nodiscard]] std::pair<config, decision> step(const config& c) const {
        config next(c.size());
        decision d(agent_count());
        for (size_t i = 0; i < agent_count(); ++i) {
            const auto [s, a] = transducer_step(prof->strategies[i], c[i + 1], c[0]);
            next[i + 1] = s;
            d[i] = a;
        }
        next[0] = sys->step(c[0], sys->decision_index(d));
        return {std::move(next), std::move(d)};
    }

    [[nodiscard]] size_t free_action_count(size_t j) const { return sys->actions[j].size(); }

    [[nodiscard]] config step_deviant(const config& c, size_t j, uint32_t a) const {
        config next(c.size());
        decision d(agent_count());
        for (size_t i = 0; i < agent_count(); ++i) {
            const auto [s, out] = transducer_step(prof->strategies[i], c[i + 1], c[0]);
            next[i + 1] = s;
            d[i] = out;
        }
        d[j] = a;
        next[0] = sys->step(c[0], sys->decision_index(d));
        return next;
    }

    [[nodiscard]] bool goal(const config& c, size_t agent) const {
        return sys->in_goal(agent, c[0]);
    }
};

// Circuit representation: a config concatenates the system state bits and
// every transducer's state bits; free actions range over all bit patterns.
struct circuit_product_model {
    const circuit_system* sys;
    const circuit_profile* prof;

    using config = std::vector<uint8_t>;
    using decision = std::vector<uint8_t>; // concatenated action bits

    [[nodiscard]] size_t agent_count() const { return sys->agent_count(); }

    [[nodiscard]] config initial() const {
        config c = sys->init;
        for (const circuit_transducer& tr : prof->strategies)
            c.insert(c.end(), tr.init.begin(), tr.init.end());
        return c;
    }

    [[nodiscard]] std::pair<config, decision> step(const config& c) const {
        return step_with(c, nullptr, 0, 0);
    }

    [[nodiscard]] size_t free_action_count(size_t j) const {
        return size_t{1} << sys->agent_action_vars[j];
    }

    [[nodiscard]] config step_deviant(const config& c, size_t j, uint32_t a) const {
        const bits pattern = bits_from_value(a, sys->agent_action_vars[j]);
        return step_with(c, &pattern, j, 1).first;
    }

    [[nodiscard]] bool goal(const config& c, size_t agent) const {
        const bits state(c.begin(), c.begin() + sys->state_vars);
        return eval(sys->goal_circuits[agent], state)[0] != 0;
    }

private:
    std::pair<config, decision> step_with(const config& c, const bits* override_bits,
                                          size_t override_agent, int use_override) const {
        const std::span<const uint8_t> state{c.data(), sys->state_vars};
        config next(c.size());
        decision d;
        size_t offset = sys->state_vars;
        bits phi_in(state.begin(), state.end());
        for (size_t i = 0; i < agent_count(); ++i) {
            const circuit_transducer& tr = prof->strategies[i];
            bits omega_in(c.begin() + offset, c.begin() + offset + tr.state_vars);
            omega_in.insert(omega_in.end(), state.begin(), state.end());
            const bits s_next = eval(tr.omega, omega_in);
            std::copy(s_next.begin(), s_next.end(), next.begin() + offset);
            bits action = eval(tr.output, s_next);
            if (use_override && i == override_agent) action = *override_bits;
            d.insert(d.end(), action.begin(), action.end());
            phi_in.insert(phi_in.end(), action.begin(), action.end());
            offset += tr.state_vars;
        }
        const bits v_next = eval(sys->phi, phi_in);
        std::copy(v_next.begin(), v_next.end(), next.begin());
        return {std::move(next), std::move(d)};
    }
};

} // namespace wne
