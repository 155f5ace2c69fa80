#include "oracle.hpp"

#include "verify.hpp"

#include <algorithm>
#include <random>

namespace wne {

explicit_system gen_random_explicit(const random_system_params& p) {
    if (p.state_count < 1 || p.state_count > 6 || p.agent_count < 1 || p.agent_count > 3 ||
        p.actions_per_agent != 2)
        throw error("random system parameters out of bounds");
    std::mt19937_64 rng(p.seed);
    std::uniform_int_distribution<uint32_t> pick_state(0, p.state_count - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    explicit_system sys;
    for (uint32_t v = 0; v < p.state_count; ++v) sys.states.push_back("s" + std::to_string(v));
    sys.init = 0;
    for (uint32_t i = 0; i < p.agent_count; ++i) sys.actions.push_back({"a0", "a1"});
    sys.goals.assign(p.agent_count, std::vector<uint8_t>(p.state_count, 0));
    for (uint32_t i = 0; i < p.agent_count; ++i)
        for (uint32_t v = 0; v < p.state_count; ++v)
            sys.goals[i][v] = unit(rng) < p.goal_density ? 1 : 0;
    const uint64_t dcount = sys.decision_count();
    sys.table.assign(p.state_count * dcount, -1);
    for (uint32_t v = 0; v < p.state_count; ++v)
        for (uint64_t d = 0; d < dcount; ++d) sys.table[v * dcount + d] = pick_state(rng);
    return sys;
}

reachability_game gen_random_game(uint32_t max_states, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<uint32_t> pick_count(2, std::max(2u, max_states));
    const uint32_t n = pick_count(rng);
    std::uniform_int_distribution<uint32_t> pick_state(0, n - 1);
    std::uniform_int_distribution<uint32_t> pick_deg(1, 3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    reachability_game g;
    for (uint32_t v = 0; v < n; ++v) g.state_names.push_back("q" + std::to_string(v));
    g.owner.resize(n);
    g.goal.resize(n);
    g.succ.resize(n);
    for (uint32_t v = 0; v < n; ++v) {
        g.owner[v] = unit(rng) < 0.5 ? 0 : 1;
        g.goal[v] = unit(rng) < 0.3 ? 1 : 0;
        const uint32_t deg = pick_deg(rng);
        for (uint32_t e = 0; e < deg; ++e) g.succ[v].push_back(pick_state(rng));
        std::sort(g.succ[v].begin(), g.succ[v].end());
        g.succ[v].erase(std::unique(g.succ[v].begin(), g.succ[v].end()), g.succ[v].end());
    }
    g.init = pick_state(rng);
    return g;
}

explicit_profile gen_random_profile(const explicit_system& sys, uint32_t max_trans_states,
                                    uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<uint32_t> pick_count(1, std::max(1u, max_trans_states));
    explicit_profile prof;
    for (size_t i = 0; i < sys.agent_count(); ++i) {
        explicit_transducer tr;
        const uint32_t ns = pick_count(rng);
        for (uint32_t s = 0; s < ns; ++s) tr.states.push_back("t" + std::to_string(s));
        tr.init = 0;
        tr.inputs = sys.states;
        tr.actions = sys.actions[i];
        std::uniform_int_distribution<uint32_t> pick_state(0, ns - 1);
        std::uniform_int_distribution<uint32_t> pick_action(
            0, static_cast<uint32_t>(sys.actions[i].size() - 1));
        tr.trans.assign(size_t{ns} * sys.state_count(), -1);
        for (uint32_t s = 0; s < ns; ++s)
            for (uint32_t v = 0; v < sys.state_count(); ++v)
                tr.trans[size_t{s} * sys.state_count() + v] = pick_state(rng);
        tr.output.assign(ns, -1);
        for (uint32_t s = 0; s < ns; ++s) tr.output[s] = pick_action(rng);
        prof.strategies.push_back(std::move(tr));
    }
    return prof;
}

namespace {

// Naive backward fixpoint over the complete deviation game of agent j:
// a (state, decision) slot is winning for the deviator when some component
// replacement reaches a winning state, a state is winning when every
// announcement is.
struct brute_danger {
    std::vector<uint8_t> state_win; // per system state
    std::vector<uint8_t> pair_win;  // per state * decision
};

brute_danger brute_solve_deviation(const explicit_system& sys, size_t j) {
    const uint64_t dcount = sys.decision_count();
    const size_t n = sys.state_count();
    brute_danger dz;
    dz.state_win.assign(n, 0);
    dz.pair_win.assign(n * dcount, 0);
    for (uint32_t v = 0; v < n; ++v) dz.state_win[v] = sys.in_goal(j, v);

    const size_t na = sys.actions[j].size();
    bool changed = true;
    while (changed) {
        changed = false;
        for (uint32_t v = 0; v < n; ++v) {
            for (uint64_t d = 0; d < dcount; ++d) {
                if (dz.pair_win[v * dcount + d]) continue;
                for (uint32_t a = 0; a < na; ++a) {
                    if (dz.state_win[sys.step(v, sys.replace_component(d, j, a))]) {
                        dz.pair_win[v * dcount + d] = 1;
                        changed = true;
                        break;
                    }
                }
            }
            if (dz.state_win[v]) continue;
            bool all = true;
            for (uint64_t d = 0; d < dcount && all; ++d)
                if (!dz.pair_win[v * dcount + d]) all = false;
            if (all) {
                dz.state_win[v] = 1;
                changed = true;
            }
        }
    }
    return dz;
}

// Tarjan over the materialized tracker graph, looking for a reachable
// accepting node inside a cycle.
struct scc_search {
    const std::vector<std::vector<uint32_t>>& succ;
    std::vector<int64_t> index, low;
    std::vector<uint8_t> on_stack;
    std::vector<uint32_t> stack;
    std::vector<int64_t> comp;
    int64_t next_index = 0;
    int64_t comp_count = 0;

    explicit scc_search(const std::vector<std::vector<uint32_t>>& s)
        : succ(s), index(s.size(), -1), low(s.size(), 0), on_stack(s.size(), 0),
          comp(s.size(), -1) {}

    void run(uint32_t root) {
        // Iterative Tarjan; frames hold the next successor position.
        std::vector<std::pair<uint32_t, size_t>> frames{{root, 0}};
        if (index[root] >= 0) return;
        index[root] = low[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!frames.empty()) {
            auto& [v, pos] = frames.back();
            if (pos < succ[v].size()) {
                const uint32_t w = succ[v][pos++];
                if (index[w] < 0) {
                    index[w] = low[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    frames.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
            } else {
                if (low[v] == index[v]) {
                    while (true) {
                        const uint32_t w = stack.back();
                        stack.pop_back();
                        on_stack[w] = 0;
                        comp[w] = comp_count;
                        if (w == v) break;
                    }
                    ++comp_count;
                }
                const uint32_t done = v;
                frames.pop_back();
                if (!frames.empty())
                    low[frames.back().first] = std::min(low[frames.back().first], low[done]);
            }
        }
    }
};

} // namespace

bool brute_realize(const explicit_system& sys, agent_set coalition, uint64_t cap) {
    for (size_t j = 0; j < sys.agent_count(); ++j)
        if (!has_agent(coalition, j) && sys.in_goal(j, sys.init)) return false;

    std::vector<brute_danger> danger(sys.agent_count());
    for (size_t j = 0; j < sys.agent_count(); ++j)
        if (!has_agent(coalition, j)) danger[j] = brute_solve_deviation(sys, j);

    auto state_dangerous = [&](uint32_t v) {
        for (size_t j = 0; j < sys.agent_count(); ++j)
            if (!has_agent(coalition, j) && danger[j].state_win[v]) return true;
        return false;
    };
    const uint64_t dcount = sys.decision_count();
    auto pair_dangerous = [&](uint32_t v, uint64_t d) {
        for (size_t j = 0; j < sys.agent_count(); ++j)
            if (!has_agent(coalition, j) && danger[j].pair_win[v * dcount + d]) return true;
        return false;
    };

    // Tracker nodes over the full V x 2^W product.
    std::vector<size_t> coalition_members;
    for (size_t i = 0; i < sys.agent_count(); ++i)
        if (has_agent(coalition, i)) coalition_members.push_back(i);
    const size_t masks = size_t{1} << coalition_members.size();
    const size_t total = sys.state_count() * masks;
    uint64_t need = 0;
    if (!checked_mul(total, dcount, need) || need > cap) throw cap_error(need, cap);

    auto compress = [&](agent_set pending) {
        size_t m = 0;
        for (size_t b = 0; b < coalition_members.size(); ++b)
            if (has_agent(pending, coalition_members[b])) m |= size_t{1} << b;
        return m;
    };
    auto node_id = [&](uint32_t v, size_t mask) { return size_t{v} * masks + mask; };

    std::vector<std::vector<uint32_t>> succ(total);
    for (uint32_t v = 0; v < sys.state_count(); ++v) {
        if (state_dangerous(v)) continue;
        for (size_t mask = 0; mask < masks; ++mask) {
            for (uint64_t d = 0; d < dcount; ++d) {
                if (pair_dangerous(v, d)) continue;
                const uint32_t w = sys.step(v, d);
                bool stuck = false;
                size_t next_mask = mask;
                for (size_t i = 0; i < sys.agent_count(); ++i) {
                    if (!sys.in_goal(i, w)) continue;
                    if (!has_agent(coalition, i)) {
                        stuck = true;
                        break;
                    }
                }
                if (stuck || state_dangerous(w)) continue;
                for (size_t b = 0; b < coalition_members.size(); ++b)
                    if (sys.in_goal(coalition_members[b], w)) next_mask &= ~(size_t{1} << b);
                succ[node_id(v, mask)].push_back(static_cast<uint32_t>(node_id(w, next_mask)));
            }
            auto& out = succ[node_id(v, mask)];
            std::sort(out.begin(), out.end());
            out.erase(std::unique(out.begin(), out.end()), out.end());
        }
    }

    agent_set pending = coalition;
    for (size_t i = 0; i < sys.agent_count(); ++i)
        if (has_agent(coalition, i) && sys.in_goal(i, sys.init)) pending &= ~(agent_set{1} << i);
    if (state_dangerous(sys.init)) return false;
    const uint32_t root = static_cast<uint32_t>(node_id(sys.init, compress(pending)));

    // Reachability closure from the root, then cycle detection by SCC.
    std::vector<uint8_t> reach(total, 0);
    std::vector<uint32_t> walk{root};
    reach[root] = 1;
    for (size_t head = 0; head < walk.size(); ++head)
        for (uint32_t w : succ[walk[head]])
            if (!reach[w]) {
                reach[w] = 1;
                walk.push_back(w);
            }

    scc_search scc(succ);
    scc.run(root);
    for (uint32_t node : walk) {
        const size_t mask = node % masks;
        if (mask != 0) continue; // accepting means nothing pending
        const bool self_loop =
            std::find(succ[node].begin(), succ[node].end(), node) != succ[node].end();
        if (self_loop) return true;
        for (uint32_t w : succ[node])
            if (w != node && scc.comp[w] >= 0 && scc.comp[w] == scc.comp[node]) return true;
    }
    return false;
}

bool brute_deviation(const explicit_system& sys, const explicit_profile& prof, size_t j,
                     uint64_t cap) {
    // Materialize the whole product, not just the reachable slice.
    size_t total = sys.state_count();
    for (const explicit_transducer& tr : prof.strategies) {
        uint64_t grown = 0;
        if (!checked_mul(total, tr.states.size(), grown) || grown > cap)
            throw cap_error(grown, cap);
        total = grown;
    }
    const size_t k = prof.strategies.size();

    auto pack = [&](const std::vector<uint32_t>& cfg) {
        size_t id = cfg[0];
        for (size_t i = 0; i < k; ++i) id = id * prof.strategies[i].states.size() + cfg[i + 1];
        return id;
    };
    auto unpack = [&](size_t id) {
        std::vector<uint32_t> cfg(k + 1);
        for (size_t i = k; i-- > 0;) {
            cfg[i + 1] = static_cast<uint32_t>(id % prof.strategies[i].states.size());
            id /= prof.strategies[i].states.size();
        }
        cfg[0] = static_cast<uint32_t>(id);
        return cfg;
    };

    const size_t na = sys.actions[j].size();
    std::vector<std::vector<uint32_t>> succ(total);
    for (size_t id = 0; id < total; ++id) {
        const std::vector<uint32_t> cfg = unpack(id);
        std::vector<uint32_t> d(k);
        std::vector<uint32_t> next(k + 1);
        for (size_t i = 0; i < k; ++i) {
            const auto [s, a] = transducer_step(prof.strategies[i], cfg[i + 1], cfg[0]);
            next[i + 1] = s;
            d[i] = a;
        }
        for (uint32_t a = 0; a < na; ++a) {
            d[j] = a;
            next[0] = sys.step(cfg[0], sys.decision_index(d));
            succ[id].push_back(static_cast<uint32_t>(pack(next)));
        }
    }

    std::vector<uint32_t> init(k + 1, 0);
    init[0] = sys.init;
    for (size_t i = 0; i < k; ++i) init[i + 1] = prof.strategies[i].init;
    const size_t root = pack(init);

    std::vector<uint8_t> reach(total, 0);
    std::vector<size_t> walk{root};
    reach[root] = 1;
    for (size_t head = 0; head < walk.size(); ++head) {
        if (sys.in_goal(j, unpack(walk[head])[0])) return true;
        for (uint32_t w : succ[walk[head]])
            if (!reach[w]) {
                reach[w] = 1;
                walk.push_back(w);
            }
    }
    return false;
}

suite_report consistency_suite(uint64_t seed, uint32_t count) {
    suite_report report;
    report.seed = seed;
    report.count = count;

    auto record_mismatch = [&](const std::string& what) {
        ++report.mismatches;
        if (report.first_mismatch.empty()) report.first_mismatch = what;
    };

    for (uint32_t t = 0; t < count; ++t) {
        std::mt19937_64 rng(seed + t);
        std::uniform_int_distribution<uint32_t> pick_states(1, 5);
        std::uniform_int_distribution<uint32_t> pick_agents(1, 3);

        random_system_params params;
        params.state_count = pick_states(rng);
        params.agent_count = pick_agents(rng);
        params.goal_density = 0.3;
        params.seed = rng();
        const explicit_system sys = gen_random_explicit(params);

        for (agent_set w = 0; w < (agent_set{1} << params.agent_count); ++w) {
            const realizability_verdict engine = realize_explicit(sys, w);
            const bool oracle = brute_realize(sys, w);
            ++report.realize_checks;
            if (engine.yes != oracle)
                record_mismatch("realize seed=" + std::to_string(seed + t) +
                                " W=" + std::to_string(w));
            if (engine.yes) {
                ++report.certificate_checks;
                if (!certify_witness(sys, w, *engine.witness))
                    record_mismatch("certificate seed=" + std::to_string(seed + t) +
                                    " W=" + std::to_string(w));
            }
        }

        const explicit_profile prof = gen_random_profile(sys, 2, rng());
        for (size_t j = 0; j < sys.agent_count(); ++j) {
            const bool engine = deviation_reachable(sys, prof, j).has_value();
            const bool oracle = brute_deviation(sys, prof, j);
            ++report.deviation_checks;
            if (engine != oracle)
                record_mismatch("deviation seed=" + std::to_string(seed + t) +
                                " agent=" + std::to_string(j));
        }
    }
    return report;
}

} // namespace wne
