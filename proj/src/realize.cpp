#include "realize.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace wne {

buchi_aw build_AW(const explicit_system& sys, agent_set coalition) {
    buchi_aw aw;
    aw.coalition = coalition;
    aw.decision_count = sys.decision_count();

    // Traces include the initial state, so a goal outside W satisfied at v0
    // already rules out every valid primary trace.
    for (size_t j = 0; j < sys.agent_count(); ++j) {
        if (!has_agent(coalition, j) && sys.in_goal(j, sys.init)) {
            aw.empty_language = true;
            return aw;
        }
    }
    agent_set pending = coalition;
    for (size_t i = 0; i < sys.agent_count(); ++i)
        if (has_agent(coalition, i) && sys.in_goal(i, sys.init)) pending &= ~(agent_set{1} << i);

    std::map<std::pair<uint32_t, agent_set>, size_t> index;
    aw.states.emplace_back(sys.init, pending);
    index.emplace(aw.states[0], 0);

    for (size_t head = 0; head < aw.states.size(); ++head) {
        const auto [v, u] = aw.states[head];
        aw.trans.resize(aw.trans.size() + aw.decision_count, -1);
        for (uint64_t d = 0; d < aw.decision_count; ++d) {
            const uint32_t succ = sys.step(v, d);
            bool stuck = false;
            agent_set next_pending = u;
            for (size_t i = 0; i < sys.agent_count(); ++i) {
                if (!sys.in_goal(i, succ)) continue;
                if (!has_agent(coalition, i)) {
                    stuck = true;
                    break;
                }
                next_pending &= ~(agent_set{1} << i);
            }
            if (stuck) continue;
            const std::pair<uint32_t, agent_set> key{succ, next_pending};
            auto [it, fresh] = index.emplace(key, aw.states.size());
            if (fresh) aw.states.push_back(key);
            aw.trans[head * aw.decision_count + d] = static_cast<int64_t>(it->second);
        }
    }
    aw.accepting.resize(aw.states.size());
    for (size_t i = 0; i < aw.states.size(); ++i)
        aw.accepting[i] = aw.states[i].second == 0;
    return aw;
}

deviation_game build_deviation_game(const explicit_system& sys, size_t j) {
    deviation_game dg;
    dg.decision_count = sys.decision_count();
    dg.state_nodes = reachable_states(sys);
    dg.node_of_state.assign(sys.state_count(), -1);
    for (size_t r = 0; r < dg.state_nodes.size(); ++r)
        dg.node_of_state[dg.state_nodes[r]] = static_cast<int64_t>(r);

    const size_t nreach = dg.state_nodes.size();
    const uint64_t dcount = dg.decision_count;
    const size_t total = nreach + nreach * dcount;

    reachability_game& g = dg.game;
    g.owner.assign(total, 0);
    g.goal.assign(total, 0);
    g.succ.resize(total);
    g.state_names.resize(total);

    for (size_t r = 0; r < nreach; ++r) {
        const uint32_t v = dg.state_nodes[r];
        g.owner[r] = 1; // the coalition announces decisions
        g.goal[r] = sys.in_goal(j, v);
        g.state_names[r] = sys.states[v];
        g.succ[r].reserve(dcount);
        for (uint64_t d = 0; d < dcount; ++d)
            g.succ[r].push_back(static_cast<uint32_t>(dg.pair_node(v, d)));
    }
    const size_t na = sys.actions[j].size();
    for (size_t r = 0; r < nreach; ++r) {
        const uint32_t v = dg.state_nodes[r];
        for (uint64_t d = 0; d < dcount; ++d) {
            const size_t node = static_cast<size_t>(dg.pair_node(v, d));
            g.owner[node] = 0; // agent j picks the replacement action
            g.state_names[node] = sys.states[v] + "#" + std::to_string(d);
            std::vector<uint32_t>& out = g.succ[node];
            for (uint32_t a = 0; a < na; ++a) {
                const uint32_t succ = sys.step(v, sys.replace_component(d, j, a));
                out.push_back(static_cast<uint32_t>(dg.node_of_state[succ]));
            }
            std::sort(out.begin(), out.end());
            out.erase(std::unique(out.begin(), out.end()), out.end());
        }
    }
    return dg;
}

deviation_solution solve_deviation_game(const explicit_system& sys, size_t j) {
    deviation_solution sol;
    sol.agent = j;
    sol.game = build_deviation_game(sys, j);
    sol.partition = solve(sol.game.game);
    return sol;
}

buchi_aw prune(const buchi_aw& aw, const std::vector<deviation_solution>& partitions) {
    buchi_aw out;
    out.coalition = aw.coalition;
    out.decision_count = aw.decision_count;
    out.empty_language = aw.empty_language;
    if (aw.empty_language || aw.states.empty()) return out;

    auto dangerous_state = [&](uint32_t v) {
        for (const deviation_solution& p : partitions)
            if (p.deviator_wins_state(v)) return true;
        return false;
    };
    auto dangerous_pair = [&](uint32_t v, uint64_t d) {
        for (const deviation_solution& p : partitions)
            if (p.deviator_wins_pair(v, d)) return true;
        return false;
    };

    if (dangerous_state(aw.states[0].first)) return out; // initial tracker pruned

    std::map<size_t, size_t> new_index; // old state -> new state
    std::vector<size_t> old_of;
    new_index.emplace(0, 0);
    old_of.push_back(0);
    out.states.push_back(aw.states[0]);

    for (size_t head = 0; head < old_of.size(); ++head) {
        const size_t old = old_of[head];
        const uint32_t v = aw.states[old].first;
        out.trans.resize(out.trans.size() + out.decision_count, -1);
        for (uint64_t d = 0; d < aw.decision_count; ++d) {
            const int64_t target = aw.next(old, d);
            if (target < 0) continue;
            if (dangerous_pair(v, d)) continue;
            if (dangerous_state(aw.states[static_cast<size_t>(target)].first)) continue;
            auto [it, fresh] = new_index.emplace(static_cast<size_t>(target), old_of.size());
            if (fresh) {
                old_of.push_back(static_cast<size_t>(target));
                out.states.push_back(aw.states[static_cast<size_t>(target)]);
            }
            out.trans[head * out.decision_count + d] = static_cast<int64_t>(it->second);
        }
    }
    out.accepting.resize(out.states.size());
    for (size_t i = 0; i < out.states.size(); ++i)
        out.accepting[i] = out.states[i].second == 0;
    return out;
}

namespace {

// Lexicographically-least shortest paths fall out of FIFO exploration in
// canonical decision order; parents record the tree.
struct bfs_tree {
    std::vector<int64_t> parent;
    std::vector<int64_t> via;

    std::vector<uint64_t> word_to(size_t target) const {
        std::vector<uint64_t> w;
        for (int64_t at = static_cast<int64_t>(target); parent[at] >= 0; at = parent[at])
            w.push_back(static_cast<uint64_t>(via[at]));
        std::reverse(w.begin(), w.end());
        return w;
    }
};

// First cycle back to `from`, as the shortest-lex decision word, or empty.
std::vector<uint64_t> shortest_cycle(const buchi_aw& aw, size_t from) {
    const size_t n = aw.states.size();
    bfs_tree tree{std::vector<int64_t>(n, -1), std::vector<int64_t>(n, -1)};
    std::vector<uint8_t> seen(n, 0);
    std::deque<size_t> queue;

    for (uint64_t d = 0; d < aw.decision_count; ++d) {
        const int64_t t = aw.next(from, d);
        if (t < 0) continue;
        if (static_cast<size_t>(t) == from) return {d};
        if (!seen[t]) {
            seen[t] = 1;
            tree.parent[t] = -1;
            tree.via[t] = static_cast<int64_t>(d);
            queue.push_back(static_cast<size_t>(t));
        }
    }
    while (!queue.empty()) {
        const size_t u = queue.front();
        queue.pop_front();
        for (uint64_t d = 0; d < aw.decision_count; ++d) {
            const int64_t t = aw.next(u, d);
            if (t < 0) continue;
            if (static_cast<size_t>(t) == from) {
                std::vector<uint64_t> w;
                for (int64_t at = static_cast<int64_t>(u); at >= 0; at = tree.parent[at])
                    w.push_back(static_cast<uint64_t>(tree.via[at]));
                std::reverse(w.begin(), w.end());
                w.push_back(d);
                return w;
            }
            if (!seen[t]) {
                seen[t] = 1;
                tree.parent[t] = static_cast<int64_t>(u);
                tree.via[t] = static_cast<int64_t>(d);
                queue.push_back(static_cast<size_t>(t));
            }
        }
    }
    return {};
}

} // namespace

std::optional<lasso_word> nonempty(const buchi_aw& aw) {
    if (aw.empty_language || aw.states.empty()) return std::nullopt;
    const size_t n = aw.states.size();

    // Reach the first accepting state; every state on its shortest path is
    // non-accepting, so the prefix never overlaps the accepting region.
    bfs_tree tree{std::vector<int64_t>(n, -1), std::vector<int64_t>(n, -1)};
    std::vector<uint8_t> seen(n, 0);
    std::deque<size_t> queue;
    seen[0] = 1;
    queue.push_back(0);
    int64_t first_accepting = aw.accepting[0] ? 0 : -1;
    while (first_accepting < 0 && !queue.empty()) {
        const size_t u = queue.front();
        queue.pop_front();
        for (uint64_t d = 0; d < aw.decision_count && first_accepting < 0; ++d) {
            const int64_t t = aw.next(u, d);
            if (t < 0 || seen[t]) continue;
            seen[t] = 1;
            tree.parent[t] = static_cast<int64_t>(u);
            tree.via[t] = static_cast<int64_t>(d);
            if (aw.accepting[t]) first_accepting = t;
            queue.push_back(static_cast<size_t>(t));
        }
    }
    if (first_accepting < 0) return std::nullopt;
    const size_t s_star = static_cast<size_t>(first_accepting);

    // Accepting states are closed under defined transitions, so everything
    // discovered from here stays accepting. Candidates are tried in BFS
    // discovery order; states discovered before the first one lying on a
    // cycle are on no cycle at all, which keeps the witness length within
    // the reachable state count.
    bfs_tree acc_tree{std::vector<int64_t>(n, -1), std::vector<int64_t>(n, -1)};
    std::vector<uint8_t> acc_seen(n, 0);
    std::vector<size_t> acc_order;
    acc_seen[s_star] = 1;
    acc_order.push_back(s_star);
    for (size_t head = 0; head < acc_order.size(); ++head) {
        const size_t u = acc_order[head];
        for (uint64_t d = 0; d < aw.decision_count; ++d) {
            const int64_t t = aw.next(u, d);
            if (t < 0 || acc_seen[t]) continue;
            acc_seen[t] = 1;
            acc_tree.parent[t] = static_cast<int64_t>(u);
            acc_tree.via[t] = static_cast<int64_t>(d);
            acc_order.push_back(static_cast<size_t>(t));
        }
    }
    for (size_t t_star : acc_order) {
        std::vector<uint64_t> cycle = shortest_cycle(aw, t_star);
        if (cycle.empty()) continue;
        lasso_word w;
        w.prefix = tree.word_to(s_star);
        const std::vector<uint64_t> extend = acc_tree.word_to(t_star);
        w.prefix.insert(w.prefix.end(), extend.begin(), extend.end());
        w.cycle = std::move(cycle);
        return w;
    }
    return std::nullopt;
}

lasso_trace induced_trace(const explicit_system& sys, const lasso_word& w) {
    if (w.cycle.empty()) throw error("DecodeError: empty cycle");
    const uint64_t dcount = sys.decision_count();
    for (uint64_t d : w.prefix)
        if (d >= dcount) throw error("DecodeError: decision index out of range");
    for (uint64_t d : w.cycle)
        if (d >= dcount) throw error("DecodeError: decision index out of range");

    lasso_trace t;
    uint32_t v = sys.init;
    for (uint64_t d : w.prefix) {
        t.prefix.push_back(v);
        v = sys.step(v, d);
    }
    // Replay the cycle word until the state at a cycle boundary repeats;
    // witnesses from the nonemptiness search close after one pass.
    std::map<uint32_t, size_t> boundary{{v, 0}};
    std::vector<uint32_t> unrolled;
    for (size_t pass = 1; pass <= sys.state_count() + 1; ++pass) {
        for (uint64_t d : w.cycle) {
            unrolled.push_back(v);
            v = sys.step(v, d);
        }
        auto it = boundary.find(v);
        if (it != boundary.end()) {
            const size_t skip = it->second * w.cycle.size();
            t.prefix.insert(t.prefix.end(), unrolled.begin(), unrolled.begin() + skip);
            t.cycle.assign(unrolled.begin() + skip, unrolled.end());
            return t;
        }
        boundary.emplace(v, pass);
    }
    throw error("DecodeError: cycle never closes"); // unreachable on valid systems
}

namespace {

// Decision at position i of the unrolled word.
uint64_t word_at(const lasso_word& w, size_t i) {
    if (i < w.prefix.size()) return w.prefix[i];
    return w.cycle[(i - w.prefix.size()) % w.cycle.size()];
}

bool check_pairs(const lasso_word& w, const lasso_trace& t, const deviation_solution& sol,
                 std::vector<std::pair<uint32_t, uint64_t>>* receipts) {
    const size_t len = t.prefix.size() + t.cycle.size();
    for (size_t i = 0; i < len; ++i) {
        const uint32_t v = i < t.prefix.size() ? t.prefix[i] : t.cycle[i - t.prefix.size()];
        const uint64_t d = word_at(w, i);
        if (sol.deviator_wins_state(v) || sol.deviator_wins_pair(v, d)) return false;
        if (receipts) receipts->emplace_back(v, d);
    }
    return true;
}

} // namespace

bool certify_witness(const explicit_system& sys, agent_set coalition, const lasso_word& w) {
    const lasso_trace t = induced_trace(sys, w);
    if (winning_set(sys, t) != coalition) return false;
    for (size_t j = 0; j < sys.agent_count(); ++j) {
        if (has_agent(coalition, j)) continue;
        const deviation_solution sol = solve_deviation_game(sys, j);
        if (!check_pairs(w, t, sol, nullptr)) return false;
    }
    return true;
}

realizability_verdict realize_explicit(const explicit_system& sys, agent_set coalition) {
    realizability_verdict verdict;
    const buchi_aw aw = build_AW(sys, coalition);
    verdict.aw_states = aw.states.size();

    std::vector<deviation_solution> sols;
    for (size_t j = 0; j < sys.agent_count(); ++j)
        if (!has_agent(coalition, j)) sols.push_back(solve_deviation_game(sys, j));

    const buchi_aw pruned = prune(aw, sols);
    verdict.pruned_states = pruned.states.size();

    std::optional<lasso_word> word = nonempty(pruned);
    if (!word) return verdict;

    verdict.yes = true;
    verdict.witness = *word;
    witness_certificate cert;
    cert.trace = induced_trace(sys, *word);
    cert.winning = winning_set(sys, cert.trace);
    for (const deviation_solution& sol : sols) {
        std::vector<std::pair<uint32_t, uint64_t>> pairs;
        check_pairs(*word, cert.trace, sol, &pairs);
        cert.receipts.emplace_back(static_cast<uint32_t>(sol.agent), std::move(pairs));
    }
    verdict.certificate = std::move(cert);
    return verdict;
}

realizability_verdict realize_circuit(const circuit_system& cs, agent_set coalition,
                                      uint64_t cap_rows) {
    return realize_explicit(unfold_reachable(cs, cap_rows), coalition);
}

} // namespace wne
