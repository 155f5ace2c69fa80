#include "tm.hpp"

#include "game.hpp"

#include <map>
#include <set>

namespace wne {

std::vector<issue> validate_dtm(const det_tm& m) {
    std::vector<issue> out;
    if (m.state_names.empty()) out.push_back({"UnknownState", "no machine states"});
    if (m.alphabet.empty()) out.push_back({"UnknownState", "empty alphabet"});
    if (m.blank >= m.alphabet.size()) out.push_back({"UnknownState", "blank not in alphabet"});
    if (m.init >= m.state_names.size()) out.push_back({"UnknownState", "init not a state"});
    if (m.accepting.size() != m.state_names.size())
        out.push_back({"UnknownState", "accepting set size mismatch"});
    std::set<std::pair<uint32_t, uint32_t>> covered;
    for (const dtm_rule& r : m.rules) {
        if (r.state >= m.state_names.size() || r.next_state >= m.state_names.size() ||
            r.symbol >= m.alphabet.size() || r.write >= m.alphabet.size()) {
            out.push_back({"UnknownState", "rule references unknown state or symbol"});
            continue;
        }
        if (!covered.emplace(r.state, r.symbol).second)
            out.push_back({"DuplicateRow", "two rules for " + m.state_names[r.state] + " " +
                                               m.alphabet[r.symbol]});
    }
    for (uint32_t r = 0; r < m.state_names.size(); ++r) {
        if (r < m.accepting.size() && m.accepting[r]) continue;
        for (uint32_t g = 0; g < m.alphabet.size(); ++g)
            if (!covered.count({r, g}))
                out.push_back({"MissingTransitionRow",
                               "no rule for " + m.state_names[r] + " " + m.alphabet[g]});
    }
    return out;
}

std::vector<issue> validate_atm(const alt_tm& m) {
    std::vector<issue> out;
    if (m.state_names.empty()) out.push_back({"UnknownState", "no machine states"});
    if (m.blank >= m.alphabet.size()) out.push_back({"UnknownState", "blank not in alphabet"});
    if (m.init >= m.state_names.size()) out.push_back({"UnknownState", "init not a state"});
    if (m.labels.size() != m.state_names.size())
        out.push_back({"UnknownState", "label per state required"});
    std::map<std::pair<uint32_t, uint32_t>, size_t> fanout;
    for (const atm_rule& r : m.rules) {
        if (r.state >= m.state_names.size() || r.next_state >= m.state_names.size() ||
            r.symbol >= m.alphabet.size() || r.write >= m.alphabet.size()) {
            out.push_back({"UnknownState", "rule references unknown state or symbol"});
            continue;
        }
        ++fanout[{r.state, r.symbol}];
    }
    for (const auto& [key, count] : fanout) {
        if (count > 2)
            out.push_back({"DuplicateRow", "more than two successors for " +
                                               m.state_names[key.first] + " " +
                                               m.alphabet[key.second]});
        if (key.first < m.labels.size() && m.labels[key.first] == alt_label::det && count != 1)
            out.push_back({"DuplicateRow", "deterministic state " + m.state_names[key.first] +
                                               " needs exactly one successor"});
    }
    return out;
}

machine_id initial_id(uint32_t blank, uint32_t init_state, uint32_t n) {
    machine_id id;
    id.cells.assign(n, {blank, -1});
    id.cells[0].head_state = init_state;
    return id;
}

tm_step_result tm_step(const det_tm& m, const machine_id& id) {
    const size_t pos = id.head_position();
    const uint32_t state = static_cast<uint32_t>(id.cells[pos].head_state);
    if (state < m.accepting.size() && m.accepting[state]) return tm_accept{};
    const std::optional<dtm_rule> rule = m.rule_for(state, id.cells[pos].symbol);
    if (!rule) throw error("MalformedID: no rule for a non-accepting state");
    const int64_t next_pos =
        static_cast<int64_t>(pos) + (rule->dir == tm_dir::right ? 1 : -1);
    if (next_pos < 0 || next_pos >= static_cast<int64_t>(id.cells.size()))
        return tm_out_of_bounds{};
    machine_id next = id;
    next.cells[pos].symbol = rule->write;
    next.cells[pos].head_state = -1;
    next.cells[static_cast<size_t>(next_pos)].head_state = rule->next_state;
    return next;
}

bool dtm_accepts(const det_tm& m, uint32_t n) {
    machine_id id = initial_id(m.blank, m.init, n);
    std::set<machine_id> visited;
    while (visited.insert(id).second) {
        tm_step_result r = tm_step(m, id);
        if (std::holds_alternative<tm_accept>(r)) return true;
        if (std::holds_alternative<tm_out_of_bounds>(r)) return false;
        id = std::get<machine_id>(std::move(r));
    }
    return false; // snapshot repeated: the machine loops
}

bool atm_accepts(const alt_tm& m, uint32_t n, uint64_t cap_nodes) {
    // Nodes: reachable snapshots plus an accepting and a rejecting sink.
    std::map<machine_id, uint32_t> index;
    std::vector<machine_id> order;
    reachability_game g;

    g.state_names = {"acc", "rej"};
    g.owner = {0, 0};
    g.goal = {1, 0};
    g.succ = {{0}, {1}};
    const uint32_t acc = 0, rej = 1;

    auto intern = [&](const machine_id& id) {
        auto [it, fresh] = index.emplace(id, static_cast<uint32_t>(g.owner.size()));
        if (fresh) {
            order.push_back(id);
            g.state_names.push_back("id" + std::to_string(g.owner.size()));
            g.owner.push_back(0);
            g.goal.push_back(0);
            g.succ.emplace_back();
        }
        return it->second;
    };

    const uint32_t root = intern(initial_id(m.blank, m.init, n));
    for (size_t head = 0; head < order.size(); ++head) {
        if (g.owner.size() > cap_nodes) throw cap_error(g.owner.size(), cap_nodes);
        const machine_id id = order[head];
        const uint32_t node = index.at(id);
        const size_t pos = id.head_position();
        const uint32_t state = static_cast<uint32_t>(id.cells[pos].head_state);
        const alt_label label = m.labels[state];
        if (label == alt_label::accept) {
            g.goal[node] = 1;
            g.succ[node] = {node};
            continue;
        }
        if (label == alt_label::reject) {
            g.succ[node] = {node};
            continue;
        }
        g.owner[node] = label == alt_label::univ ? 1 : 0;
        std::vector<uint32_t> succs; // intern() grows g.succ, so collect first
        for (const atm_rule& r : m.rules_for(state, id.cells[pos].symbol)) {
            const int64_t next_pos =
                static_cast<int64_t>(pos) + (r.dir == tm_dir::right ? 1 : -1);
            if (next_pos < 0 || next_pos >= static_cast<int64_t>(id.cells.size())) {
                succs.push_back(rej);
                continue;
            }
            machine_id next = id;
            next.cells[pos].symbol = r.write;
            next.cells[pos].head_state = -1;
            next.cells[static_cast<size_t>(next_pos)].head_state = r.next_state;
            succs.push_back(intern(next));
        }
        if (succs.empty()) {
            // A player with no legal move loses: stuck existential play
            // rejects, stuck universal play accepts.
            succs.push_back(label == alt_label::univ ? acc : rej);
        }
        std::sort(succs.begin(), succs.end());
        succs.erase(std::unique(succs.begin(), succs.end()), succs.end());
        g.succ[node] = std::move(succs);
    }
    g.init = root;
    return who_wins(g) == 0;
}

} // namespace wne
