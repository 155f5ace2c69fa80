#include "game.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace wne {

std::vector<issue> validate_game(const reachability_game& g) {
    std::vector<issue> out;
    const size_t n = g.state_count();
    if (g.state_names.size() != n || g.succ.size() != n || g.goal.size() != n)
        out.push_back({"UnknownState", "inconsistent component sizes"});
    if (g.init && *g.init >= n) out.push_back({"UnknownState", "init out of range"});
    for (size_t v = 0; v < g.succ.size() && v < n; ++v) {
        if (g.succ[v].empty())
            out.push_back({"DeadEndState", g.state_names.empty() ? std::to_string(v)
                                                                 : g.state_names[v]});
        for (uint32_t w : g.succ[v])
            if (w >= n) out.push_back({"UnknownState", "edge target out of range"});
    }
    return out;
}

win_partition solve(const reachability_game& g) {
    const size_t n = g.state_count();
    constexpr uint32_t no_rank = std::numeric_limits<uint32_t>::max();

    std::vector<std::vector<uint32_t>> pred(n);
    std::vector<uint32_t> remaining(n, 0);
    for (uint32_t v = 0; v < n; ++v) {
        remaining[v] = static_cast<uint32_t>(g.succ[v].size());
        for (uint32_t w : g.succ[v]) pred[w].push_back(v);
    }

    win_partition wp;
    wp.winner.assign(n, 1);
    wp.rank.assign(n, no_rank);
    wp.strat0.assign(n, -1);
    wp.strat1.assign(n, -1);

    // Layered attractor: processing the frontier rank by rank makes the
    // recorded rank equal the least fixed-point layer.
    std::deque<uint32_t> frontier;
    for (uint32_t v = 0; v < n; ++v) {
        if (g.goal[v]) {
            wp.winner[v] = 0;
            wp.rank[v] = 0;
            frontier.push_back(v);
        }
    }
    while (!frontier.empty()) {
        const uint32_t w = frontier.front();
        frontier.pop_front();
        for (uint32_t u : pred[w]) {
            if (wp.winner[u] == 0) continue;
            if (g.owner[u] == 0) {
                wp.winner[u] = 0;
                wp.rank[u] = wp.rank[w] + 1;
                frontier.push_back(u);
            } else if (--remaining[u] == 0) {
                wp.winner[u] = 0;
                wp.rank[u] = wp.rank[w] + 1;
                frontier.push_back(u);
            }
        }
    }

    for (uint32_t v = 0; v < n; ++v) {
        if (g.owner[v] == 0 && wp.winner[v] == 0 && !g.goal[v]) {
            // Lowest-rank successor, ties by canonical order.
            uint32_t best_rank = no_rank;
            for (uint32_t w : g.succ[v]) {
                if (wp.winner[w] == 0 && wp.rank[w] < best_rank) {
                    best_rank = wp.rank[w];
                    wp.strat0[v] = w;
                }
            }
        } else if (g.owner[v] == 1 && wp.winner[v] == 1) {
            for (uint32_t w : g.succ[v]) {
                if (wp.winner[w] == 1) {
                    wp.strat1[v] = w;
                    break;
                }
            }
        }
    }
    return wp;
}

int who_wins(const reachability_game& g) {
    if (!g.init) throw error("MissingInit: game has no initial state");
    const win_partition wp = solve(g);
    return wp.winner[*g.init];
}

std::vector<uint32_t> play(const reachability_game& g, const win_partition& wp, uint32_t init,
                           std::span<const uint32_t> opponent_moves) {
    const int winner = wp.winner[init];
    std::vector<uint32_t> path{init};
    size_t next_move = 0;
    while (path.size() <= g.state_count()) {
        const uint32_t v = path.back();
        if (winner == 0 && g.goal[v]) break;
        uint32_t w;
        if (g.owner[v] == static_cast<uint8_t>(winner)) {
            const int64_t s = winner == 0 ? wp.strat0[v] : wp.strat1[v];
            w = s >= 0 ? static_cast<uint32_t>(s) : g.succ[v].front();
        } else if (next_move < opponent_moves.size()) {
            w = opponent_moves[next_move++];
            if (std::find(g.succ[v].begin(), g.succ[v].end(), w) == g.succ[v].end())
                throw error("IllegalOpponentMove: no edge " + g.state_names[v] + " -> " +
                            g.state_names[w]);
        } else {
            w = g.succ[v].front();
        }
        path.push_back(w);
    }
    return path;
}

} // namespace wne
