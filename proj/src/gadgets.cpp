#include "gadgets.hpp"

#include <algorithm>
#include <string>

namespace wne {

namespace {

std::string fresh_name(const std::vector<std::string>& taken, std::string base) {
    while (std::find(taken.begin(), taken.end(), base) != taken.end()) base += "_";
    return base;
}

} // namespace

explicit_system game_to_system(const reachability_game& g) {
    if (!g.init) throw error("MissingInit: gadget needs an initialized game");
    if (g.state_count() < 2)
        throw error("SingletonActionSet: gadget needs at least two game states");

    const size_t n = g.state_count();
    explicit_system sys;
    sys.states = g.state_names;
    const std::string hat0 = fresh_name(sys.states, "hat0");
    sys.states.push_back(hat0);
    const std::string hat1 = fresh_name(sys.states, "hat1");
    sys.states.push_back(hat1);
    const uint32_t hat0_idx = static_cast<uint32_t>(n);
    const uint32_t hat1_idx = static_cast<uint32_t>(n + 1);

    sys.init = *g.init;
    sys.actions = {g.state_names, g.state_names};
    sys.goals.assign(2, std::vector<uint8_t>(n + 2, 0));
    for (size_t v = 0; v < n; ++v) sys.goals[0][v] = g.goal[v];
    sys.goals[0][hat1_idx] = 1; // an illegal avoider move hands the reacher the win

    const uint64_t dcount = sys.decision_count();
    sys.table.assign((n + 2) * dcount, -1);
    for (uint32_t v = 0; v < n + 2; ++v) {
        for (uint64_t d = 0; d < dcount; ++d) {
            uint32_t succ;
            if (v >= n) {
                succ = v; // penalty sinks absorb
            } else {
                const std::vector<uint32_t> comp = sys.decision_at(d);
                const uint32_t chosen = comp[g.owner[v]];
                const bool edge =
                    std::find(g.succ[v].begin(), g.succ[v].end(), chosen) != g.succ[v].end();
                succ = edge ? chosen : (g.owner[v] == 0 ? hat0_idx : hat1_idx);
            }
            sys.table[v * dcount + d] = succ;
        }
    }
    return sys;
}

namespace {

uint32_t bit_width(uint64_t values) {
    uint32_t w = 1;
    while ((uint64_t{1} << w) < values) ++w;
    return w;
}

// Shared snapshot-encoding layout for the circuit gadgets: some flag bits,
// then per cell a symbol field and a head field (0 = no head, r+1 = head in
// state r).
struct id_layout {
    uint32_t flags = 0;
    uint32_t n = 0;
    uint32_t sym_bits = 0;
    uint32_t head_bits = 0;

    [[nodiscard]] uint32_t state_vars() const { return flags + n * (sym_bits + head_bits); }
    [[nodiscard]] uint32_t sym_at(uint32_t cell) const {
        return flags + cell * (sym_bits + head_bits);
    }
    [[nodiscard]] uint32_t head_at(uint32_t cell) const { return sym_at(cell) + sym_bits; }
};

std::vector<ref> input_bus(uint32_t start, uint32_t width) {
    std::vector<ref> bus;
    bus.reserve(width);
    for (uint32_t i = 0; i < width; ++i) bus.push_back(in_ref(start + i));
    return bus;
}

bits encode_initial_id(const id_layout& lay, uint32_t blank, uint32_t init_state) {
    bits v(lay.state_vars(), 0);
    auto put = [&](uint32_t start, uint32_t width, uint64_t value) {
        const bits field = bits_from_value(value, width);
        std::copy(field.begin(), field.end(), v.begin() + start);
    };
    for (uint32_t c = 0; c < lay.n; ++c) {
        put(lay.sym_at(c), lay.sym_bits, blank);
        put(lay.head_at(c), lay.head_bits, 0);
    }
    put(lay.head_at(0), lay.head_bits, uint64_t{init_state} + 1);
    return v;
}

// head_here, priority-resolved head flags and field buses per cell.
struct head_probe {
    std::vector<ref> prio;
    std::vector<std::vector<ref>> sym;
    std::vector<std::vector<ref>> head;
    ref no_head;
};

head_probe probe_cells(circuit_builder& b, const id_layout& lay, uint32_t base) {
    head_probe p;
    std::vector<ref> here;
    for (uint32_t c = 0; c < lay.n; ++c) {
        p.sym.push_back(input_bus(base + lay.sym_at(c), lay.sym_bits));
        p.head.push_back(input_bus(base + lay.head_at(c), lay.head_bits));
        here.push_back(b.lnot(b.equals_const(p.head[c], 0)));
    }
    ref none_before = b.constant(true);
    for (uint32_t c = 0; c < lay.n; ++c) {
        p.prio.push_back(b.land(here[c], none_before));
        none_before = b.land(none_before, b.lnot(here[c]));
    }
    p.no_head = none_before;
    return p;
}

} // namespace

circuit_system atm_to_circuit_system(const alt_tm& m, uint32_t n) {
    if (n == 0) throw error("MissingInit: need at least one tape cell");
    const uint32_t nr = static_cast<uint32_t>(m.state_names.size());
    const uint32_t ng = static_cast<uint32_t>(m.alphabet.size());

    id_layout lay;
    lay.flags = 2; // [acc-sink, rej-sink]
    lay.n = n;
    lay.sym_bits = bit_width(ng);
    lay.head_bits = bit_width(uint64_t{nr} + 1);

    const uint32_t action_count = nr * ng * 2;
    const uint32_t a_bits = bit_width(action_count);
    const auto enc_action = [&](uint32_t r, uint32_t g, tm_dir dir) -> uint64_t {
        return (uint64_t{r} * ng + g) * 2 + (dir == tm_dir::right ? 1 : 0);
    };

    const uint32_t sv = lay.state_vars();
    circuit_builder b(sv + 2 * a_bits);

    const ref flag_acc = b.input(0);
    const ref flag_rej = b.input(1);
    const ref is_sink = b.lor(flag_acc, flag_rej);
    const head_probe probe = probe_cells(b, lay, 0);

    std::vector<ref> at_state(nr);
    for (uint32_t r = 0; r < nr; ++r) {
        std::vector<ref> terms;
        for (uint32_t c = 0; c < n; ++c)
            terms.push_back(b.land(probe.prio[c], b.equals_const(probe.head[c], uint64_t{r} + 1)));
        at_state[r] = b.any(terms);
    }
    std::vector<ref> sym_is(ng);
    for (uint32_t g = 0; g < ng; ++g) {
        std::vector<ref> terms;
        for (uint32_t c = 0; c < n; ++c)
            terms.push_back(b.land(probe.prio[c], b.equals_const(probe.sym[c], g)));
        sym_is[g] = b.any(terms);
    }

    std::vector<ref> accept_terms, reject_terms, univ_terms;
    for (uint32_t r = 0; r < nr; ++r) {
        if (m.labels[r] == alt_label::accept) accept_terms.push_back(at_state[r]);
        if (m.labels[r] == alt_label::reject) reject_terms.push_back(at_state[r]);
        if (m.labels[r] == alt_label::univ) univ_terms.push_back(at_state[r]);
    }
    const ref accept_now = b.any(accept_terms);
    const ref reject_now = b.any(reject_terms);
    const ref univ_turn = b.any(univ_terms);

    const std::vector<ref> act =
        b.mux_bus(univ_turn, input_bus(sv + a_bits, a_bits), input_bus(sv, a_bits));

    // One match term per applicable machine rule; everything the step needs
    // is an OR over the matches that imply it.
    std::vector<ref> legal_terms, right_terms;
    std::vector<std::vector<ref>> write_terms(lay.sym_bits), next_head_terms(lay.head_bits);
    for (uint32_t r = 0; r < nr; ++r) {
        const alt_label label = m.labels[r];
        if (label == alt_label::accept || label == alt_label::reject) continue;
        for (uint32_t g = 0; g < ng; ++g) {
            const ref here = b.land(at_state[r], sym_is[g]);
            for (const atm_rule& rule : m.rules_for(r, g)) {
                const ref match =
                    b.land(here, b.equals_const(act, enc_action(rule.next_state, rule.write,
                                                                rule.dir)));
                legal_terms.push_back(match);
                if (rule.dir == tm_dir::right) right_terms.push_back(match);
                for (uint32_t i = 0; i < lay.sym_bits; ++i)
                    if ((rule.write >> (lay.sym_bits - 1 - i)) & 1)
                        write_terms[i].push_back(match);
                const uint64_t henc = uint64_t{rule.next_state} + 1;
                for (uint32_t i = 0; i < lay.head_bits; ++i)
                    if ((henc >> (lay.head_bits - 1 - i)) & 1) next_head_terms[i].push_back(match);
            }
        }
    }
    const ref legal = b.any(legal_terms);
    const ref dir_right = b.any(right_terms);
    std::vector<ref> write_bus(lay.sym_bits), next_head_bus(lay.head_bits);
    for (uint32_t i = 0; i < lay.sym_bits; ++i) write_bus[i] = b.any(write_terms[i]);
    for (uint32_t i = 0; i < lay.head_bits; ++i) next_head_bus[i] = b.any(next_head_terms[i]);

    const ref oob = b.lor(b.land(probe.prio[0], b.lnot(dir_right)),
                          b.land(probe.prio[n - 1], dir_right));

    std::vector<ref> normal{b.constant(false), b.constant(false)};
    const std::vector<ref> zero_head = b.constant_bus(0, lay.head_bits);
    for (uint32_t c = 0; c < n; ++c) {
        const ref arrive =
            b.lor(c > 0 ? b.land(probe.prio[c - 1], dir_right) : b.constant(false),
                  c + 1 < n ? b.land(probe.prio[c + 1], b.lnot(dir_right)) : b.constant(false));
        const std::vector<ref> sym = b.mux_bus(probe.prio[c], write_bus, probe.sym[c]);
        const std::vector<ref> head = b.mux_bus(arrive, next_head_bus, zero_head);
        normal.insert(normal.end(), sym.begin(), sym.end());
        normal.insert(normal.end(), head.begin(), head.end());
    }

    std::vector<ref> acc_bus = b.constant_bus(0, sv);
    acc_bus[0] = b.constant(true);
    std::vector<ref> rej_bus = b.constant_bus(0, sv);
    rej_bus[1] = b.constant(true);

    // Penalties: accepting and rejecting head states resolve first, then a
    // missing head, then an action outside the rule set (punishing the
    // acting agent), then a legal move off the tape.
    std::vector<ref> out = b.mux_bus(oob, rej_bus, normal);
    out = b.mux_bus(legal, out, b.mux_bus(univ_turn, acc_bus, rej_bus));
    out = b.mux_bus(b.lor(reject_now, probe.no_head), rej_bus, out);
    out = b.mux_bus(accept_now, acc_bus, out);
    out = b.mux_bus(is_sink, input_bus(0, sv), out);

    circuit_system cs;
    cs.state_vars = sv;
    cs.agent_action_vars = {a_bits, a_bits};
    cs.phi = b.build(out);
    cs.init = encode_initial_id(lay, m.blank, m.init);
    cs.init[0] = cs.init[1] = 0;

    {
        circuit_builder gb(sv);
        const head_probe gp = probe_cells(gb, lay, 0);
        std::vector<ref> goal_terms{gb.input(0)}; // the accepting sink
        for (uint32_t r = 0; r < nr; ++r) {
            if (m.labels[r] != alt_label::accept) continue;
            for (uint32_t c = 0; c < n; ++c)
                goal_terms.push_back(
                    gb.land(gp.prio[c], gb.equals_const(gp.head[c], uint64_t{r} + 1)));
        }
        cs.goal_circuits.push_back(gb.build({gb.any(goal_terms)}));
    }
    {
        circuit_builder gb(sv);
        cs.goal_circuits.push_back(gb.build({gb.constant(false)}));
    }
    return cs;
}

turnbased_gadget dtm_to_turnbased(const det_tm& m, uint32_t n) {
    if (n < 2) throw error("MissingInit: need at least two tape cells");
    const uint32_t nr = static_cast<uint32_t>(m.state_names.size());
    const uint32_t ng = static_cast<uint32_t>(m.alphabet.size());
    const uint32_t action_count = nr * ng * 2;

    std::vector<std::string> action_names;
    action_names.reserve(action_count);
    for (uint32_t r = 0; r < nr; ++r)
        for (uint32_t g = 0; g < ng; ++g)
            for (int dir = 0; dir < 2; ++dir)
                action_names.push_back(m.state_names[r] + "." + m.alphabet[g] + "." +
                                       (dir ? "R" : "L"));
    const auto action_of = [&](uint32_t r, uint32_t g, tm_dir dir) -> uint32_t {
        return (r * ng + g) * 2 + (dir == tm_dir::right ? 1 : 0);
    };

    explicit_system sys;
    for (uint32_t i = 0; i < n; ++i) sys.states.push_back("p" + std::to_string(i));
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t a = 0; a < action_count; ++a)
            sys.states.push_back("p" + std::to_string(i) + "." + action_names[a]);
    const uint32_t accept_idx = static_cast<uint32_t>(sys.states.size());
    sys.states.push_back("accept");
    const uint32_t reject_idx = accept_idx + 1;
    sys.states.push_back("reject");

    sys.actions.assign(n, action_names);
    sys.goals.assign(n, std::vector<uint8_t>(sys.states.size(), 0));
    for (uint32_t i = 0; i < n; ++i) sys.goals[i][accept_idx] = 1;
    sys.init = m.accepting[m.init] ? accept_idx : 0;

    const uint64_t dcount = sys.decision_count();
    uint64_t rows = 0;
    if (!checked_mul(sys.states.size(), dcount, rows) || rows > default_row_cap)
        throw cap_error(rows, default_row_cap);
    sys.table.assign(rows, -1);

    const auto announce_idx = [&](uint32_t pos, uint32_t action) -> uint32_t {
        return n + pos * action_count + action;
    };
    for (uint32_t v = 0; v < sys.states.size(); ++v) {
        uint32_t fixed_target = UINT32_MAX;
        if (v >= accept_idx) {
            fixed_target = v; // verdict sinks absorb
        } else if (v >= n) {
            const uint32_t a = (v - n) % action_count;
            const uint32_t pos = (v - n) / action_count;
            const uint32_t next_state = a / (ng * 2);
            const tm_dir dir = (a & 1) ? tm_dir::right : tm_dir::left;
            const int64_t next_pos =
                static_cast<int64_t>(pos) + (dir == tm_dir::right ? 1 : -1);
            if (next_pos < 0 || next_pos >= static_cast<int64_t>(n))
                fixed_target = reject_idx;
            else if (m.accepting[next_state])
                fixed_target = accept_idx;
            else
                fixed_target = static_cast<uint32_t>(next_pos);
        }
        for (uint64_t d = 0; d < dcount; ++d) {
            uint32_t succ = fixed_target;
            if (succ == UINT32_MAX) {
                // Head position state: only the owner's component is read.
                const std::vector<uint32_t> comp = sys.decision_at(d);
                succ = announce_idx(v, comp[v]);
            }
            sys.table[v * dcount + d] = succ;
        }
    }

    // Agent i tracks a subID over the cells next to position i.
    turnbased_gadget out;
    out.sys = sys;
    const uint32_t per_cell = ng * (nr + 1); // symbol and head-or-none
    for (uint32_t agent = 0; agent < n; ++agent) {
        std::vector<uint32_t> win_cells;
        if (agent > 0) win_cells.push_back(agent - 1);
        win_cells.push_back(agent);
        if (agent + 1 < n) win_cells.push_back(agent + 1);
        const size_t wlen = win_cells.size();
        size_t scount = 1;
        for (size_t i = 0; i < wlen; ++i) scount *= per_cell;

        const auto decode = [&](uint64_t code) {
            std::vector<std::pair<uint32_t, int64_t>> cells(wlen);
            for (size_t i = wlen; i-- > 0;) {
                const uint32_t digit = static_cast<uint32_t>(code % per_cell);
                code /= per_cell;
                cells[i] = {digit / (nr + 1),
                            static_cast<int64_t>(digit % (nr + 1)) - 1};
            }
            return cells;
        };
        const auto encode = [&](const std::vector<std::pair<uint32_t, int64_t>>& cells) {
            uint64_t code = 0;
            for (size_t i = 0; i < wlen; ++i)
                code = code * per_cell +
                       (uint64_t{cells[i].first} * (nr + 1) +
                        static_cast<uint64_t>(cells[i].second + 1));
            return code;
        };

        explicit_transducer tr;
        tr.inputs = sys.states;
        tr.actions = action_names;
        for (uint64_t s = 0; s < scount; ++s) {
            std::string name = "w";
            const auto cells = decode(s);
            for (size_t i = 0; i < wlen; ++i) {
                name += "." + m.alphabet[cells[i].first];
                if (cells[i].second >= 0)
                    name += "+" + m.state_names[static_cast<size_t>(cells[i].second)];
            }
            tr.states.push_back(name);
        }
        {
            std::vector<std::pair<uint32_t, int64_t>> cells(wlen, {m.blank, -1});
            for (size_t i = 0; i < wlen; ++i)
                if (win_cells[i] == 0) cells[i].second = m.init;
            tr.init = static_cast<uint32_t>(encode(cells));
        }
        tr.trans.assign(scount * sys.states.size(), -1);
        tr.output.assign(scount, -1);
        for (uint64_t s = 0; s < scount; ++s) {
            auto cells = decode(s);
            // Output: the machine's move when the head sits on this agent's
            // own cell; the canonical first action otherwise (never read).
            uint32_t move = 0;
            for (size_t i = 0; i < wlen; ++i) {
                if (win_cells[i] != agent || cells[i].second < 0) continue;
                const uint32_t r = static_cast<uint32_t>(cells[i].second);
                if (m.accepting[r]) break;
                if (const auto rule = m.rule_for(r, cells[i].first))
                    move = action_of(rule->next_state, rule->write, rule->dir);
                break;
            }
            tr.output[s] = move;

            for (uint32_t v = 0; v < sys.states.size(); ++v) {
                uint64_t next = s;
                if (v >= n && v < accept_idx) {
                    const uint32_t a = (v - n) % action_count;
                    const uint32_t pos = (v - n) / action_count;
                    const uint32_t next_state = a / (ng * 2);
                    const uint32_t write = (a / 2) % ng;
                    const tm_dir dir = (a & 1) ? tm_dir::right : tm_dir::left;
                    const int64_t next_pos =
                        static_cast<int64_t>(pos) + (dir == tm_dir::right ? 1 : -1);
                    bool relevant = false;
                    for (uint32_t c : win_cells)
                        if (c == pos || static_cast<int64_t>(c) == next_pos) relevant = true;
                    if (relevant && next_pos >= 0 && next_pos < static_cast<int64_t>(n)) {
                        auto updated = cells;
                        for (size_t i = 0; i < wlen; ++i) {
                            if (win_cells[i] == pos) {
                                updated[i].first = write;
                                updated[i].second = -1;
                            }
                            if (static_cast<int64_t>(win_cells[i]) == next_pos)
                                updated[i].second = next_state;
                        }
                        next = encode(updated);
                    }
                }
                tr.trans[s * sys.states.size() + v] = static_cast<int64_t>(next);
            }
        }
        out.profile.strategies.push_back(std::move(tr));
    }
    return out;
}

one_agent_gadget dtm_to_one_agent_circuit(const det_tm& m, uint32_t n) {
    if (n == 0) throw error("MissingInit: need at least one tape cell");
    const uint32_t nr = static_cast<uint32_t>(m.state_names.size());
    const uint32_t ng = static_cast<uint32_t>(m.alphabet.size());

    id_layout lay;
    lay.flags = 1; // error sink bit
    lay.n = n;
    lay.sym_bits = bit_width(ng);
    lay.head_bits = bit_width(uint64_t{nr} + 1);
    const uint32_t sv = lay.state_vars();

    const uint32_t action_count = n * nr * ng * 2;
    const uint32_t a_bits = bit_width(action_count);
    const auto enc_action = [&](uint32_t p, uint32_t r, uint32_t g, tm_dir dir) -> uint64_t {
        return ((uint64_t{p} * nr + r) * ng + g) * 2 + (dir == tm_dir::right ? 1 : 0);
    };

    one_agent_gadget out;
    circuit_system& cs = out.sys;
    cs.state_vars = sv;
    cs.agent_action_vars = {a_bits};
    cs.init = encode_initial_id(lay, m.blank, m.init);
    cs.init[0] = 0;

    {
        circuit_builder b(sv + a_bits);
        const ref err = b.input(0);
        const head_probe probe = probe_cells(b, lay, 0);
        const std::vector<ref> act = input_bus(sv, a_bits);

        std::vector<ref> match_any, oob_terms, head_ok_terms;
        std::vector<ref> match_p(n, b.constant(false));
        std::vector<ref> arrive(n, b.constant(false));
        std::vector<std::vector<ref>> write_terms(lay.sym_bits), next_head_terms(lay.head_bits);
        for (uint32_t p = 0; p < n; ++p) {
            for (uint32_t r = 0; r < nr; ++r) {
                for (uint32_t g = 0; g < ng; ++g) {
                    for (int dirv = 0; dirv < 2; ++dirv) {
                        const tm_dir dir = dirv ? tm_dir::right : tm_dir::left;
                        const ref match = b.equals_const(act, enc_action(p, r, g, dir));
                        match_any.push_back(match);
                        match_p[p] = b.lor(match_p[p], match);
                        const int64_t next_pos =
                            static_cast<int64_t>(p) + (dir == tm_dir::right ? 1 : -1);
                        if (next_pos < 0 || next_pos >= static_cast<int64_t>(n)) {
                            oob_terms.push_back(match);
                        } else {
                            arrive[static_cast<size_t>(next_pos)] =
                                b.lor(arrive[static_cast<size_t>(next_pos)], match);
                            const uint64_t henc = uint64_t{r} + 1;
                            for (uint32_t i = 0; i < lay.head_bits; ++i)
                                if ((henc >> (lay.head_bits - 1 - i)) & 1)
                                    next_head_terms[i].push_back(match);
                        }
                        for (uint32_t i = 0; i < lay.sym_bits; ++i)
                            if ((g >> (lay.sym_bits - 1 - i)) & 1)
                                write_terms[i].push_back(match);
                    }
                }
            }
        }
        for (uint32_t p = 0; p < n; ++p)
            head_ok_terms.push_back(b.land(match_p[p], probe.prio[p]));

        const ref decoded = b.any(match_any);
        const ref oob = b.any(oob_terms);
        const ref head_ok = b.any(head_ok_terms);
        const ref bad = b.lor(b.lor(b.lnot(decoded), b.lnot(head_ok)), oob);

        std::vector<ref> write_bus(lay.sym_bits), next_head_bus(lay.head_bits);
        for (uint32_t i = 0; i < lay.sym_bits; ++i) write_bus[i] = b.any(write_terms[i]);
        for (uint32_t i = 0; i < lay.head_bits; ++i) next_head_bus[i] = b.any(next_head_terms[i]);

        std::vector<ref> normal{b.constant(false)};
        const std::vector<ref> zero_head = b.constant_bus(0, lay.head_bits);
        for (uint32_t c = 0; c < n; ++c) {
            const std::vector<ref> sym = b.mux_bus(match_p[c], write_bus, probe.sym[c]);
            const std::vector<ref> head = b.mux_bus(arrive[c], next_head_bus, zero_head);
            normal.insert(normal.end(), sym.begin(), sym.end());
            normal.insert(normal.end(), head.begin(), head.end());
        }

        std::vector<ref> err_bus = b.constant_bus(0, sv);
        err_bus[0] = b.constant(true);
        std::vector<ref> outb = b.mux_bus(bad, err_bus, normal);
        outb = b.mux_bus(err, input_bus(0, sv), outb);
        cs.phi = b.build(outb);
    }
    {
        circuit_builder gb(sv);
        const head_probe gp = probe_cells(gb, lay, 0);
        std::vector<ref> goal_terms;
        for (uint32_t r = 0; r < nr; ++r) {
            if (!m.accepting[r]) continue;
            for (uint32_t c = 0; c < n; ++c)
                goal_terms.push_back(
                    gb.land(gp.prio[c], gb.equals_const(gp.head[c], uint64_t{r} + 1)));
        }
        cs.goal_circuits.push_back(gb.build({gb.any(goal_terms)}));
    }

    // The strategy mirrors the system state and reads the move off it.
    circuit_transducer tr;
    tr.state_vars = sv;
    tr.init = cs.init;
    {
        circuit_builder b(sv + sv);
        std::vector<ref> outs;
        for (uint32_t i = 0; i < sv; ++i) outs.push_back(b.input(sv + i));
        tr.omega = b.build(outs);
    }
    {
        circuit_builder b(sv);
        const head_probe probe = probe_cells(b, lay, 0);
        std::vector<std::vector<ref>> bit_terms(a_bits);
        for (uint32_t c = 0; c < n; ++c) {
            for (uint32_t r = 0; r < nr; ++r) {
                if (m.accepting[r]) continue;
                for (uint32_t g = 0; g < ng; ++g) {
                    const auto rule = m.rule_for(r, g);
                    if (!rule) continue;
                    const ref at = b.all(std::vector<ref>{
                        probe.prio[c], b.equals_const(probe.head[c], uint64_t{r} + 1),
                        b.equals_const(probe.sym[c], g)});
                    const uint64_t code = enc_action(c, rule->next_state, rule->write, rule->dir);
                    for (uint32_t i = 0; i < a_bits; ++i)
                        if ((code >> (a_bits - 1 - i)) & 1) bit_terms[i].push_back(at);
                }
            }
        }
        std::vector<ref> outs(a_bits);
        for (uint32_t i = 0; i < a_bits; ++i) outs[i] = b.any(bit_terms[i]);
        tr.output = b.build(outs);
    }
    out.profile.strategies.push_back(std::move(tr));
    return out;
}

} // namespace wne
