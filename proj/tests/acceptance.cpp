// Acceptance suite: one line per criterion, nonzero exit when any fails.
// Criteria cover the fixture verdicts, oracle agreement at scale, witness
// soundness, the four gadget equivalences, circuit/explicit consistency,
// game-solver properties, the witness and trace bounds, and the document
// round-trips plus the CLI exit-code contract.

#include "fixtures.hpp"
#include "gadgets.hpp"
#include "io.hpp"
#include "oracle.hpp"
#include "realize.hpp"
#include "verify.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

using namespace wne;
using test::agents;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail = "") {
    std::printf("criterion %2d [%s] %s%s%s\n", id, pass ? "PASS" : "FAIL", name.c_str(),
                detail.empty() ? "" : " - ", detail.c_str());
    if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string format_seconds(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2fs", s);
    return buf;
}

// ---- criterion 1: fixture verdicts -------------------------------------

void criterion_fixture() {
    const auto start = std::chrono::steady_clock::now();
    const explicit_system sys = test::make_sys1();
    const bool ok = realize_explicit(sys, agents({0})).yes &&
                    realize_explicit(sys, agents({1})).yes &&
                    !realize_explicit(sys, agents({0, 1})).yes &&
                    realize_explicit(sys, 0).yes;
    const double elapsed = seconds_since(start);
    report(1, "fixture verdicts YES/YES/NO/YES", ok && elapsed < 1.0,
           format_seconds(elapsed));
}

// ---- criteria 2, 3, 9a: oracle agreement, witnesses, lasso bound --------

void criterion_oracle_agreement() {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20240917);
    size_t checks = 0, mismatches = 0, yes_count = 0, uncertified = 0, bound_breaks = 0;
    for (int round = 0; round < 200; ++round) {
        random_system_params p;
        p.state_count = 1 + static_cast<uint32_t>(rng() % 5);
        p.agent_count = 1 + static_cast<uint32_t>(rng() % 3);
        p.goal_density = 0.3;
        p.seed = rng();
        const explicit_system sys = gen_random_explicit(p);
        for (agent_set w = 0; w < (agent_set{1} << p.agent_count); ++w) {
            const realizability_verdict engine = realize_explicit(sys, w);
            ++checks;
            if (engine.yes != brute_realize(sys, w)) ++mismatches;
            if (engine.yes) {
                ++yes_count;
                if (!certify_witness(sys, w, *engine.witness)) ++uncertified;
                if (engine.witness->prefix.size() + engine.witness->cycle.size() >
                    engine.pruned_states)
                    ++bound_breaks;
            }
        }
    }
    const double elapsed = seconds_since(start);
    report(2, "brute-force oracle agreement on 200 random systems",
           mismatches == 0 && elapsed < 300.0,
           std::to_string(checks) + " checks, " + std::to_string(mismatches) +
               " mismatches, " + format_seconds(elapsed));
    report(3, "every YES witness certifies", uncertified == 0,
           std::to_string(yes_count) + " witnesses, " + std::to_string(uncertified) +
               " rejected");
    report(9, "lasso length within the pruned state count", bound_breaks == 0,
           std::to_string(yes_count) + " lassos checked");
}

// ---- criterion 4: game gadget ------------------------------------------

void criterion_game_gadget() {
    std::mt19937_64 rng(505);
    size_t mismatches = 0;
    for (int round = 0; round < 100; ++round) {
        const reachability_game g = gen_random_game(10, rng());
        if (realize_explicit(game_to_system(g), 0).yes != (who_wins(g) == 1)) ++mismatches;
    }
    report(4, "game encoding matches the game winner on 100 games", mismatches == 0,
           std::to_string(mismatches) + " mismatches");
}

// ---- criterion 5: alternating machine gadget ----------------------------

void criterion_alternating_gadget() {
    std::vector<std::pair<alt_tm, uint32_t>> cases;
    {
        alt_tm m;
        m.state_names = {"r0"};
        m.alphabet = {"_"};
        m.blank = 0;
        m.init = 0;
        m.labels = {alt_label::accept};
        cases.emplace_back(m, 1);
        m.labels = {alt_label::reject};
        cases.emplace_back(m, 1);
    }
    {
        alt_tm m;
        m.state_names = {"r0", "racc", "run"};
        m.alphabet = {"_", "a"};
        m.blank = 0;
        m.init = 0;
        m.labels = {alt_label::exist, alt_label::accept, alt_label::det};
        m.rules = {{0, 0, 1, 1, tm_dir::right},
                   {0, 0, 2, 1, tm_dir::right},
                   {2, 0, 2, 0, tm_dir::right},
                   {2, 1, 2, 1, tm_dir::right}};
        cases.emplace_back(m, 2);
        cases.emplace_back(m, 3);
        alt_tm u = m;
        u.labels[0] = alt_label::univ;
        cases.emplace_back(u, 2);
        cases.emplace_back(u, 3);
    }
    size_t mismatches = 0;
    for (const auto& [m, n] : cases) {
        const circuit_system cs = atm_to_circuit_system(m, n);
        if (realize_circuit(cs, 0).yes != !atm_accepts(m, n)) ++mismatches;
    }
    report(5, "alternating-machine encoding across the curated suite", mismatches == 0,
           std::to_string(cases.size()) + " cases");
}

// ---- criteria 6, 9b: deterministic machine gadgets ----------------------

det_tm writer_machine() {
    det_tm m;
    m.state_names = {"r0", "racc"};
    m.alphabet = {"_", "a"};
    m.blank = 0;
    m.init = 0;
    m.accepting = {0, 1};
    m.rules = {{0, 0, 1, 1, tm_dir::right}, {0, 1, 1, 1, tm_dir::right}};
    return m;
}

det_tm oob_machine() {
    det_tm m;
    m.state_names = {"r0"};
    m.alphabet = {"_", "a"};
    m.blank = 0;
    m.init = 0;
    m.accepting = {0};
    m.rules = {{0, 0, 0, 1, tm_dir::left}, {0, 1, 0, 1, tm_dir::left}};
    return m;
}

det_tm looper_machine() {
    det_tm m;
    m.state_names = {"r0", "r1"};
    m.alphabet = {"_"};
    m.blank = 0;
    m.init = 0;
    m.accepting = {0, 0};
    m.rules = {{0, 0, 1, 0, tm_dir::right}, {1, 0, 0, 0, tm_dir::left}};
    return m;
}

void criterion_deterministic_gadgets() {
    const std::vector<std::pair<det_tm, uint32_t>> cases = {
        {writer_machine(), 3}, {writer_machine(), 4}, {oob_machine(), 3}, {looper_machine(), 3},
        {looper_machine(), 4}};
    size_t mismatches = 0;
    bool termination_ok = true;
    for (const auto& [m, n] : cases) {
        const bool expected = dtm_accepts(m, n);
        const turnbased_gadget tb = dtm_to_turnbased(m, n);
        if (verify(tb.sys, tb.profile, all_agents(n)).is_wne != expected) ++mismatches;
        const one_agent_gadget oa = dtm_to_one_agent_circuit(m, n);
        if (verify(oa.sys, oa.profile, agent_set{1}).is_wne != expected) ++mismatches;
        // Cycle detection must stop within the product bound.
        const explicit_trace_report trace = primary_trace(tb.sys, tb.profile);
        size_t bound = tb.sys.state_count();
        for (const explicit_transducer& tr : tb.profile.strategies)
            bound *= tr.states.size();
        if (trace.path.size() > bound + 1) termination_ok = false;
    }
    report(6, "deterministic-machine encodings match direct simulation",
           mismatches == 0 && termination_ok,
           std::to_string(cases.size()) + " machines x 2 encodings");
}

// ---- criterion 7: circuit/explicit consistency ---------------------------

void criterion_unfolding_consistency() {
    size_t realize_mismatch = 0, verify_mismatch = 0, trace_bound_breaks = 0;
    int done = 0;
    for (uint64_t seed = 1; done < 50; ++seed) {
        const uint32_t state_vars = 1 + static_cast<uint32_t>(seed % 5);
        const circuit_system cs = test::gen_random_circuit_system(seed * 7919, state_vars, 2, 1);
        if (!validate_circuit_system(cs).empty()) continue;
        ++done;
        const explicit_system sys = unfold(cs);
        for (agent_set w = 0; w < 4; ++w) {
            if (realize_circuit(cs, w).yes != realize_explicit(sys, w).yes)
                ++realize_mismatch;
        }
        const circuit_profile cprof = test::gen_random_circuit_profile(cs, seed * 104729);
        explicit_profile prof;
        for (const circuit_transducer& ct : cprof.strategies)
            prof.strategies.push_back(unfold_transducer(ct, cs));
        for (agent_set w = 0; w < 4; ++w) {
            const verify_verdict c = verify(cs, cprof, w);
            const verify_verdict e = verify(sys, prof, w);
            if (c.is_wne != e.is_wne || c.observed != e.observed) ++verify_mismatch;
        }
        size_t bound = size_t{1} << cs.state_vars;
        for (const circuit_transducer& ct : cprof.strategies)
            bound <<= ct.state_vars;
        if (primary_trace(cs, cprof).path.size() > bound + 1) ++trace_bound_breaks;
    }
    report(7, "circuit decisions agree with their unfoldings on 50 systems",
           realize_mismatch == 0 && verify_mismatch == 0,
           std::to_string(realize_mismatch + verify_mismatch) + " mismatches");
    report(9, "primary traces stay within the product bound", trace_bound_breaks == 0,
           "checked on the 50 circuit products");
}

// ---- criterion 8: game-solver properties ---------------------------------

void criterion_game_properties() {
    std::mt19937_64 rng(424242);
    size_t violations = 0;
    for (int round = 0; round < 500; ++round) {
        const reachability_game g = gen_random_game(10, rng());
        const win_partition wp = solve(g);
        for (size_t v = 0; v < g.state_count(); ++v) {
            size_t in_win0 = 0;
            for (uint32_t w : g.succ[v])
                if (wp.winner[w] == 0) ++in_win0;
            if (wp.winner[v] == 0 && !g.goal[v]) {
                if (g.owner[v] == 0 && in_win0 == 0) ++violations;
                if (g.owner[v] == 1 && in_win0 != g.succ[v].size()) ++violations;
            }
            if (wp.winner[v] == 1) {
                if (g.owner[v] == 0 && in_win0 != 0) ++violations;
                if (g.owner[v] == 1 && in_win0 == g.succ[v].size()) ++violations;
                if (g.goal[v]) ++violations;
            }
        }
        for (int playout = 0; playout < 100; ++playout) {
            const uint32_t start = static_cast<uint32_t>(rng() % g.state_count());
            const int winner = wp.winner[start];
            uint32_t v = start;
            bool hit = g.goal[v] != 0;
            for (size_t step = 0; step <= g.state_count() && !hit; ++step) {
                if (g.owner[v] == static_cast<uint8_t>(winner)) {
                    const int64_t s = winner == 0 ? wp.strat0[v] : wp.strat1[v];
                    v = s >= 0 ? static_cast<uint32_t>(s) : g.succ[v].front();
                } else {
                    v = g.succ[v][rng() % g.succ[v].size()];
                }
                hit = hit || g.goal[v];
            }
            if ((winner == 0) != hit) ++violations;
        }
    }
    report(8, "partition, fixed point and 100 playouts on 500 games", violations == 0,
           std::to_string(violations) + " violations");
}

// ---- criterion 10: round-trips and CLI contract --------------------------

int run_cli(const std::string& args) {
    const std::string cmd = std::string(WNE_CLI_BIN) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    if (status == -1 || !WIFEXITED(status)) return -1;
    return WEXITSTATUS(status);
}

void criterion_formats_and_cli() {
    bool ok = true;

    // Round-trips over one golden document per kind.
    const explicit_system sys = test::make_sys1();
    const std::string emas = io::serialize_emas(sys);
    ok = ok && io::serialize_emas(io::parse_emas(emas)) == emas;

    const circuit_system cs = test::make_sys1_circuit();
    const std::string cmas = io::serialize_cmas(cs);
    ok = ok && io::serialize_cmas(io::parse_cmas(cmas)) == cmas;

    const std::string etrans = io::serialize_etrans(test::constant_strategy(sys, 0, 0));
    ok = ok && io::serialize_etrans(io::parse_etrans(etrans)) == etrans;

    const std::string ctrans =
        io::serialize_ctrans(test::constant_circuit_strategy(cs, 0, false));
    ok = ok && io::serialize_ctrans(io::parse_ctrans(ctrans)) == ctrans;

    reachability_game game;
    game.state_names = {"u", "w"};
    game.owner = {0, 1};
    game.init = 0;
    game.goal = {0, 1};
    game.succ = {{1}, {0}};
    const std::string game_text = io::serialize_game(game);
    ok = ok && io::serialize_game(io::parse_game(game_text)) == game_text;

    const std::string dtm_text = io::serialize_dtm(writer_machine());
    ok = ok && io::serialize_dtm(io::parse_dtm(dtm_text)) == dtm_text;

    alt_tm atm;
    atm.state_names = {"r0"};
    atm.alphabet = {"_"};
    atm.blank = 0;
    atm.init = 0;
    atm.labels = {alt_label::accept};
    const std::string atm_text = io::serialize_atm(atm);
    ok = ok && io::serialize_atm(io::parse_atm(atm_text)) == atm_text;

    const std::string verdict_text = io::serialize_keyvalue(
        io::make_realize_verdict(sys, agents({0}), realize_explicit(sys, agents({0})), true));
    ok = ok && io::serialize_keyvalue(io::parse_keyvalue(verdict_text)) == verdict_text;

    const std::string report_text = io::serialize_keyvalue(io::make_report(
        consistency_suite(3, 1)));
    ok = ok && io::serialize_keyvalue(io::parse_keyvalue(report_text)) == report_text;

    // CLI exit-code contract end to end.
    char tmpl[] = "/tmp/wne_acceptance_XXXXXX";
    const char* dir_c = mkdtemp(tmpl);
    bool cli_ok = dir_c != nullptr;
    if (cli_ok) {
        const std::string dir = dir_c;
        const auto put = [&](const std::string& name, const std::string& text) {
            std::ofstream out(dir + "/" + name);
            out << text;
            return dir + "/" + name;
        };
        const std::string sys_path = put("sys1.emas", emas);
        const std::string game_path = put("cycle.game", game_text);
        cli_ok = cli_ok && run_cli("validate " + sys_path) == 0;
        cli_ok = cli_ok && run_cli("realize " + sys_path + " --coalition 0") == 0;
        cli_ok = cli_ok && run_cli("realize " + sys_path + " --coalition 0,1") == 1;
        cli_ok = cli_ok && run_cli("realize " + sys_path + " --coalition none") == 0;
        cli_ok = cli_ok && run_cli("solve-game " + game_path) == 0;
        cli_ok = cli_ok && run_cli("realize " + sys_path) == 2;
        cli_ok = cli_ok && run_cli("realize " + dir + "/missing.emas --coalition 0") == 2;
        cli_ok = cli_ok && run_cli("bogus-subcommand") == 2;
    }
    report(10, "format round-trips and the CLI exit-code contract", ok && cli_ok,
           ok ? (cli_ok ? "" : "cli contract failed") : "round-trip failed");
}

} // namespace

int main() {
    criterion_fixture();
    criterion_oracle_agreement();
    criterion_game_gadget();
    criterion_alternating_gadget();
    criterion_deterministic_gadgets();
    criterion_unfolding_consistency();
    criterion_game_properties();
    criterion_formats_and_cli();
    if (failures) {
        std::printf("%d criterion check(s) failed\n", failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
