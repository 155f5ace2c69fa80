#include "gadgets.hpp"
#include "io.hpp"
#include "oracle.hpp"
#include "realize.hpp"
#include "verify.hpp"

#include <doctest.h>

#include <random>

using namespace wne;

namespace {

reachability_game two_cycle(bool goal_at_w) {
    reachability_game g;
    g.state_names = {"u", "w"};
    g.owner = {0, 1};
    g.init = 0;
    g.goal = {0, goal_at_w ? uint8_t{1} : uint8_t{0}};
    g.succ = {{1}, {0}};
    return g;
}

reachability_game diamond() {
    reachability_game g;
    g.state_names = {"r", "safe", "w", "top"};
    g.owner = {0, 0, 1, 0};
    g.goal = {1, 0, 0, 0};
    g.succ = {{0}, {1}, {0, 1}, {2}};
    g.init = 2;
    return g;
}

} // namespace

TEST_CASE("game gadget: the reacher-won cycle admits no empty equilibrium") {
    const explicit_system sys = game_to_system(two_cycle(true));
    CHECK(validate_system(sys).empty());
    CHECK(!realize_explicit(sys, 0).yes);
}

TEST_CASE("game gadget: an unreachable goal flips the verdict") {
    CHECK(realize_explicit(game_to_system(two_cycle(false)), 0).yes);
}

TEST_CASE("game gadget: avoider-winning diamond") {
    CHECK(who_wins(diamond()) == 1);
    CHECK(realize_explicit(game_to_system(diamond()), 0).yes);
}

TEST_CASE("game gadget: size stays within the cubic row bound") {
    for (uint64_t seed : {1ull, 2ull, 3ull}) {
        const reachability_game g = gen_random_game(10, seed);
        const explicit_system sys = game_to_system(g);
        const size_t n = g.state_count();
        CHECK(sys.table.size() <= (n + 2) * n * n);
        CHECK(validate_system(sys).empty());
    }
}

TEST_CASE("game encoding mirrors the game winner on random games") {
    std::mt19937_64 rng(505);
    for (int round = 0; round < 100; ++round) {
        const reachability_game g = gen_random_game(10, rng());
        const explicit_system sys = game_to_system(g);
        CHECK(realize_explicit(sys, 0).yes == (who_wins(g) == 1));
    }
}

namespace {

alt_tm accept_root() {
    alt_tm m;
    m.state_names = {"r0"};
    m.alphabet = {"_"};
    m.blank = 0;
    m.init = 0;
    m.labels = {alt_label::accept};
    return m;
}

alt_tm reject_all() {
    alt_tm m;
    m.state_names = {"r0"};
    m.alphabet = {"_"};
    m.blank = 0;
    m.init = 0;
    m.labels = {alt_label::reject};
    return m;
}

// One deterministic step into acceptance.
alt_tm one_step_accept() {
    alt_tm m;
    m.state_names = {"r0", "racc"};
    m.alphabet = {"_", "a"};
    m.blank = 0;
    m.init = 0;
    m.labels = {alt_label::det, alt_label::accept};
    m.rules = {{0, 0, 1, 1, tm_dir::right}};
    return m;
}

// Existential root chooses between acceptance and a rejecting loop.
alt_tm or_alternation() {
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
    return m;
}

// Universal root must survive the branch that runs off the tape.
alt_tm and_alternation() {
    alt_tm m = or_alternation();
    m.labels[0] = alt_label::univ;
    return m;
}

void check_alternating_encoding(const alt_tm& m, uint32_t n) {
    const circuit_system cs = atm_to_circuit_system(m, n);
    REQUIRE(validate_circuit_system(cs).empty());
    CHECK(realize_circuit(cs, 0).yes == !atm_accepts(m, n));
}

} // namespace

TEST_CASE("alternating encoding inverts acceptance on the curated machines") {
    check_alternating_encoding(accept_root(), 1);
    check_alternating_encoding(reject_all(), 1);
    check_alternating_encoding(one_step_accept(), 2);
    check_alternating_encoding(or_alternation(), 2);
    check_alternating_encoding(and_alternation(), 2);
    check_alternating_encoding(or_alternation(), 3);
    check_alternating_encoding(and_alternation(), 3);
}

TEST_CASE("alternating gadget circuits stay polynomial") {
    for (uint32_t n = 1; n <= 3; ++n) {
        const alt_tm m = or_alternation();
        const circuit_system cs = atm_to_circuit_system(m, n);
        const size_t rg = m.state_names.size() * m.alphabet.size();
        CHECK(cs.phi.gates.size() <= 120 * rg * rg * rg * n);
        CHECK(cs.goal_circuits[0].gates.size() <= 120 * rg * rg * rg * n);
    }
}

TEST_CASE("alternating encoding handles a wider alphabet") {
    // Reuse the walker's shape with an existential shortcut: the machine
    // accepts iff either branch can reach the accepting state in bounds.
    alt_tm m;
    m.state_names = {"r0", "r1", "racc"};
    m.alphabet = {"_", "a", "b"};
    m.blank = 0;
    m.init = 0;
    m.labels = {alt_label::exist, alt_label::det, alt_label::accept};
    m.rules = {{0, 0, 2, 2, tm_dir::right}, // straight into acceptance
               {0, 0, 1, 1, tm_dir::right}, // or detour right
               {1, 0, 1, 1, tm_dir::right}, {1, 1, 1, 2, tm_dir::right},
               {1, 2, 1, 0, tm_dir::right}};
    check_alternating_encoding(m, 2);
    check_alternating_encoding(m, 3);
    alt_tm univ = m;
    univ.labels[0] = alt_label::univ; // the detour runs off the tape
    check_alternating_encoding(univ, 2);
    CHECK(atm_accepts(m, 2));
    CHECK(!atm_accepts(univ, 2));
}

namespace {

det_tm writer() {
    det_tm m;
    m.state_names = {"r0", "racc"};
    m.alphabet = {"_", "a"};
    m.blank = 0;
    m.init = 0;
    m.accepting = {0, 1};
    m.rules = {{0, 0, 1, 1, tm_dir::right}, {0, 1, 1, 1, tm_dir::right}};
    return m;
}

det_tm oob_rejecter() {
    det_tm m;
    m.state_names = {"r0"};
    m.alphabet = {"_", "a"};
    m.blank = 0;
    m.init = 0;
    m.accepting = {0};
    m.rules = {{0, 0, 0, 1, tm_dir::left}, {0, 1, 0, 1, tm_dir::left}};
    return m;
}

det_tm looper() {
    det_tm m;
    m.state_names = {"r0", "r1"};
    m.alphabet = {"_"};
    m.blank = 0;
    m.init = 0;
    m.accepting = {0, 0};
    m.rules = {{0, 0, 1, 0, tm_dir::right}, {1, 0, 0, 0, tm_dir::left}};
    return m;
}

// Enters the accepting state only through a move that falls off the tape;
// the simulation rejects, and so must both gadgets.
det_tm accept_while_falling() {
    det_tm m;
    m.state_names = {"r0", "racc"};
    m.alphabet = {"_", "a"};
    m.blank = 0;
    m.init = 0;
    m.accepting = {0, 1};
    m.rules = {{0, 0, 1, 1, tm_dir::left}, {0, 1, 1, 1, tm_dir::left}};
    return m;
}

// Three symbols (two-bit fields) and a three-cell round trip: writes b,
// walks right twice, then returns into acceptance. Needs n >= 3.
det_tm wide_alphabet_walker() {
    det_tm m;
    m.state_names = {"r0", "r1", "r2", "racc"};
    m.alphabet = {"_", "a", "b"};
    m.blank = 0;
    m.init = 0;
    m.accepting = {0, 0, 0, 1};
    m.rules = {{0, 0, 1, 2, tm_dir::right}, {0, 1, 1, 2, tm_dir::right},
               {0, 2, 1, 2, tm_dir::right}, {1, 0, 2, 1, tm_dir::right},
               {1, 1, 2, 1, tm_dir::right}, {1, 2, 2, 1, tm_dir::right},
               {2, 0, 3, 2, tm_dir::left},  {2, 1, 3, 2, tm_dir::left},
               {2, 2, 3, 2, tm_dir::left}};
    return m;
}

void check_turnbased_encoding(const det_tm& m, uint32_t n) {
    const turnbased_gadget g = dtm_to_turnbased(m, n);
    REQUIRE(validate_system(g.sys).empty());
    for (const explicit_transducer& tr : g.profile.strategies)
        REQUIRE(validate_transducer(tr).empty());
    const agent_set omega = all_agents(n);
    CHECK(verify(g.sys, g.profile, omega).is_wne == dtm_accepts(m, n));
}

void check_one_agent_encoding(const det_tm& m, uint32_t n) {
    const one_agent_gadget g = dtm_to_one_agent_circuit(m, n);
    REQUIRE(validate_circuit_system(g.sys).empty());
    REQUIRE(validate_circuit_transducer(g.profile.strategies[0], g.sys, 0).empty());
    CHECK(verify(g.sys, g.profile, agent_set{1}).is_wne == dtm_accepts(m, n));
}

} // namespace

TEST_CASE("turn-based encoding matches simulation on the curated machines") {
    check_turnbased_encoding(writer(), 3);
    check_turnbased_encoding(writer(), 4);
    check_turnbased_encoding(oob_rejecter(), 3);
    check_turnbased_encoding(looper(), 3);
    check_turnbased_encoding(accept_while_falling(), 2);
    check_turnbased_encoding(wide_alphabet_walker(), 2); // falls off the edge
    check_turnbased_encoding(wide_alphabet_walker(), 3);
    CHECK(!dtm_accepts(wide_alphabet_walker(), 2));
    CHECK(dtm_accepts(wide_alphabet_walker(), 3));
}

TEST_CASE("turn-based encoding traces terminate within the product bound") {
    const det_tm m = looper();
    const turnbased_gadget g = dtm_to_turnbased(m, 3);
    const explicit_trace_report t = primary_trace(g.sys, g.profile);
    size_t bound = g.sys.state_count();
    for (const explicit_transducer& tr : g.profile.strategies) bound *= tr.states.size();
    CHECK(t.path.size() <= bound + 1);
    CHECK(t.winning == 0); // the loop never accepts
}

TEST_CASE("turn-based encoding accepts immediately-accepting machines") {
    det_tm m = writer();
    m.init = 1;
    check_turnbased_encoding(m, 2);
    CHECK(dtm_accepts(m, 2));
}

TEST_CASE("one-agent encoding matches simulation on the curated machines") {
    det_tm instant = writer();
    instant.init = 1;
    check_one_agent_encoding(instant, 1); // initial snapshot already satisfies the goal
    check_one_agent_encoding(writer(), 2);
    check_one_agent_encoding(writer(), 3);
    check_one_agent_encoding(oob_rejecter(), 2);
    check_one_agent_encoding(looper(), 3);
    check_one_agent_encoding(accept_while_falling(), 2);
    check_one_agent_encoding(wide_alphabet_walker(), 2);
    check_one_agent_encoding(wide_alphabet_walker(), 3);
    check_one_agent_encoding(wide_alphabet_walker(), 4);
}

TEST_CASE("one-agent gadget circuits stay polynomial") {
    for (uint32_t n = 1; n <= 4; ++n) {
        const one_agent_gadget g = dtm_to_one_agent_circuit(writer(), n);
        const size_t rg = 2 * 2; // |R| * |Gamma|
        CHECK(g.sys.phi.gates.size() <= 120 * rg * rg * rg * n);
        CHECK(g.profile.strategies[0].output.gates.size() <= 120 * rg * rg * rg * n);
    }
}

TEST_CASE("turn-based gadget ignores non-owner action components") {
    const turnbased_gadget g = dtm_to_turnbased(writer(), 3);
    const explicit_system& sys = g.sys;
    const uint64_t dcount = sys.decision_count();
    // At head-position states only the owner's component matters.
    for (uint64_t d = 0; d + 1 < std::min<uint64_t>(dcount, 64); ++d) {
        const auto c1 = sys.decision_at(d);
        for (uint64_t e = d + 1; e < std::min<uint64_t>(dcount, 64); ++e) {
            const auto c2 = sys.decision_at(e);
            if (c1[0] == c2[0]) CHECK(sys.step(0, d) == sys.step(0, e));
        }
    }
}
