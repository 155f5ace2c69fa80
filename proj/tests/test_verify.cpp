#include "fixtures.hpp"
#include "oracle.hpp"
#include "realize.hpp"
#include "verify.hpp"

#include <doctest.h>

#include <random>

using namespace wne;
using test::agents;
using test::make_p1;
using test::make_pbx;
using test::make_pempty;
using test::make_sys1;

TEST_CASE("product_step follows profile outputs") {
    const explicit_system sys = make_sys1();
    const explicit_profile p1 = make_p1(sys);
    const auto [cfg, d] = product_step(sys, p1, {0, 0, 0});
    CHECK(cfg == std::vector<uint32_t>{1, 0, 0});
    CHECK(d == std::vector<uint32_t>{0, 0});

    // Sinks absorb under any profile.
    const auto [sink_cfg, sink_d] = product_step(sys, make_pbx(sys), {2, 0, 0});
    CHECK(sink_cfg[0] == 2);
}

TEST_CASE("primary_trace of the fixture profiles") {
    const explicit_system sys = make_sys1();

    const explicit_trace_report p1 = primary_trace(sys, make_p1(sys));
    REQUIRE(p1.path.size() == 3);
    CHECK(p1.path[0][0] == 0);
    CHECK(p1.path[1][0] == 1);
    CHECK(p1.cycle_start == 1);
    CHECK(p1.path.back() == p1.path[p1.cycle_start]);
    CHECK(p1.winning == agents({0}));

    const explicit_trace_report pe = primary_trace(sys, make_pempty(sys));
    CHECK(pe.cycle_start == 0);
    CHECK(pe.winning == agents({}));
    CHECK(pe.path.size() == 2); // s0 repeats immediately
}

TEST_CASE("primary_trace on a one-state system repeats at once") {
    explicit_system sys;
    sys.states = {"only"};
    sys.init = 0;
    sys.actions = {{"l", "r"}};
    sys.goals = {{1}};
    sys.table.assign(2, 0);
    explicit_profile prof{{test::constant_strategy(sys, 0, 1)}};
    const explicit_trace_report t = primary_trace(sys, prof);
    CHECK(t.cycle_start == 0);
    CHECK(t.path.size() == 2);
    CHECK(t.winning == agents({0}));
}

TEST_CASE("deviation_reachable on the fixture profiles") {
    const explicit_system sys = make_sys1();

    // Agent 1 cannot reach s2 against P-empty: only s0 and s1 show up.
    CHECK(!deviation_reachable(sys, make_pempty(sys), 1).has_value());

    // Against P-bx agent 0 deviates to a once and wins.
    const auto hit = deviation_reachable(sys, make_pbx(sys), 0);
    REQUIRE(hit.has_value());
    CHECK(hit->actions == std::vector<uint32_t>{0});
    CHECK(hit->reached[0] == 1);

    // A goal already satisfied at the initial state yields an empty path.
    explicit_system early = make_sys1();
    early.goals[1][0] = 1;
    const auto immediate = deviation_reachable(early, make_pempty(early), 1);
    REQUIRE(immediate.has_value());
    CHECK(immediate->actions.empty());
    CHECK(immediate->reached[0] == 0);
}

TEST_CASE("verify on the fixture profiles") {
    const explicit_system sys = make_sys1();

    const verify_verdict yes = verify(sys, make_p1(sys), agents({0}));
    CHECK(yes.is_wne);
    CHECK(yes.observed == agents({0}));
    CHECK(!yes.counterexample.has_value());

    const verify_verdict dev = verify(sys, make_pbx(sys), agents({1}));
    CHECK(!dev.is_wne);
    REQUIRE(dev.counterexample.has_value());
    const auto* wit = std::get_if<deviation_witness>(&*dev.counterexample);
    REQUIRE(wit != nullptr);
    CHECK(wit->agent == 0);
    CHECK(wit->actions == std::vector<std::string>{"a"});
    CHECK(wit->reached_state == "s1");

    const verify_verdict mism = verify(sys, make_p1(sys), agents({1}));
    CHECK(!mism.is_wne);
    REQUIRE(mism.counterexample.has_value());
    const auto* gm = std::get_if<goal_mismatch>(&*mism.counterexample);
    REQUIRE(gm != nullptr);
    CHECK(gm->expected == agents({1}));
    CHECK(gm->observed == agents({0}));
}

TEST_CASE("deviating agents are scanned in ascending order") {
    // Both agents can profitably deviate from the (a,y) loop; the verdict
    // must name agent 0.
    explicit_system sys = make_sys1();
    sys.table[test::didx(sys, {0, 0})] = 2; // (a,x) now reaches agent 1's goal
    sys.table[test::didx(sys, {1, 1})] = 1; // (b,y) now reaches agent 0's goal
    sys.table[test::didx(sys, {1, 0})] = 0;
    REQUIRE(validate_system(sys).empty());
    const explicit_profile prof = make_pempty(sys);
    REQUIRE(deviation_reachable(sys, prof, 0).has_value());
    REQUIRE(deviation_reachable(sys, prof, 1).has_value());
    const verify_verdict v = verify(sys, prof, 0);
    REQUIRE(!v.is_wne);
    const auto* wit = std::get_if<deviation_witness>(&*v.counterexample);
    REQUIRE(wit != nullptr);
    CHECK(wit->agent == 0);
}

TEST_CASE("verify rejects arity and representation mismatches") {
    const explicit_system sys = make_sys1();
    explicit_profile short_prof{{test::constant_strategy(sys, 0, 0)}};
    CHECK_THROWS_WITH_AS(verify(sys, short_prof, 0), doctest::Contains("ArityMismatch"), error);

    explicit_profile swapped{{test::constant_strategy(sys, 1, 0),
                              test::constant_strategy(sys, 0, 0)}};
    CHECK_THROWS_WITH_AS(verify(sys, swapped, 0), doctest::Contains("RepresentationMismatch"),
                         error);
}

TEST_CASE("circuit verify matches the explicit fixture") {
    const circuit_system cs = test::make_sys1_circuit();
    const circuit_profile p1c = test::make_p1_circuit(cs);
    const explicit_system sys = make_sys1();
    const explicit_profile p1 = make_p1(sys);
    for (agent_set w = 0; w < 4; ++w) {
        const verify_verdict c = verify(cs, p1c, w);
        const verify_verdict e = verify(sys, p1, w);
        CHECK(c.is_wne == e.is_wne);
        CHECK(c.observed == e.observed);
    }
}

TEST_CASE("circuit product_step equals explicit product_step on the encoding") {
    const circuit_system cs = test::make_sys1_circuit();
    const circuit_profile prof = test::make_p1_circuit(cs);
    const circuit_trace_report trace = primary_trace(cs, prof);
    REQUIRE(trace.path.size() >= 2);
    CHECK(bits_to_string({trace.path[0].data(), 2}) == "00");
    CHECK(bits_to_string({trace.path[1].data(), 2}) == "01");
    CHECK(trace.winning == agents({0}));
}

TEST_CASE("verify agrees between circuit profiles and their unfoldings") {
    std::mt19937_64 rng(77);
    int done = 0;
    for (uint64_t seed = 0; done < 25; ++seed) {
        const circuit_system cs = test::gen_random_circuit_system(seed, 3, 2, 1);
        if (!validate_circuit_system(cs).empty()) continue;
        const circuit_profile cprof = test::gen_random_circuit_profile(cs, seed + 1000);
        const explicit_system sys = unfold(cs);
        explicit_profile prof;
        for (const circuit_transducer& ct : cprof.strategies)
            prof.strategies.push_back(unfold_transducer(ct, cs));
        for (agent_set w = 0; w < 4; ++w) {
            const verify_verdict c = verify(cs, cprof, w);
            const verify_verdict e = verify(sys, prof, w);
            CHECK(c.is_wne == e.is_wne);
            CHECK(c.observed == e.observed);
        }
        ++done;
        (void)rng;
    }
}

TEST_CASE("primary trace length respects the product bound") {
    std::mt19937_64 rng(41);
    for (int round = 0; round < 50; ++round) {
        random_system_params p;
        p.state_count = 1 + static_cast<uint32_t>(rng() % 5);
        p.agent_count = 1 + static_cast<uint32_t>(rng() % 3);
        p.seed = rng();
        const explicit_system sys = gen_random_explicit(p);
        const explicit_profile prof = gen_random_profile(sys, 2, rng());
        const explicit_trace_report t = primary_trace(sys, prof);
        size_t bound = sys.state_count();
        for (const explicit_transducer& tr : prof.strategies) bound *= tr.states.size();
        CHECK(t.path.size() <= bound + 1);
        const explicit_trace_report again = primary_trace(sys, prof);
        CHECK(again.path == t.path);
        CHECK(again.decisions == t.decisions);
    }
}

TEST_CASE("a verified equilibrium is realizable") {
    std::mt19937_64 rng(53);
    for (int round = 0; round < 60; ++round) {
        random_system_params p;
        p.state_count = 1 + static_cast<uint32_t>(rng() % 4);
        p.agent_count = 1 + static_cast<uint32_t>(rng() % 2);
        p.goal_density = 0.4;
        p.seed = rng();
        const explicit_system sys = gen_random_explicit(p);
        const explicit_profile prof = gen_random_profile(sys, 2, rng());
        for (agent_set w = 0; w < (agent_set{1} << p.agent_count); ++w) {
            if (verify(sys, prof, w).is_wne) CHECK(realize_explicit(sys, w).yes);
        }
    }
}
