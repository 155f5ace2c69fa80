#include "verify.hpp"

namespace wne {

namespace {

void check_explicit_arity(const explicit_system& sys, const explicit_profile& prof) {
    if (prof.strategies.size() != sys.agent_count())
        throw error("ArityMismatch: profile has " + std::to_string(prof.strategies.size()) +
                    " strategies for " + std::to_string(sys.agent_count()) + " agents");
    for (size_t i = 0; i < prof.strategies.size(); ++i) {
        const explicit_transducer& tr = prof.strategies[i];
        if (tr.inputs != sys.states)
            throw error("RepresentationMismatch: transducer " + std::to_string(i) +
                        " input alphabet differs from the system states");
        if (tr.actions != sys.actions[i])
            throw error("RepresentationMismatch: transducer " + std::to_string(i) +
                        " action set differs from agent " + std::to_string(i));
    }
}

void check_circuit_arity(const circuit_system& sys, const circuit_profile& prof) {
    if (prof.strategies.size() != sys.agent_count())
        throw error("ArityMismatch: profile has " + std::to_string(prof.strategies.size()) +
                    " strategies for " + std::to_string(sys.agent_count()) + " agents");
    for (size_t i = 0; i < prof.strategies.size(); ++i) {
        const std::vector<issue> bad = validate_circuit_transducer(prof.strategies[i], sys, i);
        if (!bad.empty()) throw validation_error(bad);
    }
}

template <class Model>
verify_verdict run_verify(const Model& m, agent_set w,
                          std::string (*action_name)(const Model&, size_t, uint32_t),
                          std::string (*state_name)(const Model&, const typename Model::config&)) {
    verify_verdict out;
    const product_trace<Model> trace = run_primary_trace(m);
    out.observed = trace.winning;
    out.trace_length = trace.path.size();
    if (trace.winning != w) {
        out.counterexample = goal_mismatch{w, trace.winning};
        return out;
    }
    for (size_t j = 0; j < m.agent_count(); ++j) {
        if (has_agent(w, j)) continue;
        if (auto hit = search_deviation(m, j)) {
            deviation_witness wit;
            wit.agent = static_cast<uint32_t>(j);
            for (uint32_t a : hit->actions) wit.actions.push_back(action_name(m, j, a));
            wit.reached_state = state_name(m, hit->reached);
            out.counterexample = std::move(wit);
            return out;
        }
    }
    out.is_wne = true;
    return out;
}

std::string explicit_action_name(const explicit_product_model& m, size_t j, uint32_t a) {
    return m.sys->actions[j][a];
}

std::string explicit_state_name(const explicit_product_model& m,
                                const explicit_product_model::config& c) {
    return m.sys->states[c[0]];
}

std::string circuit_action_name(const circuit_product_model& m, size_t j, uint32_t a) {
    return bits_to_string(bits_from_value(a, m.sys->agent_action_vars[j]));
}

std::string circuit_state_name(const circuit_product_model& m,
                               const circuit_product_model::config& c) {
    return bits_to_string(std::span<const uint8_t>{c.data(), m.sys->state_vars});
}

} // namespace

explicit_trace_report primary_trace(const explicit_system& sys, const explicit_profile& prof) {
    check_explicit_arity(sys, prof);
    return run_primary_trace(explicit_product_model{&sys, &prof});
}

circuit_trace_report primary_trace(const circuit_system& sys, const circuit_profile& prof) {
    check_circuit_arity(sys, prof);
    return run_primary_trace(circuit_product_model{&sys, &prof});
}

std::pair<explicit_product_model::config, std::vector<uint32_t>>
product_step(const explicit_system& sys, const explicit_profile& prof,
             const explicit_product_model::config& cfg) {
    return explicit_product_model{&sys, &prof}.step(cfg);
}

std::optional<explicit_deviation> deviation_reachable(const explicit_system& sys,
                                                      const explicit_profile& prof, size_t j) {
    check_explicit_arity(sys, prof);
    return search_deviation(explicit_product_model{&sys, &prof}, j);
}

std::optional<circuit_deviation> deviation_reachable(const circuit_system& sys,
                                                     const circuit_profile& prof, size_t j) {
    check_circuit_arity(sys, prof);
    return search_deviation(circuit_product_model{&sys, &prof}, j);
}

verify_verdict verify(const explicit_system& sys, const explicit_profile& prof, agent_set w) {
    check_explicit_arity(sys, prof);
    return run_verify(explicit_product_model{&sys, &prof}, w, explicit_action_name,
                      explicit_state_name);
}

verify_verdict verify(const circuit_system& sys, const circuit_profile& prof, agent_set w) {
    check_circuit_arity(sys, prof);
    return run_verify(circuit_product_model{&sys, &prof}, w, circuit_action_name,
                      circuit_state_name);
}

} // namespace wne
