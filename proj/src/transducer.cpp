#include "transducer.hpp"

namespace wne {

std::vector<issue> validate_transducer(const explicit_transducer& tr) {
    std::vector<issue> out;
    if (tr.states.empty()) {
        out.push_back({"UnknownState", "transducer has no states"});
        return out;
    }
    if (tr.init >= tr.states.size())
        out.push_back({"UnknownState", "transducer init out of range"});
    if (tr.trans.size() != tr.states.size() * tr.inputs.size())
        out.push_back({"MissingTransitionRow", "transition table size mismatch"});
    else {
        for (uint32_t s = 0; s < tr.states.size(); ++s) {
            for (uint32_t v = 0; v < tr.inputs.size(); ++v) {
                const int64_t succ = tr.trans[size_t{s} * tr.inputs.size() + v];
                if (succ < 0)
                    out.push_back({"MissingTransitionRow",
                                   "state " + tr.states[s] + " input " + tr.inputs[v]});
                else if (static_cast<uint64_t>(succ) >= tr.states.size())
                    out.push_back({"UnknownState", "successor of " + tr.states[s]});
            }
        }
    }
    if (tr.output.size() != tr.states.size())
        out.push_back({"MissingTransitionRow", "output table size mismatch"});
    else {
        for (uint32_t s = 0; s < tr.states.size(); ++s) {
            const int64_t a = tr.output[s];
            if (a < 0)
                out.push_back({"MissingTransitionRow", "no output for state " + tr.states[s]});
            else if (static_cast<uint64_t>(a) >= tr.actions.size())
                out.push_back({"UnknownState", "output of " + tr.states[s] + " not an action"});
        }
    }
    for (const auto& [s, v] : tr.duplicate_rows)
        out.push_back({"DuplicateRow", "state " + tr.states[s] + " input " + tr.inputs[v]});
    return out;
}

std::vector<issue> validate_circuit_transducer(const circuit_transducer& ct,
                                               const circuit_system& cs, size_t agent) {
    std::vector<issue> out;
    if (ct.state_vars == 0) out.push_back({"ArityMismatch", "no transducer state variables"});
    if (ct.init.size() != ct.state_vars)
        out.push_back({"ArityMismatch", "init width != state variable count"});
    if (ct.omega.input_arity != ct.state_vars + cs.state_vars ||
        ct.omega.output_arity() != ct.state_vars)
        out.push_back({"ArityMismatch", "omega arity"});
    if (agent >= cs.agent_count() || ct.output.input_arity != ct.state_vars ||
        ct.output.output_arity() != cs.agent_action_vars[agent])
        out.push_back({"ArityMismatch", "output circuit arity for agent " + std::to_string(agent)});
    for (issue& is : validate_circuit(ct.omega)) out.push_back(std::move(is));
    for (issue& is : validate_circuit(ct.output)) out.push_back(std::move(is));
    return out;
}

explicit_transducer unfold_transducer(const circuit_transducer& ct, const circuit_system& cs,
                                      uint64_t cap_rows) {
    if (ct.state_vars + cs.state_vars >= 63) throw cap_error(UINT64_MAX, cap_rows);
    const uint64_t rows = uint64_t{1} << (ct.state_vars + cs.state_vars);
    if (rows > cap_rows) throw cap_error(rows, cap_rows);

    const uint64_t nstates = uint64_t{1} << ct.state_vars;
    const uint64_t ninputs = uint64_t{1} << cs.state_vars;
    const uint32_t action_vars = static_cast<uint32_t>(ct.output.output_arity());

    explicit_transducer tr;
    for (uint64_t s = 0; s < nstates; ++s)
        tr.states.push_back(bits_to_string(bits_from_value(s, ct.state_vars)));
    for (uint64_t v = 0; v < ninputs; ++v)
        tr.inputs.push_back(bits_to_string(bits_from_value(v, cs.state_vars)));
    for (uint64_t a = 0; a < (uint64_t{1} << action_vars); ++a)
        tr.actions.push_back(bits_to_string(bits_from_value(a, action_vars)));
    tr.init = static_cast<uint32_t>(value_from_bits(ct.init));
    tr.trans.assign(nstates * ninputs, -1);
    tr.output.assign(nstates, -1);
    for (uint64_t s = 0; s < nstates; ++s) {
        const bits sb = bits_from_value(s, ct.state_vars);
        tr.output[s] = static_cast<int64_t>(value_from_bits(eval(ct.output, sb)));
        for (uint64_t v = 0; v < ninputs; ++v) {
            bits in = sb;
            const bits vb = bits_from_value(v, cs.state_vars);
            in.insert(in.end(), vb.begin(), vb.end());
            tr.trans[s * ninputs + v] = static_cast<int64_t>(value_from_bits(eval(ct.omega, in)));
        }
    }
    return tr;
}

} // namespace wne
