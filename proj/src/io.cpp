#include "io.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

namespace wne::io {

namespace {

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string current;
    for (char c : text) {
        if (c == '\n') {
            lines.push_back(current);
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    if (!current.empty()) lines.push_back(current);
    return lines;
}

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

bool valid_identifier(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                        (c >= '0' && c <= '9') || c == '_' || c == '.' || c == '+' || c == '-';
        if (!ok) return false;
    }
    return true;
}

struct reader {
    std::vector<std::string> lines;
    size_t pos = 0;

    explicit reader(const std::string& text) : lines(split_lines(text)) {}

    [[nodiscard]] size_t line_no() const { return pos + 1; }
    [[nodiscard]] bool done() const { return pos >= lines.size(); }
    [[nodiscard]] const std::string& peek() const {
        static const std::string empty;
        return done() ? empty : lines[pos];
    }
    std::string take() {
        if (done()) throw parse_error(line_no(), "unexpected end of document");
        return lines[pos++];
    }

    // Consumes a line of the form "<key>: <value>"; returns the value.
    std::string field(const std::string& key) {
        const std::string line = take();
        const std::string want = key + ":";
        if (line.rfind(want, 0) != 0)
            throw parse_error(pos, "expected '" + key + ":'");
        std::string rest = line.substr(want.size());
        if (!rest.empty() && rest.front() == ' ') rest.erase(rest.begin());
        return rest;
    }

    void expect_header(const std::string& kind) {
        const std::string line = take();
        if (line != kind + " v1") throw parse_error(pos, "expected '" + kind + " v1' header");
    }

    void expect_done() {
        while (!done()) {
            if (!split_ws(peek()).empty())
                throw parse_error(line_no(), "trailing content");
            ++pos;
        }
    }
};

uint64_t parse_number(const std::string& tok, size_t line) {
    uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw parse_error(line, "expected a number, got '" + tok + "'");
    return out;
}

std::vector<std::string> parse_identifiers(const std::string& value, size_t line) {
    std::vector<std::string> names = split_ws(value);
    for (const std::string& n : names)
        if (!valid_identifier(n)) throw parse_error(line, "bad identifier '" + n + "'");
    return names;
}

uint32_t index_of(const std::vector<std::string>& names, const std::string& name, size_t line) {
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw parse_error(line, "unknown identifier '" + name + "'");
    return static_cast<uint32_t>(it - names.begin());
}

std::string joined(const std::vector<std::string>& items) {
    std::string out;
    for (size_t i = 0; i < items.size(); ++i) {
        if (i) out.push_back(' ');
        out += items[i];
    }
    return out;
}

std::string kv(const std::string& key, const std::string& value) {
    return value.empty() ? key + ":\n" : key + ": " + value + "\n";
}

void throw_if_invalid(std::vector<issue> issues) {
    if (!issues.empty()) throw validation_error(std::move(issues));
}

bits parse_bits(const std::string& tok, size_t line) {
    bits out;
    for (char c : tok) {
        if (c != '0' && c != '1') throw parse_error(line, "expected a bit string");
        out.push_back(c == '1');
    }
    return out;
}

// Netlist blocks: an "inputs:" line, one "g<j> = OP <ref> <ref>" line per
// gate, then an "outputs:" line.
ref parse_ref(const std::string& tok, size_t gates_so_far, uint32_t arity, size_t line) {
    if (tok.size() < 2 || (tok[0] != 'i' && tok[0] != 'g'))
        throw parse_error(line, "bad ref '" + tok + "'");
    const uint64_t idx = parse_number(tok.substr(1), line);
    if (tok[0] == 'i') {
        if (idx >= arity) throw parse_error(line, "input ref out of range");
        return in_ref(static_cast<uint32_t>(idx));
    }
    if (idx >= gates_so_far) throw parse_error(line, "forward gate ref '" + tok + "'");
    return g_ref(static_cast<uint32_t>(idx));
}

circuit parse_netlist(reader& r) {
    circuit c;
    c.input_arity = static_cast<uint32_t>(parse_number(r.field("inputs"), r.line_no()));
    while (!r.done() && r.peek().rfind("outputs:", 0) != 0) {
        const std::string line = r.take();
        const std::vector<std::string> tok = split_ws(line);
        if (tok.size() < 3 || tok[1] != "=")
            throw parse_error(r.pos, "expected 'g<j> = OP ...'");
        if (tok[0] != "g" + std::to_string(c.gates.size()))
            throw parse_error(r.pos, "gates must be numbered in order, got '" + tok[0] + "'");
        gate g{};
        const std::string& op = tok[2];
        size_t want = 0;
        if (op == "CONST0") g.op = gate_op::const0;
        else if (op == "CONST1") g.op = gate_op::const1;
        else if (op == "NOT") { g.op = gate_op::inv; want = 1; }
        else if (op == "AND") { g.op = gate_op::conj; want = 2; }
        else if (op == "OR") { g.op = gate_op::disj; want = 2; }
        else throw parse_error(r.pos, "unknown gate op '" + op + "'");
        if (tok.size() != 3 + want) throw parse_error(r.pos, "wrong operand count");
        if (want >= 1) g.a = parse_ref(tok[3], c.gates.size(), c.input_arity, r.pos);
        if (want >= 2) g.b = parse_ref(tok[4], c.gates.size(), c.input_arity, r.pos);
        c.gates.push_back(g);
    }
    for (const std::string& tok : split_ws(r.field("outputs")))
        c.outputs.push_back(parse_ref(tok, c.gates.size(), c.input_arity, r.pos));
    throw_if_invalid(validate_circuit(c));
    return c;
}

std::string ref_text(ref r) {
    return (r.is_gate ? "g" : "i") + std::to_string(r.index);
}

std::string serialize_netlist(const circuit& c) {
    std::string out = kv("inputs", std::to_string(c.input_arity));
    for (size_t g = 0; g < c.gates.size(); ++g) {
        const gate& gt = c.gates[g];
        out += "g" + std::to_string(g) + " = ";
        switch (gt.op) {
        case gate_op::const0: out += "CONST0"; break;
        case gate_op::const1: out += "CONST1"; break;
        case gate_op::inv: out += "NOT " + ref_text(gt.a); break;
        case gate_op::conj: out += "AND " + ref_text(gt.a) + " " + ref_text(gt.b); break;
        case gate_op::disj: out += "OR " + ref_text(gt.a) + " " + ref_text(gt.b); break;
        }
        out.push_back('\n');
    }
    std::vector<std::string> outs;
    for (ref r : c.outputs) outs.push_back(ref_text(r));
    out += kv("outputs", joined(outs));
    return out;
}

} // namespace

std::string document_kind(const std::string& text) {
    const std::vector<std::string> tok = split_ws(split_lines(text).empty()
                                                      ? std::string{}
                                                      : split_lines(text).front());
    if (tok.size() != 2 || tok[1] != "v1")
        throw parse_error(1, "expected a '<kind> v1' header");
    return tok[0];
}

explicit_system parse_emas(const std::string& text) {
    reader r(text);
    r.expect_header("emas");
    explicit_system sys;
    sys.states = parse_identifiers(r.field("states"), r.pos);
    sys.init = index_of(sys.states, r.field("init"), r.pos);
    const uint64_t agents = parse_number(r.field("agents"), r.pos);
    for (uint64_t i = 0; i < agents; ++i)
        sys.actions.push_back(parse_identifiers(r.field("actions " + std::to_string(i)), r.pos));
    sys.goals.assign(agents, std::vector<uint8_t>(sys.states.size(), 0));
    for (uint64_t i = 0; i < agents; ++i)
        for (const std::string& name : parse_identifiers(r.field("goal " + std::to_string(i)), r.pos))
            sys.goals[i][index_of(sys.states, name, r.pos)] = 1;

    uint64_t rows = 0;
    if (!checked_mul(sys.states.size(), sys.decision_count(), rows))
        throw parse_error(r.line_no(), "transition table too large");
    sys.table.assign(rows, -1);
    while (!r.done() && r.peek().rfind("trans:", 0) == 0) {
        const std::vector<std::string> tok = split_ws(r.field("trans"));
        if (tok.size() != agents + 3 || tok[agents + 1] != "->")
            throw parse_error(r.pos, "expected 'v a_0 .. a_k-1 -> v''");
        const uint32_t v = index_of(sys.states, tok[0], r.pos);
        std::vector<uint32_t> comp(agents);
        for (uint64_t i = 0; i < agents; ++i)
            comp[i] = index_of(sys.actions[i], tok[1 + i], r.pos);
        const uint32_t succ = index_of(sys.states, tok.back(), r.pos);
        sys.set_row(v, sys.decision_index(comp), succ);
    }
    r.expect_done();
    throw_if_invalid(validate_system(sys));
    return sys;
}

std::string serialize_emas(const explicit_system& sys) {
    std::string out = "emas v1\n";
    out += kv("states", joined(sys.states));
    out += kv("init", sys.states[sys.init]);
    out += kv("agents", std::to_string(sys.agent_count()));
    for (size_t i = 0; i < sys.agent_count(); ++i)
        out += kv("actions " + std::to_string(i), joined(sys.actions[i]));
    for (size_t i = 0; i < sys.agent_count(); ++i) {
        std::vector<std::string> names;
        for (uint32_t v = 0; v < sys.states.size(); ++v)
            if (sys.goals[i][v]) names.push_back(sys.states[v]);
        out += kv("goal " + std::to_string(i), joined(names));
    }
    const uint64_t dcount = sys.decision_count();
    for (uint32_t v = 0; v < sys.states.size(); ++v) {
        for (uint64_t d = 0; d < dcount; ++d) {
            const std::vector<uint32_t> comp = sys.decision_at(d);
            out += "trans: " + sys.states[v];
            for (size_t i = 0; i < comp.size(); ++i) out += " " + sys.actions[i][comp[i]];
            out += " -> " + sys.states[static_cast<uint32_t>(sys.table[v * dcount + d])] + "\n";
        }
    }
    return out;
}

circuit_system parse_cmas(const std::string& text) {
    reader r(text);
    r.expect_header("cmas");
    circuit_system cs;
    cs.state_vars = static_cast<uint32_t>(parse_number(r.field("statevars"), r.pos));
    cs.init = parse_bits(r.field("init"), r.pos);
    const uint64_t agents = parse_number(r.field("agents"), r.pos);
    for (uint64_t i = 0; i < agents; ++i)
        cs.agent_action_vars.push_back(static_cast<uint32_t>(
            parse_number(r.field("actionvars " + std::to_string(i)), r.pos)));
    for (uint64_t i = 0; i < agents; ++i) {
        r.field("goal " + std::to_string(i));
        cs.goal_circuits.push_back(parse_netlist(r));
    }
    r.field("phi");
    cs.phi = parse_netlist(r);
    r.expect_done();
    throw_if_invalid(validate_circuit_system(cs));
    return cs;
}

std::string serialize_cmas(const circuit_system& cs) {
    std::string out = "cmas v1\n";
    out += kv("statevars", std::to_string(cs.state_vars));
    out += kv("init", bits_to_string(cs.init));
    out += kv("agents", std::to_string(cs.agent_count()));
    for (size_t i = 0; i < cs.agent_count(); ++i)
        out += kv("actionvars " + std::to_string(i), std::to_string(cs.agent_action_vars[i]));
    for (size_t i = 0; i < cs.agent_count(); ++i) {
        out += "goal " + std::to_string(i) + ":\n";
        out += serialize_netlist(cs.goal_circuits[i]);
    }
    out += "phi:\n";
    out += serialize_netlist(cs.phi);
    return out;
}

explicit_transducer parse_etrans(const std::string& text) {
    reader r(text);
    r.expect_header("etrans");
    explicit_transducer tr;
    tr.states = parse_identifiers(r.field("states"), r.pos);
    tr.init = index_of(tr.states, r.field("init"), r.pos);
    tr.inputs = parse_identifiers(r.field("inputs"), r.pos);
    tr.actions = parse_identifiers(r.field("actions"), r.pos);
    tr.output.assign(tr.states.size(), -1);
    for (size_t s = 0; s < tr.states.size(); ++s) {
        const std::string a = r.field("output " + tr.states[s]);
        tr.output[s] = index_of(tr.actions, a, r.pos);
    }
    tr.trans.assign(tr.states.size() * tr.inputs.size(), -1);
    while (!r.done() && r.peek().rfind("trans:", 0) == 0) {
        const std::vector<std::string> tok = split_ws(r.field("trans"));
        if (tok.size() != 4 || tok[2] != "->")
            throw parse_error(r.pos, "expected 's v -> s''");
        tr.set_row(index_of(tr.states, tok[0], r.pos), index_of(tr.inputs, tok[1], r.pos),
                   index_of(tr.states, tok[3], r.pos));
    }
    r.expect_done();
    throw_if_invalid(validate_transducer(tr));
    return tr;
}

std::string serialize_etrans(const explicit_transducer& tr) {
    std::string out = "etrans v1\n";
    out += kv("states", joined(tr.states));
    out += kv("init", tr.states[tr.init]);
    out += kv("inputs", joined(tr.inputs));
    out += kv("actions", joined(tr.actions));
    for (size_t s = 0; s < tr.states.size(); ++s)
        out += kv("output " + tr.states[s], tr.actions[static_cast<size_t>(tr.output[s])]);
    for (uint32_t s = 0; s < tr.states.size(); ++s)
        for (uint32_t v = 0; v < tr.inputs.size(); ++v)
            out += "trans: " + tr.states[s] + " " + tr.inputs[v] + " -> " +
                   tr.states[static_cast<size_t>(tr.trans[size_t{s} * tr.inputs.size() + v])] +
                   "\n";
    return out;
}

circuit_transducer parse_ctrans(const std::string& text) {
    reader r(text);
    r.expect_header("ctrans");
    circuit_transducer ct;
    ct.state_vars = static_cast<uint32_t>(parse_number(r.field("statevars"), r.pos));
    ct.init = parse_bits(r.field("init"), r.pos);
    const uint64_t inputvars = parse_number(r.field("inputvars"), r.pos);
    const uint64_t actionvars = parse_number(r.field("actionvars"), r.pos);
    r.field("omega");
    ct.omega = parse_netlist(r);
    r.field("output");
    ct.output = parse_netlist(r);
    r.expect_done();
    if (ct.init.size() != ct.state_vars)
        throw validation_error(std::vector<issue>{{"ArityMismatch", "init width"}});
    if (ct.omega.input_arity != ct.state_vars + inputvars ||
        ct.omega.output_arity() != ct.state_vars)
        throw validation_error(std::vector<issue>{{"ArityMismatch", "omega arity"}});
    if (ct.output.input_arity != ct.state_vars || ct.output.output_arity() != actionvars)
        throw validation_error(std::vector<issue>{{"ArityMismatch", "output arity"}});
    return ct;
}

std::string serialize_ctrans(const circuit_transducer& ct) {
    std::string out = "ctrans v1\n";
    out += kv("statevars", std::to_string(ct.state_vars));
    out += kv("init", bits_to_string(ct.init));
    out += kv("inputvars", std::to_string(ct.omega.input_arity - ct.state_vars));
    out += kv("actionvars", std::to_string(ct.output.output_arity()));
    out += "omega:\n";
    out += serialize_netlist(ct.omega);
    out += "output:\n";
    out += serialize_netlist(ct.output);
    return out;
}

reachability_game parse_game(const std::string& text) {
    reader r(text);
    r.expect_header("game");
    reachability_game g;
    const std::vector<std::string> v0 = parse_identifiers(r.field("v0"), r.pos);
    const std::vector<std::string> v1 = parse_identifiers(r.field("v1"), r.pos);
    g.state_names = v0;
    g.state_names.insert(g.state_names.end(), v1.begin(), v1.end());
    g.owner.assign(g.state_names.size(), 0);
    for (size_t i = v0.size(); i < g.state_names.size(); ++i) g.owner[i] = 1;
    if (!r.done() && r.peek().rfind("init:", 0) == 0)
        g.init = index_of(g.state_names, r.field("init"), r.pos);
    g.goal.assign(g.state_names.size(), 0);
    for (const std::string& name : parse_identifiers(r.field("goal"), r.pos))
        g.goal[index_of(g.state_names, name, r.pos)] = 1;
    g.succ.resize(g.state_names.size());
    while (!r.done() && r.peek().rfind("edge:", 0) == 0) {
        const std::vector<std::string> tok = split_ws(r.field("edge"));
        if (tok.size() != 3 || tok[1] != "->") throw parse_error(r.pos, "expected 'u -> w'");
        g.succ[index_of(g.state_names, tok[0], r.pos)].push_back(
            index_of(g.state_names, tok[2], r.pos));
    }
    r.expect_done();
    for (auto& out : g.succ) {
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
    }
    throw_if_invalid(validate_game(g));
    return g;
}

std::string serialize_game(const reachability_game& g) {
    std::string out = "game v1\n";
    std::vector<std::string> v0, v1, goal;
    for (size_t v = 0; v < g.state_count(); ++v)
        (g.owner[v] == 0 ? v0 : v1).push_back(g.state_names[v]);
    out += kv("v0", joined(v0));
    out += kv("v1", joined(v1));
    if (g.init) out += kv("init", g.state_names[*g.init]);
    for (size_t v = 0; v < g.state_count(); ++v)
        if (g.goal[v]) goal.push_back(g.state_names[v]);
    out += kv("goal", joined(goal));
    for (size_t v = 0; v < g.state_count(); ++v)
        for (uint32_t w : g.succ[v])
            out += "edge: " + g.state_names[v] + " -> " + g.state_names[w] + "\n";
    return out;
}

namespace {

tm_dir parse_dir(const std::string& tok, size_t line) {
    if (tok == "L") return tm_dir::left;
    if (tok == "R") return tm_dir::right;
    throw parse_error(line, "expected direction L or R");
}

} // namespace

det_tm parse_dtm(const std::string& text) {
    reader r(text);
    r.expect_header("dtm");
    det_tm m;
    m.state_names = parse_identifiers(r.field("states"), r.pos);
    m.alphabet = parse_identifiers(r.field("alphabet"), r.pos);
    m.blank = index_of(m.alphabet, r.field("blank"), r.pos);
    m.init = index_of(m.state_names, r.field("init"), r.pos);
    m.accepting.assign(m.state_names.size(), 0);
    for (const std::string& name : parse_identifiers(r.field("accept"), r.pos))
        m.accepting[index_of(m.state_names, name, r.pos)] = 1;
    while (!r.done() && r.peek().rfind("delta:", 0) == 0) {
        const std::vector<std::string> tok = split_ws(r.field("delta"));
        if (tok.size() != 6 || tok[2] != "->")
            throw parse_error(r.pos, "expected 'r g -> r' g' L|R'");
        dtm_rule rule;
        rule.state = index_of(m.state_names, tok[0], r.pos);
        rule.symbol = index_of(m.alphabet, tok[1], r.pos);
        rule.next_state = index_of(m.state_names, tok[3], r.pos);
        rule.write = index_of(m.alphabet, tok[4], r.pos);
        rule.dir = parse_dir(tok[5], r.pos);
        m.rules.push_back(rule);
    }
    r.expect_done();
    throw_if_invalid(validate_dtm(m));
    return m;
}

std::string serialize_dtm(const det_tm& m) {
    std::string out = "dtm v1\n";
    out += kv("states", joined(m.state_names));
    out += kv("alphabet", joined(m.alphabet));
    out += kv("blank", m.alphabet[m.blank]);
    out += kv("init", m.state_names[m.init]);
    std::vector<std::string> acc;
    for (size_t i = 0; i < m.accepting.size(); ++i)
        if (m.accepting[i]) acc.push_back(m.state_names[i]);
    out += kv("accept", joined(acc));
    std::vector<dtm_rule> rules = m.rules;
    std::stable_sort(rules.begin(), rules.end(), [](const dtm_rule& a, const dtm_rule& b) {
        return std::pair{a.state, a.symbol} < std::pair{b.state, b.symbol};
    });
    for (const dtm_rule& rule : rules)
        out += "delta: " + m.state_names[rule.state] + " " + m.alphabet[rule.symbol] + " -> " +
               m.state_names[rule.next_state] + " " + m.alphabet[rule.write] + " " +
               (rule.dir == tm_dir::right ? "R" : "L") + "\n";
    return out;
}

alt_tm parse_atm(const std::string& text) {
    reader r(text);
    r.expect_header("atm");
    alt_tm m;
    m.state_names = parse_identifiers(r.field("states"), r.pos);
    m.alphabet = parse_identifiers(r.field("alphabet"), r.pos);
    m.blank = index_of(m.alphabet, r.field("blank"), r.pos);
    m.init = index_of(m.state_names, r.field("init"), r.pos);
    m.labels.assign(m.state_names.size(), alt_label::det);
    for (const std::string& name : m.state_names) {
        const std::string label = r.field("label " + name);
        alt_label l;
        if (label == "accept") l = alt_label::accept;
        else if (label == "reject") l = alt_label::reject;
        else if (label == "or") l = alt_label::exist;
        else if (label == "and") l = alt_label::univ;
        else if (label == "det") l = alt_label::det;
        else throw parse_error(r.pos, "unknown label '" + label + "'");
        m.labels[index_of(m.state_names, name, r.pos)] = l;
    }
    while (!r.done() && r.peek().rfind("delta:", 0) == 0) {
        const std::vector<std::string> tok = split_ws(r.field("delta"));
        if (tok.size() != 6 || tok[2] != "->")
            throw parse_error(r.pos, "expected 'r g -> r' g' L|R'");
        atm_rule rule;
        rule.state = index_of(m.state_names, tok[0], r.pos);
        rule.symbol = index_of(m.alphabet, tok[1], r.pos);
        rule.next_state = index_of(m.state_names, tok[3], r.pos);
        rule.write = index_of(m.alphabet, tok[4], r.pos);
        rule.dir = parse_dir(tok[5], r.pos);
        m.rules.push_back(rule);
    }
    r.expect_done();
    throw_if_invalid(validate_atm(m));
    return m;
}

std::string serialize_atm(const alt_tm& m) {
    std::string out = "atm v1\n";
    out += kv("states", joined(m.state_names));
    out += kv("alphabet", joined(m.alphabet));
    out += kv("blank", m.alphabet[m.blank]);
    out += kv("init", m.state_names[m.init]);
    for (size_t i = 0; i < m.state_names.size(); ++i) {
        const char* label = "det";
        switch (m.labels[i]) {
        case alt_label::accept: label = "accept"; break;
        case alt_label::reject: label = "reject"; break;
        case alt_label::exist: label = "or"; break;
        case alt_label::univ: label = "and"; break;
        case alt_label::det: label = "det"; break;
        }
        out += kv("label " + m.state_names[i], label);
    }
    std::vector<atm_rule> rules = m.rules;
    std::stable_sort(rules.begin(), rules.end(), [](const atm_rule& a, const atm_rule& b) {
        return std::pair{a.state, a.symbol} < std::pair{b.state, b.symbol};
    });
    for (const atm_rule& rule : rules)
        out += "delta: " + m.state_names[rule.state] + " " + m.alphabet[rule.symbol] + " -> " +
               m.state_names[rule.next_state] + " " + m.alphabet[rule.write] + " " +
               (rule.dir == tm_dir::right ? "R" : "L") + "\n";
    return out;
}

std::string document::get(const std::string& key) const {
    for (const auto& [k, v] : fields)
        if (k == key) return v;
    return {};
}

document parse_keyvalue(const std::string& text) {
    reader r(text);
    const std::vector<std::string> head = split_ws(r.take());
    if (head.size() != 2 || head[1] != "v1")
        throw parse_error(1, "expected a '<kind> v1' header");
    document doc;
    doc.kind = head[0];
    while (!r.done()) {
        const std::string line = r.take();
        if (split_ws(line).empty()) continue;
        const size_t colon = line.find(':');
        if (colon == std::string::npos) throw parse_error(r.pos, "expected 'key: value'");
        std::string value = line.substr(colon + 1);
        if (!value.empty() && value.front() == ' ') value.erase(value.begin());
        doc.add(line.substr(0, colon), std::move(value));
    }
    return doc;
}

std::string serialize_keyvalue(const document& doc) {
    std::string out = doc.kind + " v1\n";
    for (const auto& [k, v] : doc.fields) out += kv(k, v);
    return out;
}

agent_set parse_coalition(const std::string& text, size_t agent_count) {
    if (text == "none") return 0;
    if (text.empty()) throw error("coalition must be 'none' or comma-separated agent indices");
    agent_set w = 0;
    int64_t last = -1;
    size_t pos = 0;
    while (pos <= text.size()) {
        const size_t comma = std::min(text.find(',', pos), text.size());
        const std::string tok = text.substr(pos, comma - pos);
        uint64_t idx = 0;
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), idx);
        if (ec != std::errc{} || ptr != tok.data() + tok.size())
            throw error("bad agent index '" + tok + "' in coalition");
        if (idx >= agent_count)
            throw error("agent index " + tok + " out of range for " +
                        std::to_string(agent_count) + " agents");
        if (static_cast<int64_t>(idx) <= last)
            throw error("coalition indices must be sorted and duplicate-free");
        last = static_cast<int64_t>(idx);
        w = with_agent(w, idx);
        pos = comma + 1;
    }
    return w;
}

std::string render_coalition(agent_set w, size_t agent_count) {
    std::string out;
    for (size_t i = 0; i < agent_count; ++i) {
        if (!has_agent(w, i)) continue;
        if (!out.empty()) out.push_back(',');
        out += std::to_string(i);
    }
    return out.empty() ? "none" : out;
}

std::string render_decision(const explicit_system& sys, uint64_t d) {
    const std::vector<uint32_t> comp = sys.decision_at(d);
    std::string out;
    for (size_t i = 0; i < comp.size(); ++i) {
        if (i) out.push_back(',');
        out += sys.actions[i][comp[i]];
    }
    return out;
}

namespace {

std::string render_word(const explicit_system& sys, const std::vector<uint64_t>& word) {
    std::vector<std::string> parts;
    for (uint64_t d : word) parts.push_back(render_decision(sys, d));
    return joined(parts);
}

std::string render_states(const explicit_system& sys, const std::vector<uint32_t>& states) {
    std::vector<std::string> parts;
    for (uint32_t v : states) parts.push_back(sys.states[v]);
    return joined(parts);
}

} // namespace

document make_validate_verdict(const std::vector<issue>& issues) {
    document doc;
    doc.kind = "verdict";
    doc.add("problem", "validate");
    doc.add("answer", issues.empty() ? "YES" : "NO");
    for (const issue& is : issues) doc.add("issue", is.code + " " + is.detail);
    return doc;
}

document make_game_verdict(const reachability_game& g, const win_partition& wp) {
    document doc;
    doc.kind = "verdict";
    doc.add("problem", "solve-game");
    if (g.init) {
        doc.add("answer", wp.winner[*g.init] == 0 ? "YES" : "NO");
        doc.add("winner", std::to_string(wp.winner[*g.init]));
    }
    std::vector<std::string> win0, win1, strat0, strat1;
    for (size_t v = 0; v < g.state_count(); ++v) {
        (wp.winner[v] == 0 ? win0 : win1).push_back(g.state_names[v]);
        if (wp.strat0[v] >= 0)
            strat0.push_back(g.state_names[v] + ">" +
                             g.state_names[static_cast<size_t>(wp.strat0[v])]);
        if (wp.strat1[v] >= 0)
            strat1.push_back(g.state_names[v] + ">" +
                             g.state_names[static_cast<size_t>(wp.strat1[v])]);
    }
    doc.add("win0", joined(win0));
    doc.add("win1", joined(win1));
    doc.add("strat0", joined(strat0));
    doc.add("strat1", joined(strat1));
    return doc;
}

document make_realize_verdict(const explicit_system& sys, agent_set w,
                              const realizability_verdict& v, bool with_certificate) {
    document doc;
    doc.kind = "verdict";
    doc.add("problem", "realize");
    doc.add("coalition", render_coalition(w, sys.agent_count()));
    doc.add("answer", v.yes ? "YES" : "NO");
    if (v.yes && v.witness) {
        doc.add("witness prefix", render_word(sys, v.witness->prefix));
        doc.add("witness cycle", render_word(sys, v.witness->cycle));
    }
    if (v.yes && with_certificate && v.certificate) {
        const witness_certificate& cert = *v.certificate;
        doc.add("certificate trace prefix", render_states(sys, cert.trace.prefix));
        doc.add("certificate trace cycle", render_states(sys, cert.trace.cycle));
        doc.add("certificate winning set", render_coalition(cert.winning, sys.agent_count()));
        for (const auto& [agent, pairs] : cert.receipts) {
            std::vector<std::string> parts;
            for (const auto& [state, d] : pairs)
                parts.push_back(sys.states[state] + "|" + render_decision(sys, d));
            doc.add("certificate safe " + std::to_string(agent), joined(parts));
        }
    }
    return doc;
}

document make_verify_verdict(agent_set w, size_t agent_count, const verify_verdict& v) {
    document doc;
    doc.kind = "verdict";
    doc.add("problem", "verify");
    doc.add("coalition", render_coalition(w, agent_count));
    doc.add("answer", v.is_wne ? "YES" : "NO");
    doc.add("observed winning set", render_coalition(v.observed, agent_count));
    if (v.counterexample) {
        if (const auto* gm = std::get_if<goal_mismatch>(&*v.counterexample)) {
            doc.add("counterexample kind", "goal-mismatch");
            doc.add("expected winning set", render_coalition(gm->expected, agent_count));
        } else if (const auto* dev = std::get_if<deviation_witness>(&*v.counterexample)) {
            doc.add("counterexample kind", "deviation");
            doc.add("deviating agent", std::to_string(dev->agent));
            doc.add("deviation actions", joined(dev->actions));
            doc.add("deviation reaches", dev->reached_state);
        }
    }
    return doc;
}

document make_report(const suite_report& r) {
    document doc;
    doc.kind = "report";
    doc.add("seed", std::to_string(r.seed));
    doc.add("count", std::to_string(r.count));
    doc.add("realize checks", std::to_string(r.realize_checks));
    doc.add("certificate checks", std::to_string(r.certificate_checks));
    doc.add("deviation checks", std::to_string(r.deviation_checks));
    doc.add("mismatches", std::to_string(r.mismatches));
    if (!r.first_mismatch.empty()) doc.add("first mismatch", r.first_mismatch);
    doc.add("status", r.passed() ? "PASS" : "FAIL");
    return doc;
}

} // namespace wne::io
