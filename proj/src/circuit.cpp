#include "circuit.hpp"

namespace wne {

namespace {

bool ref_ok(const circuit& c, ref r, size_t gate_limit) {
    if (r.is_gate) return r.index < gate_limit;
    return r.index < c.input_arity;
}

} // namespace

std::vector<issue> validate_circuit(const circuit& c) {
    std::vector<issue> out;
    for (size_t g = 0; g < c.gates.size(); ++g) {
        const gate& gt = c.gates[g];
        size_t operand_count = 0;
        switch (gt.op) {
        case gate_op::const0:
        case gate_op::const1: operand_count = 0; break;
        case gate_op::inv: operand_count = 1; break;
        case gate_op::conj:
        case gate_op::disj: operand_count = 2; break;
        }
        const ref ops[2] = {gt.a, gt.b};
        for (size_t i = 0; i < operand_count; ++i) {
            ref r = ops[i];
            if (r.is_gate && r.index >= g) {
                out.push_back({"ForwardRef", "gate " + std::to_string(g) +
                                                 " reads gate " + std::to_string(r.index)});
            } else if (!ref_ok(c, r, g)) {
                out.push_back({"RefOutOfRange", "gate " + std::to_string(g)});
            }
        }
    }
    if (c.outputs.empty()) out.push_back({"EmptyOutputs", "circuit has no outputs"});
    for (size_t i = 0; i < c.outputs.size(); ++i) {
        if (!ref_ok(c, c.outputs[i], c.gates.size()))
            out.push_back({"RefOutOfRange", "output " + std::to_string(i)});
    }
    return out;
}

bits eval(const circuit& c, std::span<const uint8_t> input) {
    if (input.size() != c.input_arity)
        throw error("ArityMismatch: circuit expects " + std::to_string(c.input_arity) +
                    " inputs, got " + std::to_string(input.size()));
    std::vector<uint8_t> value(c.gates.size());
    auto read = [&](ref r) -> uint8_t { return r.is_gate ? value[r.index] : input[r.index]; };
    for (size_t g = 0; g < c.gates.size(); ++g) {
        const gate& gt = c.gates[g];
        switch (gt.op) {
        case gate_op::const0: value[g] = 0; break;
        case gate_op::const1: value[g] = 1; break;
        case gate_op::inv: value[g] = !read(gt.a); break;
        case gate_op::conj: value[g] = read(gt.a) && read(gt.b); break;
        case gate_op::disj: value[g] = read(gt.a) || read(gt.b); break;
        }
    }
    bits out(c.outputs.size());
    for (size_t i = 0; i < c.outputs.size(); ++i) out[i] = read(c.outputs[i]);
    return out;
}

std::vector<bits> truth_table(const circuit& c, uint64_t cap) {
    if (c.input_arity >= 63) throw cap_error(UINT64_MAX, cap);
    const uint64_t rows = uint64_t{1} << c.input_arity;
    if (rows > cap) throw cap_error(rows, cap);
    std::vector<bits> table;
    table.reserve(rows);
    for (uint64_t x = 0; x < rows; ++x)
        table.push_back(eval(c, bits_from_value(x, c.input_arity)));
    return table;
}

ref circuit_builder::all(std::span<const ref> rs) {
    if (rs.empty()) return constant(true);
    ref acc = rs[0];
    for (size_t i = 1; i < rs.size(); ++i) acc = land(acc, rs[i]);
    return acc;
}

ref circuit_builder::any(std::span<const ref> rs) {
    if (rs.empty()) return constant(false);
    ref acc = rs[0];
    for (size_t i = 1; i < rs.size(); ++i) acc = lor(acc, rs[i]);
    return acc;
}

ref circuit_builder::equals_const(std::span<const ref> bus, uint64_t value) {
    std::vector<ref> terms;
    terms.reserve(bus.size());
    for (size_t i = 0; i < bus.size(); ++i) {
        const bool want = (value >> (bus.size() - 1 - i)) & 1;
        terms.push_back(want ? bus[i] : lnot(bus[i]));
    }
    return all(terms);
}

std::vector<ref> circuit_builder::constant_bus(uint64_t value, size_t width) {
    std::vector<ref> out;
    out.reserve(width);
    for (size_t i = 0; i < width; ++i)
        out.push_back(constant(((value >> (width - 1 - i)) & 1) != 0));
    return out;
}

std::vector<ref> circuit_builder::mux_bus(ref sel, std::span<const ref> when_true,
                                          std::span<const ref> when_false) {
    std::vector<ref> out;
    out.reserve(when_true.size());
    for (size_t i = 0; i < when_true.size(); ++i)
        out.push_back(mux(sel, when_true[i], when_false[i]));
    return out;
}

} // namespace wne
