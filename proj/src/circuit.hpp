#pragma once

#include "util.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace wne {

// Combinational circuits over the basis {CONST0, CONST1, NOT, AND, OR}.
// Gates are stored in evaluation order; a ref may name an input or a
// strictly earlier gate.

enum class gate_op : uint8_t { const0, const1, inv, conj, disj };

struct ref {
    uint8_t is_gate = 0;
    uint32_t index = 0;

    friend bool operator==(const ref&, const ref&) = default;
};

constexpr ref in_ref(uint32_t i) { return {0, i}; }
constexpr ref g_ref(uint32_t i) { return {1, i}; }

struct gate {
    gate_op op;
    ref a;
    ref b;
};

struct circuit {
    uint32_t input_arity = 0;
    std::vector<gate> gates;
    std::vector<ref> outputs;

    [[nodiscard]] size_t output_arity() const { return outputs.size(); }
};

std::vector<issue> validate_circuit(const circuit& c);

// Single forward pass in gate order. Throws on arity mismatch.
bits eval(const circuit& c, std::span<const uint8_t> input);

// Exhaustive table indexed by the numeric value of the input vector
// (input 0 is the most significant bit). Requires 2^arity <= cap.
std::vector<bits> truth_table(const circuit& c, uint64_t cap = default_row_cap);

// Incremental construction with value handles. XOR, muxes and field
// comparisons are macro-expanded into the primitive basis.
class circuit_builder {
public:
    explicit circuit_builder(uint32_t inputs) : inputs_(inputs) {}

    [[nodiscard]] ref input(uint32_t i) const { return in_ref(i); }
    [[nodiscard]] uint32_t input_arity() const { return inputs_; }

    ref constant(bool v) { return emit(v ? gate_op::const1 : gate_op::const0, {}, {}); }
    ref lnot(ref a) { return emit(gate_op::inv, a, {}); }
    ref land(ref a, ref b) { return emit(gate_op::conj, a, b); }
    ref lor(ref a, ref b) { return emit(gate_op::disj, a, b); }
    ref lxor(ref a, ref b) { return lor(land(a, lnot(b)), land(lnot(a), b)); }
    ref mux(ref sel, ref when_true, ref when_false) {
        return lor(land(sel, when_true), land(lnot(sel), when_false));
    }

    ref all(std::span<const ref> rs);
    ref any(std::span<const ref> rs);

    // True iff the bus (MSB-first) carries exactly `value`.
    ref equals_const(std::span<const ref> bus, uint64_t value);

    std::vector<ref> constant_bus(uint64_t value, size_t width);
    std::vector<ref> mux_bus(ref sel, std::span<const ref> when_true,
                             std::span<const ref> when_false);

    [[nodiscard]] size_t gate_count() const { return gates_.size(); }

    [[nodiscard]] circuit build(std::vector<ref> outputs) const {
        return circuit{inputs_, gates_, std::move(outputs)};
    }

private:
    ref emit(gate_op op, ref a, ref b) {
        gates_.push_back(gate{op, a, b});
        return g_ref(static_cast<uint32_t>(gates_.size() - 1));
    }

    uint32_t inputs_;
    std::vector<gate> gates_;
};

} // namespace wne
