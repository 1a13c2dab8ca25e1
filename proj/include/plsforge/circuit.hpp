#pragma once

#include <cstdint>
#include <vector>

#include "plsforge/rat.hpp"

namespace plsforge {

using BitString = std::vector<uint8_t>;

/// Operands reference inputs 0..n-1 or gates as n + gate_index.
struct NorGate {
    int a, b;
};

/// A NOR netlist with n ordered inputs, m ordered value outputs (most significant
/// first), and optionally n "next" outputs computing an improving neighbor.
class Circuit {
public:
    Circuit(int inputs, std::vector<NorGate> gates, std::vector<int> outputs,
            std::vector<int> next_outputs = {});

    int input_count() const { return n_; }
    int output_count() const { return static_cast<int>(outputs_.size()); }
    int gate_count() const { return static_cast<int>(gates_.size()); }
    const std::vector<NorGate>& gates() const { return gates_; }
    /// Gate indices (0-based) of the value outputs, most significant bit first.
    const std::vector<int>& outputs() const { return outputs_; }
    bool has_next_outputs() const { return !next_outputs_.empty(); }
    const std::vector<int>& next_outputs() const { return next_outputs_; }

    bool is_input_ref(int op) const { return op < n_; }
    int gate_of_ref(int op) const { return op - n_; }

private:
    int n_;
    std::vector<NorGate> gates_;
    std::vector<int> outputs_;
    std::vector<int> next_outputs_;
};

/// Gate-by-gate evaluation; returns the m output bits, MSB first.
BitString eval(const Circuit& c, const BitString& input);

/// Values of every gate for the given input.
BitString eval_gates(const Circuit& c, const BitString& input);

/// Integer encoded by eval(c, s), MSB first.
Int real_val(const Circuit& c, const BitString& s);

/// The one-bit flip of s (lowest flipped index) with strictly larger real_val,
/// or s itself when no flip improves.
BitString real_next(const Circuit& c, const BitString& s);

bool is_flip_local_opt(const Circuit& c, const BitString& s);

/// Index assignment (1-based, per gate) such that no gate depends on a
/// lower-indexed gate; the k-th value output gate receives index k and the
/// next-output feeder gates the following n indices. Requires those gates to
/// be sinks (augment_next_val produces circuits in this shape).
std::vector<int> reverse_topological_order(const Circuit& c);

/// The combined circuit: same inputs, value outputs buffered onto fresh sink
/// gates, plus n next outputs computing real_next. Pure NOR construction.
Circuit augment_next_val(const Circuit& c);

/// Same circuit with each value output complemented through one extra NOR.
Circuit complement_val_outputs(const Circuit& c);

/// Incremental netlist construction helper.
struct CircuitBuilder {
    int n;
    std::vector<NorGate> gates;

    explicit CircuitBuilder(int inputs) : n(inputs) {}
    int input(int i) const { return i; }
    int nor(int a, int b) {
        gates.push_back({a, b});
        return n + static_cast<int>(gates.size()) - 1;
    }
    int not_(int a) { return nor(a, a); }
    int or_(int a, int b) { return not_(nor(a, b)); }
    int and_(int a, int b) { return nor(not_(a), not_(b)); }
    int xor_(int a, int b) { return nor(nor(a, b), and_(a, b)); }
    int xnor_(int a, int b) { return or_(nor(a, b), and_(a, b)); }
    /// Identity through two inverters; the second gate is fresh (a sink if unused).
    int buffer(int a) { return not_(not_(a)); }
};

} // namespace plsforge
