#include "plsforge/circuit.hpp"

#include <algorithm>

#include "plsforge/errors.hpp"

namespace plsforge {

Circuit::Circuit(int inputs, std::vector<NorGate> gates, std::vector<int> outputs,
                 std::vector<int> next_outputs)
    : n_(inputs), gates_(std::move(gates)), outputs_(std::move(outputs)),
      next_outputs_(std::move(next_outputs)) {
    if (n_ < 1) throw InvalidArgument("circuit needs at least one input");
    if (outputs_.empty()) throw InvalidArgument("circuit needs at least one output");
    int G = static_cast<int>(gates_.size());
    for (int g = 0; g < G; ++g) {
        for (int op : {gates_[g].a, gates_[g].b}) {
            if (op < 0 || op >= n_ + G)
                throw InvalidArgument("gate operand out of range");
            if (op >= n_ + g)
                throw NotADag("gate may only reference inputs and earlier gates");
        }
    }
    for (int o : outputs_)
        if (o < 0 || o >= G) throw InvalidArgument("output is not a gate");
    if (!next_outputs_.empty() && static_cast<int>(next_outputs_.size()) != n_)
        throw InvalidArgument("next outputs must number one per input");
    for (int o : next_outputs_)
        if (o < 0 || o >= G) throw InvalidArgument("next output is not a gate");
}

BitString eval_gates(const Circuit& c, const BitString& input) {
    if (static_cast<int>(input.size()) != c.input_count())
        throw DimensionError("input length does not match circuit");
    BitString val(c.gate_count());
    auto ref = [&](int op) -> uint8_t {
        return c.is_input_ref(op) ? input[op] : val[c.gate_of_ref(op)];
    };
    for (int g = 0; g < c.gate_count(); ++g) {
        const NorGate& gate = c.gates()[g];
        val[g] = static_cast<uint8_t>(!(ref(gate.a) || ref(gate.b)));
    }
    return val;
}

BitString eval(const Circuit& c, const BitString& input) {
    BitString val = eval_gates(c, input);
    BitString out(c.outputs().size());
    for (size_t k = 0; k < out.size(); ++k) out[k] = val[c.outputs()[k]];
    return out;
}

Int real_val(const Circuit& c, const BitString& s) {
    BitString out = eval(c, s);
    Int v = 0;
    for (uint8_t bit : out) {
        v <<= 1;
        if (bit) v += 1;
    }
    return v;
}

BitString real_next(const Circuit& c, const BitString& s) {
    Int base = real_val(c, s);
    BitString t = s;
    for (int i = 0; i < c.input_count(); ++i) {
        t[i] ^= 1;
        if (real_val(c, t) > base) return t;
        t[i] ^= 1;
    }
    return s;
}

bool is_flip_local_opt(const Circuit& c, const BitString& s) {
    return real_next(c, s) == s;
}

std::vector<int> reverse_topological_order(const Circuit& c) {
    int G = c.gate_count();
    std::vector<int> index(G, 0);
    int next_index = 1;
    auto pin = [&](int gate) {
        if (index[gate] != 0)
            throw InvalidArgument("output gates must be distinct for indexing");
        index[gate] = next_index++;
    };
    // Value bit k (significance 2^{k-1}) takes index k; outputs are listed
    // most significant first, so pin them back to front.
    for (auto it = c.outputs().rbegin(); it != c.outputs().rend(); ++it) pin(*it);
    for (int o : c.next_outputs()) pin(o);
    // Remaining gates in reverse listing order: operands precede their users
    // in the listing, so every unpinned dependency lands on a higher index.
    for (int g = G - 1; g >= 0; --g)
        if (index[g] == 0) index[g] = next_index++;
    for (int g = 0; g < G; ++g) {
        for (int op : {c.gates()[g].a, c.gates()[g].b}) {
            if (c.is_input_ref(op)) continue;
            if (index[c.gate_of_ref(op)] < index[g])
                throw InvalidArgument(
                    "output gates feed other gates; no valid index assignment");
        }
    }
    return index;
}

namespace {

// Re-emits c's gates into b with inputs rerouted through input_map; returns
// the refs of c's value outputs.
std::vector<int> emit_copy(CircuitBuilder& b, const Circuit& c,
                           const std::vector<int>& input_map) {
    std::vector<int> gate_ref(c.gate_count());
    auto remap = [&](int op) {
        return c.is_input_ref(op) ? input_map[op] : gate_ref[c.gate_of_ref(op)];
    };
    for (int g = 0; g < c.gate_count(); ++g) {
        int a = remap(c.gates()[g].a);
        int bb = remap(c.gates()[g].b);
        gate_ref[g] = b.nor(a, bb);
    }
    std::vector<int> outs;
    outs.reserve(c.outputs().size());
    for (int o : c.outputs()) outs.push_back(gate_ref[o]);
    return outs;
}

// Strict unsigned comparison x > y over equal-length MSB-first bit refs.
int emit_gt(CircuitBuilder& b, const std::vector<int>& x, const std::vector<int>& y) {
    int gt = b.and_(x[0], b.not_(y[0]));
    int eq = -1;
    for (size_t k = 1; k < x.size(); ++k) {
        int bit_eq = b.xnor_(x[k - 1], y[k - 1]);
        eq = (k == 1) ? bit_eq : b.and_(eq, bit_eq);
        gt = b.or_(gt, b.and_(eq, b.and_(x[k], b.not_(y[k]))));
    }
    return gt;
}

} // namespace

Circuit augment_next_val(const Circuit& c) {
    int n = c.input_count();
    CircuitBuilder b(n);
    std::vector<int> identity(n);
    for (int i = 0; i < n; ++i) identity[i] = i;

    std::vector<int> val0 = emit_copy(b, c, identity);
    std::vector<int> improves(n);
    for (int i = 0; i < n; ++i) {
        std::vector<int> flipped = identity;
        flipped[i] = b.not_(i);
        std::vector<int> vali = emit_copy(b, c, flipped);
        improves[i] = emit_gt(b, vali, val0);
    }

    // Lowest improving index wins.
    std::vector<int> chosen(n);
    chosen[0] = improves[0];
    int blocked = improves[0];
    for (int i = 1; i < n; ++i) {
        chosen[i] = b.and_(improves[i], b.not_(blocked));
        if (i + 1 < n) blocked = b.or_(blocked, improves[i]);
    }

    std::vector<int> next_refs(n);
    for (int i = 0; i < n; ++i) next_refs[i] = b.xor_(i, chosen[i]);

    std::vector<int> out_refs(val0.size());
    for (size_t k = 0; k < val0.size(); ++k) out_refs[k] = b.buffer(val0[k]);

    auto to_gate = [&](int ref) { return ref - n; };
    std::vector<int> outs, nexts;
    for (int r : out_refs) outs.push_back(to_gate(r));
    for (int r : next_refs) nexts.push_back(to_gate(r));
    return Circuit(n, std::move(b.gates), std::move(outs), std::move(nexts));
}

Circuit complement_val_outputs(const Circuit& c) {
    std::vector<NorGate> gates = c.gates();
    std::vector<int> outs;
    outs.reserve(c.outputs().size());
    int n = c.input_count();
    for (int o : c.outputs()) {
        int ref = n + o;
        gates.push_back({ref, ref});
        outs.push_back(static_cast<int>(gates.size()) - 1);
    }
    return Circuit(n, std::move(gates), std::move(outs), c.next_outputs());
}

} // namespace plsforge
