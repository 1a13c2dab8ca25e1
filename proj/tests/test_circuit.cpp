#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "plsforge/circuit.hpp"
#include "plsforge/errors.hpp"

using namespace plsforge;

// n = m, output k buffers input k (x1 is the most significant bit).
static Circuit pass_through(int n) {
    CircuitBuilder b(n);
    std::vector<int> outs;
    for (int i = 0; i < n; ++i) outs.push_back(b.buffer(i) - n);
    return Circuit(n, std::move(b.gates), std::move(outs));
}

// Output ignores the input: g2 = NOR(x1, NOT x1) = 0.
static Circuit constant_zero() {
    return Circuit(1, {{0, 0}, {0, 1}}, {1});
}

static BitString bits(std::initializer_list<int> v) {
    BitString s;
    for (int b : v) s.push_back(static_cast<uint8_t>(b));
    return s;
}

static BitString nth_input(int n, unsigned mask) {
    BitString s(n);
    for (int i = 0; i < n; ++i) s[i] = (mask >> (n - 1 - i)) & 1u;
    return s;
}

TEST_CASE("construction validates references") {
    CHECK_NOTHROW(Circuit(2, {{0, 1}}, {0}));
    CHECK_THROWS_AS(Circuit(2, {{0, 2}}, {0}), NotADag);            // self reference
    CHECK_THROWS_AS(Circuit(2, {{0, 3}, {0, 1}}, {1}), NotADag);    // forward reference
    CHECK_THROWS_AS(Circuit(2, {{0, -1}}, {0}), InvalidArgument);
    CHECK_THROWS_AS(Circuit(2, {{0, 9}}, {0}), InvalidArgument);
    CHECK_THROWS_AS(Circuit(2, {{0, 1}}, {1}), InvalidArgument); // output not a gate
    CHECK_THROWS_AS(Circuit(2, {{0, 1}}, {}), InvalidArgument);
    CHECK_THROWS_AS(Circuit(2, {{0, 1}}, {0}, {0}), InvalidArgument); // need n next refs
}

TEST_CASE("eval") {
    Circuit single_self(1, {{0, 0}}, {0});
    CHECK(eval(single_self, bits({0})) == bits({1}));
    Circuit single(2, {{0, 1}}, {0});
    CHECK(eval(single, bits({1, 1})) == bits({0}));
    CHECK_THROWS_AS(eval(single, bits({1})), DimensionError);

    Circuit chain(2, {{0, 1}, {2, 2}}, {1});
    BitString gv = eval_gates(chain, bits({0, 0}));
    CHECK(gv == bits({1, 0}));
}

TEST_CASE("real_val") {
    Circuit p3 = pass_through(3);
    CHECK(real_val(p3, bits({1, 0, 1})) == 5);
    CHECK(real_val(p3, bits({0, 0, 0})) == 0);
    Circuit p2 = pass_through(2);
    CHECK(real_val(p2, bits({1, 1})) == 3);
}

TEST_CASE("real_next and flip local optimality") {
    Circuit p2 = pass_through(2);
    CHECK(real_next(p2, bits({1, 1})) == bits({1, 1}));
    CHECK(real_next(p2, bits({0, 0})) == bits({1, 0}));
    CHECK(is_flip_local_opt(p2, bits({1, 1})));
    CHECK_FALSE(is_flip_local_opt(p2, bits({0, 0})));

    Circuit cz = constant_zero();
    CHECK(real_next(cz, bits({0})) == bits({0}));
    CHECK(real_next(cz, bits({1})) == bits({1}));
    CHECK(is_flip_local_opt(cz, bits({0})));
    CHECK(is_flip_local_opt(cz, bits({1})));
}

TEST_CASE("real_next never decreases the value") {
    for (int n : {1, 2, 3, 10}) {
        Circuit c = pass_through(n);
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            BitString s = nth_input(n, mask);
            BitString t = real_next(c, s);
            Int vs = real_val(c, s), vt = real_val(c, t);
            CHECK(vt >= vs);
            CHECK((vt == vs) == (t == s));
        }
    }
}

TEST_CASE("reverse_topological_order") {
    Circuit single(1, {{0, 0}}, {0});
    CHECK(reverse_topological_order(single) == std::vector<int>{1});

    Circuit chain(2, {{0, 1}, {2, 2}}, {1});
    std::vector<int> idx = reverse_topological_order(chain);
    CHECK(idx[1] == 1);
    CHECK(idx[0] == 2);

    // Value bit k (1 = least significant) takes index k; outputs list the
    // most significant bit first.
    Circuit two(2, {{0, 0}, {1, 1}}, {0, 1});
    idx = reverse_topological_order(two);
    CHECK(idx[1] == 1);
    CHECK(idx[0] == 2);

    // Output gate feeding another gate cannot take a low index.
    Circuit bad(1, {{0, 0}, {1, 1}}, {0});
    CHECK_THROWS_AS(reverse_topological_order(bad), InvalidArgument);
    Circuit dup(1, {{0, 0}}, {0, 0});
    CHECK_THROWS_AS(reverse_topological_order(dup), InvalidArgument);
}

static Circuit random_circuit(std::mt19937_64& rng) {
    int n = 1 + static_cast<int>(rng() % 4);
    int G = 1 + static_cast<int>(rng() % 8);
    std::vector<NorGate> gates;
    for (int g = 0; g < G; ++g) {
        int range = n + g;
        gates.push_back({static_cast<int>(rng() % range), static_cast<int>(rng() % range)});
    }
    int m = 1 + static_cast<int>(rng() % std::min(G, 3));
    std::vector<int> pool(G);
    for (int g = 0; g < G; ++g) pool[g] = g;
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<int> outs(pool.begin(), pool.begin() + m);
    return Circuit(n, std::move(gates), std::move(outs));
}

TEST_CASE("augment_next_val reproduces eval and real_next") {
    std::mt19937_64 rng(7031);
    for (int round = 0; round < 60; ++round) {
        Circuit c = random_circuit(rng);
        Circuit a = augment_next_val(c);
        int n = c.input_count();
        REQUIRE(a.input_count() == n);
        REQUIRE(a.output_count() == c.output_count());
        REQUIRE(a.has_next_outputs());
        std::vector<int> idx = reverse_topological_order(a);
        for (int g = 0; g < a.gate_count(); ++g)
            for (int op : {a.gates()[g].a, a.gates()[g].b})
                if (!a.is_input_ref(op)) CHECK(idx[a.gate_of_ref(op)] > idx[g]);

        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            BitString s = nth_input(n, mask);
            CHECK(eval(a, s) == eval(c, s));
            BitString gv = eval_gates(a, s);
            BitString nxt(n);
            for (int i = 0; i < n; ++i) nxt[i] = gv[a.next_outputs()[i]];
            CHECK(nxt == real_next(c, s));
        }
    }
}

TEST_CASE("complement_val_outputs flips every output bit") {
    std::mt19937_64 rng(920);
    for (int round = 0; round < 20; ++round) {
        Circuit c = random_circuit(rng);
        Circuit cc = complement_val_outputs(c);
        int n = c.input_count();
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            BitString s = nth_input(n, mask);
            BitString a = eval(c, s), b = eval(cc, s);
            REQUIRE(a.size() == b.size());
            for (size_t k = 0; k < a.size(); ++k) CHECK(a[k] != b[k]);
        }
    }
}
