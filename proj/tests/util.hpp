#pragma once

// Shared helpers for the test binaries: seeded instance generators.

#include <bit>
#include <numeric>
#include <random>
#include <vector>

#include "plsforge/games_core.hpp"

namespace testgen {

using namespace plsforge;

inline Rat random_weight_up_to_2_64(std::mt19937_64& rng) {
    // Uniform bit-length, then uniform value of that length; always >= 1.
    int bits = std::uniform_int_distribution<int>(1, 64)(rng);
    uint64_t hi = bits == 64 ? ~0ull : ((1ull << bits) - 1);
    uint64_t v = std::uniform_int_distribution<uint64_t>(1, hi)(rng);
    Int n;
    mpz_import(n.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
    return Rat(n);
}

inline std::vector<std::pair<int, int>> random_edge_set(int n, double p, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(p);
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng)) edges.emplace_back(u, v);
    return edges;
}

inline VertexWeightedGraph random_nmc(int n, double p, std::mt19937_64& rng) {
    std::vector<Rat> w;
    w.reserve(n);
    for (int i = 0; i < n; ++i) w.push_back(random_weight_up_to_2_64(rng));
    return VertexWeightedGraph(std::move(w), random_edge_set(n, p, rng));
}

inline VertexWeightedGraph random_nmc_small_weights(int n, double p, int wmax,
                                                    std::mt19937_64& rng) {
    std::uniform_int_distribution<int> wd(1, wmax);
    std::vector<Rat> w;
    w.reserve(n);
    for (int i = 0; i < n; ++i) w.push_back(Rat(wd(rng)));
    return VertexWeightedGraph(std::move(w), random_edge_set(n, p, rng));
}

inline EdgeWeightedGraph random_mc(int n, double p, int wmax, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> wd(1, wmax);
    std::vector<Edge> edges;
    for (auto [u, v] : random_edge_set(n, p, rng)) edges.push_back({u, v, Rat(wd(rng))});
    return EdgeWeightedGraph(n, std::move(edges));
}

inline Cut random_cut(int n, std::mt19937_64& rng) {
    std::vector<uint8_t> s(n);
    for (auto& b : s) b = static_cast<uint8_t>(rng() & 1);
    return Cut(std::move(s));
}

/// Every labeled connected graph on n vertices with at most mcap edges,
/// as edge lists.
inline std::vector<std::vector<std::pair<int, int>>> connected_edge_sets(int n, int mcap) {
    std::vector<std::pair<int, int>> all;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) all.emplace_back(u, v);
    int M = static_cast<int>(all.size());
    std::vector<std::vector<std::pair<int, int>>> out;
    for (uint32_t mask = 1; mask < (1u << M); ++mask) {
        if (std::popcount(mask) > mcap) continue;
        std::vector<int> root(n);
        std::iota(root.begin(), root.end(), 0);
        auto find = [&](int x) {
            while (root[x] != x) x = root[x] = root[root[x]];
            return x;
        };
        std::vector<std::pair<int, int>> edges;
        for (int e = 0; e < M; ++e)
            if (mask >> e & 1) {
                edges.push_back(all[e]);
                root[find(all[e].first)] = find(all[e].second);
            }
        bool connected = true;
        for (int v = 0; v < n; ++v) connected &= find(v) == find(0);
        if (connected) out.push_back(std::move(edges));
    }
    return out;
}

} // namespace testgen
