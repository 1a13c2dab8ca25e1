#pragma once

#include <cstdint>
#include <vector>

#include "plsforge/games_core.hpp"
#include "plsforge/rat.hpp"

namespace plsforge {

/// Weights rounded down to powers of (1+eps). rounded(i) = (1+eps)^{k[i]};
/// normalized(i) divides the minimum out so the smallest weight is 1.
struct RoundedInstance {
    Rat eps;
    std::vector<long> k;
    long k_min = 0;
    Rat divisor;             // (1+eps)^{k_min}
    int distinct_exponents = 0;

    int size() const { return static_cast<int>(k.size()); }
    Rat rounded(int i) const;
    Rat normalized(int i) const;
};

/// Vertices sorted by rounded weight and greedily split where consecutive
/// ratios exceed T.
struct GroupedInstance {
    Rat eps;
    Int T;
    std::vector<int> order;               // all vertices, weight-ascending
    std::vector<std::vector<int>> groups; // partition of order, in order
    std::vector<Rat> rounded;             // normalized rounded weight per vertex
};

struct BridgedWeights {
    std::vector<Rat> w2; // per vertex
    std::vector<Rat> d;  // divisor applied at each seam, in group order
};

/// ceil(n/eps), at least 1.
Int bridge_threshold(int n, const Rat& eps);

RoundedInstance round_weights(const VertexWeightedGraph& g, const Rat& eps);

/// T_override = 0 means the default threshold ceil(n/eps).
GroupedInstance group_weights(const RoundedInstance& r, const Rat& eps,
                              const Int& T_override = Int(0));

/// Divides every group above each seam so adjacent-group ratios become
/// exactly T. Single group: weights unchanged.
BridgedWeights bridge_gaps(const GroupedInstance& gr);

struct BridgeGapsOptions {
    FlipSchedule schedule = FlipSchedule::First; // First or MaxGain
    bool delta_variant = false;                  // threshold ceil(max_degree/eps)
    uint64_t seed = 0;
};

struct BridgeGapsResult {
    Cut cut;
    int64_t flips = 0;
    int distinct_exponents = 0;
    Int T;
    Rat flip_bound;           // (m/eps) * T^{2 D_eps}
    Rat divisor;              // rounding normalization
    std::vector<Rat> bridged; // the weights the loop ran on
};

/// Rounds, normalizes, groups, bridges, then runs eps-best-response flips
/// until the bridged instance is a (1+eps)-approximate equilibrium. The
/// returned cut is a (1+eps)^3-approximate equilibrium of the original graph.
BridgeGapsResult bridgegaps_solve(const VertexWeightedGraph& g, const Rat& eps,
                                  const Cut& start, const BridgeGapsOptions& opt = {});

} // namespace plsforge
