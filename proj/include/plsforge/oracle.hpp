#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "plsforge/congestion.hpp"
#include "plsforge/games_core.hpp"
#include "plsforge/reductions.hpp"

namespace plsforge {

struct VerificationReport {
    std::string instance_id;
    std::string direction; // "forward", "backward", or "forward+backward"
    int64_t checked = 0;
    std::vector<std::string> counterexamples;

    bool ok() const { return counterexamples.empty(); }
};

/// All complement-normalized locally optimal cuts, sorted. Hard cap n <= 24.
std::vector<Cut> brute_local_optima(const EdgeWeightedGraph& g);
std::vector<Cut> brute_local_optima(const VertexWeightedGraph& g);

/// Exact enumeration of cuts where every non-exempt vertex is locally
/// optimal, by branch-and-propagate over the heaviest undecided vertex.
/// pin[v] (and exempt[v]) may be empty for "none": pin -1 = free, 0/1 =
/// fixed side. Pinned vertices still have their optimality checked unless
/// exempt. Throws TooLarge once the search tree exceeds node_budget.
std::vector<Cut> local_optima_under_pins(const VertexWeightedGraph& g,
                                         const std::vector<int8_t>& pin,
                                         const std::vector<uint8_t>& exempt,
                                         int64_t node_budget = 1 << 22);

/// All pure Nash equilibria by enumeration over the strategy-profile space.
/// Throws TooLarge when the product of path counts exceeds 10^7.
std::vector<Profile> brute_pne(const CongestionGame& g);

enum class VerifyMode { EmbedCheck, DynamicsSample, Exhaustive };

/// Checks one reduction instance. EmbedCheck: every brute-force local
/// optimum of H embeds to an exact equilibrium. DynamicsSample: seeded
/// random-schedule dynamics runs converge and map back to local optima.
/// Exhaustive: additionally every brute-force equilibrium of the compiled
/// game maps back to a local optimum.
VerificationReport verify_reduction(const EdgeWeightedGraph& H, const CongestionGame& game,
                                    const SolutionMap& sm, VerifyMode mode,
                                    uint64_t seed = 1, int samples = 20);
VerificationReport verify_reduction(const VertexWeightedGraph& H, const CongestionGame& game,
                                    const SolutionMap& sm, VerifyMode mode,
                                    uint64_t seed = 1, int samples = 20);

} // namespace plsforge
