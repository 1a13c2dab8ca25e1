#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "plsforge/circuit.hpp"
#include "plsforge/congestion.hpp"
#include "plsforge/games_core.hpp"
#include "plsforge/rat.hpp"

namespace plsforge {

enum class ReductionKind { McToSp, NmcToMulti, CfToNmc };

/// Max-Cut -> series-parallel game. Players come in triples: players
/// 3k, 3k+1, 3k+2 have weight 16^{k+1} and belong to source vertex k.
struct SpMapData {
    int n = 0, m = 0;
    std::vector<Path> up;  // p_k^u, the G1 path through every ell_k edge
    std::vector<Path> low; // p_k^l, its G2 twin
};

/// Node-Max-Cut -> multi-commodity grid game. Players 0..n-1 are primary;
/// the rest are complementary, one per replaced constant edge.
struct MultiMapData {
    int n = 0;
    std::vector<Path> up;              // p_i^u
    std::vector<Path> low;             // p_i^l
    std::vector<int32_t> middle_edge;  // intended edge of complementary player n+t
};

// Circuit-Flip -> Node-Max-Cut solution map data is declared further below.

struct CfMapData;

struct SolutionMap {
    ReductionKind kind;
    SpMapData sp;
    MultiMapData multi;
    std::shared_ptr<const CfMapData> cf;
};

std::pair<CongestionGame, SolutionMap> reduce_mc_to_sp(const EdgeWeightedGraph& H);

/// For k in S: two weight-16^{k+1} players on p_k^u, one on p_k^l; mirrored
/// otherwise. Complementary of the cut flips u and l everywhere.
Profile embed_cut_to_sp(const SolutionMap& sm, const Cut& S);

/// S = {k : exactly two weight-16^{k+1} players chose p_k^u}. Throws
/// NotCanonical when some weight class is not split 2-1 over p_k^u/p_k^l.
Cut map_back_sp(const SolutionMap& sm, const Profile& p);

std::pair<CongestionGame, SolutionMap> reduce_nmc_to_multi(const VertexWeightedGraph& H);

/// Primary player i goes to p_i^u if i is in S, else p_i^l; complementary
/// players sit on their middle edges.
Profile embed_cut_to_multi(const SolutionMap& sm, const Cut& S);

/// S = {i : primary player i chose p_i^u}. Complementary players are not
/// inspected. Throws NotCanonical when a primary player is on neither
/// designated path.
Cut map_back_multi(const SolutionMap& sm, const Profile& p);

} // namespace plsforge
