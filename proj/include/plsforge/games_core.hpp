#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "plsforge/rat.hpp"

namespace plsforge {

/// Two-sided vertex assignment. side[v] is 0 or 1.
struct Cut {
    std::vector<uint8_t> side;

    Cut() = default;
    explicit Cut(std::vector<uint8_t> s) : side(std::move(s)) {}
    static Cut all_zero(int n) { return Cut(std::vector<uint8_t>(n, 0)); }

    int size() const { return static_cast<int>(side.size()); }
    Cut flipped(int v) const;
    Cut complemented() const;
    /// Complement-normalized representative: vertex 0 on side 0.
    Cut canonical() const;

    bool operator==(const Cut& o) const { return side == o.side; }
    bool operator<(const Cut& o) const { return side < o.side; }
};

struct Edge {
    int u, v;
    Rat w;
};

/// Max-Cut instance: positive edge weights, no self-loops, no duplicate edges.
class EdgeWeightedGraph {
public:
    EdgeWeightedGraph(int n, std::vector<Edge> edges);

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const Edge& edge(int idx) const { return edges_[idx]; }
    const std::vector<Edge>& edges() const { return edges_; }
    /// (neighbor, edge index) pairs.
    const std::vector<std::pair<int, int>>& incident(int v) const { return adj_[v]; }

private:
    int n_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::pair<int, int>>> adj_;
};

/// Node-Max-Cut instance: positive vertex weights, unweighted edge list;
/// the weight of edge {u,v} is w_u * w_v. Weights are interned so that
/// compiled instances with a few distinct huge weights stay compact.
class VertexWeightedGraph {
public:
    VertexWeightedGraph(std::vector<Rat> weights, std::vector<std::pair<int, int>> edges);
    /// Pre-interned form used by instance compilers.
    VertexWeightedGraph(std::vector<Rat> pool, std::vector<int32_t> wid,
                        std::vector<std::pair<int, int>> edges);

    int vertex_count() const { return n_; }
    int64_t edge_count() const { return static_cast<int64_t>(edges_.size()); }
    const Rat& weight(int v) const { return pool_[wid_[v]]; }
    int32_t weight_id(int v) const { return wid_[v]; }
    const std::vector<Rat>& weight_pool() const { return pool_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    bool has_edge(int u, int v) const;
    std::span<const int32_t> neighbors(int v) const {
        return {adj_.data() + adj_off_[v], adj_.data() + adj_off_[v + 1]};
    }
    int degree(int v) const { return static_cast<int>(adj_off_[v + 1] - adj_off_[v]); }
    int max_degree() const;

private:
    void build(std::vector<std::pair<int, int>> edges);

    int n_ = 0;
    std::vector<Rat> pool_;
    std::vector<int32_t> wid_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<int64_t> adj_off_;
    std::vector<int32_t> adj_;
};

Rat nmc_edge_weight(const VertexWeightedGraph& g, int u, int v);

Rat cut_value(const EdgeWeightedGraph& g, const Cut& c);
Rat cut_value(const VertexWeightedGraph& g, const Cut& c);

/// cut_value(flip(c,v)) - cut_value(c), computed from v's incident edges only.
Rat flip_gain(const EdgeWeightedGraph& g, const Cut& c, int v);
Rat flip_gain(const VertexWeightedGraph& g, const Cut& c, int v);

bool is_local_optimum(const EdgeWeightedGraph& g, const Cut& c);
bool is_local_optimum(const VertexWeightedGraph& g, const Cut& c);

/// For every vertex i: sum of same-side neighbor weights <= (1+eps) * opposite-side sum.
bool is_approx_equilibrium_nmc(const VertexWeightedGraph& g, const Cut& c, const Rat& eps);

/// |sum of side-1 neighbor weights - sum of side-0 neighbor weights| over N_i restricted
/// to `subset`.
Rat bias(const VertexWeightedGraph& g, const Cut& c, int i, const std::vector<int>& subset);

/// Sum over same-side edges of w_u * w_v. cut_value + nmc_potential is invariant.
Rat nmc_potential(const VertexWeightedGraph& g, const Cut& c);

// ---------------------------------------------------------------------------
// Flip dynamics for cut games.

enum class FlipSchedule {
    First,      // scan 0..n-1 from the top, flip the first violator
    RoundRobin, // cyclic scan resuming after the last flip
    MaxGain,    // flip a vertex of maximal gain (64-bit-mantissa order, ties by id)
    Random,     // uniformly random violator (seeded)
};

struct FlipDynamicsResult {
    Cut cut;
    int64_t steps = 0;
    bool converged = false;
    std::vector<int32_t> flips; // per-step flipped vertex, only when recording
};

/// Repeatedly flips eps-violating vertices (same-side weight > (1+eps) * opposite) until
/// none remains or the step cap is hit. eps=0 gives plain best-response dynamics.
FlipDynamicsResult flip_dynamics(const VertexWeightedGraph& g, const Cut& start,
                                 FlipSchedule schedule, uint64_t seed, int64_t max_steps,
                                 const Rat& eps = Rat(0), bool record_flips = false);

FlipDynamicsResult flip_dynamics(const EdgeWeightedGraph& g, const Cut& start,
                                 FlipSchedule schedule, uint64_t seed, int64_t max_steps,
                                 bool record_flips = false);

} // namespace plsforge
