#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "plsforge/errors.hpp"
#include "plsforge/rat.hpp"

namespace plsforge {

/// Latency ell(x) = a*x + b with a, b >= 0. Identity latency: a=1, b=0.
struct LinearLatency {
    Rat a, b;
};

inline LinearLatency identity_latency() { return {Rat(1), Rat(0)}; }
inline LinearLatency constant_latency(const Rat& b) { return {Rat(0), b}; }

struct NetEdge {
    int u, v;
    LinearLatency lat;
};

/// Undirected multigraph with linear latencies. Parallel edges are allowed
/// and distinguished by edge index.
class Network {
public:
    Network(int vertices, std::vector<NetEdge> edges,
            std::vector<std::string> labels = {});

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<NetEdge>& edges() const { return edges_; }
    const NetEdge& edge(int e) const { return edges_[e]; }
    const std::string& label(int e) const;
    /// (other endpoint, edge index) pairs, ascending by edge index.
    const std::vector<std::pair<int, int>>& incident(int v) const { return inc_[v]; }

private:
    int n_;
    std::vector<NetEdge> edges_;
    std::vector<std::string> labels_;
    std::vector<std::vector<std::pair<int, int>>> inc_;
};

/// A path is a sequence of edge indices; consecutive edges share endpoints
/// and no vertex repeats.
using Path = std::vector<int32_t>;

bool is_simple_path(const Network& net, int o, int d, const Path& path);

/// Series-parallel composition tree.
struct SeriesParallelTerm {
    enum class Kind { Leaf, Series, Parallel };
    Kind kind;
    LinearLatency lat;
    std::unique_ptr<SeriesParallelTerm> left, right;
};

using SpTerm = std::unique_ptr<SeriesParallelTerm>;

SpTerm sp_leaf(LinearLatency lat);
SpTerm sp_series(SpTerm left, SpTerm right);
SpTerm sp_parallel(SpTerm left, SpTerm right);

struct SpNetwork {
    Network net;
    int o, d;
};

/// Realizes the composition tree. Series identifies the left destination with
/// the right origin; parallel identifies both endpoint pairs.
SpNetwork sp_realize(const SeriesParallelTerm& t);

struct Player {
    Rat w;
    int o, d;
};

class CongestionGame {
public:
    CongestionGame(Network net, std::vector<Player> players);

    const Network& network() const { return net_; }
    int player_count() const { return static_cast<int>(players_.size()); }
    const std::vector<Player>& players() const { return players_; }
    const Player& player(int i) const { return players_[i]; }

private:
    Network net_;
    std::vector<Player> players_;
};

struct Profile {
    std::vector<Path> paths;
};

/// All simple o-d paths in lexicographic edge-index order. Throws TooLarge
/// when more than cap paths exist.
std::vector<Path> enumerate_paths(const Network& net, int o, int d,
                                  int64_t cap = int64_t(1) << 20);

struct LoadAndCosts {
    std::vector<Rat> congestion; // per edge
    std::vector<Rat> cost;       // per player
};

LoadAndCosts congestion_and_costs(const CongestionGame& g, const Profile& p);

/// Phi(s) = sum_e (a_e s_e^2 + b_e s_e) + sum_i w_i sum_{e in s_i} (a_e w_i + b_e).
/// Any unilateral move of player i changes Phi by exactly 2 w_i * (change in c_i).
Rat potential_wcg(const CongestionGame& g, const Profile& p);

/// True iff no player can improve by more than a (1+eps) factor by switching
/// to any alternative simple path.
bool is_pne(const CongestionGame& g, const Profile& p, const Rat& eps = Rat(0));

/// Cheapest response of player i holding everyone else fixed; ties go to the
/// lexicographically first path.
std::pair<Path, Rat> best_response(const CongestionGame& g, const Profile& p, int i);

enum class BrSchedule { RoundRobin, MaxGain, Random };

struct BrStep {
    int player;
    Rat old_cost, new_cost, potential;
};

struct BrResult {
    Profile profile;
    std::vector<BrStep> trace;
};

struct StepCapExceeded : Error {
    Profile last;
    std::vector<BrStep> trace;
    StepCapExceeded(Profile p, std::vector<BrStep> t)
        : Error("step cap exceeded before reaching an equilibrium"),
          last(std::move(p)), trace(std::move(t)) {}
};

/// Applies eps-improving best responses per the schedule until is_pne or the
/// step cap. A move is made only when it improves the mover by more than a
/// (1+eps) factor.
BrResult br_dynamics(const CongestionGame& g, const Profile& start,
                     BrSchedule schedule, const Rat& eps, int64_t max_steps,
                     uint64_t seed = 0);

/// Seeded random simple o-d path by randomized depth-first search. Useful
/// for start profiles on networks whose full path set is too large to list.
Path random_simple_path(const Network& net, int o, int d, std::mt19937_64& rng);

} // namespace plsforge
