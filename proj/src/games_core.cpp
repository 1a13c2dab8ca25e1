#include "plsforge/games_core.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <random>

#include "plsforge/errors.hpp"

namespace plsforge {

Cut Cut::flipped(int v) const {
    Cut c(*this);
    c.side.at(v) ^= 1;
    return c;
}

Cut Cut::complemented() const {
    Cut c(*this);
    for (auto& s : c.side) s ^= 1;
    return c;
}

Cut Cut::canonical() const {
    if (!side.empty() && side[0] == 1) return complemented();
    return *this;
}

// ---------------------------------------------------------------------------

EdgeWeightedGraph::EdgeWeightedGraph(int n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)), adj_(n) {
    if (n < 0) throw InvalidArgument("vertex count must be nonnegative");
    std::vector<std::pair<int, int>> seen;
    seen.reserve(edges_.size());
    for (int idx = 0; idx < static_cast<int>(edges_.size()); ++idx) {
        auto& e = edges_[idx];
        if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
            throw InvalidArgument("edge endpoint out of range");
        if (e.u == e.v) throw InvalidArgument("self-loops are not allowed");
        if (e.w <= 0) throw InvalidArgument("edge weights must be positive");
        seen.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
        adj_[e.u].emplace_back(e.v, idx);
        adj_[e.v].emplace_back(e.u, idx);
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
        throw InvalidArgument("duplicate edge");
}

VertexWeightedGraph::VertexWeightedGraph(std::vector<Rat> weights,
                                         std::vector<std::pair<int, int>> edges) {
    n_ = static_cast<int>(weights.size());
    wid_.resize(n_);
    std::map<Rat, int32_t> index;
    for (int v = 0; v < n_; ++v) {
        if (weights[v] <= 0) throw InvalidArgument("vertex weights must be positive");
        auto [it, inserted] = index.emplace(weights[v], static_cast<int32_t>(pool_.size()));
        if (inserted) pool_.push_back(weights[v]);
        wid_[v] = it->second;
    }
    build(std::move(edges));
}

VertexWeightedGraph::VertexWeightedGraph(std::vector<Rat> pool, std::vector<int32_t> wid,
                                         std::vector<std::pair<int, int>> edges)
    : n_(static_cast<int>(wid.size())), pool_(std::move(pool)), wid_(std::move(wid)) {
    for (const auto& w : pool_)
        if (w <= 0) throw InvalidArgument("vertex weights must be positive");
    for (int32_t id : wid_)
        if (id < 0 || id >= static_cast<int32_t>(pool_.size()))
            throw InvalidArgument("weight id out of range");
    build(std::move(edges));
}

void VertexWeightedGraph::build(std::vector<std::pair<int, int>> edges) {
    edges_ = std::move(edges);
    for (auto& [u, v] : edges_) {
        if (u < 0 || u >= n_ || v < 0 || v >= n_) throw InvalidArgument("edge endpoint out of range");
        if (u == v) throw InvalidArgument("self-loops are not allowed");
        if (u > v) std::swap(u, v);
    }
    {
        auto sorted = edges_;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw InvalidArgument("duplicate edge");
    }
    adj_off_.assign(n_ + 1, 0);
    for (const auto& [u, v] : edges_) {
        ++adj_off_[u + 1];
        ++adj_off_[v + 1];
    }
    for (int v = 0; v < n_; ++v) adj_off_[v + 1] += adj_off_[v];
    adj_.resize(adj_off_[n_]);
    std::vector<int64_t> cursor(adj_off_.begin(), adj_off_.end() - 1);
    for (const auto& [u, v] : edges_) {
        adj_[cursor[u]++] = v;
        adj_[cursor[v]++] = u;
    }
}

bool VertexWeightedGraph::has_edge(int u, int v) const {
    if (u < 0 || u >= n_ || v < 0 || v >= n_) return false;
    auto nb = neighbors(u);
    return std::find(nb.begin(), nb.end(), v) != nb.end();
}

int VertexWeightedGraph::max_degree() const {
    int d = 0;
    for (int v = 0; v < n_; ++v) d = std::max(d, degree(v));
    return d;
}

// ---------------------------------------------------------------------------

Rat nmc_edge_weight(const VertexWeightedGraph& g, int u, int v) {
    if (!g.has_edge(u, v)) throw NotAnEdge("no edge between the given vertices");
    return g.weight(u) * g.weight(v);
}

static void check_size(int have, int want) {
    if (have != want) throw DimensionError("cut size does not match graph");
}

Rat cut_value(const EdgeWeightedGraph& g, const Cut& c) {
    check_size(c.size(), g.vertex_count());
    Rat total(0);
    for (const auto& e : g.edges())
        if (c.side[e.u] != c.side[e.v]) total += e.w;
    return total;
}

Rat cut_value(const VertexWeightedGraph& g, const Cut& c) {
    check_size(c.size(), static_cast<int>(g.vertex_count()));
    Rat total(0);
    for (const auto& [u, v] : g.edges())
        if (c.side[u] != c.side[v]) total += g.weight(u) * g.weight(v);
    return total;
}

Rat flip_gain(const EdgeWeightedGraph& g, const Cut& c, int v) {
    check_size(c.size(), g.vertex_count());
    if (v < 0 || v >= g.vertex_count()) throw InvalidArgument("vertex out of range");
    Rat gain(0);
    for (const auto& [u, idx] : g.incident(v)) {
        if (c.side[u] == c.side[v])
            gain += g.edge(idx).w;
        else
            gain -= g.edge(idx).w;
    }
    return gain;
}

/// same-side minus opposite-side neighbor weight sum around v.
static Rat side_diff(const VertexWeightedGraph& g, const Cut& c, int v) {
    Rat diff(0);
    for (int32_t u : g.neighbors(v)) {
        if (c.side[u] == c.side[v])
            diff += g.weight(u);
        else
            diff -= g.weight(u);
    }
    return diff;
}

Rat flip_gain(const VertexWeightedGraph& g, const Cut& c, int v) {
    check_size(c.size(), g.vertex_count());
    if (v < 0 || v >= g.vertex_count()) throw InvalidArgument("vertex out of range");
    return g.weight(v) * side_diff(g, c, v);
}

bool is_local_optimum(const EdgeWeightedGraph& g, const Cut& c) {
    check_size(c.size(), g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v)
        if (flip_gain(g, c, v) > 0) return false;
    return true;
}

bool is_local_optimum(const VertexWeightedGraph& g, const Cut& c) {
    check_size(c.size(), g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v)
        if (side_diff(g, c, v) > 0) return false;
    return true;
}

bool is_approx_equilibrium_nmc(const VertexWeightedGraph& g, const Cut& c, const Rat& eps) {
    if (eps < 0) throw InvalidArgument("eps must be nonnegative");
    check_size(c.size(), g.vertex_count());
    Rat one_plus_eps = Rat(1) + eps;
    for (int v = 0; v < g.vertex_count(); ++v) {
        Rat same(0), opp(0);
        for (int32_t u : g.neighbors(v)) {
            if (c.side[u] == c.side[v])
                same += g.weight(u);
            else
                opp += g.weight(u);
        }
        if (same > one_plus_eps * opp) return false;
    }
    return true;
}

Rat bias(const VertexWeightedGraph& g, const Cut& c, int i, const std::vector<int>& subset) {
    check_size(c.size(), g.vertex_count());
    if (i < 0 || i >= g.vertex_count()) throw InvalidArgument("vertex out of range");
    std::vector<uint8_t> in(g.vertex_count(), 0);
    for (int v : subset) {
        if (v < 0 || v >= g.vertex_count()) throw InvalidArgument("subset vertex out of range");
        in[v] = 1;
    }
    Rat diff(0);
    for (int32_t u : g.neighbors(i)) {
        if (!in[u]) continue;
        if (c.side[u] == 1)
            diff += g.weight(u);
        else
            diff -= g.weight(u);
    }
    return diff < 0 ? Rat(-diff) : diff;
}

Rat nmc_potential(const VertexWeightedGraph& g, const Cut& c) {
    check_size(c.size(), g.vertex_count());
    Rat total(0);
    for (const auto& [u, v] : g.edges())
        if (c.side[u] == c.side[v]) total += g.weight(u) * g.weight(v);
    return total;
}

// ---------------------------------------------------------------------------
// Flip dynamics.

namespace {

// Floating-point-free magnitude key: x ~ mant * 2^(exp-64) with mant in [2^63, 2^64).
struct MagKey {
    int64_t exp = 0;
    uint64_t mant = 0;
    bool operator<(const MagKey& o) const {
        return exp != o.exp ? exp < o.exp : mant < o.mant;
    }
    bool operator==(const MagKey& o) const { return exp == o.exp && mant == o.mant; }
};

uint64_t top64(const mpz_class& x, size_t bits) {
    if (bits <= 64) {
        uint64_t m = mpz_get_ui(x.get_mpz_t());
        return m << (64 - bits);
    }
    mpz_class q;
    mpz_tdiv_q_2exp(q.get_mpz_t(), x.get_mpz_t(), bits - 64);
    return mpz_get_ui(q.get_mpz_t());
}

MagKey magkey(const Rat& x) {
    // Requires x > 0.
    if (x.get_den() == 1) {
        const mpz_class& n = x.get_num();
        size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
        return {static_cast<int64_t>(bits), top64(n, bits)};
    }
    mpz_class t;
    mpz_mul_2exp(t.get_mpz_t(), x.get_num().get_mpz_t(), 64);
    mpz_tdiv_q(t.get_mpz_t(), t.get_mpz_t(), x.get_den().get_mpz_t());
    size_t bits = mpz_sizeinbase(t.get_mpz_t(), 2);
    return {static_cast<int64_t>(bits) - 64, top64(t, bits)};
}

MagKey magkey_mul(const MagKey& a, const MagKey& b) {
    unsigned __int128 p = static_cast<unsigned __int128>(a.mant) * b.mant;
    int64_t exp = a.exp + b.exp;
    uint64_t mant;
    if (p >> 127) {
        mant = static_cast<uint64_t>(p >> 64);
    } else {
        mant = static_cast<uint64_t>(p >> 63);
        exp -= 1;
    }
    return {exp, mant};
}

struct VwgStepper {
    const VertexWeightedGraph& g;
    Cut cut;
    Rat one_plus_eps;
    bool plain; // eps == 0

    std::vector<MagKey> wkey; // per weight-pool entry

    VwgStepper(const VertexWeightedGraph& g_, Cut c, const Rat& eps)
        : g(g_), cut(std::move(c)), one_plus_eps(Rat(1) + eps), plain(eps == 0) {
        wkey.reserve(g.weight_pool().size());
        for (const auto& w : g.weight_pool()) wkey.push_back(magkey(w));
    }

    // (violates, gain magnitude key) for vertex v.
    std::pair<bool, MagKey> probe(int v) const {
        Rat same(0), opp(0);
        for (int32_t u : g.neighbors(v)) {
            if (cut.side[u] == cut.side[v])
                same += g.weight(u);
            else
                opp += g.weight(u);
        }
        bool viol = plain ? same > opp : same > one_plus_eps * opp;
        if (!viol) return {false, {}};
        return {true, magkey_mul(wkey[g.weight_id(v)], magkey(same - opp))};
    }

    bool violates(int v) const {
        Rat same(0), opp(0);
        for (int32_t u : g.neighbors(v)) {
            if (cut.side[u] == cut.side[v])
                same += g.weight(u);
            else
                opp += g.weight(u);
        }
        return plain ? same > opp : same > one_plus_eps * opp;
    }
};

} // namespace

FlipDynamicsResult flip_dynamics(const VertexWeightedGraph& g, const Cut& start,
                                 FlipSchedule schedule, uint64_t seed, int64_t max_steps,
                                 const Rat& eps, bool record_flips) {
    if (start.size() != g.vertex_count()) throw DimensionError("cut size does not match graph");
    if (max_steps <= 0) throw InvalidArgument("max_steps must be positive");
    if (eps < 0) throw InvalidArgument("eps must be nonnegative");

    const int n = g.vertex_count();
    VwgStepper st(g, start, eps);
    FlipDynamicsResult res;
    res.steps = 0;

    auto flip = [&](int v) {
        st.cut.side[v] ^= 1;
        ++res.steps;
        if (record_flips) res.flips.push_back(v);
    };

    switch (schedule) {
    case FlipSchedule::First: {
        for (;;) {
            int hit = -1;
            for (int v = 0; v < n; ++v)
                if (st.violates(v)) {
                    hit = v;
                    break;
                }
            if (hit < 0) {
                res.converged = true;
                break;
            }
            if (res.steps >= max_steps) break;
            flip(hit);
        }
        break;
    }
    case FlipSchedule::RoundRobin: {
        int clean = 0, v = 0;
        while (clean < n) {
            if (st.violates(v)) {
                if (res.steps >= max_steps) break;
                flip(v);
                clean = 0;
            } else {
                ++clean;
            }
            v = (v + 1) % n;
        }
        res.converged = clean >= n;
        break;
    }
    case FlipSchedule::MaxGain: {
        struct Ent {
            MagKey key;
            int32_t v;
            bool operator<(const Ent& o) const {
                if (!(key == o.key)) return key < o.key;
                return v > o.v; // lower id wins ties
            }
        };
        std::priority_queue<Ent> heap;
        std::vector<MagKey> cur(n);
        std::vector<uint8_t> live(n, 0);
        auto refresh = [&](int v) {
            auto [viol, key] = st.probe(v);
            live[v] = viol;
            if (viol) {
                cur[v] = key;
                heap.push({key, v});
            }
        };
        for (int v = 0; v < n; ++v) refresh(v);
        while (!heap.empty()) {
            Ent top = heap.top();
            heap.pop();
            if (!live[top.v] || !(cur[top.v] == top.key)) continue;
            if (res.steps >= max_steps) {
                res.converged = false;
                goto done_maxgain;
            }
            flip(top.v);
            refresh(top.v);
            for (int32_t u : g.neighbors(top.v)) refresh(u);
        }
        res.converged = true;
    done_maxgain:
        break;
    }
    case FlipSchedule::Random: {
        std::mt19937_64 rng(seed);
        std::vector<int32_t> cand(n);
        std::vector<uint8_t> queued(n, 1);
        for (int v = 0; v < n; ++v) cand[v] = v;
        while (!cand.empty()) {
            size_t k = std::uniform_int_distribution<size_t>(0, cand.size() - 1)(rng);
            int v = cand[k];
            cand[k] = cand.back();
            cand.pop_back();
            queued[v] = 0;
            if (!st.violates(v)) continue;
            if (res.steps >= max_steps) break;
            flip(v);
            auto requeue = [&](int u) {
                if (!queued[u]) {
                    queued[u] = 1;
                    cand.push_back(u);
                }
            };
            requeue(v);
            for (int32_t u : g.neighbors(v)) requeue(u);
        }
        res.converged = cand.empty();
        break;
    }
    }
    res.cut = std::move(st.cut);
    return res;
}

FlipDynamicsResult flip_dynamics(const EdgeWeightedGraph& g, const Cut& start,
                                 FlipSchedule schedule, uint64_t seed, int64_t max_steps,
                                 bool record_flips) {
    if (start.size() != g.vertex_count()) throw DimensionError("cut size does not match graph");
    if (max_steps <= 0) throw InvalidArgument("max_steps must be positive");

    const int n = g.vertex_count();
    Cut cut = start;
    FlipDynamicsResult res;
    std::mt19937_64 rng(seed);

    auto flip = [&](int v) {
        cut.side[v] ^= 1;
        ++res.steps;
        if (record_flips) res.flips.push_back(v);
    };

    for (;;) {
        // Small instances only: rescan gains every step.
        int pick = -1;
        Rat best(0);
        std::vector<int> violators;
        for (int v = 0; v < n; ++v) {
            Rat gain = flip_gain(g, cut, v);
            if (gain > 0) {
                violators.push_back(v);
                if (schedule == FlipSchedule::MaxGain && gain > best) {
                    best = gain;
                    pick = v;
                }
            }
        }
        if (violators.empty()) {
            res.converged = true;
            break;
        }
        if (res.steps >= max_steps) break;
        switch (schedule) {
        case FlipSchedule::First:
        case FlipSchedule::RoundRobin: pick = violators.front(); break;
        case FlipSchedule::MaxGain: break;
        case FlipSchedule::Random:
            pick = violators[std::uniform_int_distribution<size_t>(0, violators.size() - 1)(rng)];
            break;
        }
        flip(pick);
    }
    res.cut = std::move(cut);
    return res;
}

} // namespace plsforge
