#include "plsforge/congestion.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <random>
#include <set>

namespace plsforge {

Network::Network(int vertices, std::vector<NetEdge> edges,
                 std::vector<std::string> labels)
    : n_(vertices), edges_(std::move(edges)), labels_(std::move(labels)) {
    if (n_ < 1) throw InvalidArgument("network needs at least one vertex");
    if (!labels_.empty() && labels_.size() != edges_.size())
        throw DimensionError("label count does not match edge count");
    inc_.resize(n_);
    for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
        const NetEdge& ed = edges_[e];
        if (ed.u < 0 || ed.u >= n_ || ed.v < 0 || ed.v >= n_)
            throw InvalidArgument("edge endpoint out of range");
        if (ed.u == ed.v) throw InvalidArgument("self-loops are not allowed");
        if (ed.lat.a < 0 || ed.lat.b < 0)
            throw InvalidArgument("latency coefficients must be nonnegative");
        inc_[ed.u].emplace_back(ed.v, e);
        inc_[ed.v].emplace_back(ed.u, e);
    }
}

const std::string& Network::label(int e) const {
    static const std::string empty;
    if (labels_.empty()) return empty;
    return labels_[e];
}

bool is_simple_path(const Network& net, int o, int d, const Path& path) {
    if (o < 0 || o >= net.vertex_count() || d < 0 || d >= net.vertex_count())
        return false;
    if (path.empty()) return o == d;
    std::vector<uint8_t> seen(net.vertex_count(), 0);
    seen[o] = 1;
    int cur = o;
    for (int e : path) {
        if (e < 0 || e >= net.edge_count()) return false;
        const NetEdge& ed = net.edge(e);
        int nxt;
        if (ed.u == cur) nxt = ed.v;
        else if (ed.v == cur) nxt = ed.u;
        else return false;
        if (seen[nxt]) return false;
        seen[nxt] = 1;
        cur = nxt;
    }
    return cur == d;
}

SpTerm sp_leaf(LinearLatency lat) {
    auto t = std::make_unique<SeriesParallelTerm>();
    t->kind = SeriesParallelTerm::Kind::Leaf;
    t->lat = lat;
    return t;
}

static SpTerm sp_node(SeriesParallelTerm::Kind kind, SpTerm left, SpTerm right) {
    if (!left || !right) throw InvalidArgument("series-parallel child missing");
    auto t = std::make_unique<SeriesParallelTerm>();
    t->kind = kind;
    t->left = std::move(left);
    t->right = std::move(right);
    return t;
}

SpTerm sp_series(SpTerm left, SpTerm right) {
    return sp_node(SeriesParallelTerm::Kind::Series, std::move(left), std::move(right));
}

SpTerm sp_parallel(SpTerm left, SpTerm right) {
    return sp_node(SeriesParallelTerm::Kind::Parallel, std::move(left), std::move(right));
}

namespace {

struct SpBuild {
    std::vector<NetEdge> edges;
    int nv, o, d;
};

SpBuild sp_build(const SeriesParallelTerm& t) {
    switch (t.kind) {
    case SeriesParallelTerm::Kind::Leaf:
        return {{{0, 1, t.lat}}, 2, 0, 1};
    case SeriesParallelTerm::Kind::Series: {
        SpBuild l = sp_build(*t.left);
        SpBuild r = sp_build(*t.right);
        // Right origin becomes the left destination.
        auto remap = [&](int j) {
            if (j == r.o) return l.d;
            return l.nv + (j < r.o ? j : j - 1);
        };
        for (const NetEdge& e : r.edges)
            l.edges.push_back({remap(e.u), remap(e.v), e.lat});
        l.d = remap(r.d);
        l.nv += r.nv - 1;
        return l;
    }
    case SeriesParallelTerm::Kind::Parallel: {
        SpBuild l = sp_build(*t.left);
        SpBuild r = sp_build(*t.right);
        auto remap = [&](int j) {
            if (j == r.o) return l.o;
            if (j == r.d) return l.d;
            int skip = (j > r.o ? 1 : 0) + (j > r.d ? 1 : 0);
            return l.nv + j - skip;
        };
        for (const NetEdge& e : r.edges)
            l.edges.push_back({remap(e.u), remap(e.v), e.lat});
        l.nv += r.nv - 2;
        return l;
    }
    }
    throw InvalidArgument("malformed series-parallel term");
}

} // namespace

SpNetwork sp_realize(const SeriesParallelTerm& t) {
    SpBuild b = sp_build(t);
    return {Network(b.nv, std::move(b.edges)), b.o, b.d};
}

CongestionGame::CongestionGame(Network net, std::vector<Player> players)
    : net_(std::move(net)), players_(std::move(players)) {
    for (const Player& p : players_) {
        if (p.w <= 0) throw InvalidArgument("player weights must be positive");
        if (p.o < 0 || p.o >= net_.vertex_count() || p.d < 0 ||
            p.d >= net_.vertex_count() || p.o == p.d)
            throw InvalidArgument("player terminals invalid");
        // Reachability check.
        std::vector<uint8_t> seen(net_.vertex_count(), 0);
        std::vector<int> stack{p.o};
        seen[p.o] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (auto [nb, e] : net_.incident(v))
                if (!seen[nb]) {
                    seen[nb] = 1;
                    stack.push_back(nb);
                }
        }
        if (!seen[p.d])
            throw InvalidInstance("player has no path between her terminals");
    }
}

std::vector<Path> enumerate_paths(const Network& net, int o, int d, int64_t cap) {
    if (o < 0 || o >= net.vertex_count() || d < 0 || d >= net.vertex_count())
        throw InvalidArgument("terminal out of range");
    if (o == d) throw InvalidArgument("path terminals must differ");
    std::vector<Path> out;
    std::vector<uint8_t> visited(net.vertex_count(), 0);
    Path cur;
    visited[o] = 1;
    std::function<void(int)> dfs = [&](int v) {
        if (v == d) {
            if (static_cast<int64_t>(out.size()) >= cap)
                throw TooLarge("path enumeration exceeded the cap");
            out.push_back(cur);
            return;
        }
        for (auto [nb, e] : net.incident(v)) {
            if (visited[nb]) continue;
            visited[nb] = 1;
            cur.push_back(e);
            dfs(nb);
            cur.pop_back();
            visited[nb] = 0;
        }
    };
    dfs(o);
    return out;
}

static void check_profile(const CongestionGame& g, const Profile& p) {
    if (static_cast<int>(p.paths.size()) != g.player_count())
        throw DimensionError("profile size does not match player count");
    for (int i = 0; i < g.player_count(); ++i)
        if (!is_simple_path(g.network(), g.player(i).o, g.player(i).d, p.paths[i]))
            throw InvalidArgument("profile path invalid for player");
}

static std::vector<Rat> edge_loads(const CongestionGame& g, const Profile& p) {
    std::vector<Rat> s(g.network().edge_count(), Rat(0));
    for (int i = 0; i < g.player_count(); ++i)
        for (int e : p.paths[i]) s[e] += g.player(i).w;
    return s;
}

LoadAndCosts congestion_and_costs(const CongestionGame& g, const Profile& p) {
    check_profile(g, p);
    LoadAndCosts r;
    r.congestion = edge_loads(g, p);
    r.cost.resize(g.player_count(), Rat(0));
    for (int i = 0; i < g.player_count(); ++i) {
        Rat c(0);
        for (int e : p.paths[i]) {
            const LinearLatency& l = g.network().edge(e).lat;
            c += l.a * r.congestion[e] + l.b;
        }
        r.cost[i] = c;
    }
    return r;
}

Rat potential_wcg(const CongestionGame& g, const Profile& p) {
    check_profile(g, p);
    std::vector<Rat> s = edge_loads(g, p);
    Rat phi(0);
    for (int e = 0; e < g.network().edge_count(); ++e) {
        const LinearLatency& l = g.network().edge(e).lat;
        phi += l.a * s[e] * s[e] + l.b * s[e];
    }
    for (int i = 0; i < g.player_count(); ++i) {
        const Player& pl = g.player(i);
        for (int e : p.paths[i]) {
            const LinearLatency& l = g.network().edge(e).lat;
            phi += pl.w * (l.a * pl.w + l.b);
        }
    }
    return phi;
}

namespace {

// Cost of moving player i onto q, given current loads with i still on her path.
Rat deviation_cost(const CongestionGame& g, const std::vector<Rat>& load,
                   const std::vector<uint8_t>& on_cur, const Rat& w, const Path& q) {
    Rat c(0);
    for (int e : q) {
        const LinearLatency& l = g.network().edge(e).lat;
        Rat x = load[e] + (on_cur[e] ? Rat(0) : w);
        c += l.a * x + l.b;
    }
    return c;
}

std::vector<uint8_t> path_mask(int m, const Path& p) {
    std::vector<uint8_t> mask(m, 0);
    for (int e : p) mask[e] = 1;
    return mask;
}

} // namespace

// Exact cheapest o-d route for a deviating player of weight w, where base[e]
// is the load without her. Latencies are nonnegative, so the cheapest walk is
// simple and Dijkstra minimizes over exactly the simple-path strategy set.
static Rat cheapest_path(const Network& net, const std::vector<Rat>& base, const Rat& w,
                         int o, int d, Path* out) {
    int nv = net.vertex_count();
    std::vector<Rat> dist(nv);
    std::vector<uint8_t> done(nv, 0), seen(nv, 0);
    std::vector<int32_t> via(nv, -1);
    std::set<std::pair<Rat, int>> pq;
    dist[o] = Rat(0);
    seen[o] = 1;
    pq.emplace(Rat(0), o);
    while (!pq.empty()) {
        int v = pq.begin()->second;
        pq.erase(pq.begin());
        if (v == d) break;
        done[v] = 1;
        for (auto [nb, e] : net.incident(v)) {
            if (done[nb]) continue;
            const LinearLatency& lat = net.edge(e).lat;
            Rat cand = dist[v] + lat.a * (base[e] + w) + lat.b;
            if (!seen[nb] || cand < dist[nb]) {
                if (seen[nb]) pq.erase({dist[nb], nb});
                dist[nb] = std::move(cand);
                seen[nb] = 1;
                via[nb] = static_cast<int32_t>(e);
                pq.emplace(dist[nb], nb);
            }
        }
    }
    if (out) {
        out->clear();
        for (int v = d; v != o;) {
            int32_t e = via[v];
            out->push_back(e);
            v = net.edge(e).u == v ? net.edge(e).v : net.edge(e).u;
        }
        std::reverse(out->begin(), out->end());
    }
    return dist[d];
}

bool is_pne(const CongestionGame& g, const Profile& p, const Rat& eps) {
    if (eps < 0) throw InvalidArgument("eps must be nonnegative");
    check_profile(g, p);
    std::vector<Rat> load = edge_loads(g, p);
    Rat factor = Rat(1) + eps;
    std::vector<Rat> base;
    for (int i = 0; i < g.player_count(); ++i) {
        const Player& pl = g.player(i);
        base = load;
        for (int e : p.paths[i]) base[e] -= pl.w;
        Rat ci(0);
        for (int e : p.paths[i]) {
            const LinearLatency& lat = g.network().edge(e).lat;
            ci += lat.a * (base[e] + pl.w) + lat.b;
        }
        if (ci > factor * cheapest_path(g.network(), base, pl.w, pl.o, pl.d, nullptr))
            return false;
    }
    return true;
}

std::pair<Path, Rat> best_response(const CongestionGame& g, const Profile& p, int i) {
    check_profile(g, p);
    if (i < 0 || i >= g.player_count()) throw InvalidArgument("player out of range");
    std::vector<Rat> load = edge_loads(g, p);
    const Player& pl = g.player(i);
    std::vector<uint8_t> mask = path_mask(g.network().edge_count(), p.paths[i]);
    std::vector<Path> qs = enumerate_paths(g.network(), pl.o, pl.d);
    Path best;
    Rat best_cost;
    bool first = true;
    for (const Path& q : qs) {
        Rat c = deviation_cost(g, load, mask, pl.w, q);
        if (first || c < best_cost) {
            best = q;
            best_cost = c;
            first = false;
        }
    }
    return {best, best_cost};
}

BrResult br_dynamics(const CongestionGame& g, const Profile& start,
                     BrSchedule schedule, const Rat& eps, int64_t max_steps,
                     uint64_t seed) {
    if (max_steps <= 0) throw InvalidArgument("max_steps must be positive");
    if (eps < 0) throw InvalidArgument("eps must be nonnegative");
    check_profile(g, start);

    int n = g.player_count();
    Profile cur = start;
    std::vector<Rat> load = edge_loads(g, cur);
    Rat factor = Rat(1) + eps;

    std::vector<BrStep> trace;
    int64_t moves = 0;
    std::mt19937_64 rng(seed);

    struct Move {
        Path q;
        Rat old_cost, new_cost;
    };
    // Cheapest eps-improving move of player i under current loads, if any.
    std::vector<Rat> base;
    auto improving = [&](int i) -> std::optional<Move> {
        const Player& pl = g.player(i);
        base = load;
        for (int e : cur.paths[i]) base[e] -= pl.w;
        Rat ci(0);
        for (int e : cur.paths[i]) {
            const LinearLatency& lat = g.network().edge(e).lat;
            ci += lat.a * (base[e] + pl.w) + lat.b;
        }
        Path q;
        Rat bc = cheapest_path(g.network(), base, pl.w, pl.o, pl.d, &q);
        if (ci > factor * bc) return Move{std::move(q), std::move(ci), std::move(bc)};
        return std::nullopt;
    };
    auto apply = [&](int i, Move m) {
        if (moves == max_steps) throw StepCapExceeded(std::move(cur), std::move(trace));
        for (int e : cur.paths[i]) load[e] -= g.player(i).w;
        cur.paths[i] = std::move(m.q);
        for (int e : cur.paths[i]) load[e] += g.player(i).w;
        ++moves;
        trace.push_back({i, std::move(m.old_cost), std::move(m.new_cost), potential_wcg(g, cur)});
    };

    switch (schedule) {
    case BrSchedule::RoundRobin: {
        int i = 0, clean = 0;
        while (clean < n) {
            if (auto m = improving(i)) {
                apply(i, *m);
                clean = 0;
            } else {
                ++clean;
            }
            i = (i + 1) % n;
        }
        break;
    }
    case BrSchedule::MaxGain: {
        for (;;) {
            int pick = -1;
            std::optional<Move> best_move;
            Rat best_gain;
            for (int i = 0; i < n; ++i) {
                if (auto m = improving(i)) {
                    Rat gain = m->old_cost - m->new_cost;
                    if (pick < 0 || gain > best_gain) {
                        pick = i;
                        best_gain = std::move(gain);
                        best_move = std::move(*m);
                    }
                }
            }
            if (pick < 0) break;
            apply(pick, std::move(*best_move));
        }
        break;
    }
    case BrSchedule::Random: {
        // Repeated random-permutation passes; a pass with no move means
        // nobody can improve.
        std::vector<int> perm(n);
        for (int i = 0; i < n; ++i) perm[i] = i;
        bool moved = true;
        while (moved) {
            moved = false;
            std::shuffle(perm.begin(), perm.end(), rng);
            for (int i : perm)
                if (auto m = improving(i)) {
                    apply(i, std::move(*m));
                    moved = true;
                }
        }
        break;
    }
    }
    return {std::move(cur), std::move(trace)};
}

Path random_simple_path(const Network& net, int o, int d, std::mt19937_64& rng) {
    if (o == d || o < 0 || d < 0 || o >= net.vertex_count() || d >= net.vertex_count())
        throw InvalidArgument("invalid terminals");
    std::vector<uint8_t> visited(net.vertex_count(), 0);
    Path path;
    std::vector<std::pair<int, int>> options;
    // Randomized DFS with backtracking; always terminates with a simple
    // o-d path when one exists.
    std::function<bool(int)> walk = [&](int v) -> bool {
        if (v == d) return true;
        visited[v] = 1;
        options.assign(net.incident(v).begin(), net.incident(v).end());
        std::shuffle(options.begin(), options.end(), rng);
        std::vector<std::pair<int, int>> mine = options;
        for (auto [nb, e] : mine) {
            if (visited[nb]) continue;
            path.push_back(static_cast<int32_t>(e));
            if (walk(nb)) return true;
            path.pop_back();
        }
        return false;
    };
    if (!walk(o)) throw InvalidInstance("terminals are not connected");
    return path;
}

} // namespace plsforge
