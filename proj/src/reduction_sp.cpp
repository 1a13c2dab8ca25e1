#include "plsforge/errors.hpp"
#include "plsforge/reductions.hpp"

namespace plsforge {

// Source vertex k (0-based) plays the role of the paper's vertex k+1: its
// three players weigh 16^{k+1} and its dedicated latency is D x / 4^{k+1}.

std::pair<CongestionGame, SolutionMap> reduce_mc_to_sp(const EdgeWeightedGraph& H) {
    int n = H.vertex_count();
    int m = H.edge_count();
    if (n < 2) throw InvalidInstance("source graph needs at least two vertices");
    if (m < 1) throw InvalidInstance("source graph needs at least one edge");

    Rat maxw(0);
    for (const Edge& e : H.edges()) maxw = std::max(maxw, e.w);
    Rat D = pow_rat(Rat(16), n + 1) * maxw;

    // Vertices: 0 is the shared origin; G1 block t adds v,d; G2 block t adds
    // v and, except for the last block, d. Both copies end at G1's last d.
    int joint = 2 * m; // shared destination
    auto g1v = [&](int t) { return 1 + 2 * t; };
    auto g1d = [&](int t) { return 2 + 2 * t; };
    auto g2v = [&](int t) { return 2 * m + 1 + 2 * t; };
    auto g2d = [&](int t) { return t == m - 1 ? joint : 2 * m + 2 + 2 * t; };
    int nv = 4 * m;

    std::vector<NetEdge> edges;
    SolutionMap sm;
    sm.kind = ReductionKind::McToSp;
    sm.sp.n = n;
    sm.sp.m = m;
    sm.sp.up.assign(n, {});
    sm.sp.low.assign(n, {});

    for (int copy = 0; copy < 2; ++copy) {
        std::vector<Path>& paths = copy == 0 ? sm.sp.up : sm.sp.low;
        for (int t = 0; t < m; ++t) {
            const Edge& e = H.edge(t);
            int i = std::min(e.u, e.v), j = std::max(e.u, e.v);
            int a = t == 0 ? 0 : (copy == 0 ? g1d(t - 1) : g2d(t - 1));
            int b = copy == 0 ? g1d(t) : g2d(t);
            int v = copy == 0 ? g1v(t) : g2v(t);
            for (int k = 0; k < n; ++k) {
                LinearLatency lk{D / pow_rat(Rat(4), k + 1), Rat(0)};
                paths[k].push_back(static_cast<int32_t>(edges.size()));
                edges.push_back({a, (k == i || k == j) ? v : b, lk});
            }
            Rat slope = e.w / pow_rat(Rat(16), i + 1 + j + 1);
            int eij = static_cast<int>(edges.size());
            edges.push_back({v, b, {slope, Rat(0)}});
            paths[i].push_back(eij);
            paths[j].push_back(eij);
        }
    }

    std::vector<Player> players;
    for (int k = 0; k < n; ++k) {
        Rat w = pow_rat(Rat(16), k + 1);
        for (int t = 0; t < 3; ++t) players.push_back({w, 0, joint});
    }
    return {CongestionGame(Network(nv, std::move(edges)), std::move(players)),
            std::move(sm)};
}

Profile embed_cut_to_sp(const SolutionMap& sm, const Cut& S) {
    if (sm.kind != ReductionKind::McToSp)
        throw InvalidArgument("solution map is not a Max-Cut -> series-parallel map");
    if (S.size() != sm.sp.n)
        throw DimensionError("cut size does not match source vertex count");
    Profile p;
    p.paths.reserve(3 * sm.sp.n);
    for (int k = 0; k < sm.sp.n; ++k) {
        const Path& maj = S.side[k] ? sm.sp.up[k] : sm.sp.low[k];
        const Path& mnr = S.side[k] ? sm.sp.low[k] : sm.sp.up[k];
        p.paths.push_back(maj);
        p.paths.push_back(maj);
        p.paths.push_back(mnr);
    }
    return p;
}

Cut map_back_sp(const SolutionMap& sm, const Profile& p) {
    if (sm.kind != ReductionKind::McToSp)
        throw InvalidArgument("solution map is not a Max-Cut -> series-parallel map");
    if (static_cast<int>(p.paths.size()) != 3 * sm.sp.n)
        throw DimensionError("profile size does not match player count");
    Cut S = Cut::all_zero(sm.sp.n);
    for (int k = 0; k < sm.sp.n; ++k) {
        int up = 0, low = 0;
        for (int t = 0; t < 3; ++t) {
            const Path& q = p.paths[3 * k + t];
            if (q == sm.sp.up[k]) ++up;
            else if (q == sm.sp.low[k]) ++low;
        }
        if (up == 2 && low == 1) S.side[k] = 1;
        else if (up == 1 && low == 2) S.side[k] = 0;
        else throw NotCanonical("weight class " + std::to_string(k) +
                                " is not split 2-1 over its designated paths");
    }
    return S;
}

} // namespace plsforge
