#include <array>

#include "plsforge/errors.hpp"
#include "plsforge/reductions.hpp"

namespace plsforge {

// Grid positions are 1-based (row r, col c) with 1 <= c <= r <= n, per part
// (0 = upper, 1 = lower). Position (r,c) is red iff c < r and {c,r} is a
// source edge; a red position splits into an entry vertex (reached from
// above, from the left, or from an origin) and an exit vertex (leading
// right, down, or to a destination), joined by the shared identity edge.

std::pair<CongestionGame, SolutionMap> reduce_nmc_to_multi(const VertexWeightedGraph& H) {
    int n = H.vertex_count();
    if (n < 2) throw InvalidInstance("source graph needs at least two vertices");

    Rat wsum(0);
    for (int v = 0; v < n; ++v) wsum += H.weight(v);
    Rat n3 = Rat(n) * Rat(n) * Rat(n);
    Rat d = n3 * wsum;
    Rat D = n3 * d;

    int nv = 2 * n; // vertex i is o_i, vertex n+i is d_i
    std::vector<NetEdge> edges;
    std::vector<Player> players;
    for (int i = 0; i < n; ++i) players.push_back({H.weight(i), i, n + i});

    SolutionMap sm;
    sm.kind = ReductionKind::NmcToMulti;
    sm.multi.n = n;
    sm.multi.up.assign(n, {});
    sm.multi.low.assign(n, {});

    int stride = (n + 1) * (n + 1);
    auto at = [&](int part, int r, int c) { return part * stride + r * (n + 1) + c; };
    std::vector<int> entry(2 * stride, -1), exit_v(2 * stride, -1);
    std::vector<int32_t> red(2 * stride, -1);
    for (int part = 0; part < 2; ++part)
        for (int r = 1; r <= n; ++r)
            for (int c = 1; c <= r; ++c) {
                int p = at(part, r, c);
                if (c < r && H.has_edge(c - 1, r - 1)) {
                    entry[p] = nv++;
                    exit_v[p] = nv++;
                    red[p] = static_cast<int32_t>(edges.size());
                    edges.push_back({entry[p], exit_v[p], identity_latency()});
                } else {
                    entry[p] = exit_v[p] = nv++;
                }
            }

    // Replace a constant-latency edge a-b by the path a - o_e - d_e - b of
    // identity edges plus a complementary (o_e, d_e) player of the
    // constant's weight.
    auto add_const = [&](int a, int b, const Rat& cw) {
        int oe = nv++, de = nv++;
        std::array<int32_t, 3> idx;
        idx[0] = static_cast<int32_t>(edges.size());
        edges.push_back({a, oe, identity_latency()});
        idx[1] = static_cast<int32_t>(edges.size());
        edges.push_back({oe, de, identity_latency()});
        idx[2] = static_cast<int32_t>(edges.size());
        edges.push_back({de, b, identity_latency()});
        players.push_back({cw, oe, de});
        sm.multi.middle_edge.push_back(idx[1]);
        return idx;
    };

    std::vector<std::array<int32_t, 3>> oe3(2 * (n + 1)), de3(2 * (n + 1));
    std::vector<std::array<int32_t, 3>> he3(2 * stride), ve3(2 * stride);
    for (int part = 0; part < 2; ++part) {
        for (int i = 1; i <= n; ++i)
            oe3[part * (n + 1) + i] = add_const(i - 1, entry[at(part, i, 1)], D);
        for (int r = 1; r <= n; ++r)
            for (int c = 1; c < r; ++c)
                he3[at(part, r, c)] =
                    add_const(exit_v[at(part, r, c)], entry[at(part, r, c + 1)], Rat(r) * d);
        for (int r = 1; r < n; ++r)
            for (int c = 1; c <= r; ++c)
                ve3[at(part, r, c)] =
                    add_const(exit_v[at(part, r, c)], entry[at(part, r + 1, c)], D);
        for (int i = 1; i <= n; ++i)
            de3[part * (n + 1) + i] = add_const(exit_v[at(part, n, i)], n + i - 1, D);
    }

    // p_i^u: o_i, along row I, down column I, then d_i; p_i^l is its twin in
    // the lower part. Red positions on the way contribute their shared edge.
    for (int i = 0; i < n; ++i) {
        int I = i + 1;
        for (int part = 0; part < 2; ++part) {
            Path& P = part == 0 ? sm.multi.up[i] : sm.multi.low[i];
            auto push3 = [&](const std::array<int32_t, 3>& t) {
                P.insert(P.end(), t.begin(), t.end());
            };
            auto cross = [&](int r, int c) {
                if (red[at(part, r, c)] >= 0) P.push_back(red[at(part, r, c)]);
            };
            push3(oe3[part * (n + 1) + I]);
            cross(I, 1);
            for (int c = 1; c < I; ++c) {
                push3(he3[at(part, I, c)]);
                cross(I, c + 1);
            }
            for (int r = I; r < n; ++r) {
                push3(ve3[at(part, r, I)]);
                cross(r + 1, I);
            }
            push3(de3[part * (n + 1) + I]);
        }
    }

    return {CongestionGame(Network(nv, std::move(edges)), std::move(players)),
            std::move(sm)};
}

Profile embed_cut_to_multi(const SolutionMap& sm, const Cut& S) {
    if (sm.kind != ReductionKind::NmcToMulti)
        throw InvalidArgument("solution map is not a Node-Max-Cut -> multi-commodity map");
    if (S.size() != sm.multi.n)
        throw DimensionError("cut size does not match source vertex count");
    Profile p;
    p.paths.reserve(sm.multi.n + sm.multi.middle_edge.size());
    for (int i = 0; i < sm.multi.n; ++i)
        p.paths.push_back(S.side[i] ? sm.multi.up[i] : sm.multi.low[i]);
    for (int32_t e : sm.multi.middle_edge) p.paths.push_back(Path{e});
    return p;
}

Cut map_back_multi(const SolutionMap& sm, const Profile& p) {
    if (sm.kind != ReductionKind::NmcToMulti)
        throw InvalidArgument("solution map is not a Node-Max-Cut -> multi-commodity map");
    if (p.paths.size() != sm.multi.up.size() + sm.multi.middle_edge.size())
        throw DimensionError("profile size does not match player count");
    Cut S = Cut::all_zero(sm.multi.n);
    for (int i = 0; i < sm.multi.n; ++i) {
        if (p.paths[i] == sm.multi.up[i]) S.side[i] = 1;
        else if (p.paths[i] == sm.multi.low[i]) S.side[i] = 0;
        else throw NotCanonical("player " + std::to_string(i) +
                                " is on neither of her designated paths");
    }
    return S;
}

} // namespace plsforge
