#include "plsforge/oracle.hpp"

#include <algorithm>
#include <random>

#include "plsforge/errors.hpp"

namespace plsforge {

namespace {

constexpr int kBruteVertexCap = 24;
constexpr int64_t kBrutePneCap = 10'000'000;

std::string cut_str(const Cut& c) {
    std::string s;
    s.reserve(c.side.size());
    for (uint8_t b : c.side) s.push_back(b ? '1' : '0');
    return s;
}

template <class G>
std::vector<Cut> brute_canonical(const G& g) {
    int n = g.vertex_count();
    if (n > kBruteVertexCap) throw TooLarge("brute-force local optima capped at 24 vertices");
    if (n == 0) return {Cut{}};
    std::vector<Cut> out;
    uint32_t lim = uint32_t(1) << (n - 1);
    for (uint32_t mask = 0; mask < lim; ++mask) {
        Cut c = Cut::all_zero(n);
        for (int v = 1; v < n; ++v) c.side[v] = (mask >> (v - 1)) & 1;
        if (is_local_optimum(g, c)) out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Branch-and-propagate enumeration state. Assignments are recorded on a
// trail so backtracking never copies the per-vertex weight sums.
struct PropEnum {
    const VertexWeightedGraph& g;
    const std::vector<uint8_t>& exempt;
    int64_t budget;
    int64_t nodes = 0;

    std::vector<int8_t> side;    // -1 = undecided
    std::vector<Rat> opp0, opp1; // weight of neighbors decided to side 0 / 1
    std::vector<Rat> undec;      // weight of undecided neighbors
    std::vector<int> order;      // heaviest first: the dominance order
    std::vector<int> trail;
    std::vector<Cut> found;

    PropEnum(const VertexWeightedGraph& gr, const std::vector<uint8_t>& ex, int64_t bud)
        : g(gr), exempt(ex), budget(bud) {
        int n = g.vertex_count();
        side.assign(n, -1);
        opp0.assign(n, Rat(0));
        opp1.assign(n, Rat(0));
        undec.assign(n, Rat(0));
        order.resize(n);
        for (int v = 0; v < n; ++v) {
            order[v] = v;
            for (int32_t j : g.neighbors(v)) undec[v] += g.weight(j);
        }
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            int c = cmp(g.weight(a), g.weight(b));
            return c != 0 ? c > 0 : a < b;
        });
    }

    bool is_exempt(int v) const { return !exempt.empty() && exempt[v]; }

    // Can v still end up locally optimal on side s? Needs same <= opp in the
    // best case, i.e. every undecided neighbor opposite.
    bool feasible(int v, int s) const {
        if (is_exempt(v)) return true;
        const Rat& same = s == 0 ? opp0[v] : opp1[v];
        const Rat& opp = s == 0 ? opp1[v] : opp0[v];
        return same <= opp + undec[v];
    }

    void assign(int v, int s) {
        side[v] = static_cast<int8_t>(s);
        trail.push_back(v);
        for (int32_t j : g.neighbors(v)) {
            undec[j] -= g.weight(v);
            (s == 0 ? opp0[j] : opp1[j]) += g.weight(v);
        }
    }

    void undo_to(size_t mark) {
        while (trail.size() > mark) {
            int v = trail.back();
            trail.pop_back();
            int s = side[v];
            side[v] = -1;
            for (int32_t j : g.neighbors(v)) {
                undec[j] += g.weight(v);
                (s == 0 ? opp0[j] : opp1[j]) -= g.weight(v);
            }
        }
    }

    // Assign v := s, then force every consequence. False on contradiction.
    bool assign_and_propagate(int v, int s) {
        if (!feasible(v, s)) return false;
        assign(v, s);
        std::vector<int> queue(g.neighbors(v).begin(), g.neighbors(v).end());
        while (!queue.empty()) {
            int u = queue.back();
            queue.pop_back();
            if (side[u] >= 0) {
                if (!feasible(u, side[u])) return false;
                continue;
            }
            bool f0 = feasible(u, 0), f1 = feasible(u, 1);
            if (!f0 && !f1) return false;
            if (f0 && f1) continue;
            assign(u, f0 ? 0 : 1);
            for (int32_t j : g.neighbors(u)) queue.push_back(j);
        }
        return true;
    }

    void dfs() {
        if (++nodes > budget) throw TooLarge("local-optimum enumeration exceeded its node budget");
        int v = -1;
        for (int u : order)
            if (side[u] < 0) {
                v = u;
                break;
            }
        if (v < 0) {
            std::vector<uint8_t> s(side.begin(), side.end());
            found.push_back(Cut(std::move(s)));
            return;
        }
        for (int s = 0; s < 2; ++s) {
            size_t mark = trail.size();
            if (assign_and_propagate(v, s)) dfs();
            undo_to(mark);
        }
    }
};

} // namespace

std::vector<Cut> brute_local_optima(const EdgeWeightedGraph& g) { return brute_canonical(g); }

std::vector<Cut> brute_local_optima(const VertexWeightedGraph& g) { return brute_canonical(g); }

std::vector<Cut> local_optima_under_pins(const VertexWeightedGraph& g,
                                         const std::vector<int8_t>& pin,
                                         const std::vector<uint8_t>& exempt,
                                         int64_t node_budget) {
    int n = g.vertex_count();
    if (!pin.empty() && static_cast<int>(pin.size()) != n)
        throw DimensionError("pin vector size mismatch");
    if (!exempt.empty() && static_cast<int>(exempt.size()) != n)
        throw DimensionError("exempt vector size mismatch");
    PropEnum e(g, exempt, node_budget);
    for (int v = 0; v < n; ++v) {
        if (pin.empty() || pin[v] < 0) continue;
        if (!e.assign_and_propagate(v, pin[v])) return {};
    }
    e.dfs();
    std::sort(e.found.begin(), e.found.end());
    return std::move(e.found);
}

std::vector<Profile> brute_pne(const CongestionGame& g) {
    int np = g.player_count();
    std::vector<std::vector<Path>> strat(np);
    Int product = 1;
    for (int i = 0; i < np; ++i) {
        const Player& pl = g.player(i);
        strat[i] = enumerate_paths(g.network(), pl.o, pl.d, kBrutePneCap);
        product *= Int(strat[i].size());
        if (product > kBrutePneCap)
            throw TooLarge("strategy-profile space exceeds 10^7");
    }
    std::vector<Profile> out;
    Profile cur;
    cur.paths.resize(np);
    auto rec = [&](auto&& self, int i) -> void {
        if (i == np) {
            if (is_pne(g, cur, Rat(0))) out.push_back(cur);
            return;
        }
        for (const Path& q : strat[i]) {
            cur.paths[i] = q;
            self(self, i + 1);
        }
    };
    rec(rec, 0);
    return out;
}

namespace {

// Shared driver for the two cut-game reductions. EmbedFn: Cut -> Profile,
// MapBackFn: Profile -> Cut.
template <class SourceGraph, class EmbedFn, class MapBackFn>
VerificationReport verify_cut_reduction(const SourceGraph& H, const CongestionGame& game,
                                        VerifyMode mode, uint64_t seed, int samples,
                                        std::string instance_id, EmbedFn embed,
                                        MapBackFn map_back) {
    VerificationReport rep;
    rep.instance_id = std::move(instance_id);
    rep.direction = mode == VerifyMode::EmbedCheck     ? "forward"
                    : mode == VerifyMode::DynamicsSample ? "backward"
                                                         : "forward+backward";

    if (mode == VerifyMode::EmbedCheck || mode == VerifyMode::Exhaustive) {
        for (const Cut& S : brute_local_optima(H)) {
            ++rep.checked;
            if (!is_pne(game, embed(S), Rat(0)))
                rep.counterexamples.push_back("local optimum " + cut_str(S) +
                                              " embeds to a non-equilibrium profile");
        }
    }

    if (mode == VerifyMode::DynamicsSample) {
        std::mt19937_64 rng(seed);
        for (int t = 0; t < samples; ++t) {
            Profile start;
            start.paths.reserve(game.player_count());
            for (int i = 0; i < game.player_count(); ++i) {
                const Player& pl = game.player(i);
                start.paths.push_back(random_simple_path(game.network(), pl.o, pl.d, rng));
            }
            ++rep.checked;
            try {
                BrResult r = br_dynamics(game, start, BrSchedule::Random, Rat(0),
                                         1'000'000, rng());
                Cut S = map_back(r.profile);
                if (!is_local_optimum(H, S))
                    rep.counterexamples.push_back("sample " + std::to_string(t) +
                                                  " converged but maps back to the non-optimal cut " +
                                                  cut_str(S));
            } catch (const StepCapExceeded&) {
                rep.counterexamples.push_back("sample " + std::to_string(t) +
                                              " did not converge within the step cap");
            } catch (const NotCanonical& e) {
                rep.counterexamples.push_back("sample " + std::to_string(t) +
                                              " converged to a non-canonical profile: " + e.what());
            }
        }
    }

    if (mode == VerifyMode::Exhaustive) {
        for (const Profile& p : brute_pne(game)) {
            ++rep.checked;
            try {
                Cut S = map_back(p);
                if (!is_local_optimum(H, S))
                    rep.counterexamples.push_back("equilibrium maps back to the non-optimal cut " +
                                                  cut_str(S));
            } catch (const NotCanonical& e) {
                rep.counterexamples.push_back(std::string("non-canonical equilibrium: ") + e.what());
            }
        }
    }
    return rep;
}

} // namespace

VerificationReport verify_reduction(const EdgeWeightedGraph& H, const CongestionGame& game,
                                    const SolutionMap& sm, VerifyMode mode, uint64_t seed,
                                    int samples) {
    if (sm.kind != ReductionKind::McToSp)
        throw InvalidArgument("solution map kind does not match the source instance");
    return verify_cut_reduction(
        H, game, mode, seed, samples,
        "mc2sp n=" + std::to_string(H.vertex_count()) + " m=" + std::to_string(H.edge_count()),
        [&](const Cut& S) { return embed_cut_to_sp(sm, S); },
        [&](const Profile& p) { return map_back_sp(sm, p); });
}

VerificationReport verify_reduction(const VertexWeightedGraph& H, const CongestionGame& game,
                                    const SolutionMap& sm, VerifyMode mode, uint64_t seed,
                                    int samples) {
    if (sm.kind != ReductionKind::NmcToMulti)
        throw InvalidArgument("solution map kind does not match the source instance");
    return verify_cut_reduction(
        H, game, mode, seed, samples, "nmc2multi n=" + std::to_string(H.vertex_count()),
        [&](const Cut& S) { return embed_cut_to_multi(sm, S); },
        [&](const Profile& p) { return map_back_multi(sm, p); });
}

} // namespace plsforge
