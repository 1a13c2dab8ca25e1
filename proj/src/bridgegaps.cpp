#include "plsforge/bridgegaps.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "plsforge/errors.hpp"

namespace plsforge {

Rat RoundedInstance::rounded(int i) const {
    return pow_rat(Rat(1) + eps, k[i]);
}

Rat RoundedInstance::normalized(int i) const {
    return pow_rat(Rat(1) + eps, k[i] - k_min);
}

Int bridge_threshold(int n, const Rat& eps) {
    if (eps <= 0) throw InvalidArgument("eps must be positive");
    Int t = ceil_rat(Rat(n) / eps);
    return t < 1 ? Int(1) : t;
}

RoundedInstance round_weights(const VertexWeightedGraph& g, const Rat& eps) {
    if (eps <= 0) throw InvalidArgument("eps must be positive");
    RoundedInstance r;
    r.eps = eps;
    Rat base = Rat(1) + eps;
    r.k.resize(g.vertex_count());
    std::set<long> seen;
    for (int v = 0; v < g.vertex_count(); ++v) {
        r.k[v] = floor_log(base, g.weight(v));
        seen.insert(r.k[v]);
    }
    r.distinct_exponents = static_cast<int>(seen.size());
    r.k_min = seen.empty() ? 0 : *seen.begin();
    r.divisor = pow_rat(base, r.k_min);
    return r;
}

GroupedInstance group_weights(const RoundedInstance& r, const Rat& eps,
                              const Int& T_override) {
    if (eps <= 0) throw InvalidArgument("eps must be positive");
    GroupedInstance gr;
    gr.eps = eps;
    gr.T = T_override > 0 ? T_override : bridge_threshold(r.size(), eps);
    gr.rounded.resize(r.size());
    for (int v = 0; v < r.size(); ++v) gr.rounded[v] = r.normalized(v);
    gr.order.resize(r.size());
    for (int v = 0; v < r.size(); ++v) gr.order[v] = v;
    std::stable_sort(gr.order.begin(), gr.order.end(),
                     [&](int a, int b) { return r.k[a] < r.k[b]; });
    Rat T(gr.T);
    for (int v : gr.order) {
        if (!gr.groups.empty()) {
            int prev = gr.groups.back().back();
            if (gr.rounded[v] <= T * gr.rounded[prev]) {
                gr.groups.back().push_back(v);
                continue;
            }
        }
        gr.groups.push_back({v});
    }
    return gr;
}

BridgedWeights bridge_gaps(const GroupedInstance& gr) {
    if (gr.groups.empty()) throw InvalidArgument("no groups to bridge");
    BridgedWeights b;
    b.w2 = gr.rounded;
    Rat T(gr.T);
    for (size_t j = 1; j < gr.groups.size(); ++j) {
        Rat gap = b.w2[gr.groups[j].front()] / b.w2[gr.groups[j - 1].back()];
        Rat dj = gap / T;
        b.d.push_back(dj);
        for (size_t l = j; l < gr.groups.size(); ++l)
            for (int v : gr.groups[l]) b.w2[v] /= dj;
    }
    return b;
}

BridgeGapsResult bridgegaps_solve(const VertexWeightedGraph& g, const Rat& eps,
                                  const Cut& start, const BridgeGapsOptions& opt) {
    if (eps <= 0) throw InvalidArgument("eps must be positive");
    if (start.size() != g.vertex_count())
        throw DimensionError("start cut size does not match graph");
    if (opt.schedule != FlipSchedule::First && opt.schedule != FlipSchedule::MaxGain)
        throw InvalidArgument("schedule must be first or max-gain");

    RoundedInstance r = round_weights(g, eps);
    Int T = opt.delta_variant ? std::max(bridge_threshold(g.max_degree(), eps), Int(1))
                              : bridge_threshold(g.vertex_count(), eps);
    GroupedInstance gr = group_weights(r, eps, T);
    BridgedWeights bw = bridge_gaps(gr);

    VertexWeightedGraph bridged(bw.w2, g.edges());
    FlipDynamicsResult dyn =
        flip_dynamics(bridged, start, opt.schedule, opt.seed,
                      std::numeric_limits<int64_t>::max(), eps);

    BridgeGapsResult res;
    res.cut = std::move(dyn.cut);
    res.flips = dyn.steps;
    res.distinct_exponents = r.distinct_exponents;
    res.T = T;
    res.flip_bound = Rat(g.edge_count()) / eps *
                     pow_rat(Rat(T), 2L * r.distinct_exponents);
    res.divisor = r.divisor;
    res.bridged = std::move(bw.w2);
    return res;
}

} // namespace plsforge
