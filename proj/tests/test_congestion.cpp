#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "plsforge/congestion.hpp"
#include "plsforge/errors.hpp"

using namespace plsforge;

// One block of the series-parallel cut-game family: base-2 direct o-d edges,
// two o-v edges, one v-d edge (all identity here).
static SpTerm block(int direct) {
    SpTerm d = sp_leaf(identity_latency());
    for (int k = 1; k < direct; ++k) d = sp_parallel(std::move(d), sp_leaf(identity_latency()));
    SpTerm via = sp_series(sp_parallel(sp_leaf(identity_latency()), sp_leaf(identity_latency())),
                           sp_leaf(identity_latency()));
    return sp_parallel(std::move(d), std::move(via));
}

TEST_CASE("sp_realize shapes") {
    SpNetwork leaf = sp_realize(*sp_leaf(identity_latency()));
    CHECK(leaf.net.vertex_count() == 2);
    CHECK(leaf.net.edge_count() == 1);

    SpNetwork par = sp_realize(*sp_parallel(sp_leaf(identity_latency()), sp_leaf(identity_latency())));
    CHECK(par.net.vertex_count() == 2);
    CHECK(par.net.edge_count() == 2);
    CHECK(par.net.edge(0).u == par.net.edge(1).u);
    CHECK(par.net.edge(0).v == par.net.edge(1).v);

    SpNetwork ser = sp_realize(*sp_series(sp_leaf(identity_latency()), sp_leaf(identity_latency())));
    CHECK(ser.net.vertex_count() == 3);
    CHECK(ser.net.edge_count() == 2);
    CHECK(ser.o != ser.d);
}

TEST_CASE("enumerate_paths") {
    SpNetwork leaf = sp_realize(*sp_leaf(identity_latency()));
    CHECK(enumerate_paths(leaf.net, leaf.o, leaf.d).size() == 1);

    SpNetwork fij = sp_realize(*block(2));
    CHECK(enumerate_paths(fij.net, fij.o, fij.d).size() == 4);

    SpNetwork two = sp_realize(*sp_series(block(2), block(2)));
    CHECK(enumerate_paths(two.net, two.o, two.d).size() == 16);

    CHECK_THROWS_AS(enumerate_paths(two.net, two.o, two.d, 15), TooLarge);
    CHECK_THROWS_AS(enumerate_paths(leaf.net, leaf.o, leaf.o), InvalidArgument);
}

TEST_CASE("enumerate_paths is lexicographic and simple") {
    SpNetwork net = sp_realize(*sp_series(block(3), block(2)));
    std::vector<Path> ps = enumerate_paths(net.net, net.o, net.d);
    for (size_t k = 0; k + 1 < ps.size(); ++k) CHECK(ps[k] < ps[k + 1]);
    for (const Path& p : ps) CHECK(is_simple_path(net.net, net.o, net.d, p));
}

TEST_CASE("congestion_and_costs") {
    Network one(2, {{0, 1, identity_latency()}});
    CongestionGame g(one, {{Rat(2), 0, 1}});
    LoadAndCosts lc = congestion_and_costs(g, {{{0}}});
    CHECK(lc.congestion[0] == 2);
    CHECK(lc.cost[0] == 2);

    Network two(2, {{0, 1, identity_latency()}, {0, 1, identity_latency()}});
    CongestionGame g2(two, {{Rat(1), 0, 1}, {Rat(2), 0, 1}});
    lc = congestion_and_costs(g2, {{{0}, {0}}});
    CHECK(lc.congestion[0] == 3);
    CHECK(lc.congestion[1] == 0);
    CHECK(lc.cost[0] == 3);
    CHECK(lc.cost[1] == 3);

    CHECK_THROWS_AS(congestion_and_costs(g2, {{{0}}}), DimensionError);
    CHECK_THROWS_AS(congestion_and_costs(g, {{{0, 0}}}), InvalidArgument);
}

TEST_CASE("potential_wcg") {
    Network one(2, {{0, 1, identity_latency()}});
    CongestionGame g(one, {{Rat(2), 0, 1}});
    CHECK(potential_wcg(g, {{{0}}}) == 8);

    CongestionGame empty(one, {});
    CHECK(potential_wcg(empty, {{}}) == 0);

    Rat b(7, 3);
    Network cst(2, {{0, 1, constant_latency(b)}});
    CongestionGame g3(cst, {{Rat(1), 0, 1}});
    CHECK(potential_wcg(g3, {{{0}}}) == 2 * b);
}

TEST_CASE("is_pne and best_response") {
    Network one(2, {{0, 1, identity_latency()}});
    CongestionGame solo(one, {{Rat(3), 0, 1}});
    CHECK(is_pne(solo, {{{0}}}));
    auto [bp, bc] = best_response(solo, {{{0}}}, 0);
    CHECK(bp == Path{0});
    CHECK(bc == 3);

    Network two(2, {{0, 1, identity_latency()}, {0, 1, identity_latency()}});
    CongestionGame g(two, {{Rat(1), 0, 1}, {Rat(1), 0, 1}});
    Profile stacked{{{0}, {0}}};
    Profile split{{{0}, {1}}};
    CHECK_FALSE(is_pne(g, stacked));
    CHECK(is_pne(g, split));
    auto [q, c] = best_response(g, stacked, 1);
    CHECK(q == Path{1});
    CHECK(c == 1);
    auto [q2, c2] = best_response(g, split, 1);
    CHECK(q2 == Path{1});
    CHECK(c2 == 1);
    // eps covers the 2-vs-1 gap at eps >= 1.
    CHECK(is_pne(g, stacked, Rat(1)));
    CHECK_FALSE(is_pne(g, stacked, Rat(99, 100)));
    CHECK_THROWS_AS(is_pne(g, stacked, Rat(-1)), InvalidArgument);
}

TEST_CASE("br_dynamics") {
    Network two(2, {{0, 1, identity_latency()}, {0, 1, identity_latency()}});
    CongestionGame g(two, {{Rat(1), 0, 1}, {Rat(1), 0, 1}});
    Profile split{{{0}, {1}}};
    Profile stacked{{{0}, {0}}};

    for (BrSchedule sch : {BrSchedule::RoundRobin, BrSchedule::MaxGain, BrSchedule::Random}) {
        BrResult r = br_dynamics(g, split, sch, Rat(0), 100, 5);
        CHECK(r.trace.empty());
        r = br_dynamics(g, stacked, sch, Rat(0), 100, 5);
        CHECK(r.trace.size() == 1);
        CHECK(is_pne(g, r.profile));
    }
    CHECK_THROWS_AS(br_dynamics(g, stacked, BrSchedule::RoundRobin, Rat(0), 0), InvalidArgument);
}

TEST_CASE("step cap carries the last profile") {
    // Four unit players stacked on one of two identity links need two moves;
    // a cap of one must fire after the first.
    Network two(2, {{0, 1, identity_latency()}, {0, 1, identity_latency()}});
    CongestionGame g(two, {{Rat(1), 0, 1}, {Rat(1), 0, 1}, {Rat(1), 0, 1}, {Rat(1), 0, 1}});
    Profile allzero{{{0}, {0}, {0}, {0}}};
    try {
        br_dynamics(g, allzero, BrSchedule::RoundRobin, Rat(0), 1);
        FAIL("expected StepCapExceeded");
    } catch (const StepCapExceeded& e) {
        CHECK(e.last.paths.size() == 4);
        CHECK(e.trace.size() == 1);
        CHECK(e.last.paths[0] == Path{1});
    }
}

static SpTerm random_term(std::mt19937_64& rng, int depth) {
    if (depth == 0 || rng() % 3 == 0)
        return sp_leaf({Rat(static_cast<long>(rng() % 3)), Rat(static_cast<long>(rng() % 4))});
    SpTerm l = random_term(rng, depth - 1);
    SpTerm r = random_term(rng, depth - 1);
    return rng() % 2 ? sp_series(std::move(l), std::move(r))
                     : sp_parallel(std::move(l), std::move(r));
}

static int64_t count_paths(const SeriesParallelTerm& t) {
    switch (t.kind) {
    case SeriesParallelTerm::Kind::Leaf: return 1;
    case SeriesParallelTerm::Kind::Series: return count_paths(*t.left) * count_paths(*t.right);
    case SeriesParallelTerm::Kind::Parallel: return count_paths(*t.left) + count_paths(*t.right);
    }
    return 0;
}

TEST_CASE("series-parallel path count algebra") {
    std::mt19937_64 rng(41);
    for (int round = 0; round < 40; ++round) {
        SpTerm t = random_term(rng, 4);
        SpNetwork net = sp_realize(*t);
        CHECK(static_cast<int64_t>(enumerate_paths(net.net, net.o, net.d).size()) ==
              count_paths(*t));
    }
}

TEST_CASE("potential identity under unilateral deviations") {
    std::mt19937_64 rng(1322);
    for (int round = 0; round < 50; ++round) {
        SpTerm t = random_term(rng, 3);
        SpNetwork sp = sp_realize(*t);
        std::vector<Path> all = enumerate_paths(sp.net, sp.o, sp.d);
        int np = 1 + static_cast<int>(rng() % 4);
        std::vector<Player> players;
        for (int i = 0; i < np; ++i)
            players.push_back({Rat(1 + static_cast<long>(rng() % 9)), sp.o, sp.d});
        CongestionGame g(sp.net, players);
        Profile p;
        for (int i = 0; i < np; ++i) p.paths.push_back(all[rng() % all.size()]);
        LoadAndCosts before = congestion_and_costs(g, p);
        Rat phi = potential_wcg(g, p);
        CHECK(phi >= 0);
        for (int rep = 0; rep < 4; ++rep) {
            int i = static_cast<int>(rng() % np);
            Profile q = p;
            q.paths[i] = all[rng() % all.size()];
            LoadAndCosts after = congestion_and_costs(g, q);
            CHECK(phi - potential_wcg(g, q) ==
                  2 * players[i].w * (before.cost[i] - after.cost[i]));
        }
    }
}

TEST_CASE("eps zero equilibrium matches best responses") {
    std::mt19937_64 rng(77);
    for (int round = 0; round < 30; ++round) {
        SpTerm t = random_term(rng, 3);
        SpNetwork sp = sp_realize(*t);
        std::vector<Path> all = enumerate_paths(sp.net, sp.o, sp.d);
        int np = 1 + static_cast<int>(rng() % 3);
        std::vector<Player> players;
        for (int i = 0; i < np; ++i)
            players.push_back({Rat(1 + static_cast<long>(rng() % 5)), sp.o, sp.d});
        CongestionGame g(sp.net, players);
        Profile p;
        for (int i = 0; i < np; ++i) p.paths.push_back(all[rng() % all.size()]);
        LoadAndCosts lc = congestion_and_costs(g, p);
        bool any_improves = false;
        for (int i = 0; i < np; ++i)
            if (best_response(g, p, i).second < lc.cost[i]) any_improves = true;
        CHECK(is_pne(g, p) == !any_improves);
    }
}

TEST_CASE("potential strictly decreases along traces") {
    std::mt19937_64 rng(99);
    for (int round = 0; round < 20; ++round) {
        SpTerm t = random_term(rng, 3);
        SpNetwork sp = sp_realize(*t);
        std::vector<Path> all = enumerate_paths(sp.net, sp.o, sp.d);
        std::vector<Player> players;
        int np = 2 + static_cast<int>(rng() % 3);
        for (int i = 0; i < np; ++i)
            players.push_back({Rat(1 + static_cast<long>(rng() % 5)), sp.o, sp.d});
        CongestionGame g(sp.net, players);
        Profile p;
        for (int i = 0; i < np; ++i) p.paths.push_back(all[rng() % all.size()]);
        Rat last = potential_wcg(g, p);
        BrResult r = br_dynamics(g, p, BrSchedule::Random, Rat(0), 100000, round);
        for (const BrStep& st : r.trace) {
            CHECK(st.potential < last);
            CHECK(st.new_cost < st.old_cost);
            last = st.potential;
        }
        CHECK(is_pne(g, r.profile));
    }
}
