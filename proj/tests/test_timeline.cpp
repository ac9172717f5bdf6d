#include <catch2/catch_amalgamated.hpp>

#include <resgame/timeline.hpp>

#include "test_support.hpp"

using namespace resgame;

namespace {

Graph golden_graph() {
    return Graph::make(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {2, 3}});
}

Catch::Approx near(double v) { return Catch::Approx(v).epsilon(1e-9).margin(1e-9); }

PlayerParams lean_attacker() { return {0.4, 0.5, 0.3, 0.1}; }
PlayerParams rich_attacker() { return {0.4, 5.0, 0.39, 0.1}; }
PlayerParams base_defender() { return {0.6, 1.0, 0.1, 0.3}; }

struct RandomRun {
    Graph graph;
    PlayerParams attacker, defender;
    Timeline timeline;
};

RandomRun random_run(std::mt19937& rng) {
    std::uniform_int_distribution<int> nn(2, 5);
    RandomRun r{support::random_connected_graph(rng, nn(rng)),
                support::random_params(rng), support::random_params(rng), {}};
    ConnectivityTable t = build_table(r.graph);
    double horizon = (r.attacker.gamma + r.defender.gamma) * 6;
    r.timeline = play(t, r.attacker, r.defender, horizon);
    return r;
}

} // namespace

TEST_CASE("energy ledgers track recharge minus consumption") {
    PlayerParams p{0.4, 0.5, 0.3, 0.1};
    CHECK(energy_remaining(p, {0.0}, 0.0) == near(0.5));
    CHECK(energy_remaining(p, {0.2}, 1.0) == near(0.6));
    CHECK(energy_remaining(p, {1.0}, 1.0) == near(-0.2));
}

TEST_CASE("tight-budget run opens short and settles into brief strikes") {
    ConnectivityTable t = build_table(golden_graph());
    Timeline tl = play(t, lean_attacker(), base_defender(), 3.0);

    REQUIRE(tl.records.size() >= 4);
    const GameRecord& g1 = tl.records[0];
    CHECK(g1.index == 1);
    CHECK(g1.t_lo == 0.0);
    CHECK(g1.t_hi == near(0.4));
    CHECK(g1.outcome.label == CombinedStrategy::CS2b);
    CHECK(g1.outcome.attack.m == 5);
    CHECK(g1.outcome.attack.delta == near(0.3));
    REQUIRE(g1.segments.size() == 2);
    CHECK(g1.segments[0].lambda_hat == 2);
    CHECK(g1.segments[0].active_edges.size() == 5);
    CHECK(g1.segments[1].lambda_hat == -3);
    CHECK(g1.segments[1].active_edges.empty());

    const GameRecord& g2 = tl.records[1];
    CHECK(g2.spent_attacker_before == near(0.6));
    CHECK(g2.spent_defender_before == 0.0);
    CHECK(g2.outcome.label == CombinedStrategy::CS2a);
    CHECK(g2.outcome.attack.delta == near(0.05 / 1.7));
    CHECK(g2.t_hi == near(0.4 + 0.1 + 0.05 / 1.7));

    // recharge and consumption balance out into identical short games
    CHECK(tl.records[2].outcome.attack.delta == near(0.03 / 1.7));
    CHECK(tl.records[3].outcome.attack.delta == near(0.03 / 1.7));

    for (size_t k = 1; k < tl.records.size(); ++k) {
        const StageOutcome& o = tl.records[k].outcome;
        CHECK(o.label == CombinedStrategy::CS2a);
        CHECK(o.attack.m == 5);
        CHECK(o.defense.m == 0);
    }
    std::vector<Segment> segs = flatten(tl);
    CHECK(segs.back().t_hi == 3.0);
    CHECK(tl.records.size() >= 20);
    CHECK(tl.records.size() <= 25);
}

TEST_CASE("deep-budget run carries one long attack with a mid-game recovery") {
    ConnectivityTable t = build_table(golden_graph());
    Timeline tl = play(t, rich_attacker(), base_defender(), 4.0);

    const double delta = 5.039 / 1.61;
    const double xi = 1.04 / 1.7;
    REQUIRE(tl.records.size() >= 3);
    const GameRecord& g1 = tl.records[0];
    CHECK(g1.outcome.label == CombinedStrategy::CS3);
    CHECK(g1.outcome.attack.m == 5);
    CHECK(g1.outcome.defense.m == 3);
    REQUIRE(g1.segments.size() == 4);

    CHECK(g1.segments[0].t_lo == 0.0);
    CHECK(g1.segments[0].t_hi == near(0.1));
    CHECK(g1.segments[0].lambda_hat == 2);
    CHECK(g1.segments[1].t_hi == near(0.4));
    CHECK(g1.segments[1].lambda_hat == -3);
    CHECK(g1.segments[1].active_edges.empty());
    CHECK(g1.segments[2].t_hi == near(0.4 + xi));
    CHECK(g1.segments[2].lambda_hat == 1);
    CHECK(g1.segments[2].active_edges ==
          std::vector<Edge>{{0, 1}, {0, 2}, {0, 3}});
    CHECK(g1.segments[3].t_hi == near(0.1 + delta));
    CHECK(g1.segments[3].lambda_hat == -3);

    const GameRecord& g2 = tl.records[1];
    CHECK(g2.t_lo == near(0.1 + delta));
    CHECK(g2.spent_attacker_before == near(2.0 * delta));
    CHECK(g2.spent_defender_before == near(1.8 * xi));
    CHECK(g2.outcome.label == CombinedStrategy::CS2a);
    CHECK(g2.outcome.attack.m == 5);
    CHECK(g2.outcome.attack.delta == near(0.039 / 1.61));

    CHECK(flatten(tl).back().t_hi == 4.0);
}

TEST_CASE("segments tile each game and abut across games") {
    std::mt19937 rng(7201);
    for (int trial = 0; trial < 25; ++trial) {
        RandomRun r = random_run(rng);
        const Timeline& tl = r.timeline;
        REQUIRE(!tl.records.empty());
        REQUIRE(tl.records.front().t_lo == 0.0);
        for (size_t k = 0; k < tl.records.size(); ++k) {
            const GameRecord& rec = tl.records[k];
            REQUIRE(!rec.segments.empty());
            REQUIRE(rec.segments.front().t_lo == rec.t_lo);
            for (size_t i = 0; i + 1 < rec.segments.size(); ++i)
                REQUIRE(rec.segments[i].t_hi == rec.segments[i + 1].t_lo);
            for (const Segment& s : rec.segments) REQUIRE(s.t_hi > s.t_lo);
            double tail = std::min(rec.t_hi, tl.horizon);
            REQUIRE(rec.segments.back().t_hi == tail);
            if (k + 1 < tl.records.size())
                REQUIRE(tl.records[k + 1].t_lo == rec.t_hi);
        }
        REQUIRE(tl.records.back().t_hi >= tl.horizon);
    }
}

TEST_CASE("ledgers audit and actions stay affordable") {
    std::mt19937 rng(7202);
    for (int trial = 0; trial < 25; ++trial) {
        RandomRun r = random_run(rng);
        double acc_a = 0.0, acc_d = 0.0;
        for (const GameRecord& rec : r.timeline.records) {
            REQUIRE(rec.spent_attacker_before == near(acc_a));
            REQUIRE(rec.spent_defender_before == near(acc_d));
            const StageOutcome& o = rec.outcome;
            if (o.attack.m > 0) {
                double cap = max_duration(r.attacker, rec.spent_attacker_before,
                                          o.attack.m, o.marks.tau_a_lo);
                REQUIRE(o.attack.delta <= cap + 1e-12);
                double after = rec.spent_attacker_before +
                               r.attacker.beta * o.attack.m * o.attack.delta;
                REQUIRE(energy_remaining(r.attacker, {after}, o.marks.tau_a_hi) >=
                        -1e-9);
            }
            if (o.defense.m > 0) {
                double cap = max_duration(r.defender, rec.spent_defender_before,
                                          o.defense.m, o.marks.tau_d_lo);
                REQUIRE(o.defense.delta <= cap + 1e-12);
                double after = rec.spent_defender_before +
                               r.defender.beta * o.defense.m * o.defense.delta;
                REQUIRE(energy_remaining(r.defender, {after}, o.marks.tau_d_hi) >=
                        -1e-9);
            }
            acc_a += r.attacker.beta * o.attack.m * o.attack.delta;
            acc_d += r.defender.beta * o.defense.m * o.defense.delta;
        }
    }
}

TEST_CASE("recorded connectivity matches the active topology") {
    std::mt19937 rng(7203);
    for (int trial = 0; trial < 20; ++trial) {
        RandomRun r = random_run(rng);
        for (const GameRecord& rec : r.timeline.records) {
            for (const Segment& s : rec.segments) {
                int actual =
                    support::brute_generalized_lambda(r.graph.n, s.active_edges);
                if (rec.outcome.defense.m == 0 ||
                    s.active_edges.size() != r.graph.edges.size() - rec.outcome.attack.m)
                    REQUIRE(s.lambda_hat == actual);
                else
                    // the attacked stretch of a recovered game reports the
                    // table's worst case, which the played witness may beat
                    REQUIRE(s.lambda_hat <= actual);
            }
        }
    }
}

TEST_CASE("records replay deterministically from their inputs") {
    std::mt19937 rng(7204);
    for (int trial = 0; trial < 15; ++trial) {
        RandomRun r = random_run(rng);
        ConnectivityTable t = build_table(r.graph);
        for (const GameRecord& rec : r.timeline.records) {
            StageInput in{&t, rec.t_lo, rec.spent_attacker_before,
                          rec.spent_defender_before, r.attacker, r.defender};
            StageOutcome again = solve_stage(in);
            REQUIRE(again.label == rec.outcome.label);
            REQUIRE(again.attack.m == rec.outcome.attack.m);
            REQUIRE(again.attack.delta == rec.outcome.attack.delta);
            REQUIRE(again.defense.m == rec.outcome.defense.m);
            REQUIRE(again.defense.delta == rec.outcome.defense.delta);
            REQUIRE(again.u_attacker == rec.outcome.u_attacker);
            REQUIRE(again.u_defender == rec.outcome.u_defender);
        }
    }
}

TEST_CASE("costly attacks leave the topology untouched") {
    ConnectivityTable t = build_table(golden_graph());
    PlayerParams costly = lean_attacker();
    costly.beta = 2.0;
    Timeline tl = play(t, costly, base_defender(), 3.0);

    REQUIRE(tl.records.size() == 8);
    for (const GameRecord& rec : tl.records) {
        CHECK(rec.outcome.label == CombinedStrategy::CS1);
        CHECK(rec.outcome.attack.m == 0);
        for (const Segment& s : rec.segments) {
            CHECK(s.lambda_hat == 2);
            CHECK(s.active_edges.size() == 5);
        }
    }
    CHECK(flatten(tl).back().t_hi == 3.0);
}

TEST_CASE("a run needs a positive horizon") {
    ConnectivityTable t = build_table(golden_graph());
    CHECK_THROWS_AS(play(t, lean_attacker(), base_defender(), 0.0),
                    NonPositiveDuration);
    CHECK_THROWS_AS(play(t, lean_attacker(), base_defender(), -1.0),
                    NonPositiveDuration);
}
