// timeline.hpp -- repeated stage games over a horizon, with per-player
// energy ledgers and the piecewise-constant topology they induce.
#pragma once

#include <algorithm>
#include <vector>

#include "stage_game.hpp"

namespace resgame {

struct EnergyLedger {
    double spent = 0.0;
};

// Current budget: initial energy plus recharge minus consumption.
inline double energy_remaining(const PlayerParams& p, const EnergyLedger& led, double t) {
    return p.kappa + p.rho * t - led.spent;
}

// Maximal interval of constant topology.
struct Segment {
    double t_lo = 0, t_hi = 0;
    std::vector<Edge> active_edges;
    int lambda_hat = 0;
};

struct GameRecord {
    int index = 0; // 1-based game counter
    double t_lo = 0, t_hi = 0;
    StageOutcome outcome;
    double spent_attacker_before = 0;
    double spent_defender_before = 0;
    std::vector<Segment> segments; // partition of [t_lo, min(t_hi, horizon))
};

struct Timeline {
    int vertex_count = 0;
    double horizon = 0;
    std::vector<Edge> base_edges;
    std::vector<GameRecord> records;
};

namespace detail {

// Edge set left standing once `removed` is taken out and `restored` put back.
inline std::vector<Edge> surviving_edges(const std::vector<Edge>& base,
                                         const std::vector<Edge>& removed,
                                         const std::vector<Edge>& restored) {
    std::vector<Edge> out;
    for (const Edge& e : base)
        if (!std::binary_search(removed.begin(), removed.end(), e)) out.push_back(e);
    for (const Edge& e : restored) out.push_back(e);
    std::sort(out.begin(), out.end());
    return out;
}

inline void push_segment(std::vector<Segment>& segs, double lo, double hi,
                         std::vector<Edge> edges, int lam) {
    if (hi > lo) segs.push_back({lo, hi, std::move(edges), lam});
}

inline std::vector<Segment> materialize_segments(const ConnectivityTable& t,
                                                 double t_lo, const StageOutcome& o) {
    std::vector<Segment> segs;
    const std::vector<Edge>& all = t.graph.edges;
    const int lam_full = t.intact_lambda();
    push_segment(segs, t_lo, o.marks.tau_a_lo, all, lam_full);
    if (o.attack.m == 0) {
        push_segment(segs, o.marks.tau_a_lo, o.marks.t_hi, all, lam_full);
        return segs;
    }
    auto attacked = surviving_edges(all, o.attack.edge_set, {});
    const int lam_a = t.value(o.attack.m, 0);
    if (o.defense.m == 0) {
        push_segment(segs, o.marks.tau_a_lo, o.marks.tau_a_hi, attacked, lam_a);
        return segs;
    }
    auto recovered = surviving_edges(all, o.attack.edge_set, o.defense.edge_set);
    const int lam_d = t.value(o.attack.m, o.defense.m);
    push_segment(segs, o.marks.tau_a_lo, o.marks.tau_d_lo, attacked, lam_a);
    push_segment(segs, o.marks.tau_d_lo, o.marks.tau_d_hi, recovered, lam_d);
    push_segment(segs, o.marks.tau_d_hi, o.marks.tau_a_hi, attacked, lam_a);
    return segs;
}

} // namespace detail

// Plays stage games back to back until the horizon is covered. The final
// game is recorded in full but its segments are clipped at the horizon.
inline Timeline play(const ConnectivityTable& table, const PlayerParams& attacker,
                     const PlayerParams& defender, double horizon) {
    if (!(horizon > 0)) throw NonPositiveDuration("horizon must be positive");
    validate(attacker, "attacker");
    validate(defender, "defender");

    Timeline tl;
    tl.vertex_count = table.graph.n;
    tl.horizon = horizon;
    tl.base_edges = table.graph.edges;

    EnergyLedger led_a, led_d;
    double t = 0.0;
    int k = 0;
    while (t < horizon) {
        StageInput in{&table, t, led_a.spent, led_d.spent, attacker, defender};
        StageOutcome o = solve_stage(in);
        if (!(o.marks.t_hi > t))
            throw StallGuard("game " + std::to_string(k + 1) + " has zero length");

        GameRecord rec;
        rec.index = ++k;
        rec.t_lo = t;
        rec.t_hi = o.marks.t_hi;
        rec.outcome = o;
        rec.spent_attacker_before = led_a.spent;
        rec.spent_defender_before = led_d.spent;
        rec.segments = detail::materialize_segments(table, t, o);

        led_a.spent += attacker.beta * o.attack.m * o.attack.delta;
        led_d.spent += defender.beta * o.defense.m * o.defense.delta;

        t = o.marks.t_hi;
        if (t >= horizon) {
            std::vector<Segment> clipped;
            for (Segment& s : rec.segments) {
                if (s.t_lo >= horizon) break;
                s.t_hi = std::min(s.t_hi, horizon);
                clipped.push_back(std::move(s));
            }
            rec.segments = std::move(clipped);
        }
        tl.records.push_back(std::move(rec));
    }
    return tl;
}

// Segments of every game in order; the clipped tail already honors the horizon.
inline std::vector<Segment> flatten(const Timeline& tl) {
    std::vector<Segment> out;
    for (const GameRecord& r : tl.records)
        out.insert(out.end(), r.segments.begin(), r.segments.end());
    return out;
}

} // namespace resgame
