// stage_game.hpp -- single attacker/defender stage game: energy-capped
// action durations, utilities, the defender's best recovery response and
// the combined-strategy equilibrium selection.
#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "connectivity_table.hpp"

namespace resgame {

struct PlayerParams {
    double beta;  // energy cost rate per targeted edge
    double kappa; // initial energy budget
    double rho;   // recharge rate
    double gamma; // dwell delay before the action may start
};

inline void validate(const PlayerParams& p, const std::string& who) {
    if (!(p.kappa > 0)) throw ValidationError(who + ": kappa must be positive");
    if (!(p.rho > 0 && p.rho < 1)) throw ValidationError(who + ": rho must lie in (0, 1)");
    if (!(p.beta > p.rho)) throw ValidationError(who + ": beta must exceed rho");
    if (!(p.gamma > 0)) throw ValidationError(who + ": gamma must be positive");
}

// Longest affordable action on m edges starting at `start`, given energy
// already spent. Zero when the budget is exhausted.
inline double max_duration(const PlayerParams& p, double spent, int m, double start) {
    if (m < 1) throw ValidationError("max_duration needs m >= 1");
    double numer = p.kappa + p.rho * start - spent;
    if (numer <= 0) return 0.0;
    return numer / (p.beta * m - p.rho); // denominator > 0 since beta > rho, m >= 1
}

struct Strategy {
    int m = 0;          // edges targeted; 0 means the player sits out
    double delta = 0.0; // action duration; 0 iff m == 0
    std::vector<Edge> edge_set;
};

struct TimingMarks {
    double tau_a_lo = 0; // attack may start
    double tau_a_hi = 0; // attack ends
    double tau_d_lo = 0; // recovery may start
    double tau_d_hi = 0; // recovery ends
    double t_hi = 0;     // game ends
};

enum class CombinedStrategy { CS1, CS2a, CS2b, CS3 };

inline const char* to_string(CombinedStrategy s) {
    switch (s) {
        case CombinedStrategy::CS1: return "CS1";
        case CombinedStrategy::CS2a: return "CS2a";
        case CombinedStrategy::CS2b: return "CS2b";
        default: return "CS3";
    }
}

// Candidate payoffs examined during selection. u_a2a_prime is -inf when no
// attack size leaves the defender unwilling to recover.
struct Candidates {
    double u_a1 = 0;
    double u_a2a = 0, u_a2b = 0, u_a3 = 0;
    double u_a2a_prime = -std::numeric_limits<double>::infinity();
    int m_a2a = 0, m_a2b = 0, m_a3 = 0, m_tilde = 0;
    double u_d1 = 0, u_d2a = 0, u_d2b = 0, u_d3 = 0;
};

struct StageInput {
    const ConnectivityTable* table = nullptr;
    double start_time = 0;
    double spent_attacker = 0;
    double spent_defender = 0;
    PlayerParams attacker;
    PlayerParams defender;
};

struct StageOutcome {
    CombinedStrategy label = CombinedStrategy::CS1;
    Strategy attack;
    Strategy defense;
    TimingMarks marks;
    double u_attacker = 0;
    double u_defender = 0;
    Candidates candidates;
};

// Realized attacker payoff over one game: connectivity exposure while the
// attack is unanswered, while recovery holds, plus the energy price.
inline double utility_attacker(const ConnectivityTable& t, const Strategy& attack,
                               const Strategy& defense, double beta_attacker) {
    if (defense.m > attack.m)
        throw InvalidPair("defense targets more edges than the attack removed");
    double lam_a = t.value(attack.m, 0);
    double lam_d = t.value(attack.m, defense.m);
    return -lam_a * (attack.delta - defense.delta) - lam_d * defense.delta -
           beta_attacker * attack.m * attack.delta;
}

inline double utility_defender(const ConnectivityTable& t, const Strategy& attack,
                               const Strategy& defense, double beta_defender) {
    if (defense.m > attack.m)
        throw InvalidPair("defense targets more edges than the attack removed");
    double lam_a = t.value(attack.m, 0);
    double lam_d = t.value(attack.m, defense.m);
    return lam_a * (attack.delta - defense.delta) + lam_d * defense.delta -
           beta_defender * defense.m * defense.delta;
}

namespace detail {

// Best strictly-positive recovery against an attack of m_attack edges held
// for delta_attack: maximize phi * xi where phi is the connectivity gain
// net of cost rate and xi the affordable overlap with the attack window.
struct RecoveryOption {
    int m = 0;
    double xi = 0;
    double phi = 0;
};

inline std::optional<RecoveryOption> best_recovery_option(const ConnectivityTable& t,
                                                          int m_attack,
                                                          double delta_attack,
                                                          const StageInput& in) {
    if (m_attack < 1) return std::nullopt;
    const double gamma_d = in.defender.gamma;
    if (!(delta_attack > gamma_d)) return std::nullopt; // attack over before recovery may start
    const double window = delta_attack - gamma_d;
    const double tau_d_lo = in.start_time + in.attacker.gamma + gamma_d;
    const int lam_a = t.value(m_attack, 0);
    std::optional<RecoveryOption> best;
    for (int m = 1; m <= m_attack; ++m) {
        double cap = max_duration(in.defender, in.spent_defender, m, tau_d_lo);
        double xi = std::min(cap, window);
        if (!(xi > 0)) continue;
        double phi = t.value(m_attack, m) - lam_a - in.defender.beta * m;
        double value = phi * xi;
        if (!best || value > best->phi * best->xi ||
            (value == best->phi * best->xi && m > best->m))
            best = RecoveryOption{m, xi, phi};
    }
    return best;
}

} // namespace detail

struct RecoveryResponse {
    int m = 0;      // 0 when the defender declines to recover
    double xi = 0;  // realized recovery duration
    double phi = 0; // rate of the best positive option (0 when none exists)
};

// Decision-level best response: the best positive recovery if its rate is
// nonnegative, otherwise no recovery.
inline RecoveryResponse defender_best_response(const ConnectivityTable& t, int m_attack,
                                               double delta_attack, const StageInput& in) {
    auto opt = detail::best_recovery_option(t, m_attack, delta_attack, in);
    if (!opt) return {};
    if (opt->phi < 0) return {0, 0.0, opt->phi};
    return {opt->m, opt->xi, opt->phi};
}

namespace detail {

inline StageOutcome idle_outcome(const StageInput& in) {
    StageOutcome out;
    out.label = CombinedStrategy::CS1;
    const double tau_a = in.start_time + in.attacker.gamma;
    out.marks = {tau_a, tau_a, tau_a, tau_a, tau_a + in.defender.gamma};
    return out;
}

} // namespace detail

// Subgame-perfect outcome of one stage game. The attacker weighs sitting
// out, attacking for as long as energy allows (with or without provoking a
// recovery) and a short attack that ends just before recovery can begin;
// the defender answers with its best response.
inline StageOutcome solve_stage(const StageInput& in) {
    if (in.table == nullptr || in.table->values.empty())
        throw EmptyTable("stage game needs a built connectivity table");
    const ConnectivityTable& t = *in.table;
    const int E = t.edge_count();
    const double beta_a = in.attacker.beta;
    const double gamma_d = in.defender.gamma;
    const double tau_a_lo = in.start_time + in.attacker.gamma;
    const double neg_inf = -std::numeric_limits<double>::infinity();

    if (E == 0) return detail::idle_outcome(in);

    std::vector<double> dur(E + 1, 0.0), u_a2a(E + 1, neg_inf), u_a2b(E + 1, neg_inf),
        u_a3(E + 1, neg_inf);
    std::vector<std::optional<detail::RecoveryOption>> opt(E + 1);
    std::vector<bool> recovered(E + 1, false);

    for (int m = 1; m <= E; ++m)
        dur[m] = max_duration(in.attacker, in.spent_attacker, m, tau_a_lo);
    if (!(dur[1] > 0)) return detail::idle_outcome(in); // exhausted budget

    Candidates c;
    c.u_a2a = neg_inf;
    c.u_a2b = neg_inf;
    c.u_a3 = neg_inf;

    for (int m = 1; m <= E; ++m) {
        const double coeff = -t.value(m, 0) - beta_a * m;
        u_a2a[m] = coeff * dur[m];
        u_a2b[m] = coeff * std::min(gamma_d, dur[m]);
        opt[m] = detail::best_recovery_option(t, m, dur[m], in);
        if (opt[m]) {
            recovered[m] = opt[m]->phi >= 0;
            u_a3[m] = -t.value(m, 0) * (dur[m] - opt[m]->xi) -
                      t.value(m, opt[m]->m) * opt[m]->xi - beta_a * m * dur[m];
        } else {
            u_a3[m] = u_a2a[m];
        }
        if (u_a2a[m] >= c.u_a2a) { c.u_a2a = u_a2a[m]; c.m_a2a = m; }
        if (u_a2b[m] >= c.u_a2b) { c.u_a2b = u_a2b[m]; c.m_a2b = m; }
        if (u_a3[m] >= c.u_a3) { c.u_a3 = u_a3[m]; c.m_a3 = m; }
        if (!recovered[m] && u_a2a[m] >= c.u_a2a_prime) {
            c.u_a2a_prime = u_a2a[m];
            c.m_tilde = m;
        }
    }

    c.u_d2a = t.value(c.m_a2a, 0) * dur[c.m_a2a];
    c.u_d3 = opt[c.m_a2a] ? opt[c.m_a2a]->phi * opt[c.m_a2a]->xi + c.u_d2a : c.u_d2a;
    c.u_d2b = t.value(c.m_a2b, 0) * std::min(gamma_d, dur[c.m_a2b]);

    StageOutcome out;
    out.candidates = c;

    auto finish = [&](CombinedStrategy label, int m_att, double delta,
                      int m_def, double xi) {
        out.label = label;
        const Witness& w = t.witness(m_att, m_def);
        out.attack = {m_att, delta, w.attack};
        out.defense = {m_def, xi, w.recover};
        out.marks.tau_a_lo = tau_a_lo;
        out.marks.tau_a_hi = tau_a_lo + delta;
        out.marks.tau_d_lo = std::min(out.marks.tau_a_hi, tau_a_lo + gamma_d);
        out.marks.tau_d_hi = m_def > 0 ? out.marks.tau_d_lo + xi : out.marks.tau_d_lo;
        out.marks.t_hi = out.marks.tau_a_hi;
        out.u_attacker = utility_attacker(t, out.attack, out.defense, beta_a);
        out.u_defender = utility_defender(t, out.attack, out.defense, in.defender.beta);
        return out;
    };

    if (c.u_a2a < 0) {
        out = detail::idle_outcome(in);
        out.candidates = c;
        return out;
    }

    // u_d3 < u_d2a exactly when the best option's rate is negative; comparing
    // the rate avoids cancellation against the shared u_d2a term
    if (opt[c.m_a2a] && opt[c.m_a2a]->phi < 0)
        return finish(CombinedStrategy::CS2a, c.m_a2a, dur[c.m_a2a], 0, 0.0);

    if (c.u_a3 < c.u_a2b) {
        if (c.u_a2a_prime >= c.u_a2b)
            return finish(CombinedStrategy::CS2a, c.m_tilde, dur[c.m_tilde], 0, 0.0);
        return finish(CombinedStrategy::CS2b, c.m_a2b,
                      std::min(gamma_d, dur[c.m_a2b]), 0, 0.0);
    }

    if (c.u_a2a_prime > c.u_a3)
        return finish(CombinedStrategy::CS2a, c.m_tilde, dur[c.m_tilde], 0, 0.0);

    // chosen attack faces a recovery; when even the best option is declined
    // the game degenerates to an unanswered full-length attack
    if (!opt[c.m_a3] || !recovered[c.m_a3])
        return finish(CombinedStrategy::CS2a, c.m_tilde, dur[c.m_tilde], 0, 0.0);
    return finish(CombinedStrategy::CS3, c.m_a3, dur[c.m_a3], opt[c.m_a3]->m,
                  opt[c.m_a3]->xi);
}

// Closed-form strategy regions for the single-edge topology, matching
// solve_stage on the same durations. The last threshold is the short-attack
// condition beta_a > 1 - 2 xi / (delta_a - gamma_d), written below in
// product form so both paths evaluate identical expressions.
inline CombinedStrategy n2_region(double beta_a, double beta_d, double delta_a,
                                  double delta_d, double gamma_d) {
    if (!(delta_a > 0) || beta_a > 1) return CombinedStrategy::CS1;
    if (beta_d > 2) return CombinedStrategy::CS2a;
    double xi = std::min(delta_d, delta_a - gamma_d);
    if (!(xi > 0)) return CombinedStrategy::CS2a;
    double u_long = (delta_a - xi) - xi - beta_a * delta_a;
    double u_short = (1 - beta_a) * std::min(gamma_d, delta_a);
    if (u_long < u_short) return CombinedStrategy::CS2b;
    return CombinedStrategy::CS3;
}

} // namespace resgame
