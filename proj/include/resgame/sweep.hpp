// sweep.hpp -- two-axis parameter sweeps over single stage games, one
// equilibrium per grid point. Cost axes vary a player's beta; duration
// axes pin the affordable action length by adjusting the energy already
// spent before the game.
#pragma once

#include <future>
#include <ostream>
#include <vector>

#include "io.hpp"

namespace resgame {

enum class SweepParam { BetaAttacker, BetaDefender, DeltaAttacker, DeltaDefender };

inline const char* to_string(SweepParam p) {
    switch (p) {
        case SweepParam::BetaAttacker: return "beta_attacker";
        case SweepParam::BetaDefender: return "beta_defender";
        case SweepParam::DeltaAttacker: return "delta_attacker";
        default: return "delta_defender";
    }
}

inline SweepParam sweep_param_from_string(const std::string& s) {
    if (s == "beta_attacker") return SweepParam::BetaAttacker;
    if (s == "beta_defender") return SweepParam::BetaDefender;
    if (s == "delta_attacker") return SweepParam::DeltaAttacker;
    if (s == "delta_defender") return SweepParam::DeltaDefender;
    throw ValidationError("unknown sweep parameter \"" + s + "\"");
}

struct SweepAxis {
    SweepParam param = SweepParam::BetaAttacker;
    double min = 0, max = 0;
    int steps = 0;

    double at(int i) const { return min + (max - min) * i / (steps - 1); }
};

struct SweepSpec {
    SweepAxis x, y;
};

inline void validate(const SweepSpec& s) {
    for (const SweepAxis* a : {&s.x, &s.y}) {
        if (a->steps < 2) throw ValidationError("sweep axis needs at least 2 steps");
        if (!(a->min < a->max)) throw ValidationError("sweep axis needs min < max");
    }
    if (s.x.param == s.y.param)
        throw ValidationError("sweep axes must vary different parameters");
}

struct GridPoint {
    double x = 0, y = 0;
    CombinedStrategy label = CombinedStrategy::CS1;
    int m_attack = 0, m_defense = 0;
};

namespace detail {

// Applies one axis value to the stage input. Duration targets are realized
// through the ledger: the pre-game consumption that leaves exactly the
// requested single-edge action length affordable.
inline void apply_axis(StageInput& in, SweepParam param, double value) {
    switch (param) {
        case SweepParam::BetaAttacker: in.attacker.beta = value; break;
        case SweepParam::BetaDefender: in.defender.beta = value; break;
        case SweepParam::DeltaAttacker: {
            double start = in.start_time + in.attacker.gamma;
            in.spent_attacker = in.attacker.kappa + in.attacker.rho * start -
                                value * (in.attacker.beta - in.attacker.rho);
            break;
        }
        case SweepParam::DeltaDefender: {
            double start = in.start_time + in.attacker.gamma + in.defender.gamma;
            in.spent_defender = in.defender.kappa + in.defender.rho * start -
                                value * (in.defender.beta - in.defender.rho);
            break;
        }
    }
}

inline bool is_duration_axis(SweepParam p) {
    return p == SweepParam::DeltaAttacker || p == SweepParam::DeltaDefender;
}

inline GridPoint solve_point(const ConnectivityTable& table, const RunConfig& base,
                             const SweepSpec& spec, int ix, int iy) {
    StageInput in{&table, 0.0, 0.0, 0.0, base.attacker, base.defender};
    // cost axes first so duration targets see the final rates
    if (is_duration_axis(spec.x.param)) {
        apply_axis(in, spec.y.param, spec.y.at(iy));
        apply_axis(in, spec.x.param, spec.x.at(ix));
    } else {
        apply_axis(in, spec.x.param, spec.x.at(ix));
        apply_axis(in, spec.y.param, spec.y.at(iy));
    }
    validate(in.attacker, "attacker");
    validate(in.defender, "defender");
    if (in.spent_attacker < 0 || in.spent_defender < 0)
        throw ValidationError("duration target exceeds the available budget at (" +
                              format_double(spec.x.at(ix)) + ", " +
                              format_double(spec.y.at(iy)) + ")");
    StageOutcome o = solve_stage(in);
    return {spec.x.at(ix), spec.y.at(iy), o.label, o.attack.m, o.defense.m};
}

} // namespace detail

// Grid points in row-major order: the y axis varies in the outer loop.
// Rows are solved concurrently; ordering stays deterministic because every
// point writes only its own slot.
inline std::vector<GridPoint> run_sweep(const ConnectivityTable& table,
                                        const RunConfig& base, const SweepSpec& spec) {
    validate(spec);
    std::vector<GridPoint> grid(static_cast<std::size_t>(spec.x.steps) * spec.y.steps);
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::future<void>> futs;
    for (unsigned w = 0; w < workers; ++w) {
        futs.push_back(std::async(std::launch::async, [&, w] {
            for (int iy = static_cast<int>(w); iy < spec.y.steps;
                 iy += static_cast<int>(workers))
                for (int ix = 0; ix < spec.x.steps; ++ix)
                    grid[static_cast<std::size_t>(iy) * spec.x.steps + ix] =
                        detail::solve_point(table, base, spec, ix, iy);
        }));
    }
    for (auto& f : futs) f.get();
    return grid;
}

inline void write_sweep_csv(const SweepSpec& spec, const std::vector<GridPoint>& grid,
                            std::ostream& os) {
    os << to_string(spec.x.param) << ',' << to_string(spec.y.param)
       << ",label,m_attack,m_defense\n";
    for (const GridPoint& p : grid)
        os << format_double(p.x) << ',' << format_double(p.y) << ','
           << to_string(p.label) << ',' << p.m_attack << ',' << p.m_defense << '\n';
}

inline SweepSpec sweep_spec_from_json(const json& j) {
    if (!j.contains("x") || !j.contains("y"))
        throw ValidationError("sweep needs \"x\" and \"y\" axes");
    auto axis = [](const json& a) {
        for (const char* key : {"param", "min", "max", "steps"})
            if (!a.contains(key))
                throw ValidationError("sweep axis missing \"" + std::string(key) + "\"");
        return SweepAxis{sweep_param_from_string(a.at("param").get<std::string>()),
                         a.at("min").get<double>(), a.at("max").get<double>(),
                         a.at("steps").get<int>()};
    };
    SweepSpec s{axis(j.at("x")), axis(j.at("y"))};
    validate(s);
    return s;
}

} // namespace resgame
