// io.hpp -- JSON config and graph loading, plus the CSV/JSON artifacts a
// run emits. All floating-point output uses shortest round-trip formatting
// so identical inputs produce byte-identical files.
#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "consensus.hpp"

namespace resgame {

using json = nlohmann::json;

inline std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

namespace detail {

inline std::string line_and_column(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') { ++line; col = 1; }
        else ++col;
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

inline json parse_json_text(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(origin + ": " + e.what() + " (at " +
                              line_and_column(text, e.byte) + ")");
    }
}

inline json parse_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str(), path);
}

} // namespace detail

inline Graph graph_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("edges"))
        throw ValidationError("graph needs fields \"n\" and \"edges\"");
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2)
            throw ValidationError("each edge must be a two-element array");
        edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
    }
    Graph g = Graph::make(j.at("n").get<int>(), std::move(edges));
    if (connected_components(g) != 1)
        throw ValidationError("base topology must be connected");
    return g;
}

inline Graph load_graph(const std::string& path) {
    return graph_from_json(detail::parse_json_file(path));
}

inline json graph_to_json(const Graph& g) {
    json edges = json::array();
    for (const Edge& e : g.edges) edges.push_back({e.first, e.second});
    return json{{"n", g.n}, {"edges", edges}};
}

struct RunConfig {
    Graph graph;
    PlayerParams attacker{};
    PlayerParams defender{};
    Eigen::VectorXd x0;
    double epsilon = 0.5;
    double sample_step = 0.01;
    double horizon = 0;
    unsigned seed = 0; // reserved for randomized test corpora
};

namespace detail {

inline PlayerParams player_from_json(const json& j, const std::string& who) {
    for (const char* key : {"beta", "kappa", "rho", "gamma"})
        if (!j.contains(key))
            throw ValidationError(who + " config missing \"" + key + "\"");
    PlayerParams p{j.at("beta").get<double>(), j.at("kappa").get<double>(),
                   j.at("rho").get<double>(), j.at("gamma").get<double>()};
    validate(p, who);
    return p;
}

} // namespace detail

inline RunConfig run_config_from_json(const json& j, const std::string& base_dir = ".") {
    for (const char* key : {"graph", "attacker", "defender", "horizon"})
        if (!j.contains(key))
            throw ValidationError("config missing top-level \"" + std::string(key) + "\"");
    RunConfig cfg;
    if (j.at("graph").is_string()) {
        std::filesystem::path p = j.at("graph").get<std::string>();
        if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
        cfg.graph = load_graph(p.string());
    } else {
        cfg.graph = graph_from_json(j.at("graph"));
    }
    cfg.attacker = detail::player_from_json(j.at("attacker"), "attacker");
    cfg.defender = detail::player_from_json(j.at("defender"), "defender");
    cfg.horizon = j.at("horizon").get<double>();
    if (!(cfg.horizon > 0)) throw ValidationError("horizon must be positive");
    cfg.x0 = default_x0(cfg.graph.n);
    if (j.contains("consensus")) {
        const json& c = j.at("consensus");
        if (c.contains("x0")) {
            auto vals = c.at("x0").get<std::vector<double>>();
            if (static_cast<int>(vals.size()) != cfg.graph.n)
                throw ValidationError("consensus.x0 length must equal the vertex count");
            cfg.x0 = Eigen::Map<Eigen::VectorXd>(vals.data(), vals.size());
        }
        if (c.contains("epsilon")) cfg.epsilon = c.at("epsilon").get<double>();
        if (c.contains("sample_step")) cfg.sample_step = c.at("sample_step").get<double>();
        if (!(cfg.epsilon > 0)) throw ValidationError("epsilon must be positive");
        if (!(cfg.sample_step > 0)) throw ValidationError("sample_step must be positive");
    }
    if (j.contains("seed")) cfg.seed = j.at("seed").get<unsigned>();
    return cfg;
}

inline RunConfig load_run_config(const std::string& path) {
    return run_config_from_json(detail::parse_json_file(path),
                                std::filesystem::path(path).parent_path().string());
}

inline json strategy_to_json(const Strategy& s) {
    json edges = json::array();
    for (const Edge& e : s.edge_set) edges.push_back({e.first, e.second});
    return json{{"m", s.m}, {"delta", s.delta}, {"edges", edges}};
}

inline json outcome_to_json(const StageOutcome& o) {
    const Candidates& c = o.candidates;
    json cand{{"u_a1", c.u_a1},
              {"u_a2a", c.u_a2a}, {"m_a2a", c.m_a2a},
              {"u_a2b", c.u_a2b}, {"m_a2b", c.m_a2b},
              {"u_a3", c.u_a3},   {"m_a3", c.m_a3},
              {"u_d1", c.u_d1},   {"u_d2a", c.u_d2a},
              {"u_d2b", c.u_d2b}, {"u_d3", c.u_d3}};
    if (std::isfinite(c.u_a2a_prime)) {
        cand["u_a2a_prime"] = c.u_a2a_prime;
        cand["m_tilde"] = c.m_tilde;
    } else {
        cand["u_a2a_prime"] = nullptr;
    }
    return json{{"label", to_string(o.label)},
                {"attack", strategy_to_json(o.attack)},
                {"defense", strategy_to_json(o.defense)},
                {"marks", {{"tau_a_lo", o.marks.tau_a_lo},
                           {"tau_a_hi", o.marks.tau_a_hi},
                           {"tau_d_lo", o.marks.tau_d_lo},
                           {"tau_d_hi", o.marks.tau_d_hi},
                           {"t_hi", o.marks.t_hi}}},
                {"u_attacker", o.u_attacker},
                {"u_defender", o.u_defender},
                {"candidates", cand}};
}

inline json timeline_to_json(const Timeline& tl) {
    json records = json::array();
    for (const GameRecord& r : tl.records) {
        json segs = json::array();
        for (const Segment& s : r.segments) {
            json edges = json::array();
            for (const Edge& e : s.active_edges) edges.push_back({e.first, e.second});
            segs.push_back({{"t_lo", s.t_lo}, {"t_hi", s.t_hi},
                            {"lambda_hat", s.lambda_hat}, {"edges", edges}});
        }
        records.push_back({{"k", r.index},
                           {"t_lo", r.t_lo}, {"t_hi", r.t_hi},
                           {"spent_attacker_before", r.spent_attacker_before},
                           {"spent_defender_before", r.spent_defender_before},
                           {"outcome", outcome_to_json(r.outcome)},
                           {"segments", segs}});
    }
    return json{{"vertex_count", tl.vertex_count},
                {"horizon", tl.horizon},
                {"records", records}};
}

// Step data behind the connectivity/energy plots: one row per segment
// boundary carrying the level holding from t onward.
inline void write_timeline_csv(const Timeline& tl, const PlayerParams& attacker,
                               const PlayerParams& defender, std::ostream& os) {
    os << "t,lambda_hat,energy_attacker,energy_defender,label\n";
    for (const GameRecord& r : tl.records) {
        EnergyLedger la{r.spent_attacker_before}, ld{r.spent_defender_before};
        const StageOutcome& o = r.outcome;
        auto spent_at = [&](double t) {
            double sa = la.spent, sd = ld.spent;
            if (o.attack.m > 0 && t > o.marks.tau_a_lo)
                sa += attacker.beta * o.attack.m *
                      (std::min(t, o.marks.tau_a_hi) - o.marks.tau_a_lo);
            if (o.defense.m > 0 && t > o.marks.tau_d_lo)
                sd += defender.beta * o.defense.m *
                      (std::min(t, o.marks.tau_d_hi) - o.marks.tau_d_lo);
            return std::pair{sa, sd};
        };
        for (const Segment& s : r.segments) {
            auto [sa, sd] = spent_at(s.t_lo);
            os << format_double(s.t_lo) << ',' << s.lambda_hat << ','
               << format_double(energy_remaining(attacker, {sa}, s.t_lo)) << ','
               << format_double(energy_remaining(defender, {sd}, s.t_lo)) << ','
               << to_string(o.label) << '\n';
        }
    }
    if (!tl.records.empty()) {
        const GameRecord& r = tl.records.back();
        double t_end = std::min(tl.horizon, r.segments.empty() ? tl.horizon
                                                               : r.segments.back().t_hi);
        const StageOutcome& o = r.outcome;
        double sa = r.spent_attacker_before, sd = r.spent_defender_before;
        if (o.attack.m > 0 && t_end > o.marks.tau_a_lo)
            sa += attacker.beta * o.attack.m *
                  (std::min(t_end, o.marks.tau_a_hi) - o.marks.tau_a_lo);
        if (o.defense.m > 0 && t_end > o.marks.tau_d_lo)
            sd += defender.beta * o.defense.m *
                  (std::min(t_end, o.marks.tau_d_hi) - o.marks.tau_d_lo);
        int lam = r.segments.empty() ? 0 : r.segments.back().lambda_hat;
        os << format_double(t_end) << ',' << lam << ','
           << format_double(energy_remaining(attacker, {sa}, t_end)) << ','
           << format_double(energy_remaining(defender, {sd}, t_end)) << ','
           << to_string(o.label) << '\n';
    }
}

inline void write_trajectory_csv(const ConsensusTrajectory& tr, int n, std::ostream& os) {
    os << 't';
    for (int i = 0; i < n; ++i) os << ",x_" << i;
    os << ",v\n";
    for (const TrajectorySample& s : tr.samples) {
        os << format_double(s.t);
        for (int i = 0; i < n; ++i) os << ',' << format_double(s.x(i));
        os << ',' << format_double(s.v) << '\n';
    }
}

inline json summary_to_json(const Timeline& tl, const ConsensusTrajectory& tr,
                            std::optional<double> t_star_attack_free, double bound,
                            const RunConfig& cfg) {
    json games = json::array();
    double total_a = 0, total_d = 0;
    for (const GameRecord& r : tl.records) {
        const StageOutcome& o = r.outcome;
        total_a += cfg.attacker.beta * o.attack.m * o.attack.delta;
        total_d += cfg.defender.beta * o.defense.m * o.defense.delta;
        games.push_back({{"k", r.index},
                         {"label", to_string(o.label)},
                         {"m_attack", o.attack.m},
                         {"delta_attack", o.attack.delta},
                         {"m_defense", o.defense.m},
                         {"delta_defense", o.defense.delta},
                         {"u_attacker", o.u_attacker},
                         {"u_defender", o.u_defender},
                         {"t_lo", r.t_lo},
                         {"t_hi", r.t_hi}});
    }
    json j{{"games", games},
           {"horizon", tl.horizon},
           {"epsilon", cfg.epsilon},
           {"v0", disagreement(cfg.x0)},
           {"consensus_bound", bound},
           {"total_consumed_attacker", total_a},
           {"total_consumed_defender", total_d}};
    j["t_star"] = tr.t_star ? json(*tr.t_star) : json(nullptr);
    j["t_star_attack_free"] =
        t_star_attack_free ? json(*t_star_attack_free) : json(nullptr);
    j["bound_satisfied"] = tr.t_star.has_value() && *tr.t_star <= bound + 1e-9;
    return j;
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

} // namespace resgame
