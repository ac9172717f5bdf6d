// resgame_cli.cpp -- command-line front end: connectivity tables, single
// stage games, full timeline + consensus runs and parameter sweeps.
#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>

#include <resgame/io.hpp>
#include <resgame/sweep.hpp>

namespace fs = std::filesystem;
using namespace resgame;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitRuntime = 3;

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) std::cout << text;
    else write_text_file(out_path, text);
}

int cmd_table(const std::string& graph_path, const std::string& out_path) {
    Graph g = load_graph(graph_path);
    ConnectivityTable t = build_table(g);
    std::ostringstream os;
    write_table_csv(t, os);
    emit(os.str(), out_path);
    return 0;
}

int cmd_solve(const std::string& config_path, const std::string& out_path) {
    RunConfig cfg = load_run_config(config_path);
    ConnectivityTable t = build_table(cfg.graph);
    StageInput in{&t, 0.0, 0.0, 0.0, cfg.attacker, cfg.defender};
    StageOutcome o = solve_stage(in);
    emit(outcome_to_json(o).dump(2) + "\n", out_path);
    return 0;
}

int cmd_run(const std::string& config_path, const std::string& out_dir) {
    RunConfig cfg = load_run_config(config_path);
    ConnectivityTable table = build_table(cfg.graph);
    Timeline tl = play(table, cfg.attacker, cfg.defender, cfg.horizon);

    ConsensusConfig ccfg{cfg.x0, cfg.epsilon, cfg.sample_step};
    ConsensusTrajectory tr = integrate(flatten(tl), cfg.graph.n, ccfg);

    std::vector<Segment> intact{{0.0, cfg.horizon, cfg.graph.edges, table.intact_lambda()}};
    ConsensusTrajectory free_tr = integrate(intact, cfg.graph.n, ccfg, true);

    double bound = consensus_time_bound(cfg.graph, cfg.attacker, cfg.defender,
                                        cfg.x0, cfg.epsilon);

    fs::create_directories(out_dir);
    write_text_file(fs::path(out_dir) / "timeline.json",
                    timeline_to_json(tl).dump(2) + "\n");
    std::ostringstream tl_csv;
    write_timeline_csv(tl, cfg.attacker, cfg.defender, tl_csv);
    write_text_file(fs::path(out_dir) / "timeline.csv", tl_csv.str());
    std::ostringstream traj_csv;
    write_trajectory_csv(tr, cfg.graph.n, traj_csv);
    write_text_file(fs::path(out_dir) / "trajectory.csv", traj_csv.str());
    write_text_file(fs::path(out_dir) / "summary.json",
                    summary_to_json(tl, tr, free_tr.t_star, bound, cfg).dump(2) + "\n");
    return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& out_path, int steps) {
    json j = detail::parse_json_file(config_path);
    if (!j.contains("sweep")) throw ValidationError("config missing \"sweep\"");
    json run_part = j;
    run_part.erase("sweep");
    if (!run_part.contains("horizon")) run_part["horizon"] = 1.0; // unused by sweeps
    RunConfig base = run_config_from_json(run_part,
                                          fs::path(config_path).parent_path().string());
    SweepSpec spec = sweep_spec_from_json(j.at("sweep"));
    if (steps > 0) {
        if (steps < 2) throw ValidationError("--steps must be at least 2");
        spec.x.steps = steps;
        spec.y.steps = steps;
    }
    ConnectivityTable table = build_table(base.graph);
    auto grid = run_sweep(table, base, spec);
    std::ostringstream os;
    write_sweep_csv(spec, grid, os);
    emit(os.str(), out_path);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"attacker/defender connectivity games and consensus runs"};
    app.require_subcommand(1);

    std::string graph_path, config_path, out_path, out_dir;
    int steps = 0;

    CLI::App* table = app.add_subcommand("table", "connectivity table of a graph as CSV");
    table->add_option("--graph", graph_path, "graph JSON file")->required();
    table->add_option("--out", out_path, "output file (default stdout)");

    CLI::App* solve = app.add_subcommand("solve", "equilibrium of a single stage game");
    solve->add_option("--config", config_path, "run config JSON")->required();
    solve->add_option("--out", out_path, "output file (default stdout)");

    CLI::App* run = app.add_subcommand("run", "timeline plus consensus simulation");
    run->add_option("--config", config_path, "run config JSON")->required();
    run->add_option("--out-dir", out_dir, "output directory")->required();

    CLI::App* sweep = app.add_subcommand("sweep", "two-axis equilibrium sweep as CSV");
    sweep->add_option("--config", config_path, "sweep config JSON")->required();
    sweep->add_option("--out", out_path, "output file (default stdout)");
    sweep->add_option("--steps", steps, "override both axes' step counts");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        if (table->parsed()) return cmd_table(graph_path, out_path);
        if (solve->parsed()) return cmd_solve(config_path, out_path);
        if (run->parsed()) return cmd_run(config_path, out_dir);
        return cmd_sweep(config_path, out_path, steps);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}
