// consensus.hpp -- first-order consensus over the piecewise-constant
// topology a timeline produces: exact propagation through each segment via
// the Laplacian eigendecomposition, disagreement tracking and the
// energy-based upper bound on the consensus time.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <optional>
#include <vector>

#include "timeline.hpp"

namespace resgame {

inline Eigen::MatrixXd laplacian(int n, const std::vector<Edge>& edges) {
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
    for (const Edge& e : edges) {
        L(e.first, e.first) += 1;
        L(e.second, e.second) += 1;
        L(e.first, e.second) -= 1;
        L(e.second, e.first) -= 1;
    }
    return L;
}

inline Eigen::MatrixXd laplacian(const Graph& g) { return laplacian(g.n, g.edges); }

// Spread between the largest and smallest agent state.
inline double disagreement(const Eigen::VectorXd& x) {
    return x.maxCoeff() - x.minCoeff();
}

struct ConsensusConfig {
    Eigen::VectorXd x0;
    double epsilon = 0.5;
    double sample_step = 0.01;
};

// Agents start evenly spread over [0, 3] unless a config pins x0.
inline Eigen::VectorXd default_x0(int n) {
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i)
        x(i) = n == 1 ? 0.0 : 3.0 * i / (n - 1);
    return x;
}

struct TrajectorySample {
    double t = 0;
    Eigen::VectorXd x;
    double v = 0;
};

struct ConsensusTrajectory {
    std::vector<TrajectorySample> samples;           // on the fixed step grid
    std::vector<std::pair<double, double>> boundaries; // (t, V) at segment edges
    std::optional<double> t_star;                    // first time V <= epsilon
};

namespace detail {

// Propagator for one constant topology: x(t0 + dt) = U exp(-D dt) U^T x(t0).
struct SegmentFlow {
    Eigen::MatrixXd u;
    Eigen::VectorXd evals;

    explicit SegmentFlow(const Eigen::MatrixXd& lap) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(lap);
        u = es.eigenvectors();
        evals = es.eigenvalues();
    }

    Eigen::VectorXd advance(const Eigen::VectorXd& x, double dt) const {
        Eigen::VectorXd w = u.transpose() * x;
        for (int i = 0; i < w.size(); ++i) w(i) *= std::exp(-evals(i) * dt);
        return u * w;
    }
};

struct FlowCache {
    int n;
    std::map<std::vector<Edge>, SegmentFlow> flows;

    explicit FlowCache(int vertex_count) : n(vertex_count) {}

    const SegmentFlow& get(const std::vector<Edge>& edges) {
        auto it = flows.find(edges);
        if (it == flows.end())
            it = flows.emplace(edges, SegmentFlow(laplacian(n, edges))).first;
        return it->second;
    }
};

} // namespace detail

// Integrates the consensus dynamics across the given segments. Samples are
// emitted on the global grid t = j * sample_step. The crossing time of the
// disagreement threshold is located by bisection inside the first segment
// whose endpoint value dips below epsilon (V never increases, but inside
// disconnected stretches it is flat, hence the endpoint comparison).
inline ConsensusTrajectory integrate(const std::vector<Segment>& segments, int n,
                                     const ConsensusConfig& cfg,
                                     bool stop_at_consensus = false) {
    if (cfg.x0.size() != n)
        throw DimensionMismatch("x0 has " + std::to_string(cfg.x0.size()) +
                                " entries for " + std::to_string(n) + " vertices");
    if (!(cfg.sample_step > 0)) throw ValidationError("sample_step must be positive");

    ConsensusTrajectory out;
    detail::FlowCache cache(n);
    Eigen::VectorXd x = cfg.x0;
    const double tol = 1e-8;

    if (disagreement(x) <= cfg.epsilon) out.t_star = 0.0;

    long grid = 0; // next sample index
    for (const Segment& seg : segments) {
        const auto& flow = cache.get(seg.active_edges);
        out.boundaries.emplace_back(seg.t_lo, disagreement(x));
        while (grid * cfg.sample_step < seg.t_hi - 1e-15) {
            double ts = grid * cfg.sample_step;
            if (ts >= seg.t_lo) {
                Eigen::VectorXd xs = flow.advance(x, ts - seg.t_lo);
                out.samples.push_back({ts, xs, disagreement(xs)});
            }
            ++grid;
        }
        Eigen::VectorXd x_end = flow.advance(x, seg.t_hi - seg.t_lo);
        if (!out.t_star && disagreement(x_end) <= cfg.epsilon) {
            double lo = 0, hi = seg.t_hi - seg.t_lo;
            while (hi - lo > tol) {
                double mid = 0.5 * (lo + hi);
                if (disagreement(flow.advance(x, mid)) <= cfg.epsilon) hi = mid;
                else lo = mid;
            }
            out.t_star = seg.t_lo + hi;
        }
        x = std::move(x_end);
        if (stop_at_consensus && out.t_star) {
            out.boundaries.emplace_back(seg.t_hi, disagreement(x));
            return out;
        }
    }
    if (!segments.empty()) {
        out.boundaries.emplace_back(segments.back().t_hi, disagreement(x));
        double t_end = segments.back().t_hi;
        if (grid * cfg.sample_step <= t_end + 1e-15) {
            out.samples.push_back({t_end, x, disagreement(x)});
        }
    }
    return out;
}

// Worst-case consensus time implied by the attacker's energy budget: every
// game carries an attack-free dwell that contracts disagreement by at least
// (1 - p) with p the best column minimum of exp(-gamma_A L).
inline double consensus_time_bound(const Graph& g, const PlayerParams& attacker,
                                   const PlayerParams& defender,
                                   const Eigen::VectorXd& x0, double epsilon) {
    if (connected_components(g) != 1)
        throw DisconnectedInput("consensus bound needs a connected base graph");
    if (x0.size() != g.n)
        throw DimensionMismatch("x0 size does not match the vertex count");
    if (!(epsilon > 0)) throw ValidationError("epsilon must be positive");
    const double v0 = disagreement(x0);
    if (v0 <= epsilon)
        throw AlreadyConsensus("initial disagreement already within epsilon");
    validate(attacker, "attacker");
    validate(defender, "defender");

    detail::SegmentFlow flow(laplacian(g));
    Eigen::VectorXd decay = (-attacker.gamma * flow.evals.array()).exp();
    Eigen::MatrixXd p = flow.u * decay.asDiagonal() * flow.u.transpose();
    double p_floor = 0;
    for (int j = 0; j < g.n; ++j)
        p_floor = std::max(p_floor, p.col(j).minCoeff());

    const double games = std::ceil((std::log(epsilon) - std::log(v0)) /
                                   std::log(1.0 - p_floor));
    const double dwell = attacker.gamma + defender.gamma;
    return (attacker.beta * dwell * games + attacker.kappa) /
           (attacker.beta - attacker.rho);
}

} // namespace resgame
