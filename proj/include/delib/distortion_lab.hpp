#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "delib/deliberation.hpp"
#include "delib/median_graph.hpp"
#include "delib/metric.hpp"

namespace delib {

struct MedianInstance {
    MedianGraph graph;
    AgentProfile profile;
};

struct MetricInstance {
    FiniteMetric space;
    AgentProfile profile;
};

// Unit star with one unit-weight agent per leaf; mechanisms restricted to
// bliss points pay social cost 2(k-1) against the optimal k.
MedianInstance kstar_instance(int k);

// Lower-bound ratio curves (concentration slack taken in the -> 1 limit).
double oligarch_ratio(double p);      // 4p^3 - 8p^2 + 3p + 1, one-shot triple medians
double shortest_path_ratio(double p); // -2p^2 + p + 1, pairwise-efficient mechanisms

// Golden-section maximizer for the ratio curves.
struct CurveMax {
    double arg = 0.0;
    double value = 0.0;
};
CurveMax maximize_on_interval(const std::function<double(double)>& fn, double lo, double hi,
                              double tol = 1e-10);

// Random hypercube profile: each of n agents sets each of D coordinates to
// 1 independently with probability p. Kept as bit rows so D can exceed any
// materializable graph; small D can still be lifted onto hypercube(D).
struct HypercubeProfile {
    int dims = 0;
    std::vector<std::vector<std::uint8_t>> bliss; // n rows of D bits

    int agents() const { return static_cast<int>(bliss.size()); }
    long long ones_total() const; // SC of the all-zeros point, unit weights

    // Mean fraction of ones per dimension over all ordered agent triples'
    // coordinate-wise majorities.
    double mean_triple_median_ones() const;

    // Bliss rows as vertices of hypercube(dims); dims must be small.
    AgentProfile lift() const;
};

HypercubeProfile hypercube_lb_instance(int dims, double p, int n, std::uint64_t seed);

// Tight family for the factor-3 bound: unit star on n leaves plus one
// shortcut vertex per leaf pair at distance 1 - eps from both leaves.
struct StarShortcutInstance {
    FiniteMetric space;
    AgentProfile profile;
    int n;
    double eps;

    int center() const { return 0; }
    int leaf(int i) const { return 1 + i; }        // i in [0, n)
    int shortcut(int i, int j) const;              // i < j
};

StarShortcutInstance metric_star_shortcut_instance(int n, double eps);

// Random instance for the general-metric sweeps: alternates a random
// weighted-graph metric and a uniform [1, 2) distance table.
MetricInstance random_metric_instance(int max_points, Rng& rng);

// Monte Carlo distortion and squared-distortion of the final outcome.
struct SweepReport {
    double opt_sc = 0.0;
    double distortion = 0.0;
    double distortion_se = 0.0;
    double squared_distortion = 0.0;
    double squared_distortion_se = 0.0;
    int replicas = 0;
    std::int64_t rounds = 0;
    std::uint64_t seed = 0;
    bool distortion_within_bound = false;         // <= 3 + 3 SE
    bool squared_distortion_within_bound = false; // <= 41 + 3 SE
};

SweepReport general_metric_distortion_sweep(const FiniteMetric& space,
                                            const AgentProfile& profile, std::int64_t rounds,
                                            int replicas, std::uint64_t seed, int threads = 1);

// Agents at the vertices of the standard simplex with l1 distances.
struct SimplexInstance {
    std::vector<double> masses; // nonnegative, sum 1

    explicit SimplexInstance(std::vector<double> p);
    int dim() const { return static_cast<int>(masses.size()); }
};

// Closed-form stationary coordinate expectations
// s_i = (p_i / (1 - p_i)) / sum_j (p_j / (1 - p_j)); unanimity (some
// p_i = 1) short-circuits to the indicator vector.
std::vector<double> simplex_stationary(const SimplexInstance& inst);

// (1 - sum_i p_i s_i) / (1 - max_i p_i); 1 under unanimity.
double simplex_distortion(const SimplexInstance& inst);

// Distortion bound curve 1 / (1 - alpha + alpha^2); peaks at 4/3.
double simplex_distortion_bound(double alpha);

struct SimplexSimReport {
    std::vector<double> mean_coords;
    std::vector<double> coord_se;
    double mean_cost = 0.0;
    double cost_se = 0.0;
    double mean_sq_cost = 0.0;
    double sq_cost_se = 0.0;
    int replicas = 0;
};

// Runs the deliberation chain with the simplex bargaining rule and
// weight-proportional vertex draws; estimates coordinate means.
SimplexSimReport simplex_simulate(const SimplexInstance& inst, std::int64_t rounds, int replicas,
                                  std::uint64_t seed, int threads = 1);

// (1 - eps) of the agent weight on one vertex, eps spread one unit at a
// time over the remaining vertices. eps must be expressible with integer
// weights (denominator at most 10^6).
AgentProfile epsilon_unanimous_instance(const MedianGraph& g, double eps);

} // namespace delib
