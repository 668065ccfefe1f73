#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "delib/rng.hpp"

namespace delib {

// Comparison tolerance for analytic checks on distances.
inline constexpr double kDistTol = 1e-9;

struct WeightedEdge {
    int a = 0;
    int b = 0;
    double w = 1.0;
};

// Explicit finite metric space: points 0..n-1 with a symmetric distance
// table. Immutable after construction; all operations on it are pure.
class FiniteMetric {
public:
    // Full validation: square table, zero diagonal, symmetry, positivity
    // off the diagonal, and the triangle inequality (tolerance 1e-9).
    static FiniteMetric from_table(std::vector<std::vector<double>> table);

    // All-pairs shortest paths of a connected weighted graph. Triangle
    // inequality holds by construction and is not re-checked.
    static FiniteMetric from_weighted_graph(int n, const std::vector<WeightedEdge>& edges);

    int size() const { return n_; }

    double dist(int i, int j) const { return d_[static_cast<std::size_t>(i) * n_ + j]; }

    // Row of distances from one point; handy for hot scans.
    const double* row(int i) const { return d_.data() + static_cast<std::size_t>(i) * n_; }

    void require_point(int i) const;

private:
    FiniteMetric(int n, std::vector<double> d) : n_(n), d_(std::move(d)) {}

    int n_ = 0;
    std::vector<double> d_; // row-major n*n
};

// Multiset of bliss points with positive integer weights. Entries are
// aggregated by point and kept sorted, so iteration order is stable.
class AgentProfile {
public:
    explicit AgentProfile(const std::vector<std::pair<int, long long>>& bliss);

    // Distinct bliss points with aggregated weights, sorted by point.
    const std::vector<std::pair<int, long long>>& entries() const { return entries_; }
    long long total_weight() const { return total_; }

    // Weight-proportional draw of a bliss point.
    int sample(Rng& rng) const;

    bool is_unanimous() const { return entries_.size() == 1; }

    void require_valid_for(int n_points) const;

private:
    std::vector<std::pair<int, long long>> entries_;
    std::vector<long long> cumulative_;
    long long total_ = 0;
};

// Distribution over points. Probabilities are validated to be nonnegative
// and to sum to 1 within 1e-12.
class OutcomeDistribution {
public:
    OutcomeDistribution(std::vector<int> support, std::vector<double> prob);

    static OutcomeDistribution point_mass(int p) { return OutcomeDistribution({p}, {1.0}); }

    const std::vector<int>& support() const { return support_; }
    const std::vector<double>& prob() const { return prob_; }

private:
    std::vector<int> support_;
    std::vector<double> prob_;
};

// Sum over agents of weight * d(bliss, a).
double social_cost(const FiniteMetric& space, const AgentProfile& profile, int a);

// argmin of social_cost; ties broken by lowest point index.
int generalized_median(const FiniteMetric& space, const AgentProfile& profile);

// E[SC(a)] and E[SC(a)^2] under a distribution over points.
double expected_social_cost(const FiniteMetric& space, const AgentProfile& profile,
                            const OutcomeDistribution& dist);
double expected_squared_social_cost(const FiniteMetric& space, const AgentProfile& profile,
                                    const OutcomeDistribution& dist);

// E[SC]/SC(a*). When SC(a*) = 0: 1.0 if all mass sits on zero-cost points,
// +infinity otherwise.
double distortion(const FiniteMetric& space, const AgentProfile& profile,
                  const OutcomeDistribution& dist);

// E[SC^2]/SC(a*)^2 with the same zero-optimum handling.
double squared_distortion(const FiniteMetric& space, const AgentProfile& profile,
                          const OutcomeDistribution& dist);

// A point z with d(z, p_u) <= d(a, p_u) for every bliss point, strict for
// at least one; lowest such index, or nullopt when a is efficient.
std::optional<int> is_pareto_dominated(const FiniteMetric& space, const AgentProfile& profile,
                                       int a);

} // namespace delib
