#include "delib/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>

namespace delib {

namespace {

std::size_t sq(int n) { return static_cast<std::size_t>(n) * static_cast<std::size_t>(n); }

} // namespace

FiniteMetric FiniteMetric::from_table(std::vector<std::vector<double>> table) {
    const int n = static_cast<int>(table.size());
    if (n < 1) throw std::invalid_argument("metric: empty distance table");
    std::vector<double> d(sq(n), 0.0);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(table[i].size()) != n)
            throw std::invalid_argument("metric: distance table is not square");
        for (int j = 0; j < n; ++j) d[static_cast<std::size_t>(i) * n + j] = table[i][j];
    }
    for (int i = 0; i < n; ++i) {
        if (std::abs(d[static_cast<std::size_t>(i) * n + i]) > kDistTol)
            throw std::invalid_argument("metric: nonzero diagonal at point " + std::to_string(i));
        d[static_cast<std::size_t>(i) * n + i] = 0.0;
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double dij = d[static_cast<std::size_t>(i) * n + j];
            const double dji = d[static_cast<std::size_t>(j) * n + i];
            if (std::abs(dij - dji) > kDistTol)
                throw std::invalid_argument("metric: asymmetric distances");
            if (!(dij > 0.0) || !std::isfinite(dij))
                throw std::invalid_argument("metric: nonpositive off-diagonal distance");
            const double s = 0.5 * (dij + dji);
            d[static_cast<std::size_t>(i) * n + j] = s;
            d[static_cast<std::size_t>(j) * n + i] = s;
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (d[static_cast<std::size_t>(i) * n + k] >
                    d[static_cast<std::size_t>(i) * n + j] + d[static_cast<std::size_t>(j) * n + k] + kDistTol)
                    throw std::invalid_argument("metric: triangle inequality violated");
    return FiniteMetric(n, std::move(d));
}

FiniteMetric FiniteMetric::from_weighted_graph(int n, const std::vector<WeightedEdge>& edges) {
    if (n < 1) throw std::invalid_argument("metric: graph needs at least one point");
    std::vector<std::vector<std::pair<int, double>>> adj(n);
    for (const auto& e : edges) {
        if (e.a < 0 || e.a >= n || e.b < 0 || e.b >= n)
            throw std::invalid_argument("metric: edge endpoint out of range");
        if (e.a == e.b) throw std::invalid_argument("metric: self-loop edge");
        if (!(e.w > 0.0) || !std::isfinite(e.w))
            throw std::invalid_argument("metric: edge weight must be positive");
        adj[e.a].emplace_back(e.b, e.w);
        adj[e.b].emplace_back(e.a, e.w);
    }

    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> d(sq(n), inf);
    using Item = std::pair<double, int>;
    std::vector<double> dist(n);
    for (int s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), inf);
        dist[s] = 0.0;
        std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
        pq.emplace(0.0, s);
        while (!pq.empty()) {
            auto [du, u] = pq.top();
            pq.pop();
            if (du > dist[u]) continue;
            for (auto [v, w] : adj[u]) {
                if (du + w < dist[v]) {
                    dist[v] = du + w;
                    pq.emplace(dist[v], v);
                }
            }
        }
        for (int t = 0; t < n; ++t) {
            if (!std::isfinite(dist[t]))
                throw std::invalid_argument("metric: graph is disconnected");
            d[static_cast<std::size_t>(s) * n + t] = dist[t];
        }
    }
    // Per-source relaxations can differ in the last bit; make the table
    // exactly symmetric by keeping the shorter of the two path sums.
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double m = std::min(d[static_cast<std::size_t>(i) * n + j],
                                      d[static_cast<std::size_t>(j) * n + i]);
            d[static_cast<std::size_t>(i) * n + j] = m;
            d[static_cast<std::size_t>(j) * n + i] = m;
        }
    }
    return FiniteMetric(n, std::move(d));
}

void FiniteMetric::require_point(int i) const {
    if (i < 0 || i >= n_)
        throw std::invalid_argument("metric: point index " + std::to_string(i) + " out of range");
}

AgentProfile::AgentProfile(const std::vector<std::pair<int, long long>>& bliss) {
    if (bliss.empty()) throw std::invalid_argument("profile: no agents");
    std::vector<std::pair<int, long long>> v = bliss;
    std::sort(v.begin(), v.end());
    for (const auto& [p, w] : v) {
        if (p < 0) throw std::invalid_argument("profile: negative point index");
        if (w <= 0) throw std::invalid_argument("profile: weights must be positive");
        if (!entries_.empty() && entries_.back().first == p) {
            entries_.back().second += w;
        } else {
            entries_.emplace_back(p, w);
        }
    }
    cumulative_.reserve(entries_.size());
    for (const auto& [p, w] : entries_) {
        total_ += w;
        cumulative_.push_back(total_);
    }
}

int AgentProfile::sample(Rng& rng) const {
    const auto r = static_cast<long long>(rng.bounded(static_cast<std::uint64_t>(total_)));
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), r);
    return entries_[static_cast<std::size_t>(it - cumulative_.begin())].first;
}

void AgentProfile::require_valid_for(int n_points) const {
    for (const auto& [p, w] : entries_)
        if (p >= n_points)
            throw std::invalid_argument("profile: bliss point " + std::to_string(p) +
                                        " not in the space");
}

OutcomeDistribution::OutcomeDistribution(std::vector<int> support, std::vector<double> prob)
    : support_(std::move(support)), prob_(std::move(prob)) {
    if (support_.size() != prob_.size() || support_.empty())
        throw std::invalid_argument("distribution: support/probability size mismatch");
    double sum = 0.0;
    for (double p : prob_) {
        if (p < -1e-15 || !std::isfinite(p))
            throw std::invalid_argument("distribution: negative probability");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("distribution: probabilities sum to " + std::to_string(sum));
}

double social_cost(const FiniteMetric& space, const AgentProfile& profile, int a) {
    space.require_point(a);
    profile.require_valid_for(space.size());
    double sc = 0.0;
    for (const auto& [p, w] : profile.entries()) sc += static_cast<double>(w) * space.dist(p, a);
    return sc;
}

int generalized_median(const FiniteMetric& space, const AgentProfile& profile) {
    profile.require_valid_for(space.size());
    int best = 0;
    double best_cost = std::numeric_limits<double>::infinity();
    for (int a = 0; a < space.size(); ++a) {
        double sc = 0.0;
        const double* row = space.row(a);
        for (const auto& [p, w] : profile.entries()) sc += static_cast<double>(w) * row[p];
        if (sc < best_cost) { // strict: exact ties keep the lowest index
            best_cost = sc;
            best = a;
        }
    }
    return best;
}

double expected_social_cost(const FiniteMetric& space, const AgentProfile& profile,
                            const OutcomeDistribution& dist) {
    double e = 0.0;
    for (std::size_t i = 0; i < dist.support().size(); ++i)
        e += dist.prob()[i] * social_cost(space, profile, dist.support()[i]);
    return e;
}

double expected_squared_social_cost(const FiniteMetric& space, const AgentProfile& profile,
                                    const OutcomeDistribution& dist) {
    double e = 0.0;
    for (std::size_t i = 0; i < dist.support().size(); ++i) {
        const double sc = social_cost(space, profile, dist.support()[i]);
        e += dist.prob()[i] * sc * sc;
    }
    return e;
}

namespace {

// Shared zero-optimum rule: a distribution entirely supported on zero-cost
// points is as good as the optimum; anything else is infinitely worse.
double ratio_with_zero_opt(const FiniteMetric& space, const AgentProfile& profile,
                           const OutcomeDistribution& dist, double numerator, double opt_pow) {
    if (opt_pow > 0.0) return numerator / opt_pow;
    for (std::size_t i = 0; i < dist.support().size(); ++i)
        if (dist.prob()[i] > 1e-12 && social_cost(space, profile, dist.support()[i]) > 0.0)
            return std::numeric_limits<double>::infinity();
    return 1.0;
}

} // namespace

double distortion(const FiniteMetric& space, const AgentProfile& profile,
                  const OutcomeDistribution& dist) {
    const double opt = social_cost(space, profile, generalized_median(space, profile));
    return ratio_with_zero_opt(space, profile, dist, expected_social_cost(space, profile, dist),
                               opt);
}

double squared_distortion(const FiniteMetric& space, const AgentProfile& profile,
                          const OutcomeDistribution& dist) {
    const double opt = social_cost(space, profile, generalized_median(space, profile));
    return ratio_with_zero_opt(space, profile, dist,
                               expected_squared_social_cost(space, profile, dist), opt * opt);
}

std::optional<int> is_pareto_dominated(const FiniteMetric& space, const AgentProfile& profile,
                                       int a) {
    space.require_point(a);
    profile.require_valid_for(space.size());
    const auto& entries = profile.entries();
    for (int z = 0; z < space.size(); ++z) {
        if (z == a) continue;
        bool weakly_better = true;
        bool strictly = false;
        for (const auto& [p, w] : entries) {
            const double dz = space.dist(z, p);
            const double da = space.dist(a, p);
            if (dz > da) {
                weakly_better = false;
                break;
            }
            if (dz < da) strictly = true;
        }
        if (weakly_better && strictly) return z;
    }
    return std::nullopt;
}

} // namespace delib
