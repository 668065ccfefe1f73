#include "delib/deliberation.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <stdexcept>

namespace delib {

namespace {

void require_config(const DeliberationConfig& config) {
    if (config.rounds < 1) throw std::invalid_argument("deliberation: rounds must be >= 1");
}

template <typename BargainFn>
Trajectory run_rounds(int n_points, const AgentProfile& profile, const DeliberationConfig& config,
                      Rng& rng, BargainFn&& bargain) {
    require_config(config);
    profile.require_valid_for(n_points);
    Trajectory traj;
    if (config.initial_point) {
        if (*config.initial_point < 0 || *config.initial_point >= n_points)
            throw std::invalid_argument("deliberation: initial point out of range");
        traj.initial = *config.initial_point;
    } else {
        traj.initial = profile.sample(rng);
    }
    traj.rounds.reserve(static_cast<std::size_t>(config.rounds));
    int a = traj.initial;
    for (std::int64_t t = 0; t < config.rounds; ++t) {
        const int u = profile.sample(rng);
        const int v = profile.sample(rng);
        const int o = bargain(u, v, a);
        traj.rounds.push_back({u, v, a, o});
        a = o;
    }
    return traj;
}

} // namespace

Trajectory run_sequential(const MedianGraph& g, const AgentProfile& profile,
                          const DeliberationConfig& config, Rng& rng) {
    return run_rounds(g.size(), profile, config, rng,
                      [&g](int u, int v, int a) { return g.median(u, v, a); });
}

Trajectory run_sequential(const FiniteMetric& space, const AgentProfile& profile,
                          const DeliberationConfig& config, Rng& rng) {
    return run_rounds(space.size(), profile, config, rng,
                      [&space](int u, int v, int a) { return nash_bargain(space, u, v, a).point; });
}

int random_dictatorship(const AgentProfile& profile, Rng& rng) { return profile.sample(rng); }

OutcomeDistribution rd_distribution(const AgentProfile& profile) {
    std::vector<int> support;
    std::vector<double> prob;
    const double total = static_cast<double>(profile.total_weight());
    for (const auto& [p, w] : profile.entries()) {
        support.push_back(p);
        prob.push_back(static_cast<double>(w) / total);
    }
    return OutcomeDistribution(std::move(support), std::move(prob));
}

int oneshot_triple(const MedianGraph& g, const AgentProfile& profile, Rng& rng) {
    profile.require_valid_for(g.size());
    const int x = profile.sample(rng);
    const int y = profile.sample(rng);
    const int z = profile.sample(rng);
    return g.median(x, y, z);
}

OutcomeDistribution oneshot_triple_distribution(const MedianGraph& g,
                                                const AgentProfile& profile) {
    profile.require_valid_for(g.size());
    const auto& bliss = profile.entries();
    const double total = static_cast<double>(profile.total_weight());
    std::map<int, double> mass;
    for (const auto& [x, wx] : bliss)
        for (const auto& [y, wy] : bliss)
            for (const auto& [z, wz] : bliss)
                mass[g.median(x, y, z)] += static_cast<double>(wx) * static_cast<double>(wy) *
                                           static_cast<double>(wz) / (total * total * total);
    std::vector<int> support;
    std::vector<double> prob;
    for (const auto& [v, p] : mass) {
        support.push_back(v);
        prob.push_back(p);
    }
    return OutcomeDistribution(std::move(support), std::move(prob));
}

int DeliberationChain::state_index(int vertex) const {
    const auto it = std::lower_bound(states.begin(), states.end(), vertex);
    if (it == states.end() || *it != vertex) return -1;
    return static_cast<int>(it - states.begin());
}

DeliberationChain build_chain(const MedianGraph& g, const AgentProfile& profile) {
    const MedianClosure closure = median_closure(g, profile);
    DeliberationChain chain;
    chain.states = closure.members();
    const int s = chain.size();
    chain.transition.assign(static_cast<std::size_t>(s) * s, 0.0);

    const auto& bliss = profile.entries();
    const long long total = profile.total_weight();
    std::vector<long long> counts(static_cast<std::size_t>(s));
    for (int ai = 0; ai < s; ++ai) {
        std::fill(counts.begin(), counts.end(), 0);
        const int a = chain.states[ai];
        for (std::size_t i = 0; i < bliss.size(); ++i) {
            for (std::size_t j = i; j < bliss.size(); ++j) {
                const int m = g.median(bliss[i].first, bliss[j].first, a);
                const int mi = chain.state_index(m);
                if (mi < 0) throw std::logic_error("chain: median escaped the closure");
                const long long w = bliss[i].second * bliss[j].second;
                counts[static_cast<std::size_t>(mi)] += (i == j) ? w : 2 * w;
            }
        }
        const double denom = static_cast<double>(total) * static_cast<double>(total);
        for (int mi = 0; mi < s; ++mi)
            chain.transition[static_cast<std::size_t>(ai) * s + mi] =
                static_cast<double>(counts[static_cast<std::size_t>(mi)]) / denom;
    }
    return chain;
}

namespace {

// Forward + backward reachability from state 0 over nonzero transitions.
bool strongly_connected(const DeliberationChain& chain) {
    const int s = chain.size();
    for (int pass = 0; pass < 2; ++pass) {
        std::vector<char> seen(static_cast<std::size_t>(s), 0);
        std::deque<int> queue{0};
        seen[0] = 1;
        int reached = 1;
        while (!queue.empty()) {
            const int u = queue.front();
            queue.pop_front();
            for (int v = 0; v < s; ++v) {
                const double p = pass == 0 ? chain.prob(u, v) : chain.prob(v, u);
                if (p > 0.0 && !seen[v]) {
                    seen[v] = 1;
                    ++reached;
                    queue.push_back(v);
                }
            }
        }
        if (reached != s) return false;
    }
    return true;
}

} // namespace

OutcomeDistribution stationary_distribution(const DeliberationChain& chain) {
    const int s = chain.size();
    if (s == 0) throw std::invalid_argument("chain: empty state space");
    for (int i = 0; i < s; ++i) {
        double row = 0.0;
        for (int j = 0; j < s; ++j) row += chain.prob(i, j);
        if (std::abs(row - 1.0) > 1e-12)
            throw std::invalid_argument("chain: row " + std::to_string(i) + " is not stochastic");
    }
    // A deliberation chain always has self-loops everywhere and a single
    // communicating class; a violation is a bug, not bad input.
    for (int i = 0; i < s; ++i)
        if (!(chain.prob(i, i) > 0.0))
            throw std::logic_error("chain: state without a self-loop; deliberation chain broken");
    if (!strongly_connected(chain))
        throw std::logic_error("chain: reducible; deliberation chain broken");

    // (P^T - I) pi = 0 with row 0 replaced by the normalization sum(pi) = 1.
    Eigen::MatrixXd a(s, s);
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) a(i, j) = chain.prob(j, i) - (i == j ? 1.0 : 0.0);
    a.row(0).setOnes();
    Eigen::VectorXd b = Eigen::VectorXd::Zero(s);
    b(0) = 1.0;
    Eigen::VectorXd pi = a.fullPivLu().solve(b);

    // Independent cross-check: power iteration on the row-stochastic P.
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> p(
        chain.transition.data(), s, s);
    Eigen::RowVectorXd q = Eigen::RowVectorXd::Constant(s, 1.0 / s);
    for (int iter = 0; iter < 100000; ++iter) {
        Eigen::RowVectorXd next = q * p;
        const double delta = (next - q).cwiseAbs().maxCoeff();
        q = next;
        if (delta <= 1e-14) break;
    }
    for (int i = 0; i < s; ++i)
        if (std::abs(q(i) - pi(i)) > 1e-10)
            throw std::logic_error("chain: linear solve and power iteration disagree");

    const double residual = (pi.transpose() * p - pi.transpose()).cwiseAbs().maxCoeff();
    if (residual > 1e-10) throw std::logic_error("chain: stationary residual too large");

    std::vector<double> prob(static_cast<std::size_t>(s));
    double sum = 0.0;
    for (int i = 0; i < s; ++i) {
        prob[static_cast<std::size_t>(i)] = std::max(pi(i), 0.0);
        sum += prob[static_cast<std::size_t>(i)];
    }
    for (double& v : prob) v /= sum;
    return OutcomeDistribution(chain.states, std::move(prob));
}

double marginal_stationary(double f) {
    if (f < 0.0 || f > 1.0) throw std::invalid_argument("marginal: f outside [0, 1]");
    return f * f / (1.0 + 2.0 * f * f - 2.0 * f);
}

double expected_dim_cost(double f) {
    if (f < 0.0 || f > 1.0) throw std::invalid_argument("dim cost: f outside [0, 1]");
    return f * (1.0 - f) / (f * f + (1.0 - f) * (1.0 - f));
}

double dim_cost_ratio(double f) {
    if (f < 0.0 || f > 0.5) throw std::invalid_argument("cost ratio: f outside (0, 1/2]");
    if (f == 0.0) return 1.0; // no disagreement in the dimension
    return (1.0 - f) / (f * f + (1.0 - f) * (1.0 - f));
}

int convergence_rounds(double eps) {
    if (!(eps > 0.0) || eps >= 1.0) throw std::invalid_argument("convergence: eps outside (0, 1)");
    return static_cast<int>(std::ceil(std::log2(1.0 / eps) + 2.575));
}

std::vector<double> dimension_fractions(const HypercubeEmbedding& emb,
                                        const AgentProfile& profile) {
    std::vector<double> f(static_cast<std::size_t>(emb.dim()), 0.0);
    for (const auto& [p, w] : profile.entries())
        for (int k = 0; k < emb.dim(); ++k)
            if (emb.bit(p, k)) f[static_cast<std::size_t>(k)] += static_cast<double>(w);
    const double total = static_cast<double>(profile.total_weight());
    for (double& v : f) v /= total;
    return f;
}

double best_response_gap(const MedianGraph& g, const ResponseScenario& scenario, int p_u, int z) {
    g.require_vertex(p_u);
    g.require_vertex(z);
    const auto fold = [&](int report) {
        int m = g.median(scenario.disagreement, scenario.opponent, report);
        for (const auto& [x, y] : scenario.future) m = g.median(x, y, m);
        return m;
    };
    return g.dist(p_u, fold(z)) - g.dist(p_u, fold(p_u));
}

bool trajectory_pareto_check(const FiniteMetric& space, const AgentProfile& profile,
                             const Trajectory& trajectory) {
    bool initial_is_bliss = false;
    for (const auto& [p, w] : profile.entries())
        if (p == trajectory.initial) initial_is_bliss = true;
    if (!initial_is_bliss)
        throw std::invalid_argument("pareto check: initial point is not an agent's bliss point");
    return !is_pareto_dominated(space, profile, trajectory.final_outcome()).has_value();
}

} // namespace delib
