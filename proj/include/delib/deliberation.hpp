#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "delib/bargaining.hpp"
#include "delib/median_graph.hpp"
#include "delib/metric.hpp"
#include "delib/rng.hpp"

namespace delib {

// One deliberation run: T rounds of pairwise bargaining. The initial
// disagreement alternative is a weight-proportional random bliss point
// unless a fixed point is given.
struct DeliberationConfig {
    std::int64_t rounds = 1;
    std::uint64_t seed = 0;
    std::optional<int> initial_point;
};

// Realized run. Round t records the drawn bliss points (u, v), the
// disagreement alternative a entering the round, and the bargaining
// outcome o; the next round's disagreement is o.
struct Trajectory {
    struct Round {
        int u = -1;
        int v = -1;
        int a = -1;
        int o = -1;
    };

    int initial = -1;
    std::vector<Round> rounds;

    // Final social choice: the outcome of the last round.
    int final_outcome() const { return rounds.empty() ? initial : rounds.back().o; }
};

// Bargaining via the triple median (median graphs).
Trajectory run_sequential(const MedianGraph& g, const AgentProfile& profile,
                          const DeliberationConfig& config, Rng& rng);

// Bargaining via the exhaustive Nash maximizer (any finite metric).
Trajectory run_sequential(const FiniteMetric& space, const AgentProfile& profile,
                          const DeliberationConfig& config, Rng& rng);

// Baseline: the bliss point of a weight-proportional random agent.
int random_dictatorship(const AgentProfile& profile, Rng& rng);
OutcomeDistribution rd_distribution(const AgentProfile& profile);

// Baseline: median of three i.i.d. weight-proportional bliss draws.
int oneshot_triple(const MedianGraph& g, const AgentProfile& profile, Rng& rng);
OutcomeDistribution oneshot_triple_distribution(const MedianGraph& g, const AgentProfile& profile);

// Explicit Markov chain of sequential deliberation over the median
// closure. Row a gives Pr[next state | current = states[a]], with
// P[a][m] = sum over ordered bliss pairs (x, y), median(x,y,a) = m of
// weight(x) * weight(y) / |N|^2.
struct DeliberationChain {
    std::vector<int> states; // median closure, ascending vertex ids
    std::vector<double> transition; // row-major |states|^2

    int size() const { return static_cast<int>(states.size()); }
    double prob(int from, int to) const {
        return transition[static_cast<std::size_t>(from) * states.size() + to];
    }
    int state_index(int vertex) const; // -1 when not a state
};

DeliberationChain build_chain(const MedianGraph& g, const AgentProfile& profile);

// Unique stationary distribution: dense solve of pi P = pi with the
// normalization row, cross-checked by power iteration. Verifies the chain
// is irreducible and has self-loops everywhere; violations signal an
// internal inconsistency and throw std::logic_error.
OutcomeDistribution stationary_distribution(const DeliberationChain& chain);

// Per-dimension closed forms, f = fraction of agent weight with a 1.
double marginal_stationary(double f);  // f^2 / (1 + 2f^2 - 2f)
double expected_dim_cost(double f);    // f(1-f) / (f^2 + (1-f)^2), per unit weight
double dim_cost_ratio(double f);       // (1-f) / (f^2 + (1-f)^2); 1 at f = 0

// Rounds needed for distortion at most 1.208 + eps:
// ceil(log2(1/eps) + 2.575).
int convergence_rounds(double eps);

// Weighted fraction of agents whose embedded bliss point has a 1 in each
// coordinate.
std::vector<double> dimension_fractions(const HypercubeEmbedding& emb,
                                        const AgentProfile& profile);

// A fixed continuation of the game tree faced by one agent: their round's
// disagreement alternative and opponent bliss point, then the bliss pairs
// drawn in later rounds.
struct ResponseScenario {
    int disagreement = -1;
    int opponent = -1;
    std::vector<std::pair<int, int>> future;
};

// d(p_u, outcome when reporting z) - d(p_u, outcome when reporting p_u).
// Nonnegative everywhere means truthful reporting is a best response.
double best_response_gap(const MedianGraph& g, const ResponseScenario& scenario, int p_u, int z);

// Ex-post Pareto efficiency of a realized run whose initial disagreement
// point was some agent's bliss point.
bool trajectory_pareto_check(const FiniteMetric& space, const AgentProfile& profile,
                             const Trajectory& trajectory);

} // namespace delib
