#pragma once

#include <optional>
#include <string>

#include "delib/deliberation.hpp"
#include "delib/median_graph.hpp"
#include "delib/metric.hpp"

namespace delib {

// A loaded problem instance. The graph is present only when the input was
// a simple unit-weight edge list, which is what the median-graph paths
// require; the metric is always available.
struct Instance {
    FiniteMetric metric;
    std::optional<MedianGraph> graph;
    AgentProfile profile;
};

// Instance text format (JSON): {"points": n, "edges": [[i, j], [i, j, w], ...]}
// or {"dist": [[...], ...]}, plus {"agents": [[point, weight], ...]}.
// Malformed input throws std::runtime_error with a parse message.
Instance parse_instance_text(const std::string& text);
Instance load_instance_file(const std::string& path);

std::string instance_to_json(const Instance& inst);

// Shortest round-trip decimal rendering; identical across runs.
std::string format_double(double x);

// CSV with columns (round, u, v, a, o).
std::string trajectory_csv(const Trajectory& traj);

// Sparse triplet list (from, to, prob), zero entries omitted.
std::string chain_csv(const DeliberationChain& chain);

// One row per bargaining distance-bound check.
std::string bargain_check_csv(const std::vector<BargainCheckRecord>& records);

// {"dim": D, "coords": {"0": "0101...", ...}}
std::string embedding_json(const HypercubeEmbedding& emb);

} // namespace delib
