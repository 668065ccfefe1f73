#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "delib/metric.hpp"
#include "delib/rng.hpp"

namespace delib {

// Raised when a triple has no unique median or an embedding step finds
// the structure inconsistent with a median graph.
struct NotMedianGraph : std::runtime_error {
    explicit NotMedianGraph(const std::string& what) : std::runtime_error(what) {}
};

// Isometric embedding into {0,1}^D under Hamming distance. Coordinates are
// one per Theta-class, ordered by the class's smallest edge id, oriented so
// vertex 0 maps to the all-zero vector.
class HypercubeEmbedding {
public:
    HypercubeEmbedding(int dim, std::vector<std::vector<std::uint64_t>> coords);

    int dim() const { return dim_; }
    int vertex_count() const { return static_cast<int>(coords_.size()); }

    bool bit(int v, int k) const {
        return (coords_[v][static_cast<std::size_t>(k) >> 6] >> (k & 63)) & 1ULL;
    }
    const std::vector<std::uint64_t>& blocks(int v) const { return coords_[v]; }

    int hamming(int u, int v) const;

    // Bitwise majority of three images.
    std::vector<std::uint64_t> majority(int u, int v, int w) const;

    std::string bitstring(int v) const; // coordinate 0 first

private:
    int dim_;
    std::vector<std::vector<std::uint64_t>> coords_;
};

// Unweighted graph intended to be a median graph: connected, simple,
// undirected, with cached all-pairs BFS distances. Construction does not
// verify the median property; verify_median_graph does.
class MedianGraph {
public:
    static MedianGraph from_edges(int n, const std::vector<std::pair<int, int>>& edges);

    int size() const { return n_; }
    int dist(int u, int v) const { return dist_[static_cast<std::size_t>(u) * n_ + v]; }
    const std::vector<std::vector<int>>& adjacency() const { return adj_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    // The unique median of (u, v, w). Throws NotMedianGraph when the triple
    // has no or several medians. O(n) scan, or O(1) once the cache is built.
    int median(int u, int v, int w) const;

    // Precomputes the n^3 median table (small graphs only). Not thread-safe;
    // call once before sharing the graph across threads. Throws
    // NotMedianGraph if any triple fails.
    void build_median_cache() const;
    bool has_median_cache() const { return !median_table_.empty(); }

    FiniteMetric to_metric() const;

    void require_vertex(int v) const;

    static constexpr int kMedianCacheMaxVertices = 96;

private:
    MedianGraph() = default;

    int median_by_scan(int u, int v, int w) const;

    int n_ = 0;
    std::vector<std::vector<int>> adj_;
    std::vector<std::pair<int, int>> edges_; // a < b, sorted
    std::vector<int> dist_;                  // row-major n*n
    mutable std::vector<std::uint16_t> median_table_;
};

struct MedianVerification {
    bool is_median = false;
    std::optional<std::array<int, 3>> counterexample; // triple with != 1 median
};

// Exhaustive check that every vertex triple has exactly one median,
// via interval bitsets.
MedianVerification verify_median_graph(const MedianGraph& g);

// Free-function form of MedianGraph::median.
int triple_median(const MedianGraph& g, int u, int v, int w);

// Djokovic-Winkler Theta-classes: edges (u,v), (x,y) are related iff
// d(u,x)+d(v,y) != d(u,y)+d(v,x); classes are the transitive closure.
// Each class becomes one cut coordinate. Throws NotMedianGraph when the
// resulting map is not an isometry.
HypercubeEmbedding hypercube_embed(const MedianGraph& g);

// phi(median(u,v,w)) == bitwise majority of phi(u), phi(v), phi(w).
bool embedding_median_commutes(const MedianGraph& g, const HypercubeEmbedding& emb, int u, int v,
                               int w);

// Least vertex set containing the bliss points and closed under
// v -> median(x, y, v) over bliss pairs (x, y). Each non-seed member keeps
// one witness derivation step.
class MedianClosure {
public:
    struct Step {
        int x = -1;      // bliss pair applied
        int y = -1;
        int parent = -1; // previous chain point
    };

    struct Witness {
        int seed = -1;                          // initial disagreement z (a bliss point)
        std::vector<std::pair<int, int>> pairs; // bliss pairs applied in order
    };

    const std::vector<int>& members() const { return members_; }
    bool contains(int v) const { return steps_.count(v) != 0; }

    // Reconstructs the derivation showing the member is a feasible
    // deliberation outcome. Seeds yield an empty pair list.
    Witness witness(int v) const;

    friend MedianClosure median_closure(const MedianGraph& g, const AgentProfile& profile);

private:
    std::vector<int> members_;                // sorted ascending
    std::unordered_map<int, Step> steps_;     // seed members map to {-1,-1,-1}
};

MedianClosure median_closure(const MedianGraph& g, const AgentProfile& profile);

// --- Generators (all outputs are median graphs) ---

// Center 0 with k leaves 1..k.
MedianGraph star(int k);

// w*h grid; vertex (x, y) has index y*w + x.
MedianGraph grid(int w, int h);

// 2^d vertices, edges between words at Hamming distance 1.
MedianGraph hypercube(int d);

// Uniform random attachment tree on n vertices.
MedianGraph random_tree(int n, std::uint64_t seed);

// Random downset (staircase) region of a w*h grid; downsets of grids are
// median-closed and isometric, so the induced graph is median.
MedianGraph random_grid_subset(int w, int h, std::uint64_t seed);

} // namespace delib
