#include "delib/median_graph.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <numeric>
#include <set>

namespace delib {

namespace {

// Interval bitsets I(u,v) = { z : d(u,z) + d(z,v) = d(u,v) }, one row of
// blocks per ordered pair. Backs both the verifier and the median table.
struct IntervalSets {
    int n = 0;
    int blocks = 0;
    std::vector<std::uint64_t> bits; // n*n rows

    explicit IntervalSets(const MedianGraph& g)
        : n(g.size()), blocks((g.size() + 63) / 64), bits(static_cast<std::size_t>(n) * n * blocks, 0) {
        for (int u = 0; u < n; ++u) {
            for (int v = 0; v < n; ++v) {
                std::uint64_t* row = this->row(u, v);
                const int duv = g.dist(u, v);
                for (int z = 0; z < n; ++z)
                    if (g.dist(u, z) + g.dist(z, v) == duv) row[z >> 6] |= 1ULL << (z & 63);
            }
        }
    }

    std::uint64_t* row(int u, int v) {
        return bits.data() + (static_cast<std::size_t>(u) * n + v) * blocks;
    }
    const std::uint64_t* row(int u, int v) const {
        return bits.data() + (static_cast<std::size_t>(u) * n + v) * blocks;
    }

    // Intersection of the three pairwise intervals; returns the number of
    // common vertices and the last one seen.
    std::pair<int, int> medians(int u, int v, int w) const {
        const std::uint64_t* a = row(u, v);
        const std::uint64_t* b = row(u, w);
        const std::uint64_t* c = row(v, w);
        int count = 0;
        int found = -1;
        for (int blk = 0; blk < blocks; ++blk) {
            std::uint64_t m = a[blk] & b[blk] & c[blk];
            count += std::popcount(m);
            if (m != 0) found = blk * 64 + std::countr_zero(m);
        }
        return {count, found};
    }
};

struct DisjointSet {
    std::vector<int> parent;
    explicit DisjointSet(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

} // namespace

// ---------------------------------------------------------------------------
// HypercubeEmbedding
// ---------------------------------------------------------------------------

HypercubeEmbedding::HypercubeEmbedding(int dim, std::vector<std::vector<std::uint64_t>> coords)
    : dim_(dim), coords_(std::move(coords)) {}

int HypercubeEmbedding::hamming(int u, int v) const {
    int h = 0;
    for (std::size_t i = 0; i < coords_[u].size(); ++i)
        h += std::popcount(coords_[u][i] ^ coords_[v][i]);
    return h;
}

std::vector<std::uint64_t> HypercubeEmbedding::majority(int u, int v, int w) const {
    std::vector<std::uint64_t> m(coords_[u].size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        const std::uint64_t a = coords_[u][i];
        const std::uint64_t b = coords_[v][i];
        const std::uint64_t c = coords_[w][i];
        m[i] = (a & b) | (a & c) | (b & c);
    }
    return m;
}

std::string HypercubeEmbedding::bitstring(int v) const {
    std::string s(static_cast<std::size_t>(dim_), '0');
    for (int k = 0; k < dim_; ++k)
        if (bit(v, k)) s[static_cast<std::size_t>(k)] = '1';
    return s;
}

// ---------------------------------------------------------------------------
// MedianGraph
// ---------------------------------------------------------------------------

MedianGraph MedianGraph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    if (n < 1) throw std::invalid_argument("graph: needs at least one vertex");
    MedianGraph g;
    g.n_ = n;
    g.adj_.assign(n, {});
    std::set<std::pair<int, int>> seen;
    for (auto [a, b] : edges) {
        if (a < 0 || a >= n || b < 0 || b >= n)
            throw std::invalid_argument("graph: edge endpoint out of range");
        if (a == b) throw std::invalid_argument("graph: self-loop edge");
        if (a > b) std::swap(a, b);
        if (!seen.insert({a, b}).second) throw std::invalid_argument("graph: duplicate edge");
        g.adj_[a].push_back(b);
        g.adj_[b].push_back(a);
        g.edges_.emplace_back(a, b);
    }
    std::sort(g.edges_.begin(), g.edges_.end());
    for (auto& nbrs : g.adj_) std::sort(nbrs.begin(), nbrs.end());

    g.dist_.assign(static_cast<std::size_t>(n) * n, -1);
    std::deque<int> queue;
    for (int s = 0; s < n; ++s) {
        int* row = g.dist_.data() + static_cast<std::size_t>(s) * n;
        row[s] = 0;
        queue.clear();
        queue.push_back(s);
        while (!queue.empty()) {
            const int u = queue.front();
            queue.pop_front();
            for (int v : g.adj_[u]) {
                if (row[v] < 0) {
                    row[v] = row[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        for (int t = 0; t < n; ++t)
            if (row[t] < 0) throw std::invalid_argument("graph: disconnected");
    }
    return g;
}

void MedianGraph::require_vertex(int v) const {
    if (v < 0 || v >= n_)
        throw std::invalid_argument("graph: vertex " + std::to_string(v) + " out of range");
}

int MedianGraph::median_by_scan(int u, int v, int w) const {
    const int* du = dist_.data() + static_cast<std::size_t>(u) * n_;
    const int* dv = dist_.data() + static_cast<std::size_t>(v) * n_;
    const int* dw = dist_.data() + static_cast<std::size_t>(w) * n_;
    const int duv = du[v], duw = du[w], dvw = dv[w];
    int found = -1;
    for (int z = 0; z < n_; ++z) {
        if (du[z] + dv[z] == duv && du[z] + dw[z] == duw && dv[z] + dw[z] == dvw) {
            if (found >= 0)
                throw NotMedianGraph("triple (" + std::to_string(u) + "," + std::to_string(v) +
                                     "," + std::to_string(w) + ") has several medians");
            found = z;
        }
    }
    if (found < 0)
        throw NotMedianGraph("triple (" + std::to_string(u) + "," + std::to_string(v) + "," +
                             std::to_string(w) + ") has no median");
    return found;
}

int MedianGraph::median(int u, int v, int w) const {
    require_vertex(u);
    require_vertex(v);
    require_vertex(w);
    if (!median_table_.empty())
        return median_table_[(static_cast<std::size_t>(u) * n_ + v) * n_ + w];
    return median_by_scan(u, v, w);
}

void MedianGraph::build_median_cache() const {
    if (!median_table_.empty()) return;
    if (n_ > kMedianCacheMaxVertices)
        throw std::invalid_argument("graph: median cache limited to " +
                                    std::to_string(kMedianCacheMaxVertices) + " vertices");
    const IntervalSets intervals(*this);
    std::vector<std::uint16_t> table(static_cast<std::size_t>(n_) * n_ * n_);
    for (int u = 0; u < n_; ++u) {
        for (int v = u; v < n_; ++v) {
            for (int w = v; w < n_; ++w) {
                auto [count, m] = intervals.medians(u, v, w);
                if (count != 1)
                    throw NotMedianGraph("triple (" + std::to_string(u) + "," + std::to_string(v) +
                                         "," + std::to_string(w) + ") has " +
                                         std::to_string(count) + " medians");
                const auto mm = static_cast<std::uint16_t>(m);
                const auto idx = [this](int a, int b, int c) {
                    return (static_cast<std::size_t>(a) * n_ + b) * n_ + c;
                };
                table[idx(u, v, w)] = mm;
                table[idx(u, w, v)] = mm;
                table[idx(v, u, w)] = mm;
                table[idx(v, w, u)] = mm;
                table[idx(w, u, v)] = mm;
                table[idx(w, v, u)] = mm;
            }
        }
    }
    median_table_ = std::move(table);
}

FiniteMetric MedianGraph::to_metric() const {
    std::vector<WeightedEdge> es;
    es.reserve(edges_.size());
    for (auto [a, b] : edges_) es.push_back({a, b, 1.0});
    return FiniteMetric::from_weighted_graph(n_, es);
}

int triple_median(const MedianGraph& g, int u, int v, int w) { return g.median(u, v, w); }

MedianVerification verify_median_graph(const MedianGraph& g) {
    const int n = g.size();
    if (n > 1024)
        throw std::invalid_argument(
            "verify: the exhaustive triple check is limited to 1024 vertices");
    const IntervalSets intervals(g);
    for (int u = 0; u < n; ++u)
        for (int v = u; v < n; ++v)
            for (int w = v; w < n; ++w)
                if (intervals.medians(u, v, w).first != 1)
                    return {false, std::array<int, 3>{u, v, w}};
    return {true, std::nullopt};
}

// ---------------------------------------------------------------------------
// Hypercube embedding via Theta-classes
// ---------------------------------------------------------------------------

HypercubeEmbedding hypercube_embed(const MedianGraph& g) {
    const int n = g.size();
    const auto& edges = g.edges();
    const int m = static_cast<int>(edges.size());
    if (m == 0) return HypercubeEmbedding(0, std::vector<std::vector<std::uint64_t>>(n));

    // Quadrilateral condition on every edge pair, transitively closed.
    DisjointSet classes(m);
    for (int i = 0; i < m; ++i) {
        const auto [u, v] = edges[i];
        for (int j = i + 1; j < m; ++j) {
            const auto [x, y] = edges[j];
            if (g.dist(u, x) + g.dist(v, y) != g.dist(u, y) + g.dist(v, x)) classes.unite(i, j);
        }
    }

    // Coordinates in order of each class's smallest edge id.
    std::vector<int> class_of(m);
    std::vector<int> rep_edge;
    std::unordered_map<int, int> root_to_coord;
    for (int i = 0; i < m; ++i) {
        const int root = classes.find(i);
        auto it = root_to_coord.find(root);
        if (it == root_to_coord.end()) {
            it = root_to_coord.emplace(root, static_cast<int>(rep_edge.size())).first;
            rep_edge.push_back(i);
        }
        class_of[i] = it->second;
    }
    const int dim = static_cast<int>(rep_edge.size());

    const int blocks = (dim + 63) / 64;
    std::vector<std::vector<std::uint64_t>> coords(n, std::vector<std::uint64_t>(blocks, 0));
    for (int k = 0; k < dim; ++k) {
        auto [a, b] = edges[rep_edge[k]];
        // Side of the cut containing vertex 0 gets coordinate 0.
        if (g.dist(0, a) > g.dist(0, b)) std::swap(a, b);
        for (int z = 0; z < n; ++z) {
            const int da = g.dist(z, a);
            const int db = g.dist(z, b);
            if (da == db)
                throw NotMedianGraph("vertex equidistant from a cut edge; graph is not bipartite");
            if (da > db) coords[z][static_cast<std::size_t>(k) >> 6] |= 1ULL << (k & 63);
        }
    }

    HypercubeEmbedding emb(dim, std::move(coords));
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            if (emb.hamming(u, v) != g.dist(u, v))
                throw NotMedianGraph("Theta-class map is not an isometry; graph is not median");
        }
    }
    return emb;
}

bool embedding_median_commutes(const MedianGraph& g, const HypercubeEmbedding& emb, int u, int v,
                               int w) {
    const int med = g.median(u, v, w);
    return emb.majority(u, v, w) == emb.blocks(med);
}

// ---------------------------------------------------------------------------
// Median closure
// ---------------------------------------------------------------------------

MedianClosure::Witness MedianClosure::witness(int v) const {
    auto it = steps_.find(v);
    if (it == steps_.end()) throw std::invalid_argument("closure: vertex not a member");
    Witness wit;
    int cur = v;
    while (true) {
        const Step& s = steps_.at(cur);
        if (s.parent < 0) {
            wit.seed = cur;
            break;
        }
        wit.pairs.emplace_back(s.x, s.y);
        cur = s.parent;
    }
    std::reverse(wit.pairs.begin(), wit.pairs.end());
    return wit;
}

MedianClosure median_closure(const MedianGraph& g, const AgentProfile& profile) {
    profile.require_valid_for(g.size());
    MedianClosure closure;
    std::deque<int> worklist;
    for (const auto& [p, w] : profile.entries()) {
        if (closure.steps_.emplace(p, MedianClosure::Step{}).second) worklist.push_back(p);
    }
    const auto& bliss = profile.entries();
    while (!worklist.empty()) {
        const int v = worklist.front();
        worklist.pop_front();
        for (std::size_t i = 0; i < bliss.size(); ++i) {
            for (std::size_t j = i; j < bliss.size(); ++j) {
                const int x = bliss[i].first;
                const int y = bliss[j].first;
                const int med = g.median(x, y, v);
                if (closure.steps_.emplace(med, MedianClosure::Step{x, y, v}).second)
                    worklist.push_back(med);
            }
        }
    }
    closure.members_.reserve(closure.steps_.size());
    for (const auto& [v, s] : closure.steps_) closure.members_.push_back(v);
    std::sort(closure.members_.begin(), closure.members_.end());
    return closure;
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

MedianGraph star(int k) {
    if (k < 1) throw std::invalid_argument("star: need at least one leaf");
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= k; ++i) edges.emplace_back(0, i);
    return MedianGraph::from_edges(k + 1, edges);
}

MedianGraph grid(int w, int h) {
    if (w < 1 || h < 1) throw std::invalid_argument("grid: sides must be >= 1");
    std::vector<std::pair<int, int>> edges;
    const auto id = [w](int x, int y) { return y * w + x; };
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (x + 1 < w) edges.emplace_back(id(x, y), id(x + 1, y));
            if (y + 1 < h) edges.emplace_back(id(x, y), id(x, y + 1));
        }
    }
    return MedianGraph::from_edges(w * h, edges);
}

MedianGraph hypercube(int d) {
    if (d < 0 || d > 20) throw std::invalid_argument("hypercube: dimension out of range");
    const int n = 1 << d;
    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v < n; ++v)
        for (int k = 0; k < d; ++k)
            if (!(v >> k & 1)) edges.emplace_back(v, v | (1 << k));
    return MedianGraph::from_edges(n, edges);
}

MedianGraph random_tree(int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("tree: need at least one vertex");
    Rng rng(seed);
    std::vector<std::pair<int, int>> edges;
    for (int v = 1; v < n; ++v)
        edges.emplace_back(static_cast<int>(rng.bounded(static_cast<std::uint64_t>(v))), v);
    return MedianGraph::from_edges(n, edges);
}

MedianGraph random_grid_subset(int w, int h, std::uint64_t seed) {
    if (w < 1 || h < 1) throw std::invalid_argument("grid subset: sides must be >= 1");
    Rng rng(seed);
    // Non-increasing column heights give a downset of the grid poset.
    std::vector<int> height(static_cast<std::size_t>(w));
    for (int x = 0; x < w; ++x) height[x] = 1 + static_cast<int>(rng.bounded(h));
    std::sort(height.begin(), height.end(), std::greater<int>());

    std::vector<int> id(static_cast<std::size_t>(w) * h, -1);
    int n = 0;
    for (int x = 0; x < w; ++x)
        for (int y = 0; y < height[x]; ++y) id[static_cast<std::size_t>(y) * w + x] = n++;
    std::vector<std::pair<int, int>> edges;
    for (int x = 0; x < w; ++x) {
        for (int y = 0; y < height[x]; ++y) {
            const int v = id[static_cast<std::size_t>(y) * w + x];
            if (x + 1 < w && y < height[x + 1])
                edges.emplace_back(v, id[static_cast<std::size_t>(y) * w + x + 1]);
            if (y + 1 < height[x]) edges.emplace_back(v, id[static_cast<std::size_t>(y + 1) * w + x]);
        }
    }
    return MedianGraph::from_edges(n, edges);
}

} // namespace delib
