#include <doctest.h>

#include <algorithm>
#include <set>

#include "delib/median_graph.hpp"
#include "oracles.hpp"

using namespace delib;

namespace {

MedianGraph three_cycle() { return MedianGraph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}}); }

} // namespace

TEST_CASE("triple medians") {
    const MedianGraph s = star(3);
    CHECK(triple_median(s, 1, 2, 3) == 0);
    CHECK(triple_median(s, 1, 1, 3) == 1); // degenerate triple
    CHECK(triple_median(s, 2, 2, 2) == 2);

    const MedianGraph q = hypercube(3);
    CHECK(triple_median(q, 0b000, 0b011, 0b101) == 0b001); // dimension-wise majority

    CHECK_THROWS_AS(triple_median(three_cycle(), 0, 1, 2), NotMedianGraph);

    SUBCASE("agrees with the distance-table oracle") {
        for (const MedianGraph& g : {star(4), grid(3, 3), hypercube(3), random_tree(9, 3)}) {
            const auto d = test::fw_unit_distances(g.size(), g.edges());
            for (int u = 0; u < g.size(); ++u)
                for (int v = 0; v < g.size(); ++v)
                    for (int w = 0; w < g.size(); ++w) {
                        const auto medians = test::oracle_medians(d, u, v, w);
                        REQUIRE(medians.size() == 1);
                        CHECK(g.median(u, v, w) == medians[0]);
                    }
        }
    }

    SUBCASE("cached and scanned medians agree") {
        MedianGraph g = grid(3, 4);
        const MedianGraph plain = grid(3, 4);
        g.build_median_cache();
        for (int u = 0; u < g.size(); ++u)
            for (int v = 0; v < g.size(); ++v)
                for (int w = 0; w < g.size(); ++w) CHECK(g.median(u, v, w) == plain.median(u, v, w));
    }

    SUBCASE("symmetric in its arguments") {
        const MedianGraph g = grid(2, 3);
        for (int u = 0; u < g.size(); ++u)
            for (int v = 0; v < g.size(); ++v)
                for (int w = 0; w < g.size(); ++w) {
                    const int m = g.median(u, v, w);
                    CHECK(g.median(v, u, w) == m);
                    CHECK(g.median(w, v, u) == m);
                    CHECK(g.median(u, w, v) == m);
                }
    }

    SUBCASE("taking a median projects: median(x, y, .) is idempotent") {
        for (const MedianGraph& g : {grid(3, 3), hypercube(3), random_tree(14, 6)}) {
            for (int x = 0; x < g.size(); ++x)
                for (int y = 0; y < g.size(); ++y)
                    for (int v = 0; v < g.size(); ++v) {
                        const int m = g.median(x, y, v);
                        CHECK(g.median(x, y, m) == m);
                    }
        }
    }
}

TEST_CASE("median graph verification") {
    CHECK(verify_median_graph(grid(2, 3)).is_median);
    CHECK(verify_median_graph(MedianGraph::from_edges(
              4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}})).is_median); // 4-cycle

    const MedianVerification bad = verify_median_graph(three_cycle());
    CHECK(!bad.is_median);
    REQUIRE(bad.counterexample.has_value());
    const auto [u, v, w] = *bad.counterexample;
    CHECK(test::oracle_medians(test::fw_unit_distances(3, three_cycle().edges()), u, v, w).size() !=
          1);

    // K4 has multiple medians for distinct triples.
    CHECK(!verify_median_graph(
               MedianGraph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}))
               .is_median);

    SUBCASE("the exhaustive check refuses oversized graphs") {
        CHECK_THROWS_AS(verify_median_graph(star(1100)), std::invalid_argument);
    }

    SUBCASE("naive oracle agreement") {
        for (const MedianGraph& g :
             {star(3), three_cycle(), grid(2, 2), random_tree(7, 1),
              MedianGraph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}})}) {
            const auto d = test::fw_unit_distances(g.size(), g.edges());
            bool ok = true;
            for (int u = 0; u < g.size() && ok; ++u)
                for (int v = u; v < g.size() && ok; ++v)
                    for (int w = v; w < g.size() && ok; ++w)
                        ok = test::oracle_medians(d, u, v, w).size() == 1;
            CHECK(verify_median_graph(g).is_median == ok);
        }
    }
}

TEST_CASE("graph construction errors") {
    CHECK_THROWS_AS(MedianGraph::from_edges(3, {{0, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(MedianGraph::from_edges(2, {{0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(MedianGraph::from_edges(2, {{0, 1}, {1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(MedianGraph::from_edges(2, {{0, 2}}), std::invalid_argument);
}

TEST_CASE("hypercube embedding") {
    SUBCASE("4-vertex star has three cut classes") {
        const MedianGraph g = star(3);
        const HypercubeEmbedding emb = hypercube_embed(g);
        CHECK(emb.dim() == 3);
        for (int leaf = 1; leaf <= 3; ++leaf) CHECK(emb.hamming(0, leaf) == 1);
    }
    SUBCASE("single edge") {
        const HypercubeEmbedding emb = hypercube_embed(MedianGraph::from_edges(2, {{0, 1}}));
        CHECK(emb.dim() == 1);
        CHECK(emb.bitstring(0) == "0");
        CHECK(emb.bitstring(1) == "1");
    }
    SUBCASE("path of length 2") {
        const HypercubeEmbedding emb =
            hypercube_embed(MedianGraph::from_edges(3, {{0, 1}, {1, 2}}));
        CHECK(emb.dim() == 2);
        CHECK(emb.hamming(0, 2) == 2);
    }
    SUBCASE("3x3 grid embeds into 4 dimensions") {
        CHECK(hypercube_embed(grid(3, 3)).dim() == 4);
    }
    SUBCASE("vertex 0 is anchored at the origin") {
        for (const MedianGraph& g : {grid(3, 2), hypercube(4), random_tree(12, 9)}) {
            const HypercubeEmbedding emb = hypercube_embed(g);
            for (int k = 0; k < emb.dim(); ++k) CHECK(!emb.bit(0, k));
        }
    }
    SUBCASE("isometry on every pair") {
        for (const MedianGraph& g :
             {star(5), grid(4, 3), hypercube(4), random_tree(15, 2), random_grid_subset(5, 5, 3)}) {
            const HypercubeEmbedding emb = hypercube_embed(g);
            for (int u = 0; u < g.size(); ++u)
                for (int v = 0; v < g.size(); ++v) CHECK(emb.hamming(u, v) == g.dist(u, v));
        }
    }
    SUBCASE("non-median input is rejected") {
        CHECK_THROWS_AS(hypercube_embed(three_cycle()), NotMedianGraph);
        // Bipartite but not a partial cube.
        const MedianGraph k23 =
            MedianGraph::from_edges(5, {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}});
        CHECK_THROWS_AS(hypercube_embed(k23), NotMedianGraph);
    }
    SUBCASE("a single vertex embeds into zero dimensions") {
        CHECK(hypercube_embed(grid(1, 1)).dim() == 0);
    }
}

TEST_CASE("embedding commutes with medians") {
    const MedianGraph s = star(3);
    const HypercubeEmbedding emb = hypercube_embed(s);
    for (int u = 0; u < s.size(); ++u)
        for (int v = 0; v < s.size(); ++v)
            for (int w = 0; w < s.size(); ++w) CHECK(embedding_median_commutes(s, emb, u, v, w));
    CHECK(embedding_median_commutes(s, emb, 2, 2, 2));

    for (const MedianGraph& g : {grid(3, 3), hypercube(3), random_tree(12, 4)}) {
        const HypercubeEmbedding e = hypercube_embed(g);
        for (int u = 0; u < g.size(); ++u)
            for (int v = u; v < g.size(); ++v)
                for (int w = v; w < g.size(); ++w) CHECK(embedding_median_commutes(g, e, u, v, w));
    }
}

TEST_CASE("median closure") {
    const MedianGraph g = grid(3, 3);
    const auto id = [](int x, int y) { return y * 3 + x; };

    SUBCASE("unanimity collapses to the bliss point") {
        const MedianClosure c = median_closure(g, AgentProfile({{id(1, 1), 5}}));
        CHECK(c.members() == std::vector<int>{id(1, 1)});
    }

    SUBCASE("two bliss points stay a pair") {
        const MedianClosure c = median_closure(g, AgentProfile({{id(0, 0), 1}, {id(2, 2), 1}}));
        CHECK(c.members() == std::vector<int>{id(0, 0), id(2, 2)});
    }

    SUBCASE("three-corner grid instance excludes the far corner") {
        // Bliss points: corners (0,0), (0,2), (2,0) plus (1,2) and (2,1).
        const std::vector<int> bliss = {id(0, 0), id(0, 2), id(1, 2), id(2, 0), id(2, 1)};
        std::vector<std::pair<int, long long>> entries;
        for (int b : bliss) entries.emplace_back(b, 1);
        const MedianClosure c = median_closure(g, AgentProfile(entries));
        CHECK(c.members() == std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7});
        CHECK(!c.contains(id(2, 2)));

        // Same closure as the naive fixpoint oracle.
        const std::set<int> oracle = test::oracle_closure(g, bliss);
        CHECK(std::vector<int>(oracle.begin(), oracle.end()) == c.members());

        SUBCASE("witness derivations replay to their member") {
            for (int v : c.members()) {
                const MedianClosure::Witness wit = c.witness(v);
                int m = wit.seed;
                for (const auto& [x, y] : wit.pairs) m = g.median(x, y, m);
                CHECK(m == v);
                CHECK(std::count(bliss.begin(), bliss.end(), wit.seed) == 1);
            }
        }
    }

    SUBCASE("closing the closure adds nothing") {
        Rng rng(23);
        for (int trial = 0; trial < 10; ++trial) {
            const MedianGraph t = random_tree(12, rng.next());
            std::vector<std::pair<int, long long>> entries;
            for (int i = 0; i < 4; ++i)
                entries.emplace_back(
                    static_cast<int>(rng.bounded(static_cast<std::uint64_t>(t.size()))), 1);
            const AgentProfile profile(entries);
            const MedianClosure c = median_closure(t, profile);
            for (int v : c.members())
                for (const auto& [x, wx] : profile.entries())
                    for (const auto& [y, wy] : profile.entries())
                        CHECK(c.contains(t.median(x, y, v)));
        }
    }
}

TEST_CASE("generators produce median graphs") {
    CHECK(star(3).size() == 4);
    CHECK(verify_median_graph(star(3)).is_median);

    const MedianGraph q3 = hypercube(3);
    CHECK(q3.size() == 8);
    int diameter = 0;
    for (int u = 0; u < q3.size(); ++u)
        for (int v = 0; v < q3.size(); ++v) diameter = std::max(diameter, q3.dist(u, v));
    CHECK(diameter == 3);
    CHECK(verify_median_graph(q3).is_median);

    CHECK(verify_median_graph(random_tree(10, 7)).is_median);
    CHECK(verify_median_graph(grid(4, 5)).is_median);
    for (std::uint64_t seed = 1; seed <= 6; ++seed)
        CHECK(verify_median_graph(random_grid_subset(4, 5, seed)).is_median);
}
