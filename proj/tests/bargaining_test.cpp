#include <doctest.h>

#include <cmath>

#include "delib/bargaining.hpp"
#include "delib/distortion_lab.hpp"
#include "oracles.hpp"

using namespace delib;

namespace {

// 3-star with a shortcut vertex o = 4 at 1 - eps from leaves 1 and 2.
FiniteMetric shortcut_star(double eps) {
    return FiniteMetric::from_weighted_graph(
        5, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {1, 4, 1 - eps}, {2, 4, 1 - eps}});
}

} // namespace

TEST_CASE("Nash bargaining on finite metrics") {
    SUBCASE("unanimity returns the shared bliss point") {
        const FiniteMetric m = FiniteMetric::from_weighted_graph(3, {{0, 1, 1}, {1, 2, 1}});
        const BargainOutcome out = nash_bargain(m, 0, 0, 2);
        CHECK(out.point == 0);
        CHECK(out.gain_u == doctest::Approx(2.0));
        CHECK(out.gain_v == doctest::Approx(2.0));
        CHECK(out.nash_product == doctest::Approx(4.0));
    }

    SUBCASE("zero maximum product falls back to the disagreement point") {
        // Both agents already sit at their bliss points.
        const FiniteMetric m = FiniteMetric::from_weighted_graph(3, {{0, 1, 1}, {1, 2, 1}});
        const BargainOutcome out = nash_bargain(m, 0, 2, 1);
        CHECK(out.point == 1);
        CHECK(out.nash_product == doctest::Approx(0.0));
    }

    SUBCASE("shortcut vertex beats the center") {
        const FiniteMetric m = shortcut_star(0.1);
        const BargainOutcome out = nash_bargain(m, 1, 2, 0);
        CHECK(out.point == 4);
        CHECK(m.dist(4, 3) == doctest::Approx(2.9)); // 3 - eps
    }

    SUBCASE("tie sets are counted and resolved toward the disagreement point") {
        // 4-cycle: both 1 and 3 sit between 0 and 2 with zero product.
        const FiniteMetric cycle =
            FiniteMetric::from_weighted_graph(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 0, 1}});
        const BargainOutcome out = nash_bargain(cycle, 0, 2, 1);
        CHECK(out.point == 1);
        CHECK(out.tie_set_size == 2);
    }

    SUBCASE("individual rationality and pairwise efficiency hold everywhere") {
        Rng rng(7);
        for (int trial = 0; trial < 200; ++trial) {
            const MetricInstance inst = random_metric_instance(12, rng);
            const int n = inst.space.size();
            const int pu = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(n)));
            const int pv = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(n)));
            const int a = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(n)));
            const BargainOutcome out = nash_bargain(inst.space, pu, pv, a);
            CHECK(out.gain_u >= 0.0);
            CHECK(out.gain_v >= 0.0);
            CHECK(out.nash_product == doctest::Approx(out.gain_u * out.gain_v));
            // No alternative strictly improves both agents' gains.
            for (int z = 0; z < n; ++z) {
                const double gu = inst.space.dist(pu, a) - inst.space.dist(pu, z);
                const double gv = inst.space.dist(pv, a) - inst.space.dist(pv, z);
                CHECK(!(gu > out.gain_u && gv > out.gain_v));
            }
        }
    }
}

TEST_CASE("median shortcut matches exhaustive bargaining") {
    const MedianGraph s = star(3);
    CHECK(nash_bargain_median(s, 1, 2, 3) == 0);
    const MedianGraph q = hypercube(3);
    CHECK(nash_bargain_median(q, 0b000, 0b011, 0b101) == 0b001);

    for (const MedianGraph& g : {star(4), grid(2, 3), hypercube(2), random_tree(8, 21)}) {
        const FiniteMetric metric = g.to_metric();
        for (int u = 0; u < g.size(); ++u)
            for (int v = 0; v < g.size(); ++v)
                for (int a = 0; a < g.size(); ++a)
                    CHECK(nash_bargain(metric, u, v, a).point == nash_bargain_median(g, u, v, a));
    }
}

TEST_CASE("geodesic split position") {
    const FiniteMetric m = shortcut_star(0.1);
    SUBCASE("symmetric disagreement splits in half") {
        CHECK(geodesic_split_position(m, 1, 2, 0) == doctest::Approx(m.dist(1, 2) / 2.0));
    }
    SUBCASE("disagreement at an endpoint pins the outcome there") {
        CHECK(geodesic_split_position(m, 1, 2, 1) == doctest::Approx(0.0));
    }
    SUBCASE("coincident agents collapse to zero") {
        CHECK(geodesic_split_position(m, 1, 1, 0) == doctest::Approx(0.0));
    }
    SUBCASE("continuously populated path matches a dense grid search") {
        // Unit path cut into 1000 segments; p_i = 0, p_j = 1, a = 0.25.
        const int segments = 1000;
        std::vector<WeightedEdge> edges;
        for (int i = 0; i < segments; ++i) edges.push_back({i, i + 1, 1.0 / segments});
        const FiniteMetric line = FiniteMetric::from_weighted_graph(segments + 1, edges);
        const int pi = 0, pj = segments, a = segments / 4;

        double best_product = -1.0, best_dist = 0.0;
        int best = -1;
        for (int o = 0; o <= segments; ++o) {
            const double gu = line.dist(pi, a) - line.dist(pi, o);
            const double gv = line.dist(pj, a) - line.dist(pj, o);
            if (gu < 0 || gv < 0) continue;
            const double product = gu * gv;
            if (product > best_product ||
                (product == best_product && line.dist(o, a) < best_dist)) {
                best_product = product;
                best_dist = line.dist(o, a);
                best = o;
            }
        }
        CHECK(line.dist(pi, best) == doctest::Approx(0.25).epsilon(1e-9));
        CHECK(geodesic_split_position(line, pi, pj, a) == doctest::Approx(0.25).epsilon(1e-9));
    }
}

TEST_CASE("simplex bargaining") {
    SUBCASE("matching vertices take the whole budget") {
        CHECK(simplex_bargain(1, 1, {0.2, 0.3, 0.5}) == std::vector<double>{0.0, 1.0, 0.0});
    }
    SUBCASE("outside disagreement splits evenly") {
        const auto o = simplex_bargain(0, 1, {0.0, 0.0, 1.0});
        CHECK(o[0] == doctest::Approx(0.5));
        CHECK(o[1] == doctest::Approx(0.5));
        CHECK(o[2] == doctest::Approx(0.0));
    }
    SUBCASE("disagreement at a bargainer's vertex stays put") {
        const auto o = simplex_bargain(0, 1, {1.0, 0.0, 0.0});
        CHECK(o[0] == doctest::Approx(1.0));
        CHECK(o[1] == doctest::Approx(0.0));
    }
    SUBCASE("rejects points off the simplex") {
        CHECK_THROWS_AS(simplex_bargain(0, 1, {0.5, 0.6}), std::invalid_argument);
        CHECK_THROWS_AS(simplex_bargain(0, 1, {-0.1, 1.1}), std::invalid_argument);
        CHECK_THROWS_AS(simplex_bargain(0, 5, {0.5, 0.5}), std::invalid_argument);
    }
    SUBCASE("output stays on the simplex and weakly improves both agents") {
        Rng rng(3);
        for (int trial = 0; trial < 200; ++trial) {
            const int d = 2 + static_cast<int>(rng.bounded(5));
            std::vector<double> a(static_cast<std::size_t>(d));
            double sum = 0.0;
            for (double& c : a) sum += (c = rng.uniform(0.0, 1.0));
            for (double& c : a) c /= sum;
            const int i = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(d)));
            const int j = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(d)));
            const auto o = simplex_bargain(i, j, a);
            double osum = 0.0;
            for (double c : o) {
                CHECK(c >= -1e-12);
                osum += c;
            }
            CHECK(osum == doctest::Approx(1.0));
            CHECK(o[static_cast<std::size_t>(i)] >= a[static_cast<std::size_t>(i)] - 1e-12);
            CHECK(o[static_cast<std::size_t>(j)] >= a[static_cast<std::size_t>(j)] - 1e-12);
        }
    }
}

TEST_CASE("line bargaining with everyone at the table") {
    CHECK(nperson_line_bargain(0.3) == doctest::Approx(0.3));
    CHECK(nperson_line_bargain(0.0) == doctest::Approx(0.0));
    CHECK(nperson_line_bargain(1.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(nperson_line_bargain(1.5), std::invalid_argument);
}

TEST_CASE("bargaining distance bound") {
    SUBCASE("degenerate triple is trivially within bound") {
        const FiniteMetric m = shortcut_star(0.1);
        const AgentProfile profile({{1, 1}, {2, 1}, {3, 1}});
        const BargainCheckRecord rec = bargain_distance_bound_check(m, profile, 1, 1, 1, 1);
        CHECK(rec.realized == doctest::Approx(0.0));
        CHECK(rec.satisfied);
    }
    SUBCASE("tight shortcut instance") {
        const FiniteMetric m = shortcut_star(0.1);
        const AgentProfile profile({{1, 1}, {2, 1}, {3, 1}});
        const BargainCheckRecord rec = bargain_distance_bound_check(m, profile, 1, 2, 3, 0);
        CHECK(rec.realized == doctest::Approx(2.9));
        CHECK(rec.bound == doctest::Approx(3.0));
        CHECK(rec.satisfied);
    }
    SUBCASE("random instances never violate the bound") {
        Rng rng(31);
        for (int trial = 0; trial < 500; ++trial) {
            const MetricInstance inst = random_metric_instance(15, rng);
            const auto& bliss = inst.profile.entries();
            const auto pick = [&] { return bliss[rng.bounded(bliss.size())].first; };
            const int a =
                static_cast<int>(rng.bounded(static_cast<std::uint64_t>(inst.space.size())));
            CHECK(bargain_distance_bound_check(inst.space, inst.profile, pick(), pick(), pick(), a).satisfied);
        }
    }
}
