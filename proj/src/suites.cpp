#include "delib/suites.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "delib/instance_io.hpp"
#include "delib/parallel.hpp"

namespace delib {

namespace {

AgentProfile random_profile(const MedianGraph& g, Rng& rng) {
    const int n = g.size();
    const int m = 2 + static_cast<int>(rng.bounded(9));
    std::vector<std::pair<int, long long>> bliss;
    for (int i = 0; i < m; ++i)
        bliss.emplace_back(static_cast<int>(rng.bounded(static_cast<std::uint64_t>(n))),
                           1 + static_cast<long long>(rng.bounded(3)));
    bool distinct = false;
    for (const auto& [p, w] : bliss)
        if (p != bliss.front().first) distinct = true;
    if (!distinct) bliss.emplace_back((bliss.front().first + 1) % n, 1);
    return AgentProfile(bliss);
}

// Figure-of-merit for worst-case lines: larger measured is worse.
void add_max_line(SuiteReport& rep, const std::string& name, double measured, double bound) {
    rep.lines.push_back({name, measured <= bound, measured, bound});
}

void add_min_line(SuiteReport& rep, const std::string& name, double measured, double bound) {
    rep.lines.push_back({name, measured >= bound, measured, bound});
}

struct MeanSe {
    double mean = 0.0;
    double se = 0.0;
};

MeanSe mean_and_se(const std::vector<double>& xs) {
    const auto n = static_cast<double>(xs.size());
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= n;
    if (xs.size() < 2) return {mean, 0.0};
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var /= (n - 1.0);
    return {mean, std::sqrt(var / n)};
}

// 3x3 grid whose closure covers all but one corner: bliss points on three
// corners plus the right-column middle and the top-row middle.
MedianInstance three_corner_grid_instance() {
    MedianGraph g = grid(3, 3);
    const auto id = [](int x, int y) { return y * 3 + x; };
    std::vector<std::pair<int, long long>> bliss = {
        {id(0, 0), 1}, {id(0, 2), 1}, {id(1, 2), 1}, {id(2, 0), 1}, {id(2, 1), 1}};
    return {std::move(g), AgentProfile(bliss)};
}

} // namespace

std::vector<MedianInstance> median_test_corpus(std::uint64_t seed, int count) {
    Rng root(seed);
    std::vector<MedianInstance> corpus;
    corpus.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        Rng rng = root.child(static_cast<std::uint64_t>(i));
        MedianGraph g = [&]() -> MedianGraph {
            switch (i % 3) {
            case 0:
                return random_tree(2 + static_cast<int>(rng.bounded(39)), rng.next());
            case 1:
                return grid(2 + static_cast<int>(rng.bounded(5)),
                            2 + static_cast<int>(rng.bounded(5)));
            default:
                return hypercube(1 + static_cast<int>(rng.bounded(6)));
            }
        }();
        g.build_median_cache();
        AgentProfile profile = random_profile(g, rng);
        corpus.push_back({std::move(g), std::move(profile)});
    }
    return corpus;
}

std::vector<MedianGraph> small_median_catalog(int max_vertices) {
    std::vector<MedianGraph> catalog;
    const auto keep = [&](MedianGraph g) {
        if (g.size() <= max_vertices) {
            g.build_median_cache();
            catalog.push_back(std::move(g));
        }
    };
    for (int k = 1; k <= 11; ++k) keep(star(k));
    keep(grid(2, 2));
    keep(grid(2, 3));
    keep(grid(3, 3));
    keep(grid(2, 4));
    keep(grid(3, 4));
    keep(grid(2, 6));
    keep(grid(4, 4));
    keep(grid(6, 6));
    keep(hypercube(1));
    keep(hypercube(2));
    keep(hypercube(3));
    keep(hypercube(6));
    for (std::uint64_t s = 1; s <= 3; ++s) keep(random_tree(12, s));
    for (std::uint64_t s = 1; s <= 3; ++s) keep(random_tree(40, 100 + s));
    for (std::uint64_t s = 1; s <= 2; ++s) keep(random_grid_subset(4, 4, s));
    keep(random_grid_subset(6, 6, 7));
    return catalog;
}

// ---------------------------------------------------------------------------
// Exact stationary distortion on the corpus vs the 1.20711 limit.
// ---------------------------------------------------------------------------

SuiteReport suite_stationary_bound(const SuiteOptions& opt) {
    SuiteReport rep{"stationary-bound", {}};
    const auto corpus = median_test_corpus(opt.seed);
    double worst = 0.0;
    int solved = 0;
    for (const auto& inst : corpus) {
        const DeliberationChain chain = build_chain(inst.graph, inst.profile);
        const OutcomeDistribution pi = stationary_distribution(chain);
        const FiniteMetric metric = inst.graph.to_metric();
        worst = std::max(worst, distortion(metric, inst.profile, pi));
        ++solved;
    }
    add_max_line(rep, "exact stationary distortion over " + std::to_string(solved) + " instances",
                 worst, 1.20711 + 1e-6);
    return rep;
}

// ---------------------------------------------------------------------------
// Per-dimension closed forms against full-chain solves on hypercubes.
// ---------------------------------------------------------------------------

SuiteReport suite_factorization(const SuiteOptions& opt) {
    SuiteReport rep{"factorization", {}};
    Rng rng = Rng(opt.seed).child("factorization");
    double worst_marginal = 0.0;
    double worst_cost = 0.0;
    for (int d = 1; d <= 6; ++d) {
        for (int trial = 0; trial < 5; ++trial) {
            MedianGraph g = hypercube(d);
            g.build_median_cache();
            const AgentProfile profile = random_profile(g, rng);
            const HypercubeEmbedding emb = hypercube_embed(g);
            const std::vector<double> f = dimension_fractions(emb, profile);
            const DeliberationChain chain = build_chain(g, profile);
            const OutcomeDistribution pi = stationary_distribution(chain);
            for (int k = 0; k < emb.dim(); ++k) {
                double marginal = 0.0;
                double cost = 0.0;
                for (std::size_t s = 0; s < pi.support().size(); ++s) {
                    const bool one = emb.bit(pi.support()[s], k);
                    marginal += one ? pi.prob()[s] : 0.0;
                    cost += pi.prob()[s] * (one ? 1.0 - f[static_cast<std::size_t>(k)]
                                                : f[static_cast<std::size_t>(k)]);
                }
                const double fk = f[static_cast<std::size_t>(k)];
                worst_marginal = std::max(worst_marginal,
                                          std::abs(marginal - marginal_stationary(fk)));
                worst_cost = std::max(worst_cost, std::abs(cost - expected_dim_cost(fk)));
            }
        }
    }
    add_max_line(rep, "stationary marginal vs f^2/(1+2f^2-2f), max abs error", worst_marginal,
                 1e-10);
    add_max_line(rep, "per-dimension cost vs f(1-f)/(f^2+(1-f)^2), max abs error", worst_cost,
                 1e-10);
    return rep;
}

// ---------------------------------------------------------------------------
// Monte Carlo distortion after 9 rounds stays below 1.22 (+3 SE).
// ---------------------------------------------------------------------------

SuiteReport suite_convergence(const SuiteOptions& opt) {
    SuiteReport rep{"convergence", {}};
    rep.lines.push_back({"rounds for eps 0.012", convergence_rounds(0.012) == 9,
                         static_cast<double>(convergence_rounds(0.012)), 9.0});
    const auto corpus = median_test_corpus(opt.seed);
    const int replicas = 100000;
    const int rounds = convergence_rounds(0.012); // 9
    const Rng root = Rng(opt.seed).child("convergence");
    double worst_margin = -std::numeric_limits<double>::infinity();
    double worst_tight_margin = -std::numeric_limits<double>::infinity();
    std::vector<double> sc(static_cast<std::size_t>(replicas));
    for (std::size_t idx = 0; idx < corpus.size(); ++idx) {
        const auto& inst = corpus[idx];
        const FiniteMetric metric = inst.graph.to_metric();
        const double opt_sc =
            social_cost(metric, inst.profile, generalized_median(metric, inst.profile));
        const Rng base = root.child(idx);
        parallel_for_index(replicas, opt.threads, [&](int r) {
            Rng stream = base.child(static_cast<std::uint64_t>(r));
            int a = inst.profile.sample(stream);
            for (int t = 0; t < rounds; ++t) {
                const int u = inst.profile.sample(stream);
                const int v = inst.profile.sample(stream);
                a = inst.graph.median(u, v, a);
            }
            sc[static_cast<std::size_t>(r)] = social_cost(metric, inst.profile, a);
        });
        const MeanSe stats = mean_and_se(sc);
        const double dist = stats.mean / opt_sc;
        const double se = stats.se / opt_sc;
        worst_margin = std::max(worst_margin, dist - (1.22 + 3.0 * se));
        worst_tight_margin = std::max(worst_tight_margin, dist - (1.2072 + 0.012 + 3.0 * se));
    }
    add_max_line(rep, "worst (MC distortion at T=9) - (1.22 + 3 SE), 1e5 replicas", worst_margin,
                 0.0);
    add_max_line(rep, "worst (MC distortion at T=9) - (1.2072 + eps + 3 SE)", worst_tight_margin,
                 0.0);
    return rep;
}

// ---------------------------------------------------------------------------
// Lower-bound ratio curve maxima.
// ---------------------------------------------------------------------------

SuiteReport suite_curve_maxima(const SuiteOptions&) {
    SuiteReport rep{"curve-maxima", {}};
    const CurveMax dim = maximize_on_interval([](double f) { return dim_cost_ratio(f); }, 1e-9, 0.5);
    add_max_line(rep, "|max (1-f)/(f^2+(1-f)^2) - 1.2071|", std::abs(dim.value - 1.2071), 1e-4);
    const CurveMax sp =
        maximize_on_interval([](double p) { return shortest_path_ratio(p); }, 1e-9, 0.5 - 1e-9);
    add_max_line(rep, "|max -2p^2+p+1 - 9/8|", std::abs(sp.value - 1.125), 1e-9);
    add_max_line(rep, "|argmax of -2p^2+p+1 - 0.25|", std::abs(sp.arg - 0.25), 1e-6);
    const CurveMax oli =
        maximize_on_interval([](double p) { return oligarch_ratio(p); }, 1e-9, 0.5 - 1e-9);
    rep.lines.push_back({"max 4p^3-8p^2+3p+1 within [1.315, 1.316]",
                         oli.value >= 1.315 && oli.value <= 1.316, oli.value, 1.316});
    const bool ordered = 1.125 < dim.value && dim.value < oli.value && oli.value < 2.0 && 2.0 < 3.0;
    rep.lines.push_back({"bound ordering 1.125 < 1.208 < 1.316 < 2 < 3", ordered,
                         ordered ? 1.0 : 0.0, 1.0});
    return rep;
}

// ---------------------------------------------------------------------------
// Random dictatorship baselines: star distortion, 2-point squared family.
// ---------------------------------------------------------------------------

SuiteReport suite_random_dictatorship(const SuiteOptions&) {
    SuiteReport rep{"random-dictatorship", {}};
    const MedianInstance ks = kstar_instance(100);
    const FiniteMetric metric = ks.graph.to_metric();
    const double rd = distortion(metric, ks.profile, rd_distribution(ks.profile));
    add_max_line(rep, "|100-star dictatorship distortion - 1.98|", std::abs(rd - 1.98), 1e-12);

    const MedianGraph edge = MedianGraph::from_edges(2, {{0, 1}});
    const FiniteMetric edge_metric = edge.to_metric();
    double worst = 0.0;
    for (long long denom : {10LL, 20LL, 100LL, 200LL}) {
        const AgentProfile profile({{0, denom - 1}, {1, 1}});
        const double f = 1.0 / static_cast<double>(denom);
        const double got = squared_distortion(edge_metric, profile, rd_distribution(profile));
        const double expected = (1.0 - f) * (1.0 - f) / f + (1.0 - f); // = (1-f)/f
        worst = std::max(worst, std::abs(got - expected));
    }
    add_max_line(rep, "|2-point squared-distortion - (1-f)^2/f + (1-f)|, f in {.1,.05,.01,.005}",
                 worst, 1e-9);
    const AgentProfile small_f({{0, 199}, {1, 1}});
    const double sq = squared_distortion(edge_metric, small_f, rd_distribution(small_f));
    add_min_line(rep, "2-point squared-distortion at f=0.005", sq, 100.0);
    return rep;
}

// ---------------------------------------------------------------------------
// Instance-wise dominance of the exact chain over random dictatorship.
// ---------------------------------------------------------------------------

SuiteReport suite_dominance(const SuiteOptions& opt) {
    SuiteReport rep{"dominance", {}};
    const auto corpus = median_test_corpus(opt.seed);
    double worst_violation = -std::numeric_limits<double>::infinity();
    int equality_mismatches = 0;
    double worst_dim_gap = 0.0;
    for (const auto& inst : corpus) {
        const FiniteMetric metric = inst.graph.to_metric();
        const OutcomeDistribution pi = stationary_distribution(build_chain(inst.graph, inst.profile));
        const double e_seq = expected_social_cost(metric, inst.profile, pi);
        const double e_rd =
            expected_social_cost(metric, inst.profile, rd_distribution(inst.profile));
        worst_violation = std::max(worst_violation, e_seq - e_rd);
        const HypercubeEmbedding emb = hypercube_embed(inst.graph);
        const std::vector<double> f = dimension_fractions(emb, inst.profile);
        bool degenerate = true;
        for (double fk : f)
            if (fk > 1e-12 && std::abs(fk - 0.5) > 1e-12 && fk < 1.0 - 1e-12) degenerate = false;
        if (std::abs(e_seq - e_rd) <= 1e-9) {
            if (!degenerate) ++equality_mismatches;
        } else if (degenerate) {
            ++equality_mismatches;
        }
        // Per-dimension form of the same dominance.
        for (double fk : f)
            worst_dim_gap = std::max(worst_dim_gap, expected_dim_cost(fk) - 2.0 * fk * (1.0 - fk));
    }
    add_max_line(rep, "worst chain E[SC] - dictatorship E[SC]", worst_violation, 1e-9);
    add_max_line(rep, "equality exactly on unanimity / f=1/2 instances, mismatches",
                 static_cast<double>(equality_mismatches), 0.0);
    add_max_line(rep, "worst per-dim f(1-f)/(f^2+(1-f)^2) - 2f(1-f)", worst_dim_gap, 1e-12);
    return rep;
}

// ---------------------------------------------------------------------------
// General metrics: distortion <= 3 + 3 SE, squared <= 41 + 3 SE; tight family.
// ---------------------------------------------------------------------------

SuiteReport suite_general_metric(const SuiteOptions& opt) {
    SuiteReport rep{"general-metric", {}};
    Rng rng = Rng(opt.seed).child("general-metric");
    double worst_dist_margin = -std::numeric_limits<double>::infinity();
    double worst_sq_margin = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < 100; ++k) {
        const MetricInstance inst = random_metric_instance(30, rng);
        const SweepReport sweep = general_metric_distortion_sweep(
            inst.space, inst.profile, 12, 2000, rng.next(), opt.threads);
        worst_dist_margin = std::max(worst_dist_margin,
                                     sweep.distortion - (3.0 + 3.0 * sweep.distortion_se));
        worst_sq_margin = std::max(
            worst_sq_margin,
            sweep.squared_distortion - (41.0 + 3.0 * sweep.squared_distortion_se));
    }
    add_max_line(rep, "worst MC distortion - (3 + 3 SE), 100 random metrics", worst_dist_margin,
                 0.0);
    add_max_line(rep, "worst MC squared-distortion - (41 + 3 SE)", worst_sq_margin, 0.0);

    for (int n : {10, 20, 50}) {
        const StarShortcutInstance inst = metric_star_shortcut_instance(n, 0.01);
        const SweepReport sweep = general_metric_distortion_sweep(inst.space, inst.profile, 10,
                                                                  400, rng.next(), opt.threads);
        add_max_line(rep,
                     "star-shortcut n=" + std::to_string(n) + " MC distortion - (3 + 3 SE)",
                     sweep.distortion - (3.0 + 3.0 * sweep.distortion_se), 0.0);
        add_max_line(
            rep, "star-shortcut n=" + std::to_string(n) + " MC squared-distortion - (41 + 3 SE)",
            sweep.squared_distortion - (41.0 + 3.0 * sweep.squared_distortion_se), 0.0);
    }

    const StarShortcutInstance tight = metric_star_shortcut_instance(50, 0.01);
    const int chosen = nash_bargain(tight.space, tight.leaf(0), tight.leaf(1), tight.center()).point;
    const double opt_sc =
        social_cost(tight.space, tight.profile, generalized_median(tight.space, tight.profile));
    const double ratio = social_cost(tight.space, tight.profile, chosen) / opt_sc;
    add_max_line(rep, "|star-shortcut(50, 0.01) per-step SC ratio - 2.8908|",
                 std::abs(ratio - 2.8908), 1e-4);
    rep.lines.push_back({"per-step bargain lands on the pair shortcut",
                         chosen == tight.shortcut(0, 1), static_cast<double>(chosen),
                         static_cast<double>(tight.shortcut(0, 1))});
    return rep;
}

// ---------------------------------------------------------------------------
// Property sweeps: bargaining equivalence, commutation, distance bound,
// Pareto efficiency, truthfulness, chain structure.
// ---------------------------------------------------------------------------

SuiteReport suite_properties(const SuiteOptions& opt) {
    SuiteReport rep{"properties", {}};

    // Bargaining on the graph metric equals the triple median, exhaustively.
    {
        int mismatches = 0;
        long long checked = 0;
        for (const auto& g : small_median_catalog(12)) {
            const FiniteMetric metric = g.to_metric();
            for (int u = 0; u < g.size(); ++u)
                for (int v = 0; v < g.size(); ++v)
                    for (int a = 0; a < g.size(); ++a) {
                        ++checked;
                        if (nash_bargain(metric, u, v, a).point != g.median(u, v, a)) ++mismatches;
                    }
        }
        add_max_line(rep,
                     "bargain = median mismatches over " + std::to_string(checked) + " triples",
                     static_cast<double>(mismatches), 0.0);

        // Sampled triples on graphs too large for the exhaustive sweep.
        Rng rng = Rng(opt.seed).child("bargain-sample");
        int sampled_mismatches = 0;
        for (const MedianGraph& g : {grid(6, 6), hypercube(6), random_tree(40, 12345)}) {
            const FiniteMetric metric = g.to_metric();
            const auto vertex = [&] {
                return static_cast<int>(rng.bounded(static_cast<std::uint64_t>(g.size())));
            };
            for (int k = 0; k < 2000; ++k) {
                const int u = vertex(), v = vertex(), a = vertex();
                if (nash_bargain(metric, u, v, a).point != g.median(u, v, a))
                    ++sampled_mismatches;
            }
        }
        add_max_line(rep, "bargain = median mismatches, 6000 sampled triples on large graphs",
                     static_cast<double>(sampled_mismatches), 0.0);
    }

    // Embedding commutes with medians on every triple of every catalog graph.
    {
        int failures = 0;
        for (const auto& g : small_median_catalog(64)) {
            const HypercubeEmbedding emb = hypercube_embed(g);
            for (int u = 0; u < g.size(); ++u)
                for (int v = u; v < g.size(); ++v)
                    for (int w = v; w < g.size(); ++w)
                        if (!embedding_median_commutes(g, emb, u, v, w)) ++failures;
        }
        add_max_line(rep, "median/majority commutation failures", static_cast<double>(failures),
                     0.0);
    }

    // Bargaining distance bound on random metric instances.
    {
        Rng rng = Rng(opt.seed).child("bound-sweep");
        int violations = 0;
        std::vector<BargainCheckRecord> records;
        records.reserve(10000);
        for (int k = 0; k < 10000; ++k) {
            const MetricInstance inst = random_metric_instance(30, rng);
            const auto& bliss = inst.profile.entries();
            const auto pick = [&] {
                return bliss[rng.bounded(bliss.size())].first;
            };
            const int a = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(inst.space.size())));
            records.push_back(
                bargain_distance_bound_check(inst.space, inst.profile, pick(), pick(), pick(), a));
            if (!records.back().satisfied) ++violations;
        }
        if (!opt.bound_records_path.empty()) {
            std::ofstream out(opt.bound_records_path, std::ios::binary);
            if (out) out << bargain_check_csv(records);
        }
        add_max_line(rep, "bargain distance bound violations in 10^4 random instances",
                     static_cast<double>(violations), 0.0);
    }

    // Ex-post Pareto efficiency of realized trajectories.
    {
        Rng rng = Rng(opt.seed).child("pareto");
        int dominated = 0;
        const auto run_class = [&](const MedianInstance& inst, int runs) {
            const FiniteMetric metric = inst.graph.to_metric();
            DeliberationConfig config{20, 0, std::nullopt};
            for (int r = 0; r < runs; ++r) {
                Rng stream = rng.child(static_cast<std::uint64_t>(r));
                const Trajectory traj = run_sequential(inst.graph, inst.profile, config, stream);
                if (!trajectory_pareto_check(metric, inst.profile, traj)) ++dominated;
            }
        };
        MedianInstance fig = three_corner_grid_instance();
        fig.graph.build_median_cache();
        run_class(fig, 1000);
        for (int i = 0; i < 10; ++i) {
            MedianGraph g = random_tree(2 + static_cast<int>(rng.bounded(49)), rng.next());
            g.build_median_cache();
            AgentProfile profile = random_profile(g, rng);
            run_class({std::move(g), std::move(profile)}, 100);
        }
        for (int i = 0; i < 10; ++i) {
            MedianGraph g = random_grid_subset(5, 5, rng.next());
            g.build_median_cache();
            AgentProfile profile = random_profile(g, rng);
            run_class({std::move(g), std::move(profile)}, 100);
        }
        add_max_line(rep, "Pareto-dominated final outcomes across 3000 runs",
                     static_cast<double>(dominated), 0.0);
    }

    // Truthful reporting: exhaustive final rounds, then random continuations.
    {
        double min_gap = std::numeric_limits<double>::infinity();
        for (const auto& g : small_median_catalog(12)) {
            for (int pu = 0; pu < g.size(); ++pu)
                for (int opp = 0; opp < g.size(); ++opp)
                    for (int a = 0; a < g.size(); ++a) {
                        const ResponseScenario sc{a, opp, {}};
                        for (int z = 0; z < g.size(); ++z)
                            min_gap = std::min(min_gap, best_response_gap(g, sc, pu, z));
                    }
        }
        add_min_line(rep, "final-round best-response gap, exhaustive <= 12 vertices", min_gap, 0.0);

        Rng rng = Rng(opt.seed).child("truthful");
        double min_multi = std::numeric_limits<double>::infinity();
        for (int k = 0; k < 10000; ++k) {
            MedianGraph g = (rng.bounded(2) == 0)
                                ? random_tree(2 + static_cast<int>(rng.bounded(19)), rng.next())
                                : random_grid_subset(5, 5, rng.next());
            g.build_median_cache();
            const auto vertex = [&] {
                return static_cast<int>(rng.bounded(static_cast<std::uint64_t>(g.size())));
            };
            ResponseScenario sc{vertex(), vertex(), {}};
            const int extra = static_cast<int>(rng.bounded(5));
            for (int t = 0; t < extra; ++t) sc.future.emplace_back(vertex(), vertex());
            const int pu = vertex();
            for (int z = 0; z < g.size(); ++z)
                min_multi = std::min(min_multi, best_response_gap(g, sc, pu, z));
        }
        add_min_line(rep, "multi-round best-response gap, 10^4 random scenarios", min_multi, 0.0);
    }

    // Chain structure: every corpus chain solves, which verifies
    // irreducibility and self-loops internally.
    {
        const auto corpus = median_test_corpus(opt.seed);
        int solved = 0;
        for (const auto& inst : corpus) {
            stationary_distribution(build_chain(inst.graph, inst.profile));
            ++solved;
        }
        add_min_line(rep, "chains with unique stationary structure, of 200",
                     static_cast<double>(solved), 200.0);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Simplex: closed form, 4/3 bound, simulation agreement.
// ---------------------------------------------------------------------------

SuiteReport suite_simplex(const SuiteOptions& opt) {
    SuiteReport rep{"simplex", {}};
    const CurveMax bound =
        maximize_on_interval([](double a) { return simplex_distortion_bound(a); }, 0.0, 1.0);
    add_max_line(rep, "|max 1/(1-a+a^2) - 4/3|", std::abs(bound.value - 4.0 / 3.0), 1e-9);
    add_max_line(rep, "|argmax - 1/2|", std::abs(bound.arg - 0.5), 1e-6);

    Rng rng = Rng(opt.seed).child("simplex");
    double worst = 0.0;
    for (int k = 0; k < 500; ++k) {
        const int d = 2 + static_cast<int>(rng.bounded(7));
        std::vector<double> masses(static_cast<std::size_t>(d));
        double sum = 0.0;
        for (double& m : masses) {
            m = rng.uniform(0.0, 1.0) + 1e-6;
            sum += m;
        }
        for (double& m : masses) m /= sum;
        worst = std::max(worst, simplex_distortion(SimplexInstance(masses)));
    }
    add_max_line(rep, "closed-form distortion over 500 random instances", worst,
                 4.0 / 3.0 + 1e-9);

    const std::vector<std::vector<double>> cases = {
        {0.25, 0.75}, {0.2, 0.3, 0.5}, {0.1, 0.15, 0.2, 0.25, 0.3}};
    double worst_z = 0.0;
    for (std::size_t c = 0; c < cases.size(); ++c) {
        const SimplexInstance inst(cases[c]);
        const std::vector<double> s = simplex_stationary(inst);
        const SimplexSimReport sim =
            simplex_simulate(inst, 200, 10000, Rng(opt.seed).child("simplex-sim").child(c).seed(),
                             opt.threads);
        for (int i = 0; i < inst.dim(); ++i) {
            const double se = std::max(sim.coord_se[static_cast<std::size_t>(i)], 1e-12);
            worst_z = std::max(worst_z, std::abs(sim.mean_coords[static_cast<std::size_t>(i)] -
                                                 s[static_cast<std::size_t>(i)]) /
                                            se);
        }
    }
    add_max_line(rep, "worst |simulated mean - s_i| / SE at T=200, 10^4 replicas, d in {2,3,5}",
                 worst_z, 3.0);
    return rep;
}

// ---------------------------------------------------------------------------
// Near-unanimity: distortion <= 1 + eps for the chain, 2 - 2 eps for RD.
// ---------------------------------------------------------------------------

SuiteReport suite_eps_unanimity(const SuiteOptions& opt) {
    SuiteReport rep{"eps-unanimity", {}};
    std::vector<MedianGraph> graphs;
    graphs.push_back(random_tree(30, opt.seed + 1));
    graphs.push_back(random_tree(15, opt.seed + 2));
    graphs.push_back(grid(5, 5));
    graphs.push_back(grid(4, 6));
    for (auto& g : graphs) g.build_median_cache();

    for (double eps : {0.01, 0.05, 0.1}) {
        double worst = 0.0;
        for (const auto& g : graphs) {
            const AgentProfile profile = epsilon_unanimous_instance(g, eps);
            const OutcomeDistribution pi = stationary_distribution(build_chain(g, profile));
            worst = std::max(worst, distortion(g.to_metric(), profile, pi));
        }
        add_max_line(rep, "chain distortion at eps=" + format_double(eps), worst, 1.0 + eps + 1e-9);
    }

    const MedianGraph edge = MedianGraph::from_edges(2, {{0, 1}});
    const FiniteMetric edge_metric = edge.to_metric();
    double worst_rd = 0.0;
    for (double eps : {0.01, 0.05, 0.1}) {
        const AgentProfile profile = epsilon_unanimous_instance(edge, eps);
        const double rd = distortion(edge_metric, profile, rd_distribution(profile));
        worst_rd = std::max(worst_rd, std::abs(rd - (2.0 - 2.0 * eps)));
    }
    add_max_line(rep, "|2-point dictatorship distortion - 2(1-eps)|", worst_rd, 1e-12);
    return rep;
}

std::vector<SuiteReport> run_all_suites(const SuiteOptions& opt) {
    return {suite_stationary_bound(opt), suite_factorization(opt),  suite_convergence(opt),
            suite_curve_maxima(opt),     suite_random_dictatorship(opt), suite_dominance(opt),
            suite_general_metric(opt),   suite_properties(opt),     suite_simplex(opt),
            suite_eps_unanimity(opt)};
}

} // namespace delib
