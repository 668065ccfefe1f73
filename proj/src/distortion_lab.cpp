#include "delib/distortion_lab.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "delib/parallel.hpp"

namespace delib {

MedianInstance kstar_instance(int k) {
    if (k < 2) throw std::invalid_argument("kstar: need at least two leaves");
    std::vector<std::pair<int, long long>> bliss;
    for (int i = 1; i <= k; ++i) bliss.emplace_back(i, 1);
    return {star(k), AgentProfile(bliss)};
}

double oligarch_ratio(double p) { return 4.0 * p * p * p - 8.0 * p * p + 3.0 * p + 1.0; }

double shortest_path_ratio(double p) { return -2.0 * p * p + p + 1.0; }

CurveMax maximize_on_interval(const std::function<double(double)>& fn, double lo, double hi,
                              double tol) {
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - phi * (b - a);
    double d = a + phi * (b - a);
    double fc = fn(c), fd = fn(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = fn(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = fn(d);
        }
    }
    const double arg = 0.5 * (a + b);
    return {arg, fn(arg)};
}

long long HypercubeProfile::ones_total() const {
    long long total = 0;
    for (const auto& row : bliss)
        for (std::uint8_t b : row) total += b;
    return total;
}

double HypercubeProfile::mean_triple_median_ones() const {
    const int n = agents();
    if (n == 0 || dims == 0) return 0.0;
    // Per dimension, the mean over ordered triples with replacement is
    // exactly 3c^2 - 2c^3 for c = ones/n; averaging dimensions matches the
    // enumeration without walking all n^3 triples.
    double acc = 0.0;
    for (int k = 0; k < dims; ++k) {
        int ones = 0;
        for (const auto& row : bliss) ones += row[static_cast<std::size_t>(k)];
        const double c = static_cast<double>(ones) / n;
        acc += 3.0 * c * c - 2.0 * c * c * c;
    }
    return acc / dims;
}

AgentProfile HypercubeProfile::lift() const {
    if (dims > 20) throw std::invalid_argument("hypercube profile: too many dimensions to lift");
    std::vector<std::pair<int, long long>> entries;
    for (const auto& row : bliss) {
        int v = 0;
        for (int k = 0; k < dims; ++k)
            if (row[static_cast<std::size_t>(k)]) v |= 1 << k;
        entries.emplace_back(v, 1);
    }
    return AgentProfile(entries);
}

HypercubeProfile hypercube_lb_instance(int dims, double p, int n, std::uint64_t seed) {
    if (dims < 1 || n < 1) throw std::invalid_argument("hypercube instance: sizes must be >= 1");
    if (!(p > 0.0) || !(p < 0.5))
        throw std::invalid_argument("hypercube instance: p must lie in (0, 1/2)");
    Rng rng(seed);
    HypercubeProfile profile;
    profile.dims = dims;
    profile.bliss.assign(static_cast<std::size_t>(n), std::vector<std::uint8_t>(dims, 0));
    for (auto& row : profile.bliss)
        for (int k = 0; k < dims; ++k) row[static_cast<std::size_t>(k)] = rng.uniform01() < p;
    return profile;
}

int StarShortcutInstance::shortcut(int i, int j) const {
    if (i > j) std::swap(i, j);
    if (i < 0 || j >= n || i == j) throw std::invalid_argument("star shortcut: bad leaf pair");
    // Pairs in lexicographic order after center and leaves.
    const int offset = i * n - i * (i + 1) / 2 + (j - i - 1);
    return 1 + n + offset;
}

StarShortcutInstance metric_star_shortcut_instance(int n, double eps) {
    if (n < 3) throw std::invalid_argument("star shortcut: need n >= 3 leaves");
    if (!(eps > 0.0) || !(eps < 1.0))
        throw std::invalid_argument("star shortcut: eps must lie in (0, 1)");
    std::vector<WeightedEdge> edges;
    for (int i = 0; i < n; ++i) edges.push_back({0, 1 + i, 1.0});
    int next = 1 + n;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            edges.push_back({1 + i, next, 1.0 - eps});
            edges.push_back({1 + j, next, 1.0 - eps});
            ++next;
        }
    }
    std::vector<std::pair<int, long long>> bliss;
    for (int i = 0; i < n; ++i) bliss.emplace_back(1 + i, 1);
    return {FiniteMetric::from_weighted_graph(next, edges), AgentProfile(bliss), n, eps};
}

MetricInstance random_metric_instance(int max_points, Rng& rng) {
    if (max_points < 2) throw std::invalid_argument("random metric: need at least two points");
    const int n = 2 + static_cast<int>(rng.bounded(static_cast<std::uint64_t>(max_points - 1)));
    FiniteMetric space = [&] {
        if (rng.bounded(2) == 0) {
            // Random connected weighted graph.
            std::vector<WeightedEdge> edges;
            std::set<std::pair<int, int>> seen;
            for (int v = 1; v < n; ++v) {
                const int u = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(v)));
                edges.push_back({u, v, rng.uniform(0.2, 1.0)});
                seen.insert({u, v});
            }
            const int extra = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(n)));
            for (int e = 0; e < extra; ++e) {
                int a = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(n)));
                int b = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(n)));
                if (a == b) continue;
                if (a > b) std::swap(a, b);
                if (!seen.insert({a, b}).second) continue;
                edges.push_back({a, b, rng.uniform(0.2, 1.0)});
            }
            return FiniteMetric::from_weighted_graph(n, edges);
        }
        // Uniform [1, 2) table; the triangle inequality holds for free.
        std::vector<std::vector<double>> table(static_cast<std::size_t>(n),
                                               std::vector<double>(static_cast<std::size_t>(n)));
        for (int i = 0; i < n; ++i) {
            table[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 0.0;
            for (int j = i + 1; j < n; ++j) {
                const double d = rng.uniform(1.0, 2.0);
                table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = d;
                table[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = d;
            }
        }
        return FiniteMetric::from_table(std::move(table));
    }();

    const int m = 1 + static_cast<int>(rng.bounded(static_cast<std::uint64_t>(std::min(n, 10))));
    std::vector<std::pair<int, long long>> bliss;
    for (int i = 0; i < m; ++i)
        bliss.emplace_back(static_cast<int>(rng.bounded(static_cast<std::uint64_t>(n))),
                           1 + static_cast<long long>(rng.bounded(3)));
    return {std::move(space), AgentProfile(bliss)};
}

namespace {

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

} // namespace

SweepReport general_metric_distortion_sweep(const FiniteMetric& space,
                                            const AgentProfile& profile, std::int64_t rounds,
                                            int replicas, std::uint64_t seed, int threads) {
    if (replicas < 1) throw std::invalid_argument("sweep: replicas must be >= 1");
    SweepReport report;
    report.replicas = replicas;
    report.rounds = rounds;
    report.seed = seed;
    report.opt_sc = social_cost(space, profile, generalized_median(space, profile));

    const Rng base(seed);
    std::vector<double> sc(static_cast<std::size_t>(replicas));
    DeliberationConfig config{rounds, seed, std::nullopt};
    parallel_for_index(replicas, threads, [&](int r) {
        Rng stream = base.child(static_cast<std::uint64_t>(r));
        const Trajectory traj = run_sequential(space, profile, config, stream);
        sc[static_cast<std::size_t>(r)] = social_cost(space, profile, traj.final_outcome());
    });
    std::vector<double> sq(sc.size());
    for (std::size_t i = 0; i < sc.size(); ++i) sq[i] = sc[i] * sc[i];

    const MeanSe first = mean_and_se(sc);
    const MeanSe second = mean_and_se(sq);
    report.distortion = first.mean / report.opt_sc;
    report.distortion_se = first.se / report.opt_sc;
    report.squared_distortion = second.mean / (report.opt_sc * report.opt_sc);
    report.squared_distortion_se = second.se / (report.opt_sc * report.opt_sc);
    report.distortion_within_bound = report.distortion <= 3.0 + 3.0 * report.distortion_se;
    report.squared_distortion_within_bound =
        report.squared_distortion <= 41.0 + 3.0 * report.squared_distortion_se;
    return report;
}

SimplexInstance::SimplexInstance(std::vector<double> p) : masses(std::move(p)) {
    if (masses.empty()) throw std::invalid_argument("simplex: no vertices");
    double sum = 0.0;
    for (double m : masses) {
        if (m < 0.0) throw std::invalid_argument("simplex: negative mass");
        sum += m;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("simplex: masses must sum to 1");
}

std::vector<double> simplex_stationary(const SimplexInstance& inst) {
    const int d = inst.dim();
    std::vector<double> s(static_cast<std::size_t>(d), 0.0);
    for (int i = 0; i < d; ++i) {
        if (inst.masses[static_cast<std::size_t>(i)] >= 1.0 - 1e-15) {
            s[static_cast<std::size_t>(i)] = 1.0; // unanimity
            return s;
        }
    }
    double denom = 0.0;
    for (int i = 0; i < d; ++i) {
        const double p = inst.masses[static_cast<std::size_t>(i)];
        s[static_cast<std::size_t>(i)] = p / (1.0 - p);
        denom += s[static_cast<std::size_t>(i)];
    }
    for (double& v : s) v /= denom;
    return s;
}

double simplex_distortion(const SimplexInstance& inst) {
    const std::vector<double> s = simplex_stationary(inst);
    double alg = 1.0;
    double pmax = 0.0;
    for (int i = 0; i < inst.dim(); ++i) {
        alg -= inst.masses[static_cast<std::size_t>(i)] * s[static_cast<std::size_t>(i)];
        pmax = std::max(pmax, inst.masses[static_cast<std::size_t>(i)]);
    }
    const double opt = 1.0 - pmax;
    if (opt <= 0.0) return 1.0; // unanimity
    return alg / opt;
}

double simplex_distortion_bound(double alpha) {
    if (alpha < 0.0 || alpha > 1.0) throw std::invalid_argument("simplex bound: alpha outside [0, 1]");
    return 1.0 / (1.0 - alpha + alpha * alpha);
}

SimplexSimReport simplex_simulate(const SimplexInstance& inst, std::int64_t rounds, int replicas,
                                  std::uint64_t seed, int threads) {
    if (rounds < 1 || replicas < 1)
        throw std::invalid_argument("simplex sim: rounds and replicas must be >= 1");
    const int d = inst.dim();
    std::vector<double> cumulative(static_cast<std::size_t>(d));
    double acc = 0.0;
    for (int i = 0; i < d; ++i) {
        acc += inst.masses[static_cast<std::size_t>(i)];
        cumulative[static_cast<std::size_t>(i)] = acc;
    }
    const auto draw = [&](Rng& rng) {
        const double r = rng.uniform01();
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), r);
        return static_cast<int>(std::min<std::ptrdiff_t>(it - cumulative.begin(), d - 1));
    };

    const Rng base(seed);
    std::vector<std::vector<double>> finals(static_cast<std::size_t>(replicas));
    parallel_for_index(replicas, threads, [&](int r) {
        Rng stream = base.child(static_cast<std::uint64_t>(r));
        std::vector<double> state(static_cast<std::size_t>(d), 0.0);
        state[static_cast<std::size_t>(draw(stream))] = 1.0;
        for (std::int64_t t = 0; t < rounds; ++t) {
            const int i = draw(stream);
            const int j = draw(stream);
            state = simplex_bargain(i, j, state);
        }
        finals[static_cast<std::size_t>(r)] = std::move(state);
    });

    SimplexSimReport report;
    report.replicas = replicas;
    report.mean_coords.assign(static_cast<std::size_t>(d), 0.0);
    report.coord_se.assign(static_cast<std::size_t>(d), 0.0);
    std::vector<double> costs(static_cast<std::size_t>(replicas));
    for (int r = 0; r < replicas; ++r) {
        double cost = 1.0;
        for (int i = 0; i < d; ++i) {
            const double c = finals[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)];
            report.mean_coords[static_cast<std::size_t>(i)] += c;
            cost -= inst.masses[static_cast<std::size_t>(i)] * c;
        }
        costs[static_cast<std::size_t>(r)] = cost;
    }
    for (int i = 0; i < d; ++i) {
        report.mean_coords[static_cast<std::size_t>(i)] /= replicas;
        double var = 0.0;
        for (int r = 0; r < replicas; ++r) {
            const double delta = finals[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)] -
                                 report.mean_coords[static_cast<std::size_t>(i)];
            var += delta * delta;
        }
        var /= std::max(1, replicas - 1);
        report.coord_se[static_cast<std::size_t>(i)] = std::sqrt(var / replicas);
    }
    const MeanSe cost_stats = mean_and_se(costs);
    report.mean_cost = cost_stats.mean;
    report.cost_se = cost_stats.se;
    std::vector<double> sq(costs.size());
    for (std::size_t i = 0; i < costs.size(); ++i) sq[i] = costs[i] * costs[i];
    const MeanSe sq_stats = mean_and_se(sq);
    report.mean_sq_cost = sq_stats.mean;
    report.sq_cost_se = sq_stats.se;
    return report;
}

AgentProfile epsilon_unanimous_instance(const MedianGraph& g, double eps) {
    if (!(eps > 0.0) || eps >= 0.5)
        throw std::invalid_argument("eps-unanimous: eps must lie in (0, 1/2)");
    if (g.size() < 2) throw std::invalid_argument("eps-unanimous: need at least two vertices");
    long long denom = -1;
    for (long long q = 2; q <= 1000000; ++q) {
        const double scaled = eps * static_cast<double>(q);
        if (std::abs(scaled - std::llround(scaled)) < 1e-9 && std::llround(scaled) >= 1) {
            denom = q;
            break;
        }
    }
    if (denom < 0)
        throw std::invalid_argument("eps-unanimous: eps not expressible with integer weights");
    const long long minority = std::llround(eps * static_cast<double>(denom));
    std::vector<std::pair<int, long long>> bliss;
    bliss.emplace_back(0, denom - minority);
    // Spread the minority one unit at a time over the other vertices.
    for (long long u = 0; u < minority; ++u)
        bliss.emplace_back(1 + static_cast<int>(u % (g.size() - 1)), 1);
    return AgentProfile(bliss);
}

} // namespace delib
