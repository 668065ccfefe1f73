// delib: sequential pairwise deliberation over finite metrics and median
// graphs. Instance verification, mechanism simulation, exact stationary
// analysis, and the guarantee suites.
//
// Exit codes: 0 success, 1 check failure, 2 usage or parse error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "delib/deliberation.hpp"
#include "delib/distortion_lab.hpp"
#include "delib/instance_io.hpp"
#include "delib/median_graph.hpp"
#include "delib/metric.hpp"
#include "delib/parallel.hpp"
#include "delib/suites.hpp"

namespace {

using namespace delib;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(item);
    return parts;
}

long long parse_int(const std::string& s) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw UsageError("generator: bad integer parameter '" + s + "'");
    }
}

double parse_real(const std::string& s) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw UsageError("generator: bad real parameter '" + s + "'");
    }
}

// Generator specs (name:params):
//   star:k  grid:w,h  hypercube:d  tree:n,seed  gridsubset:w,h,seed
//     take their agents from --random-agents;
//   kstar:k  starshortcut:n,eps  twopoint:w0,w1  carry their own profile.
Instance build_generated(const std::string& spec, int random_agents, std::uint64_t seed) {
    const auto colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    const std::vector<std::string> args =
        colon == std::string::npos ? std::vector<std::string>{} : split(spec.substr(colon + 1), ',');
    const auto want = [&](std::size_t k) {
        if (args.size() != k)
            throw UsageError("generator " + name + ": expected " + std::to_string(k) +
                             " parameters");
    };

    std::optional<MedianGraph> graph;
    std::optional<AgentProfile> profile;
    std::optional<FiniteMetric> metric;
    if (name == "star") {
        want(1);
        graph = star(static_cast<int>(parse_int(args[0])));
    } else if (name == "grid") {
        want(2);
        graph = grid(static_cast<int>(parse_int(args[0])), static_cast<int>(parse_int(args[1])));
    } else if (name == "hypercube") {
        want(1);
        graph = hypercube(static_cast<int>(parse_int(args[0])));
    } else if (name == "tree") {
        want(2);
        graph = random_tree(static_cast<int>(parse_int(args[0])),
                            static_cast<std::uint64_t>(parse_int(args[1])));
    } else if (name == "gridsubset") {
        want(3);
        graph = random_grid_subset(static_cast<int>(parse_int(args[0])),
                                   static_cast<int>(parse_int(args[1])),
                                   static_cast<std::uint64_t>(parse_int(args[2])));
    } else if (name == "kstar") {
        want(1);
        MedianInstance inst = kstar_instance(static_cast<int>(parse_int(args[0])));
        graph = std::move(inst.graph);
        profile = std::move(inst.profile);
    } else if (name == "twopoint") {
        want(2);
        graph = MedianGraph::from_edges(2, {{0, 1}});
        profile = AgentProfile({{0, parse_int(args[0])}, {1, parse_int(args[1])}});
    } else if (name == "starshortcut") {
        want(2);
        StarShortcutInstance inst =
            metric_star_shortcut_instance(static_cast<int>(parse_int(args[0])), parse_real(args[1]));
        metric = std::move(inst.space);
        profile = std::move(inst.profile);
    } else {
        throw UsageError("unknown generator '" + name + "'");
    }

    if (!profile) {
        if (random_agents < 1)
            throw UsageError("generator " + name + " needs --random-agents");
        Rng rng = Rng(seed).child("profile");
        std::vector<std::pair<int, long long>> bliss;
        for (int i = 0; i < random_agents; ++i)
            bliss.emplace_back(
                static_cast<int>(rng.bounded(static_cast<std::uint64_t>(graph->size()))), 1);
        profile = AgentProfile(bliss);
    }
    if (!metric) metric = graph->to_metric();
    return {std::move(*metric), std::move(graph), std::move(*profile)};
}

Instance load_any(const std::string& instance_path, const std::string& generator,
                  int random_agents, std::uint64_t seed) {
    if (!instance_path.empty() && !generator.empty())
        throw UsageError("pass either --instance or --generator, not both");
    if (!instance_path.empty()) return load_instance_file(instance_path);
    if (!generator.empty()) return build_generated(generator, random_agents, seed);
    throw UsageError("need --instance or --generator");
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) return;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

// --- run subcommand ---------------------------------------------------------

struct RunResult {
    std::string instance_label;
    std::string mechanism;
    std::int64_t rounds = 0;
    int replicas = 0;
    std::uint64_t seed = 0;
    double mean_sc = 0.0;
    double se = 0.0;
    double opt_sc = 0.0;
    double distortion = 0.0;
    double squared_distortion = 0.0;
    std::string per_replica; // CSV body for --out
};

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + '"';
}

std::string aggregate_csv(const RunResult& r) {
    std::string out = "instance,mechanism,T,replicas,mean_SC,SE,OPT_SC,distortion,"
                      "squared_distortion,seed\n";
    out += csv_field(r.instance_label) + ',' + r.mechanism + ',' + std::to_string(r.rounds) + ',' +
           std::to_string(r.replicas) + ',' + format_double(r.mean_sc) + ',' +
           format_double(r.se) + ',' + format_double(r.opt_sc) + ',' +
           format_double(r.distortion) + ',' + format_double(r.squared_distortion) + ',' +
           std::to_string(r.seed) + '\n';
    return out;
}

std::string aggregate_json(const RunResult& r) {
    json j;
    j["instance"] = r.instance_label;
    j["mechanism"] = r.mechanism;
    j["T"] = r.rounds;
    j["replicas"] = r.replicas;
    j["mean_SC"] = r.mean_sc;
    j["SE"] = r.se;
    j["OPT_SC"] = r.opt_sc;
    j["distortion"] = r.distortion;
    j["squared_distortion"] = r.squared_distortion;
    j["seed"] = r.seed;
    return j.dump() + "\n";
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

RunResult run_point_mechanism(const Instance& inst, const std::string& label,
                              const std::string& mechanism, std::int64_t rounds, int replicas,
                              std::uint64_t seed, int threads) {
    RunResult result;
    result.instance_label = label;
    result.mechanism = mechanism;
    result.rounds = rounds;
    result.replicas = replicas;
    result.seed = seed;
    result.opt_sc =
        social_cost(inst.metric, inst.profile, generalized_median(inst.metric, inst.profile));

    const bool graph_is_median = [&] {
        if (!inst.graph) return false;
        return verify_median_graph(*inst.graph).is_median;
    }();
    if (graph_is_median && inst.graph->size() <= MedianGraph::kMedianCacheMaxVertices)
        inst.graph->build_median_cache();
    if (mechanism == "oneshot-triple" && !graph_is_median)
        throw UsageError("oneshot-triple needs a median-graph instance");

    const Rng base(seed);
    std::vector<int> finals(static_cast<std::size_t>(replicas));
    const DeliberationConfig config{rounds, seed, std::nullopt};
    parallel_for_index(replicas, threads, [&](int r) {
        Rng stream = base.child(static_cast<std::uint64_t>(r));
        int final_point = -1;
        if (mechanism == "sequential") {
            final_point = graph_is_median
                              ? run_sequential(*inst.graph, inst.profile, config, stream)
                                    .final_outcome()
                              : run_sequential(inst.metric, inst.profile, config, stream)
                                    .final_outcome();
        } else if (mechanism == "random-dictatorship") {
            final_point = random_dictatorship(inst.profile, stream);
        } else { // oneshot-triple
            final_point = oneshot_triple(*inst.graph, inst.profile, stream);
        }
        finals[static_cast<std::size_t>(r)] = final_point;
    });

    std::vector<double> sc(finals.size());
    std::vector<double> sq(finals.size());
    std::string body = "replica,final,social_cost\n";
    for (std::size_t r = 0; r < finals.size(); ++r) {
        sc[r] = social_cost(inst.metric, inst.profile, finals[r]);
        sq[r] = sc[r] * sc[r];
        body += std::to_string(r) + ',' + std::to_string(finals[r]) + ',' + format_double(sc[r]) +
                '\n';
    }
    const MeanSe first = mean_and_se(sc);
    const MeanSe second = mean_and_se(sq);
    result.mean_sc = first.mean;
    result.se = first.se;
    result.distortion = first.mean / result.opt_sc;
    result.squared_distortion = second.mean / (result.opt_sc * result.opt_sc);
    result.per_replica = std::move(body);
    return result;
}

RunResult run_simplex(const std::string& spec, std::int64_t rounds, int replicas,
                      std::uint64_t seed, int threads) {
    const auto colon = spec.find(':');
    if (spec.substr(0, colon) != "simplex" || colon == std::string::npos)
        throw UsageError("mechanism simplex needs --generator simplex:p1,p2,...");
    std::vector<double> masses;
    for (const auto& part : split(spec.substr(colon + 1), ',')) masses.push_back(parse_real(part));
    const SimplexInstance inst(masses);
    const SimplexSimReport sim = simplex_simulate(inst, rounds, replicas, seed, threads);

    RunResult result;
    result.instance_label = spec;
    result.mechanism = "simplex";
    result.rounds = rounds;
    result.replicas = replicas;
    result.seed = seed;
    double pmax = 0.0;
    for (double p : inst.masses) pmax = std::max(pmax, p);
    result.opt_sc = 1.0 - pmax;
    result.mean_sc = sim.mean_cost;
    result.se = sim.cost_se;
    result.distortion = sim.mean_cost / result.opt_sc;
    result.squared_distortion = sim.mean_sq_cost / (result.opt_sc * result.opt_sc);
    std::string body = "coordinate,mean,se,closed_form\n";
    const std::vector<double> s = simplex_stationary(inst);
    for (int i = 0; i < inst.dim(); ++i)
        body += std::to_string(i) + ',' + format_double(sim.mean_coords[static_cast<std::size_t>(i)]) +
                ',' + format_double(sim.coord_se[static_cast<std::size_t>(i)]) + ',' +
                format_double(s[static_cast<std::size_t>(i)]) + '\n';
    result.per_replica = std::move(body);
    return result;
}

// --- suite printing ---------------------------------------------------------

int print_reports(const std::vector<SuiteReport>& reports) {
    bool all_ok = true;
    for (const auto& rep : reports) {
        for (const auto& line : rep.lines) {
            std::printf("[%s] %s: %s: measured %.10g vs %.10g\n", line.pass ? "PASS" : "FAIL",
                        rep.name.c_str(), line.name.c_str(), line.measured, line.bound);
            all_ok = all_ok && line.pass;
        }
    }
    std::printf("%s\n", all_ok ? "ALL CHECKS PASSED" : "CHECK FAILURES PRESENT");
    return all_ok ? kExitOk : kExitCheckFailed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"sequential deliberation over finite metrics and median graphs"};
    app.require_subcommand(1);

    std::string instance_path;
    std::string generator;
    std::string mechanism = "sequential";
    std::string out_path;
    std::string trajectory_out;
    std::string chain_out;
    std::string embedding_out;
    std::string format = "csv";
    std::string suite_name;
    std::int64_t rounds = 9;
    int replicas = 1000;
    int random_agents = 0;
    int threads = 1;
    std::uint64_t seed = 0;
    bool seed_given = false;

    auto* verify = app.add_subcommand("verify", "median-graph status and embedding dimension");
    verify->add_option("--instance", instance_path, "instance file");
    verify->add_option("--generator", generator, "generator spec name:params");
    verify->add_option("--random-agents", random_agents, "agents for bare graph generators");
    verify->add_option("--seed", seed, "seed for generated profiles");
    verify->add_option("--embedding-out", embedding_out, "write the hypercube embedding as JSON");

    auto* run = app.add_subcommand("run", "simulate a mechanism, report distortion");
    run->add_option("--instance", instance_path, "instance file");
    run->add_option("--generator", generator, "generator spec name:params");
    run->add_option("--mechanism", mechanism, "mechanism")
        ->check(CLI::IsMember({"sequential", "random-dictatorship", "oneshot-triple", "simplex"}));
    run->add_option("--rounds", rounds, "bargaining rounds T")->check(CLI::PositiveNumber);
    run->add_option("--replicas", replicas, "independent runs")->check(CLI::PositiveNumber);
    run->add_option("--seed", seed, "experiment seed (required)")->required();
    run->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    run->add_option("--random-agents", random_agents, "agents for bare graph generators");
    run->add_option("--out", out_path, "per-replica output file");
    run->add_option("--trajectory-out", trajectory_out,
                    "write replica 0's rounds as CSV (sequential only)");
    run->add_option("--format", format, "aggregate format")->check(CLI::IsMember({"csv", "json"}));

    auto* stationary = app.add_subcommand("stationary", "exact chain analysis on a median graph");
    stationary->add_option("--instance", instance_path, "instance file");
    stationary->add_option("--generator", generator, "generator spec name:params");
    stationary->add_option("--random-agents", random_agents, "agents for bare graph generators");
    stationary->add_option("--seed", seed, "seed for generated profiles");
    stationary->add_option("--out", out_path, "stationary distribution output file");
    stationary->add_option("--chain-out", chain_out, "write transition triplets (from,to,prob)");

    auto* suite = app.add_subcommand("suite", "run a named check suite");
    suite->add_option("name", suite_name, "bounds | properties | simplex | general-metric | all")
        ->required()
        ->check(CLI::IsMember({"bounds", "properties", "simplex", "general-metric", "all"}));
    suite->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    suite->add_option("--seed", seed, "experiment seed");
    std::string bound_records;
    suite->add_option("--bound-records", bound_records,
                      "write the distance-bound sweep records as CSV (properties suite)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }
    seed_given = run->count("--seed") > 0 || suite->count("--seed") > 0 ||
                 verify->count("--seed") > 0 || stationary->count("--seed") > 0;

    try {
        if (verify->parsed()) {
            // The profile is irrelevant to verification; default to one agent.
            const Instance inst =
                load_any(instance_path, generator, std::max(random_agents, 1), seed);
            if (!inst.graph) {
                std::fprintf(stderr, "verify: instance is not a unit-weight graph\n");
                return kExitUsage;
            }
            const MedianVerification result = verify_median_graph(*inst.graph);
            if (result.is_median) {
                const HypercubeEmbedding emb = hypercube_embed(*inst.graph);
                std::printf("median: yes, D=%d\n", emb.dim());
                write_output(embedding_out, embedding_json(emb));
            } else {
                const auto& t = *result.counterexample;
                std::printf("median: no, counterexample triple (%d, %d, %d)\n", t[0], t[1], t[2]);
            }
            return kExitOk;
        }

        if (run->parsed()) {
            RunResult result;
            if (mechanism == "simplex") {
                if (generator.empty()) throw UsageError("mechanism simplex needs --generator");
                result = run_simplex(generator, rounds, replicas, seed, threads);
            } else {
                const Instance inst = load_any(instance_path, generator, random_agents, seed);
                const std::string label = !generator.empty() ? generator : instance_path;
                result =
                    run_point_mechanism(inst, label, mechanism, rounds, replicas, seed, threads);
            }
            std::fputs((format == "json" ? aggregate_json(result) : aggregate_csv(result)).c_str(),
                       stdout);
            write_output(out_path, result.per_replica);
            if (!trajectory_out.empty()) {
                if (mechanism != "sequential")
                    throw UsageError("--trajectory-out applies to the sequential mechanism");
                const Instance inst = load_any(instance_path, generator, random_agents, seed);
                const bool median = inst.graph && verify_median_graph(*inst.graph).is_median;
                if (median && inst.graph->size() <= MedianGraph::kMedianCacheMaxVertices)
                    inst.graph->build_median_cache();
                Rng stream = Rng(seed).child(0);
                const DeliberationConfig config{rounds, seed, std::nullopt};
                const Trajectory traj =
                    median ? run_sequential(*inst.graph, inst.profile, config, stream)
                           : run_sequential(inst.metric, inst.profile, config, stream);
                write_output(trajectory_out, trajectory_csv(traj));
            }
            return kExitOk;
        }

        if (stationary->parsed()) {
            const Instance inst = load_any(instance_path, generator, random_agents, seed);
            if (!inst.graph || !verify_median_graph(*inst.graph).is_median) {
                std::fprintf(stderr,
                             "stationary: needs a median-graph instance; use `run` for plain "
                             "metric simulation\n");
                return kExitUsage;
            }
            if (inst.graph->size() <= MedianGraph::kMedianCacheMaxVertices)
                inst.graph->build_median_cache();
            const DeliberationChain chain = build_chain(*inst.graph, inst.profile);
            const OutcomeDistribution pi = stationary_distribution(chain);
            const double dist = distortion(inst.metric, inst.profile, pi);
            const double e_seq = expected_social_cost(inst.metric, inst.profile, pi);
            const double e_rd =
                expected_social_cost(inst.metric, inst.profile, rd_distribution(inst.profile));
            std::printf("closure: %d states\n", chain.size());
            std::string dist_line = "stationary:";
            for (std::size_t i = 0; i < pi.support().size(); ++i)
                dist_line += ' ' + std::to_string(pi.support()[i]) + ':' +
                             format_double(pi.prob()[i]);
            std::printf("%s\n", dist_line.c_str());
            std::printf("distortion: %s\n", format_double(dist).c_str());
            std::printf("dominance: seq E[SC] %s <= rd E[SC] %s: %s\n",
                        format_double(e_seq).c_str(), format_double(e_rd).c_str(),
                        e_seq <= e_rd + 1e-9 ? "yes" : "NO");
            if (!out_path.empty()) {
                std::string body = "state,prob\n";
                for (std::size_t i = 0; i < pi.support().size(); ++i)
                    body += std::to_string(pi.support()[i]) + ',' + format_double(pi.prob()[i]) +
                            '\n';
                write_output(out_path, body);
            }
            write_output(chain_out, chain_csv(chain));
            return e_seq <= e_rd + 1e-9 ? kExitOk : kExitCheckFailed;
        }

        // suite
        SuiteOptions opt;
        opt.threads = threads;
        opt.bound_records_path = bound_records;
        if (seed_given) opt.seed = seed;
        std::vector<SuiteReport> reports;
        if (suite_name == "bounds") {
            reports.push_back(suite_curve_maxima(opt));
        } else if (suite_name == "properties") {
            reports.push_back(suite_properties(opt));
        } else if (suite_name == "simplex") {
            reports.push_back(suite_simplex(opt));
        } else if (suite_name == "general-metric") {
            reports.push_back(suite_general_metric(opt));
        } else {
            reports = run_all_suites(opt);
        }
        return print_reports(reports);
    } catch (const UsageError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::runtime_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::logic_error& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return kExitCheckFailed;
    }
}
