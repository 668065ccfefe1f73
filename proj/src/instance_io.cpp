#include "delib/instance_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace delib {

namespace {

using nlohmann::json;

AgentProfile parse_agents(const json& j) {
    if (!j.contains("agents") || !j["agents"].is_array())
        throw std::runtime_error("instance: missing \"agents\" array");
    std::vector<std::pair<int, long long>> bliss;
    for (const auto& entry : j["agents"]) {
        if (!entry.is_array() || entry.size() < 1 || entry.size() > 2)
            throw std::runtime_error("instance: agent entries are [point] or [point, weight]");
        const int point = entry[0].get<int>();
        const long long weight = entry.size() == 2 ? entry[1].get<long long>() : 1;
        bliss.emplace_back(point, weight);
    }
    return AgentProfile(bliss);
}

} // namespace

Instance parse_instance_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("instance: invalid JSON: ") + e.what());
    }
    try {
        if (j.contains("dist")) {
            auto table = j["dist"].get<std::vector<std::vector<double>>>();
            FiniteMetric metric = FiniteMetric::from_table(std::move(table));
            AgentProfile profile = parse_agents(j);
            profile.require_valid_for(metric.size());
            return {std::move(metric), std::nullopt, std::move(profile)};
        }
        if (!j.contains("points") || !j.contains("edges"))
            throw std::runtime_error("instance: need \"dist\" or \"points\" + \"edges\"");
        const int n = j["points"].get<int>();
        std::vector<WeightedEdge> edges;
        bool unit_weights = true;
        for (const auto& e : j["edges"]) {
            if (!e.is_array() || e.size() < 2 || e.size() > 3)
                throw std::runtime_error("instance: edges are [i, j] or [i, j, w]");
            WeightedEdge we{e[0].get<int>(), e[1].get<int>(),
                            e.size() == 3 ? e[2].get<double>() : 1.0};
            if (we.w != 1.0) unit_weights = false;
            edges.push_back(we);
        }
        FiniteMetric metric = FiniteMetric::from_weighted_graph(n, edges);
        std::optional<MedianGraph> graph;
        if (unit_weights) {
            std::vector<std::pair<int, int>> unit_edges;
            unit_edges.reserve(edges.size());
            for (const auto& e : edges) unit_edges.emplace_back(e.a, e.b);
            graph = MedianGraph::from_edges(n, unit_edges);
        }
        AgentProfile profile = parse_agents(j);
        profile.require_valid_for(metric.size());
        return {std::move(metric), std::move(graph), std::move(profile)};
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("instance: malformed field: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(std::string("instance: ") + e.what());
    }
}

Instance load_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("instance: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance_text(buf.str());
}

std::string instance_to_json(const Instance& inst) {
    json j;
    if (inst.graph) {
        j["points"] = inst.graph->size();
        json edges = json::array();
        for (auto [a, b] : inst.graph->edges()) edges.push_back({a, b});
        j["edges"] = edges;
    } else {
        json table = json::array();
        for (int i = 0; i < inst.metric.size(); ++i) {
            json row = json::array();
            for (int k = 0; k < inst.metric.size(); ++k) row.push_back(inst.metric.dist(i, k));
            table.push_back(row);
        }
        j["dist"] = table;
    }
    json agents = json::array();
    for (const auto& [p, w] : inst.profile.entries()) agents.push_back({p, w});
    j["agents"] = agents;
    return j.dump();
}

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

std::string trajectory_csv(const Trajectory& traj) {
    std::string out = "round,u,v,a,o\n";
    int round = 1;
    for (const auto& r : traj.rounds) {
        out += std::to_string(round++) + ',' + std::to_string(r.u) + ',' + std::to_string(r.v) +
               ',' + std::to_string(r.a) + ',' + std::to_string(r.o) + '\n';
    }
    return out;
}

std::string chain_csv(const DeliberationChain& chain) {
    std::string out = "from,to,prob\n";
    for (int i = 0; i < chain.size(); ++i) {
        for (int j = 0; j < chain.size(); ++j) {
            const double p = chain.prob(i, j);
            if (p > 0.0)
                out += std::to_string(chain.states[static_cast<std::size_t>(i)]) + ',' +
                       std::to_string(chain.states[static_cast<std::size_t>(j)]) + ',' +
                       format_double(p) + '\n';
        }
    }
    return out;
}

std::string bargain_check_csv(const std::vector<BargainCheckRecord>& records) {
    std::string out = "u_to_opt,i_to_opt,j_to_opt,a_to_opt,realized,bound,satisfied\n";
    for (const auto& r : records) {
        out += format_double(r.u_to_opt) + ',' + format_double(r.i_to_opt) + ',' +
               format_double(r.j_to_opt) + ',' + format_double(r.a_to_opt) + ',' +
               format_double(r.realized) + ',' + format_double(r.bound) + ',' +
               (r.satisfied ? "1" : "0") + '\n';
    }
    return out;
}

std::string embedding_json(const HypercubeEmbedding& emb) {
    json coords = json::object();
    for (int v = 0; v < emb.vertex_count(); ++v) coords[std::to_string(v)] = emb.bitstring(v);
    json j;
    j["dim"] = emb.dim();
    j["coords"] = coords;
    return j.dump();
}

} // namespace delib
