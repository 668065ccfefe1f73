#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "delib/distortion_lab.hpp"

namespace delib {

struct CheckLine {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double bound = 0.0; // threshold or expected value the measurement is held to
};

struct SuiteReport {
    std::string name;
    std::vector<CheckLine> lines;

    bool all_pass() const {
        for (const auto& l : lines)
            if (!l.pass) return false;
        return true;
    }
};

struct SuiteOptions {
    int threads = 1;
    std::uint64_t seed = 0x5EEDF00DULL; // experiment master seed
    std::string bound_records_path;     // when set, the distance-bound sweep
                                        // dumps its check records as CSV
};

// Shared corpus: 200 random median-graph instances (random trees n <= 40,
// grids up to 6x6, hypercubes D <= 6) with random weighted bliss profiles,
// at least two distinct bliss points each.
std::vector<MedianInstance> median_test_corpus(std::uint64_t seed, int count = 200);

// Small catalog of generated median graphs with at most `max_vertices`
// vertices, for exhaustive sweeps.
std::vector<MedianGraph> small_median_catalog(int max_vertices);

// Each suite checks one guarantee end to end; see the report lines.
SuiteReport suite_stationary_bound(const SuiteOptions& opt);   // exact chains vs 1.20711
SuiteReport suite_factorization(const SuiteOptions& opt);      // hypercube marginals/costs
SuiteReport suite_convergence(const SuiteOptions& opt);        // Monte Carlo at T = 9 vs 1.22
SuiteReport suite_curve_maxima(const SuiteOptions& opt);       // lower-bound ratio curves
SuiteReport suite_random_dictatorship(const SuiteOptions& opt);// star and 2-point baselines
SuiteReport suite_dominance(const SuiteOptions& opt);          // chain E[SC] <= dictatorship
SuiteReport suite_general_metric(const SuiteOptions& opt);     // distortion <= 3, squared <= 41
SuiteReport suite_properties(const SuiteOptions& opt);         // exhaustive/randomized sweeps
SuiteReport suite_simplex(const SuiteOptions& opt);            // closed form + simulation
SuiteReport suite_eps_unanimity(const SuiteOptions& opt);      // distortion <= 1 + eps

// All ten, in the order above.
std::vector<SuiteReport> run_all_suites(const SuiteOptions& opt);

} // namespace delib
