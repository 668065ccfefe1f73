// Acceptance harness: runs every guarantee suite at full scale and prints
// one pass/fail line per criterion. Exits nonzero when any line fails.
//
// Usage: acceptance [threads] [seed]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <thread>
#include <vector>

#include "delib/suites.hpp"

int main(int argc, char** argv) {
    delib::SuiteOptions opt;
    opt.threads = static_cast<int>(std::min(4u, std::max(1u, std::thread::hardware_concurrency())));
    if (argc > 1) opt.threads = std::atoi(argv[1]);
    if (argc > 2) opt.seed = std::strtoull(argv[2], nullptr, 10);

    using Clock = std::chrono::steady_clock;
    const auto started = Clock::now();

    struct Entry {
        const char* title;
        delib::SuiteReport (*run)(const delib::SuiteOptions&);
    };
    const std::vector<Entry> criteria = {
        {"stationary distortion bound (exact chains, 200 instances)", delib::suite_stationary_bound},
        {"hypercube closed-form factorization", delib::suite_factorization},
        {"convergence: Monte Carlo distortion at T=9", delib::suite_convergence},
        {"lower-bound curve maxima", delib::suite_curve_maxima},
        {"random dictatorship baselines", delib::suite_random_dictatorship},
        {"instance-wise dominance over random dictatorship", delib::suite_dominance},
        {"general metrics: distortion <= 3, squared <= 41", delib::suite_general_metric},
        {"property sweeps (bargaining, efficiency, truthfulness, chains)", delib::suite_properties},
        {"simplex closed form and simulation", delib::suite_simplex},
        {"near-unanimity distortion", delib::suite_eps_unanimity},
    };

    bool all_ok = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = Clock::now();
        const delib::SuiteReport rep = criteria[i].run(opt);
        const auto secs =
            std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count() /
            1000.0;
        const bool ok = rep.all_pass();
        all_ok = all_ok && ok;
        std::printf("[%s] %zu. %s (%.1fs)\n", ok ? "PASS" : "FAIL", i + 1, criteria[i].title,
                    secs);
        for (const auto& line : rep.lines) {
            if (!ok || std::getenv("ACCEPTANCE_VERBOSE") != nullptr)
                std::printf("    %s %s: measured %.12g vs %.12g\n", line.pass ? "ok  " : "FAIL",
                            line.name.c_str(), line.measured, line.bound);
        }
        std::fflush(stdout);
    }

    const auto total =
        std::chrono::duration_cast<std::chrono::seconds>(Clock::now() - started).count();
    std::printf("%s (%llds total)\n", all_ok ? "ACCEPTANCE: ALL CRITERIA PASSED"
                                             : "ACCEPTANCE: FAILURES PRESENT",
                static_cast<long long>(total));
    return all_ok ? 0 : 1;
}
