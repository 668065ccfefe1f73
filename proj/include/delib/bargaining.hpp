#pragma once

#include <vector>

#include "delib/median_graph.hpp"
#include "delib/metric.hpp"

namespace delib {

// Result of one Nash bargaining step between agents at p_u and p_v with
// disagreement alternative a.
struct BargainOutcome {
    int point = -1;
    double nash_product = 0.0;
    double gain_u = 0.0; // d(p_u, a) - d(p_u, point), always >= 0
    double gain_v = 0.0;
    int tie_set_size = 0; // individually rational points attaining the max product
};

// Exhaustive Nash product maximizer over a finite metric, restricted to
// individually rational points. Ties resolve to the point closest to the
// disagreement alternative, then to the lowest index; a zero maximum
// therefore yields a itself.
BargainOutcome nash_bargain(const FiniteMetric& space, int p_u, int p_v, int a);

// Median shortcut on median graphs: the bargaining outcome is
// median(p_u, p_v, a). Agrees with nash_bargain on the derived metric.
int nash_bargain_median(const MedianGraph& g, int p_u, int p_v, int a);

// Analytic position (distance from p_i along the p_i..p_j geodesic) of the
// bargaining outcome when the shortest path is continuously populated,
// clamped to [0, d(p_i, p_j)].
double geodesic_split_position(const FiniteMetric& space, int p_i, int p_j, int a);

// Nash bargaining between vertex agents i and j of the standard simplex
// with disagreement point a. For i == j returns the indicator vector e_i.
std::vector<double> simplex_bargain(int i, int j, const std::vector<double>& a);

// N agents at 0 and 1 of the unit line bargaining simultaneously keep the
// disagreement point; simultaneous bargaining devolves to dictatorship.
double nperson_line_bargain(double x);

// How far a bargaining outcome can land from a bystander's bliss point:
// with all distances measured to the profile's generalized median,
//   d(outcome, p_u) <= u_to_opt + 2 min(i_to_opt, j_to_opt)
//                      + min(a_to_opt, max(i_to_opt, j_to_opt)).
struct BargainCheckRecord {
    double u_to_opt = 0.0; // bystander bliss point to the optimum
    double i_to_opt = 0.0; // bargainers' bliss points to the optimum
    double j_to_opt = 0.0;
    double a_to_opt = 0.0; // disagreement alternative to the optimum
    double realized = 0.0; // d(outcome, p_u)
    double bound = 0.0;
    bool satisfied = false; // realized <= bound + 1e-9
};

BargainCheckRecord bargain_distance_bound_check(const FiniteMetric& space,
                                                const AgentProfile& profile, int p_i, int p_j,
                                                int p_u, int a);

} // namespace delib
