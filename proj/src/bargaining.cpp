#include "delib/bargaining.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace delib {

BargainOutcome nash_bargain(const FiniteMetric& space, int p_u, int p_v, int a) {
    space.require_point(p_u);
    space.require_point(p_v);
    space.require_point(a);
    const double* du = space.row(p_u);
    const double* dv = space.row(p_v);
    const double* da = space.row(a);
    const double base_u = du[a];
    const double base_v = dv[a];

    BargainOutcome best;
    best.point = a; // a is always individually rational with product 0
    best.nash_product = 0.0;
    double best_dist_to_a = 0.0;
    int ties = 0;
    for (int o = 0; o < space.size(); ++o) {
        const double gu = base_u - du[o];
        const double gv = base_v - dv[o];
        if (gu < 0.0 || gv < 0.0) continue;
        const double product = gu * gv;
        if (product > best.nash_product) {
            ties = 1;
        } else if (product == best.nash_product) {
            ++ties;
            if (da[o] >= best_dist_to_a) continue; // keep closer-to-a, then lower index
        } else {
            continue;
        }
        best.point = o;
        best.nash_product = product;
        best.gain_u = gu;
        best.gain_v = gv;
        best_dist_to_a = da[o];
    }
    best.tie_set_size = ties;
    return best;
}

int nash_bargain_median(const MedianGraph& g, int p_u, int p_v, int a) {
    return g.median(p_u, p_v, a);
}

double geodesic_split_position(const FiniteMetric& space, int p_i, int p_j, int a) {
    space.require_point(p_i);
    space.require_point(p_j);
    space.require_point(a);
    const double dij = space.dist(p_i, p_j);
    const double pos = 0.5 * dij + 0.5 * (space.dist(p_i, a) - space.dist(p_j, a));
    return std::clamp(pos, 0.0, dij);
}

std::vector<double> simplex_bargain(int i, int j, const std::vector<double>& a) {
    const int d = static_cast<int>(a.size());
    if (i < 0 || i >= d || j < 0 || j >= d)
        throw std::invalid_argument("simplex: vertex index out of range");
    double sum = 0.0;
    for (double c : a) {
        if (c < -kDistTol) throw std::invalid_argument("simplex: negative coordinate");
        sum += c;
    }
    if (std::abs(sum - 1.0) > kDistTol)
        throw std::invalid_argument("simplex: coordinates do not sum to 1");

    std::vector<double> o(a.size(), 0.0);
    if (i == j) {
        o[i] = 1.0;
        return o;
    }
    o[i] = 0.5 * (1.0 + a[i] - a[j]);
    o[j] = 0.5 * (1.0 + a[j] - a[i]);
    return o;
}

double nperson_line_bargain(double x) {
    if (x < 0.0 || x > 1.0) throw std::invalid_argument("line bargain: x outside [0, 1]");
    return x;
}

BargainCheckRecord bargain_distance_bound_check(const FiniteMetric& space,
                                                const AgentProfile& profile, int p_i, int p_j,
                                                int p_u, int a) {
    const int opt = generalized_median(space, profile);
    BargainCheckRecord rec;
    rec.u_to_opt = space.dist(p_u, opt);
    rec.i_to_opt = space.dist(p_i, opt);
    rec.j_to_opt = space.dist(p_j, opt);
    rec.a_to_opt = space.dist(a, opt);
    rec.realized = space.dist(nash_bargain(space, p_i, p_j, a).point, p_u);
    rec.bound = rec.u_to_opt + 2.0 * std::min(rec.i_to_opt, rec.j_to_opt) +
                std::min(rec.a_to_opt, std::max(rec.i_to_opt, rec.j_to_opt));
    rec.satisfied = rec.realized <= rec.bound + kDistTol;
    return rec;
}

} // namespace delib
