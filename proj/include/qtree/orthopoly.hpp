#pragma once

#include <utility>
#include <vector>

namespace qtree {

// Constant-coefficient orthogonal polynomials in v:
//   P_n = v P_{n-1} - b P_{n-2},  P_0 = 1, P_{-1} = 0
//   Q_n = v Q_{n-1} - b Q_{n-2},  Q_0 = 0, Q_{-1} = 1
// The recurrences are defined for any real b > 1.
struct PolyParams {
    double b;
    int n;
};

struct PQValue {
    double p, q;
};

// Three-term recurrence evaluation (exact path).
PQValue pq_eval(const PolyParams& params, double v);

// Closed form via xi + 1/xi = v / sqrt(b), branch |xi| >= 1.  Only valid
// away from |v| = 2 sqrt(b); pq_eval switches automatically, this is public
// for the dual-route checks.
PQValue pq_eval_closed(const PolyParams& params, double v);

struct PQRoots {
    std::vector<double> p;  // n roots of P_n, increasing
    std::vector<double> q;  // n-1 roots of Q_n, increasing
};
PQRoots pq_roots(const PolyParams& params);

struct QuadratureMeasure {
    std::vector<double> nodes;    // roots of P_n, increasing
    std::vector<double> weights;  // Gaussian weights, sum = mu_0 = 1
    std::vector<double> moments;  // mu_k for k = 0 .. 2n-1
};
QuadratureMeasure quadrature_measure(const PolyParams& params);

// Limiting density of P_n roots as n -> infinity: 2 sqrt(b) / (pi sqrt(4b - v^2)).
// Note this density integrates to 2 sqrt(b) over (-2 sqrt(b), 2 sqrt(b)).
double limiting_root_density(double b, double v);

struct LeadingCoefficients {
    std::vector<double> p;  // coefficients of v^n, v^{n-2}, ... (polynomial part)
    std::vector<double> q;  // coefficients of v^{n-1}, v^{n-3}, ...
};
// num_terms <= 4; only four terms of the expansion are available.
LeadingCoefficients leading_coefficients(const PolyParams& params, int num_terms);

// Both sides of  -b P_{n+1}(v) / (v Q_{n+1}(v)) = 1 - v^{-2} sum_j v^{-j} mu_j^{(n)},
// where the series moments carry the measure's total mass b.  The right side
// keeps truncation nonzero terms, i.e. the even moments through
// mu_{2(truncation-1)}; the error is O(v^{-(2 truncation + 2)}).
std::pair<double, double> ratio_expansion_check(const PolyParams& params, double v,
                                                int truncation);

}  // namespace qtree
