#include "qtree/orthopoly.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace qtree {

PQValue pq_eval(const PolyParams& params, double v) {
    double p_prev = 0.0, p_curr = 1.0;  // P_{-1}, P_0
    double q_prev = 1.0, q_curr = 0.0;  // Q_{-1}, Q_0
    for (int k = 1; k <= params.n; ++k) {
        double p_next = v * p_curr - params.b * p_prev;
        double q_next = v * q_curr - params.b * q_prev;
        p_prev = p_curr; p_curr = p_next;
        q_prev = q_curr; q_curr = q_next;
    }
    return {p_curr, q_curr};
}

PQValue pq_eval_closed(const PolyParams& params, double v) {
    double sb = std::sqrt(params.b);
    double t = v / sb;  // xi + 1/xi
    int n = params.n;
    double bn2 = std::pow(params.b, 0.5 * n);
    if (std::fabs(t) < 2.0) {
        double theta = std::acos(0.5 * t);
        double st = std::sin(theta);
        double p = bn2 * std::sin((n + 1) * theta) / st;
        double q = -bn2 * sb * std::sin(n * theta) / st;
        return {p, q};
    }
    double sgn = t >= 0 ? 1.0 : -1.0;
    double xi = 0.5 * (t + sgn * std::sqrt(t * t - 4.0));  // |xi| >= 1
    // (xi^{n+1} - xi^{-(n+1)}) / (xi - 1/xi)
    auto ratio = [&](int m) {
        double num = std::pow(xi, m) - std::pow(xi, -m);
        double den = xi - 1.0 / xi;
        return num / den;
    };
    return {bn2 * ratio(n + 1), -bn2 * sb * ratio(n)};
}

namespace {

// Roots of P_n as eigenvalues of the symmetric tridiagonal matrix with zero
// diagonal and off-diagonal sqrt(b).
Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> p_tridiag_solver(double b, int n,
                                                                bool vectors) {
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd sub = Eigen::VectorXd::Constant(std::max(0, n - 1), std::sqrt(b));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub,
                              vectors ? Eigen::ComputeEigenvectors
                                      : Eigen::EigenvaluesOnly);
    return es;
}

}  // namespace

PQRoots pq_roots(const PolyParams& params) {
    if (params.n < 1) throw std::invalid_argument("pq_roots: n >= 1 required");
    PQRoots r;
    auto es = p_tridiag_solver(params.b, params.n, false);
    r.p.assign(es.eigenvalues().data(), es.eigenvalues().data() + params.n);
    if (params.n >= 2) {
        // Q_n = -b P_{n-1}, so the roots of Q_n are those of P_{n-1}.
        auto es2 = p_tridiag_solver(params.b, params.n - 1, false);
        r.q.assign(es2.eigenvalues().data(), es2.eigenvalues().data() + params.n - 1);
    }
    return r;
}

QuadratureMeasure quadrature_measure(const PolyParams& params) {
    if (params.n < 1)
        throw std::invalid_argument("quadrature_measure: n >= 1 required");
    QuadratureMeasure m;
    auto es = p_tridiag_solver(params.b, params.n, true);
    m.nodes.assign(es.eigenvalues().data(), es.eigenvalues().data() + params.n);
    m.weights.resize(params.n);
    for (int i = 0; i < params.n; ++i) {
        double w0 = es.eigenvectors()(0, i);
        m.weights[i] = w0 * w0;  // mu_0 = 1 normalization
    }
    // Enforce the exact symmetry of the measure so odd moments cancel to zero
    // instead of to eigensolver roundoff.
    for (int i = 0, j = params.n - 1; i < j; ++i, --j) {
        double node = 0.5 * (m.nodes[j] - m.nodes[i]);
        double w = 0.5 * (m.weights[i] + m.weights[j]);
        m.nodes[i] = -node;
        m.nodes[j] = node;
        m.weights[i] = m.weights[j] = w;
    }
    if (params.n % 2) m.nodes[params.n / 2] = 0.0;
    m.moments.assign(2 * params.n, 0.0);
    for (int k = 0; k < 2 * params.n; ++k) {
        double acc = 0.0;
        for (int i = 0, j = params.n - 1; i <= j; ++i, --j) {
            double t = m.weights[i] * std::pow(m.nodes[i], k);
            if (i != j) t += m.weights[j] * std::pow(m.nodes[j], k);
            acc += t;
        }
        m.moments[k] = acc;
    }
    return m;
}

double limiting_root_density(double b, double v) {
    double edge = 2.0 * std::sqrt(b);
    if (std::fabs(v) >= edge)
        throw std::domain_error("limiting_root_density: |v| must be < 2 sqrt(b)");
    return 2.0 * std::sqrt(b) / (M_PI * std::sqrt(4.0 * b - v * v));
}

LeadingCoefficients leading_coefficients(const PolyParams& params, int num_terms) {
    if (num_terms < 1 || num_terms > 4)
        throw std::invalid_argument("leading_coefficients: 1 <= num_terms <= 4");
    if (params.n < 1)
        throw std::invalid_argument("leading_coefficients: n >= 1 required");
    double n = params.n, b = params.b;
    double pfull[4] = {1.0, -(n - 1) * b, (n - 3) * (n - 2) / 2.0 * b * b,
                       -(n - 5) * (n - 4) * (n - 3) / 6.0 * b * b * b};
    double qfull[4] = {-b, (n - 2) * b * b, -(n - 4) * (n - 3) / 2.0 * b * b * b,
                       (n - 6) * (n - 5) * (n - 4) / 6.0 * b * b * b * b};
    LeadingCoefficients lc;
    for (int j = 0; j < num_terms; ++j) {
        if (params.n - 2 * j >= 0) lc.p.push_back(pfull[j]);
        if (params.n - 1 - 2 * j >= 0) lc.q.push_back(qfull[j]);
    }
    return lc;
}

std::pair<double, double> ratio_expansion_check(const PolyParams& params, double v,
                                                int truncation) {
    double edge = 2.0 * std::sqrt(params.b);
    if (std::fabs(v) <= edge)
        throw std::domain_error("ratio_expansion_check: |v| must exceed 2 sqrt(b)");
    if (truncation > 2 * params.n - 1)
        throw std::invalid_argument("ratio_expansion_check: truncation <= 2n-1");
    PolyParams up{params.b, params.n + 1};
    PQValue pq = pq_eval(up, v);
    double lhs = -params.b * pq.p / (v * pq.q);
    // The series moments carry the measure's natural total mass b (the mu_0=1
    // quadrature convention is rescaled here); truncation counts the nonzero
    // (even) terms kept, so the last one is mu_{2(truncation-1)}.
    QuadratureMeasure m = quadrature_measure(params);
    double series = 0.0;
    for (int j = 2 * truncation - 2; j >= 0; --j) {
        double mu_j = 0.0;
        if (j % 2 == 0)
            for (int i = 0; i < params.n; ++i)
                mu_j += params.b * m.weights[i] * std::pow(m.nodes[i], j);
        series = series / v + mu_j;
    }
    double rhs = 1.0 - series / (v * v);
    return {lhs, rhs};
}

}  // namespace qtree
