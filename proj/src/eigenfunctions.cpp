#include "qtree/eigenfunctions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "qtree/transfer.hpp"

namespace qtree {

namespace {

void normalize_max(std::vector<double>& u) {
    double m = 0.0;
    for (double x : u) m = std::max(m, std::fabs(x));
    if (m > 0.0)
        for (double& x : u) x /= m;
}

std::vector<double> kernel_vector(const GraphParams& params, double y, double z) {
    int m = params.n + 1;
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(m, m);
    double sa = params.alpha * z;
    double mid = y * (params.b + 1.0) + sa;
    if (params.root_condition == RootCondition::Robin) {
        M(0, 0) = y * params.b + sa;
        if (m > 1) M(0, 1) = -params.b;
    } else {
        M(0, 0) = 1.0;
    }
    for (int i = 1; i < m; ++i) {
        M(i, i - 1) = -1.0;
        M(i, i) = (i == m - 1) ? y + sa : mid;
        if (i + 1 < m) M(i, i + 1) = -params.b;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullV);
    Eigen::VectorXd v = svd.matrixV().col(m - 1);
    std::vector<double> u(v.data(), v.data() + m);
    normalize_max(u);
    return u;
}

}  // namespace

Regime regime(const GraphParams& params, const Potential& q, double lambda) {
    Scaled v = v_of(params, transfer_at(q, lambda));
    if (v.sign() == 0) return Regime::Oscillatory;
    double la = v.log_abs() - 0.5 * std::log(params.b);
    if (la >= 600.0) return Regime::Exponential;
    double t = std::exp(la);
    if (std::fabs(t - 2.0) <= 1e-9) return Regime::Boundary;
    return t < 2.0 ? Regime::Oscillatory : Regime::Exponential;
}

DiscreteEigenvector vertex_values(const GraphParams& params, const Potential& q,
                                  double lambda) {
    const int n = params.n;
    const double b = params.b;
    TransferValues t = transfer_at(q, lambda);
    Scaled v = v_of(params, t);
    Scaled c = t.c(), s = t.s();

    DiscreteEigenvector ev;
    ev.regime = regime(params, q, lambda);
    bool robin = params.root_condition == RootCondition::Robin;
    ev.values.assign(n + 1, 0.0);

    if (ev.regime != Regime::Exponential) {
        // Real trigonometric form.  S_m = sin(m theta)/sin(theta) satisfies
        // S_{m+1} = t2 S_m - S_{m-1} with t2 = 2 cos(theta), which stays exact
        // through the boundary case |t2| = 2.
        double t2 = (v / Scaled(std::sqrt(b))).value();
        double cv = c.value();
        double s_prev = 0.0, s_curr = 1.0;  // S_0, S_1
        double bk = 1.0;
        for (int k = 0; k <= n; ++k) {
            // here s_curr = S_{k+1}, s_prev = S_k
            double uk = robin ? std::sqrt(b) * s_curr - cv * s_prev : s_prev;
            ev.values[k] = uk / bk;
            bk *= std::sqrt(b);
            double s_next = t2 * s_curr - s_prev;
            s_prev = s_curr;
            s_curr = s_next;
        }
        double th = std::acos(std::clamp(t2 / 2.0, -1.0, 1.0));
        ev.xi = std::polar(1.0, th);
    } else {
        int sgn = v.sign();
        Scaled disc = v * v - Scaled(4.0 * b);
        if (disc.mant < 0.0) disc = Scaled(0.0);  // razor-thin boundary case
        Scaled sq = Scaled::from_log(std::sqrt(std::fabs(disc.mant)), 0.5 * disc.log);
        Scaled X = 0.5 * (v + double(sgn) * sq);  // b^{1/2} xi, |X| >= sqrt(b)
        Scaled Y = Scaled(b) / X;                  // b^{1/2} / xi
        Scaled a1, a2;
        if (robin && (Y - c).sign() == 0) {
            // exact Dirichlet-point degeneracy (e.g. alpha = 0, lambda on
            // sigma_D): both modes collide with the c-column; use the kernel
            ev.values = kernel_vector(params, c.value(), s.value());
            ev.kernel_fallback = true;
            ev.xi = std::complex<double>((X / Scaled(std::sqrt(b))).value(), 0.0);
            int prev0 = 0;
            for (double x : ev.values) {
                int sg = (x > 1e-12) ? 1 : (x < -1e-12 ? -1 : 0);
                if (sg != 0 && prev0 != 0 && sg != prev0) ++ev.nodal_count;
                if (sg != 0) prev0 = sg;
            }
            return ev;
        }
        if (robin) {
            // a1 = X - c suffers catastrophic cancellation at the rogue
            // eigenvalues; use a1 (Y - c) = b - c v + c^2 = b - c (b c + alpha s).
            Scaled w = b * c + params.alpha * s;
            Scaled N = Scaled(b) - c * w;
            a2 = -(Y - c);
            a1 = N / (Y - c);
        } else {
            a1 = Scaled(1.0);
            a2 = Scaled(-1.0);
        }
        Scaled m1 = X / Scaled(b);  // b^{-1/2} xi
        Scaled m2 = Y / Scaled(b);  // b^{-1/2} / xi
        std::vector<Scaled> us(n + 1);
        Scaled p1(1.0), p2(1.0);
        double max_log = -1e308;
        for (int k = 0; k <= n; ++k) {
            us[k] = a1 * p1 + a2 * p2;
            if (us[k].sign() != 0) max_log = std::max(max_log, us[k].log_abs());
            p1 = p1 * m1;
            p2 = p2 * m2;
        }
        for (int k = 0; k <= n; ++k) {
            if (us[k].sign() == 0) continue;
            double l = us[k].log_abs() - max_log;
            ev.values[k] = (l < -745.0) ? 0.0 : double(us[k].sign()) * std::exp(l);
        }
        ev.xi = std::complex<double>((X / Scaled(std::sqrt(b))).value(), 0.0);
        ev.a1 = a1.value();
        ev.a2 = a2.value();
        ev.coefficient_ratio = (a1 / (-a2)).value();
    }
    normalize_max(ev.values);

    bool any_nonzero = false, any_bad = false;
    for (double x : ev.values) {
        if (!std::isfinite(x))
            any_bad = true;
        else if (x != 0.0)
            any_nonzero = true;
    }
    bool degenerate = any_bad || !any_nonzero;
    double res = degenerate ? 1.0 : residual(params, q, lambda, ev.values);
    if (degenerate || res > 1e-7) {
        ev.values = kernel_vector(params, c.value(), s.value());
        ev.kernel_fallback = true;
    }
    int prev = 0;
    for (double x : ev.values) {
        int sg = (x > 1e-12) ? 1 : (x < -1e-12 ? -1 : 0);
        if (sg != 0 && prev != 0 && sg != prev) ++ev.nodal_count;
        if (sg != 0) prev = sg;
    }
    return ev;
}

double residual(const GraphParams& params, const Potential& q, double lambda,
                const std::vector<double>& u) {
    const int n = params.n;
    const double b = params.b;
    if (int(u.size()) != n + 1)
        throw std::invalid_argument("residual: need n+1 vertex values");
    TransferValues t = transfer_at(q, lambda);
    double c = t.c_value(), s = t.s_value();
    double sa = params.alpha * s;
    double mid = (b + 1.0) * c + sa;
    double umax = 0.0;
    for (double x : u) umax = std::max(umax, std::fabs(x));
    if (umax == 0.0) return 0.0;
    // Componentwise backward-error scaling: each row residual is divided by
    // the sum of magnitudes of its terms as computed.  The plain row norm
    // would be useless at the rogue eigenvalues, where the last-row
    // coefficient c + s alpha is itself an e^{|alpha|}-sized cancellation.
    double worst = 0.0;
    auto rate = [&](double r, double denom) {
        worst = std::max(worst, std::fabs(r) / std::max(denom, 1e-300));
    };
    if (params.root_condition == RootCondition::Robin) {
        double r = (c * b + sa) * u[0] - (n >= 1 ? b * u[1] : 0.0);
        double d = (std::fabs(c * b) + std::fabs(sa)) * std::fabs(u[0]) +
                   (n >= 1 ? b * std::fabs(u[1]) : 0.0) + umax;
        rate(r, d);
    } else {
        rate(u[0], umax);
    }
    for (int k = 1; k < n; ++k) {
        double r = -u[k - 1] + mid * u[k] - b * u[k + 1];
        double d = std::fabs(u[k - 1]) +
                   ((b + 1.0) * std::fabs(c) + std::fabs(sa)) * std::fabs(u[k]) +
                   b * std::fabs(u[k + 1]) + umax;
        rate(r, d);
    }
    if (n >= 1) {
        double r = -u[n - 1] + (c + sa) * u[n];
        double d = std::fabs(u[n - 1]) +
                   (std::fabs(c) + std::fabs(sa)) * std::fabs(u[n]) + umax;
        rate(r, d);
    }
    return worst;
}

std::vector<double> edge_function(const GraphParams& params, const Potential& q,
                                  double lambda, int k,
                                  const std::vector<double>& xs) {
    if (k < 1 || k > params.n)
        throw std::invalid_argument("edge_function: edge index in 1..n");
    TransferValues t = transfer_at(q, lambda);
    double s = t.s_value();
    if (s == 0.0 || !std::isfinite(1.0 / s))
        throw std::domain_error("edge_function: s(lambda) = 0, Dirichlet eigenfunction path");
    DiscreteEigenvector ev = vertex_values(params, q, lambda);
    double A = (ev.values[k] - ev.values[k - 1] * t.c_value()) / s;
    TransferProfile prof = transfer_profile(q, lambda, xs);
    std::vector<double> out(xs.size());
    for (size_t i = 0; i < xs.size(); ++i)
        out[i] = ev.values[k - 1] * prof.c[i] + A * prof.s[i];
    return out;
}

std::vector<double> weighted_energies(const GraphParams& params, const Potential& q,
                                      double lambda, const DiscreteEigenvector& ev) {
    const int npts = 65;
    std::vector<double> xs(npts);
    for (int i = 0; i < npts; ++i) xs[i] = double(i) / (npts - 1);
    std::vector<double> out;
    double total = 0.0;
    for (int k = 1; k <= params.n; ++k) {
        TransferValues t = transfer_at(q, lambda);
        double s = t.s_value();
        double A = (ev.values[k] - ev.values[k - 1] * t.c_value()) / s;
        TransferProfile prof = transfer_profile(q, lambda, xs);
        double acc = 0.0;
        for (int i = 0; i < npts; ++i) {
            double u = ev.values[k - 1] * prof.c[i] + A * prof.s[i];
            double wsimp = (i == 0 || i == npts - 1) ? 1.0 : (i % 2 ? 4.0 : 2.0);
            acc += wsimp * u * u;
        }
        acc *= (1.0 / (npts - 1)) / 3.0;
        double e = std::pow(params.b, k) * acc;
        out.push_back(e);
        total += e;
    }
    out.push_back(total);
    return out;
}

}  // namespace qtree
