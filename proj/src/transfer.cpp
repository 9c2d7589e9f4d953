#include "qtree/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qtree {

double TransferValues::wronskian_defect() const {
    Scaled w = c() * c() - s() * cp() - Scaled(1.0);
    Scaled ref = c() * c() + Scaled(1.0);
    return (w / ref).value();
}

namespace {

// Normalize hats so that max(|c_hat|,|s_hat|) lands in [1/2, 2].
void renorm(TransferValues& t) {
    double m = std::max(std::fabs(t.c_hat), std::fabs(t.s_hat));
    if (m == 0.0 || (m >= 0.5 && m <= 2.0)) return;
    t.c_hat /= m;
    t.s_hat /= m;
    t.cp_hat /= m;
    t.sp_hat /= m;
    t.log_scale += std::log(m);
}

// cos-like and sin-like interval propagator entries for u'' = (V-lambda) u
// over length ell, with w2 = lambda - V.  Returns entries of
// [[C, S], [Sp*w2? ...]] -- concretely:
//   C  = cos(w ell)            or cosh(k ell)
//   S  = sin(w ell)/w          or sinh(k ell)/k
//   D  = -w sin(w ell)         or  k sinh(k ell)      (derivative of C)
// and the propagator is [[C, S], [D, C]], times exp(logf).
struct Prop {
    double C, S, D, logf;
};

Prop interval_propagator(double w2, double ell) {
    Prop p{1.0, ell, 0.0, 0.0};
    double a = w2 * ell * ell;
    if (std::fabs(a) < 1e-10) {
        // Series around w2 = 0.
        p.C = 1.0 - a / 2.0 + a * a / 24.0;
        p.S = ell * (1.0 - a / 6.0 + a * a / 120.0);
        p.D = w2 * ell * (-1.0 + a / 6.0);
        return p;
    }
    if (w2 > 0.0) {
        double w = std::sqrt(w2);
        p.C = std::cos(w * ell);
        p.S = std::sin(w * ell) / w;
        p.D = -w * std::sin(w * ell);
        return p;
    }
    double k = std::sqrt(-w2);
    double ke = k * ell;
    if (ke < 20.0) {
        p.C = std::cosh(ke);
        p.S = std::sinh(ke) / k;
        p.D = k * std::sinh(ke);
        return p;
    }
    double E = std::exp(-2.0 * ke);
    p.logf = ke;
    p.C = 0.5 * (1.0 + E);
    p.S = 0.5 * (1.0 - E) / k;
    p.D = 0.5 * k * (1.0 - E);
    return p;
}

TransferValues transfer_zero(double lambda) {
    TransferValues t;
    t.lambda = lambda;
    Prop p = interval_propagator(lambda, 1.0);
    t.c_hat = p.C;
    t.s_hat = p.S;
    t.cp_hat = p.D;
    t.sp_hat = p.C;
    t.log_scale = p.logf;
    renorm(t);
    return t;
}

TransferValues transfer_piecewise(const Potential& q, double lambda) {
    // Phi(x) = [[c, s], [c', s']]; Phi(1) = prod of interval propagators.
    double c = 1.0, s = 0.0, cp = 0.0, sp = 1.0;
    double logf = 0.0;
    double prev = 0.0;
    const auto& bp = q.breakpoints();
    const auto& vals = q.values();
    for (size_t i = 0; i < vals.size(); ++i) {
        double next = (i < bp.size()) ? bp[i] : 1.0;
        Prop p = interval_propagator(lambda - vals[i], next - prev);
        double nc = p.C * c + p.S * cp;
        double ns = p.C * s + p.S * sp;
        double ncp = p.D * c + p.C * cp;
        double nsp = p.D * s + p.C * sp;
        c = nc; s = ns; cp = ncp; sp = nsp;
        logf += p.logf;
        double m = std::max({std::fabs(c), std::fabs(s), std::fabs(cp), std::fabs(sp)});
        if (m > 1e50) {
            c /= m; s /= m; cp /= m; sp /= m;
            logf += std::log(m);
        }
        prev = next;
    }
    TransferValues t;
    t.lambda = lambda;
    t.c_hat = c;
    t.s_hat = s;
    t.cp_hat = cp;
    t.sp_hat = sp;
    t.log_scale = logf;
    renorm(t);
    return t;
}

// Dormand-Prince 5(4) on y = (c, c', s, s'), with shared log rescaling.
struct OdeState {
    double y[4];
    double logf = 0.0;
};

void rhs(const Potential& q, double lambda, double x, const double* y, double* f) {
    double qq = q(x) - lambda;
    f[0] = y[1];
    f[1] = qq * y[0];
    f[2] = y[3];
    f[3] = qq * y[2];
}

// Integrates from x0 to x1 (x0 < x1), adapting the step; tol is relative.
void integrate_segment(const Potential& q, double lambda, double x0, double x1,
                       OdeState& st, double tol) {
    static const double a21 = 1.0 / 5;
    static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                        a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    double span = x1 - x0;
    if (span <= 0.0) return;
    double freq = std::sqrt(std::fabs(lambda) + 64.0);
    double h = std::min(span, 0.5 / freq);
    double x = x0;
    int iter = 0;
    // Evaluation points are clamped just inside [x0, x1): accumulated rounding
    // can leave the final step's endpoint on the far side of a piecewise
    // breakpoint at x1, which would otherwise make the error estimate see the
    // jump and reject the step forever.
    double xcap = std::max(x0, x1 - 1e-13 * std::max(1.0, std::fabs(x1)));
    auto eval = [&](double xe, const double* y, double* k) {
        rhs(q, lambda, std::min(xe, xcap), y, k);
    };
    while (x < x1 - 1e-15) {
        if (++iter > 2000000)
            throw std::runtime_error("transfer integration: step count exceeded");
        h = std::min(h, x1 - x);
        double k1[4], k2[4], k3[4], k4[4], k5[4], k6[4], k7[4], yt[4], y5[4];
        eval(x, st.y, k1);
        for (int i = 0; i < 4; ++i) yt[i] = st.y[i] + h * a21 * k1[i];
        eval(x + h / 5, yt, k2);
        for (int i = 0; i < 4; ++i) yt[i] = st.y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        eval(x + 3 * h / 10, yt, k3);
        for (int i = 0; i < 4; ++i)
            yt[i] = st.y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        eval(x + 4 * h / 5, yt, k4);
        for (int i = 0; i < 4; ++i)
            yt[i] = st.y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        eval(x + 8 * h / 9, yt, k5);
        for (int i = 0; i < 4; ++i)
            yt[i] = st.y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                                   a64 * k4[i] + a65 * k5[i]);
        eval(x + h, yt, k6);
        for (int i = 0; i < 4; ++i)
            y5[i] = st.y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] +
                                   b5 * k5[i] + b6 * k6[i]);
        eval(x + h, y5, k7);
        double scale = 0.0;
        for (int i = 0; i < 4; ++i)
            scale = std::max(scale, std::max(std::fabs(st.y[i]), std::fabs(y5[i])));
        scale = std::max(scale, 1e-30);
        double err = 0.0;
        for (int i = 0; i < 4; ++i) {
            double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                            e6 * k6[i] + e7 * k7[i]);
            err = std::max(err, std::fabs(e) / scale);
        }
        if (err <= tol) {
            x += h;
            for (int i = 0; i < 4; ++i) st.y[i] = y5[i];
            double m = 0.0;
            for (int i = 0; i < 4; ++i) m = std::max(m, std::fabs(st.y[i]));
            if (m > 1e50) {
                for (int i = 0; i < 4; ++i) st.y[i] /= m;
                st.logf += std::log(m);
            }
        }
        double fac = (err > 0.0) ? 0.9 * std::pow(tol / err, 0.2) : 5.0;
        h *= std::clamp(fac, 0.2, 5.0);
        h = std::max(h, 1e-12);
    }
}

std::vector<double> mandatory_nodes(const Potential& q) {
    std::vector<double> nodes;
    if (q.kind() == Potential::Kind::PiecewiseConstant)
        nodes = q.breakpoints();
    return nodes;
}

TransferValues transfer_rk(const Potential& q, double lambda) {
    OdeState st;
    st.y[0] = 1.0; st.y[1] = 0.0; st.y[2] = 0.0; st.y[3] = 1.0;
    double x = 0.0;
    auto nodes = mandatory_nodes(q);
    nodes.push_back(1.0);
    for (double nx : nodes) {
        integrate_segment(q, lambda, x, nx, st, 1e-13);
        x = nx;
    }
    TransferValues t;
    t.lambda = lambda;
    t.c_hat = st.y[0];
    t.cp_hat = st.y[1];
    t.s_hat = st.y[2];
    t.sp_hat = st.y[3];
    t.log_scale = st.logf;
    renorm(t);
    return t;
}

}  // namespace

TransferValues transfer_at(const Potential& q, double lambda) {
    switch (q.kind()) {
        case Potential::Kind::Zero:
            return transfer_zero(lambda);
        case Potential::Kind::PiecewiseConstant:
            return transfer_piecewise(q, lambda);
        case Potential::Kind::Sampled:
            return transfer_rk(q, lambda);
    }
    return transfer_zero(lambda);
}

TransferValues transfer_integrate(const Potential& q, double lambda) {
    return transfer_rk(q, lambda);
}

TransferProfile transfer_profile(const Potential& q, double lambda,
                                 const std::vector<double>& xs) {
    TransferProfile prof;
    prof.x = xs;
    prof.c.reserve(xs.size());
    prof.s.reserve(xs.size());
    OdeState st;
    st.y[0] = 1.0; st.y[1] = 0.0; st.y[2] = 0.0; st.y[3] = 1.0;
    std::vector<double> stops = mandatory_nodes(q);
    stops.insert(stops.end(), xs.begin(), xs.end());
    std::sort(stops.begin(), stops.end());
    double x = 0.0;
    size_t next_sample = 0;
    for (double nx : stops) {
        if (nx < x) continue;
        integrate_segment(q, lambda, x, nx, st, 1e-13);
        x = nx;
        while (next_sample < xs.size() && std::fabs(xs[next_sample] - x) < 1e-14) {
            double f = std::exp(st.logf);
            prof.c.push_back(st.y[0] * f);
            prof.s.push_back(st.y[2] * f);
            ++next_sample;
        }
    }
    return prof;
}

namespace {

int s_sign(const Potential& q, double mu) {
    TransferValues t = transfer_at(q, lambda_of_mu(mu));
    return t.s_hat > 0 ? 1 : (t.s_hat < 0 ? -1 : 0);
}

double bisect_s_root(const Potential& q, double lo, double hi, int slo) {
    // lo, hi in mu; sign change guaranteed.
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        int sm = s_sign(q, mid);
        if (sm == 0) return mid;
        if (sm == slo)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-15 * std::max(1.0, std::fabs(mid))) break;
    }
    return 0.5 * (lo + hi);
}

std::vector<double> scan_s_roots(const Potential& q, double mu_lo, double mu_hi,
                                 int npts) {
    std::vector<double> roots;
    double h = (mu_hi - mu_lo) / npts;
    int sprev = s_sign(q, mu_lo);
    double mprev = mu_lo;
    for (int i = 1; i <= npts; ++i) {
        double m = mu_lo + i * h;
        int s = s_sign(q, m);
        if (s != 0 && sprev != 0 && s != sprev)
            roots.push_back(bisect_s_root(q, mprev, m, sprev));
        if (s != 0) {
            sprev = s;
            mprev = m;
        }
    }
    return roots;
}

}  // namespace

DirichletSpectrum dirichlet_spectrum(const Potential& q, double lambda_max) {
    if (lambda_max <= 0.0)
        throw std::invalid_argument("dirichlet_spectrum: lambda_max must be positive");
    // First Dirichlet eigenvalue is at least pi^2 + min q.
    double lambda_lo = M_PI * M_PI + q.min_value() - 1.0;
    double mu_lo = mu_of_lambda(lambda_lo);
    double mu_hi = std::sqrt(lambda_max) + 1e-9;
    DirichletSpectrum spec;
    spec.lambda_max = lambda_max;
    if (mu_hi <= mu_lo) return spec;

    int npts = std::max(16, int((mu_hi - mu_lo) / 0.2));
    std::vector<double> roots = scan_s_roots(q, mu_lo, mu_hi, npts);
    for (int refine = 0; refine < 8; ++refine) {
        std::vector<double> finer = scan_s_roots(q, mu_lo, mu_hi, npts * 2);
        if (finer.size() == roots.size()) break;
        roots = std::move(finer);
        npts *= 2;
        if (refine == 7)
            throw std::runtime_error("dirichlet_spectrum: grid refinement cap hit");
    }
    for (double mu : roots) {
        double lam = lambda_of_mu(mu);
        if (lam <= lambda_max) spec.values.push_back(lam);
    }
    return spec;
}

std::vector<SpiralPoint> sample_spiral(const Potential& q, double mu_min,
                                       double mu_max, int npts) {
    if (npts < 2 || mu_min >= mu_max)
        throw std::invalid_argument("sample_spiral: need mu_min < mu_max, npts >= 2");
    std::vector<SpiralPoint> pts;
    pts.reserve(npts);
    for (int i = 0; i < npts; ++i) {
        double mu = mu_min + (mu_max - mu_min) * double(i) / double(npts - 1);
        double lam = lambda_of_mu(mu);
        TransferValues t = transfer_at(q, lam);
        pts.push_back({mu, lam, t.c_value(), t.s_value()});
    }
    return pts;
}

}  // namespace qtree
