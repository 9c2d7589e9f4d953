#pragma once

#include <vector>

#include "qtree/potential.hpp"
#include "qtree/scaled.hpp"

namespace qtree {

// mu = sgn(lambda) sqrt(|lambda|), the canonical scan axis.
inline double mu_of_lambda(double lambda) {
    double r = std::sqrt(std::fabs(lambda));
    return lambda >= 0 ? r : -r;
}
inline double lambda_of_mu(double mu) { return mu * std::fabs(mu); }

// Endpoint data of the fundamental solutions of -u'' + q u = lambda u:
// c = c(1,lambda), s = s(1,lambda), cp = c'(1,lambda), sp = s'(1,lambda),
// all sharing one log scale so that lambda << 0 never overflows.
struct TransferValues {
    double lambda = 0.0;
    double c_hat = 1.0, s_hat = 1.0, cp_hat = 0.0, sp_hat = 1.0;
    double log_scale = 0.0;

    Scaled c() const { return Scaled::from_log(c_hat, log_scale); }
    Scaled s() const { return Scaled::from_log(s_hat, log_scale); }
    Scaled cp() const { return Scaled::from_log(cp_hat, log_scale); }
    Scaled sp() const { return Scaled::from_log(sp_hat, log_scale); }

    // Plain values; valid while log_scale stays within double range.
    double c_value() const { return c().value(); }
    double s_value() const { return s().value(); }
    double cp_value() const { return cp().value(); }

    // c^2 - s c' - 1, relative to c^2 (Wronskian defect for symmetric q).
    double wronskian_defect() const;
};

TransferValues transfer_at(const Potential& q, double lambda);

// Generic adaptive-integration path, independent of the closed forms used by
// transfer_at for Zero and PiecewiseConstant.  Kept public as a cross-check.
TransferValues transfer_integrate(const Potential& q, double lambda);

// c(x,lambda) and s(x,lambda) at the given sorted sample points in [0,1].
struct TransferProfile {
    std::vector<double> x;
    std::vector<double> c, s;
};
TransferProfile transfer_profile(const Potential& q, double lambda,
                                 const std::vector<double>& xs);

struct DirichletSpectrum {
    std::vector<double> values;  // strictly increasing roots of s(lambda)
    double lambda_max = 0.0;
};

DirichletSpectrum dirichlet_spectrum(const Potential& q, double lambda_max);

struct SpiralPoint {
    double mu, lambda, y, z;
};
std::vector<SpiralPoint> sample_spiral(const Potential& q, double mu_min,
                                       double mu_max, int npts);

}  // namespace qtree
