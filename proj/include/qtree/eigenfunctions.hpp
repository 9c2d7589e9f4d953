#pragma once

#include <complex>
#include <vector>

#include "qtree/potential.hpp"
#include "qtree/spectra.hpp"

namespace qtree {

struct DiscreteEigenvector {
    std::vector<double> values;  // u_0..u_n, normalized to max |u_k| = 1
    std::complex<double> xi;     // xi + 1/xi = b^{-1/2} v(lambda), |xi| >= 1
    Regime regime = Regime::Oscillatory;
    // Mode coefficients of u_k = a1 (b^{-1/2} xi)^k + a2 (b^{-1/2}/xi)^k,
    // before normalization.  Real (and meaningful) in the exponential regime.
    double a1 = 0.0, a2 = 0.0;
    double coefficient_ratio = 0.0;  // a1 / (-a2) = (b^{1/2}xi - c)/(b^{1/2}/xi - c)
    bool kernel_fallback = false;  // built from the null space of the vertex matrix
    int nodal_count = 0;           // sign changes of the vertex values (informational)
};

// Regime of lambda: |b^{-1/2} v(lambda)| below / above 2, with a 1e-9 band
// classified as Boundary.
Regime regime(const GraphParams& params, const Potential& q, double lambda);

// Discrete eigenvector at an eigenvalue lambda (within polish tolerance).
// Uses the two-mode closed form; falls back to the kernel of the vertex
// matrix if the closed form degenerates (tangential Dirichlet points).
DiscreteEigenvector vertex_values(const GraphParams& params, const Potential& q,
                                  double lambda);

// Max over the n+1 discrete vertex equations of |row . u|, with each row
// scaled componentwise by the sum of magnitudes of its terms (backward-error
// style, robust where row coefficients are themselves cancellations).
double residual(const GraphParams& params, const Potential& q, double lambda,
                const std::vector<double>& u);

// u(x) on edge k (1-based, from vertex k-1 to vertex k) at the given sample
// points in [0,1]: u = u_{k-1} c(x,lambda) + A s(x,lambda) matching both
// endpoint values.  Requires s(lambda) != 0.
std::vector<double> edge_function(const GraphParams& params, const Potential& q,
                                  double lambda, int k,
                                  const std::vector<double>& xs);

// Per-edge weighted energies b^k int |u_k(x)|^2 dx (k = 1..n) for the
// reconstructed eigenfunction; last entry is the total weighted norm squared.
std::vector<double> weighted_energies(const GraphParams& params, const Potential& q,
                                      double lambda, const DiscreteEigenvector& ev);

}  // namespace qtree
