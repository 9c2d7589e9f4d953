#pragma once

#include <vector>

#include "qtree/determinants.hpp"
#include "qtree/potential.hpp"

namespace qtree {

// Uniform mu grid with both endpoints included.
std::vector<double> mu_grid(double mu_lo, double mu_hi, int npts);

// Grid kernels over lambda = mu |mu|.  Each has a serial reference
// implementation and an OpenMP version; they produce identical results
// (each grid point is an independent pure evaluation).

std::vector<int> scan_sturm_serial(const GraphParams& params, const Potential& q,
                                   const std::vector<double>& mus);
std::vector<int> scan_sturm(const GraphParams& params, const Potential& q,
                            const std::vector<double>& mus);

std::vector<SecularValue> scan_secular_serial(const GraphParams& params,
                                              const Potential& q,
                                              const std::vector<double>& mus);
std::vector<SecularValue> scan_secular(const GraphParams& params, const Potential& q,
                                       const std::vector<double>& mus);

}  // namespace qtree
