#include "qtree/scan.hpp"

#include "qtree/transfer.hpp"

namespace qtree {

std::vector<double> mu_grid(double mu_lo, double mu_hi, int npts) {
    std::vector<double> mus(npts);
    for (int i = 0; i < npts; ++i)
        mus[i] = mu_lo + (mu_hi - mu_lo) * double(i) / double(npts - 1);
    mus.back() = mu_hi;
    return mus;
}

std::vector<int> scan_sturm_serial(const GraphParams& params, const Potential& q,
                                   const std::vector<double>& mus) {
    std::vector<int> out(mus.size());
    for (size_t i = 0; i < mus.size(); ++i)
        out[i] = sturm_count_below(params, transfer_at(q, lambda_of_mu(mus[i])));
    return out;
}

std::vector<int> scan_sturm(const GraphParams& params, const Potential& q,
                            const std::vector<double>& mus) {
    std::vector<int> out(mus.size());
    const long m = long(mus.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (long i = 0; i < m; ++i)
        out[i] = sturm_count_below(params, transfer_at(q, lambda_of_mu(mus[i])));
    return out;
}

std::vector<SecularValue> scan_secular_serial(const GraphParams& params,
                                              const Potential& q,
                                              const std::vector<double>& mus) {
    std::vector<SecularValue> out(mus.size());
    for (size_t i = 0; i < mus.size(); ++i)
        out[i] = secular_at(params, q, lambda_of_mu(mus[i]));
    return out;
}

std::vector<SecularValue> scan_secular(const GraphParams& params, const Potential& q,
                                       const std::vector<double>& mus) {
    std::vector<SecularValue> out(mus.size());
    const long m = long(mus.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (long i = 0; i < m; ++i)
        out[i] = secular_at(params, q, lambda_of_mu(mus[i]));
    return out;
}

}  // namespace qtree
