#include "qtree/potential.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "json.hpp"

namespace qtree {

Potential::Potential() = default;

Potential Potential::piecewise_constant(std::vector<double> breakpoints,
                                        std::vector<double> values) {
    if (values.size() != breakpoints.size() + 1)
        throw std::invalid_argument("piecewise_constant: need one more value than breakpoints");
    for (size_t i = 0; i < breakpoints.size(); ++i) {
        if (breakpoints[i] <= 0.0 || breakpoints[i] >= 1.0)
            throw std::invalid_argument("piecewise_constant: breakpoints must lie in (0,1)");
        if (i > 0 && breakpoints[i] <= breakpoints[i - 1])
            throw std::invalid_argument("piecewise_constant: breakpoints must be increasing");
    }
    // Mirror symmetry of the representation.
    const double tol = 1e-12;
    size_t m = breakpoints.size();
    for (size_t i = 0; i < m; ++i)
        if (std::fabs(breakpoints[i] - (1.0 - breakpoints[m - 1 - i])) > tol)
            throw std::invalid_argument("piecewise_constant: breakpoints not symmetric about 1/2");
    size_t nv = values.size();
    for (size_t i = 0; i < nv; ++i)
        if (std::fabs(values[i] - values[nv - 1 - i]) > tol)
            throw std::invalid_argument("piecewise_constant: values not symmetric about 1/2");
    Potential p;
    p.kind_ = Kind::PiecewiseConstant;
    p.breakpoints_ = std::move(breakpoints);
    p.values_ = std::move(values);
    return p;
}

Potential Potential::sampled(std::vector<double> grid_values) {
    if (grid_values.size() < 2)
        throw std::invalid_argument("sampled: need at least two samples");
    Potential p;
    p.kind_ = Kind::Sampled;
    size_t n = grid_values.size();
    double dev = 0.0;
    for (size_t i = 0; i < n; ++i)
        dev = std::max(dev, std::fabs(grid_values[i] - grid_values[n - 1 - i]));
    p.symmetrize_warning_ = dev > 1e-8;
    p.samples_.resize(n);
    for (size_t i = 0; i < n; ++i)
        p.samples_[i] = 0.5 * (grid_values[i] + grid_values[n - 1 - i]);
    return p;
}

Potential Potential::well(double V, double a) {
    if (V == 0.0) return Potential();
    return piecewise_constant({a, 1.0 - a}, {0.0, V, 0.0});
}

double Potential::operator()(double x) const {
    switch (kind_) {
        case Kind::Zero:
            return 0.0;
        case Kind::PiecewiseConstant: {
            size_t i = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x) -
                       breakpoints_.begin();
            return values_[i];
        }
        case Kind::Sampled: {
            double t = std::clamp(x, 0.0, 1.0) * double(samples_.size() - 1);
            size_t i = std::min(size_t(t), samples_.size() - 2);
            double f = t - double(i);
            return samples_[i] * (1.0 - f) + samples_[i + 1] * f;
        }
    }
    return 0.0;
}

double Potential::min_value() const {
    switch (kind_) {
        case Kind::Zero:
            return 0.0;
        case Kind::PiecewiseConstant:
            return *std::min_element(values_.begin(), values_.end());
        case Kind::Sampled:
            return *std::min_element(samples_.begin(), samples_.end());
    }
    return 0.0;
}

double Potential::integral() const {
    switch (kind_) {
        case Kind::Zero:
            return 0.0;
        case Kind::PiecewiseConstant: {
            double total = 0.0;
            double prev = 0.0;
            for (size_t i = 0; i < values_.size(); ++i) {
                double next = (i < breakpoints_.size()) ? breakpoints_[i] : 1.0;
                total += values_[i] * (next - prev);
                prev = next;
            }
            return total;
        }
        case Kind::Sampled: {
            // Trapezoid on the uniform sample grid; exact for the linear
            // interpolant used by operator().
            double h = 1.0 / double(samples_.size() - 1);
            double total = 0.5 * (samples_.front() + samples_.back());
            for (size_t i = 1; i + 1 < samples_.size(); ++i) total += samples_[i];
            return total * h;
        }
    }
    return 0.0;
}

std::string Potential::to_json() const {
    nlohmann::json j;
    switch (kind_) {
        case Kind::Zero:
            j["kind"] = "zero";
            break;
        case Kind::PiecewiseConstant:
            j["kind"] = "piecewise_constant";
            j["breakpoints"] = breakpoints_;
            j["values"] = values_;
            break;
        case Kind::Sampled:
            j["kind"] = "sampled";
            j["samples"] = samples_;
            break;
    }
    return j.dump();
}

Potential Potential::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "zero") return Potential();
    if (kind == "piecewise_constant")
        return piecewise_constant(j.at("breakpoints").get<std::vector<double>>(),
                                  j.at("values").get<std::vector<double>>());
    if (kind == "sampled")
        return sampled(j.at("samples").get<std::vector<double>>());
    throw std::invalid_argument("potential json: unknown kind '" + kind + "'");
}

}  // namespace qtree
