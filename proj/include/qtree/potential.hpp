#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace qtree {

// Edge potential q(x) on [0,1], required symmetric about x = 1/2.
// Bounded representations only.
class Potential {
public:
    enum class Kind { Zero, PiecewiseConstant, Sampled };

    // q(x) == 0.
    Potential();

    // Piecewise constant: values[i] on (breakpoints[i-1], breakpoints[i]),
    // with implicit endpoints 0 and 1.  breakpoints strictly increasing in
    // (0,1); the breakpoint/value lists must be mirror symmetric.
    static Potential piecewise_constant(std::vector<double> breakpoints,
                                        std::vector<double> values);

    // Uniform samples of q on [0,1] (first sample at x=0, last at x=1),
    // evaluated by linear interpolation.  Symmetrized by averaging q(x) and
    // q(1-x); deviation beyond 1e-8 sets the warning flag.
    static Potential sampled(std::vector<double> grid_values);

    // Characteristic-well convenience: V on [a, 1-a], zero elsewhere.
    static Potential well(double V, double a);

    Kind kind() const { return kind_; }
    bool symmetrize_warning() const { return symmetrize_warning_; }

    double operator()(double x) const;

    double min_value() const;
    double integral() const;

    const std::vector<double>& breakpoints() const { return breakpoints_; }
    const std::vector<double>& values() const { return values_; }
    const std::vector<double>& samples() const { return samples_; }

    bool is_zero() const { return kind_ == Kind::Zero; }

    std::string to_json() const;
    static Potential from_json(const std::string& text);

private:
    Kind kind_ = Kind::Zero;
    std::vector<double> breakpoints_;  // PiecewiseConstant
    std::vector<double> values_;       // PiecewiseConstant
    std::vector<double> samples_;      // Sampled
    bool symmetrize_warning_ = false;
};

}  // namespace qtree
