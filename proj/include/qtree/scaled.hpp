#pragma once

#include <cmath>
#include <cstdlib>

namespace qtree {

// A real number represented as mant * exp(log).  Used wherever the transfer
// functions or secular determinants exceed double range (lambda ~ -alpha^2
// makes c(lambda) ~ e^{|alpha|}, and the determinant recurrence multiplies n
// such factors).
struct Scaled {
    double mant = 0.0;
    double log = 0.0;

    Scaled() = default;
    Scaled(double m) : mant(m), log(0.0) {}
    Scaled(double m, double l) : mant(m), log(l) { normalize(); }

    static Scaled from_log(double sign_mant, double l) {
        Scaled s;
        s.mant = sign_mant;
        s.log = l;
        s.normalize();
        return s;
    }

    void normalize() {
        if (mant == 0.0) {
            log = 0.0;
            return;
        }
        double a = std::fabs(mant);
        if (a > 1e100 || a < 1e-100) {
            log += std::log(a);
            mant = mant > 0 ? 1.0 : -1.0;
        }
    }

    int sign() const { return mant > 0 ? 1 : (mant < 0 ? -1 : 0); }

    // Plain double value; overflows to +-inf if log is too large.
    double value() const { return mant * std::exp(log); }

    double log_abs() const { return std::log(std::fabs(mant)) + log; }

    Scaled operator-() const {
        Scaled r = *this;
        r.mant = -r.mant;
        return r;
    }

    friend Scaled operator*(const Scaled& a, const Scaled& b) {
        Scaled r;
        r.mant = a.mant * b.mant;
        r.log = a.log + b.log;
        r.normalize();
        return r;
    }

    friend Scaled operator*(double a, const Scaled& b) { return Scaled(a) * b; }

    friend Scaled operator+(const Scaled& a, const Scaled& b) {
        if (a.mant == 0.0) return b;
        if (b.mant == 0.0) return a;
        const Scaled& hi = (a.log >= b.log) ? a : b;
        const Scaled& lo = (a.log >= b.log) ? b : a;
        double d = lo.log - hi.log;  // <= 0
        Scaled r;
        if (d < -745.0) return hi;  // exp underflows
        r.mant = hi.mant + lo.mant * std::exp(d);
        r.log = hi.log;
        r.normalize();
        return r;
    }

    friend Scaled operator-(const Scaled& a, const Scaled& b) { return a + (-b); }

    friend Scaled operator/(const Scaled& a, const Scaled& b) {
        Scaled r;
        r.mant = a.mant / b.mant;
        r.log = a.log - b.log;
        r.normalize();
        return r;
    }
};

}  // namespace qtree
