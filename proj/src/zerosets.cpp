#include "qtree/zerosets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qtree/orthopoly.hpp"

namespace qtree {

namespace {

int dd_sign(const GraphParams& params, double y, double z) {
    return dd_eval(params, y, z).sign;
}

double bisect_y(const GraphParams& params, double z, double lo, double hi, int slo) {
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        int sm = dd_sign(params, mid, z);
        if (sm == 0) return mid;
        if (sm == slo)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<double> scan_y_roots(const GraphParams& params, double z, double y_lo,
                                 double y_hi, int npts) {
    std::vector<double> roots;
    double h = (y_hi - y_lo) / npts;
    double yprev = y_lo;
    int sprev = dd_sign(params, yprev, z);
    for (int i = 1; i <= npts; ++i) {
        double y = y_lo + i * h;
        int s = dd_sign(params, y, z);
        if (s != 0 && sprev != 0 && s != sprev)
            roots.push_back(bisect_y(params, z, yprev, y, sprev));
        if (s != 0) {
            sprev = s;
            yprev = y;
        }
    }
    return roots;
}

}  // namespace

std::vector<double> y_roots_at(const GraphParams& params, double z) {
    int expected = (params.root_condition == RootCondition::Robin) ? params.n + 1
                                                                   : params.n;
    // Constrained strips keep |v| <= b+1; the rogue branches run out to
    // y ~ |alpha z| / beta with beta >= 1.
    double y_m = 2.0 + std::fabs(params.alpha * z) + params.b;
    int npts = std::max(256, 64 * (params.n + 1));
    for (int refine = 0; refine < 8; ++refine) {
        auto roots = scan_y_roots(params, z, -y_m, y_m, npts);
        if (int(roots.size()) == expected) return roots;
        npts *= 2;
    }
    throw std::runtime_error("y_roots_at: could not isolate expected root count");
}

int component_index(const GraphParams& params, double y, double z) {
    auto roots = y_roots_at(params, z);
    int best = 0;
    double bd = std::fabs(roots[0] - y);
    for (size_t i = 1; i < roots.size(); ++i) {
        double d = std::fabs(roots[i] - y);
        if (d < bd) {
            bd = d;
            best = int(i);
        }
    }
    return best;
}

CurveComponent trace_component(const GraphParams& params, int k, double z_lo,
                               double z_hi, int npts) {
    if (params.alpha == 0.0)
        throw std::invalid_argument("trace_component: alpha = 0 has vertical components");
    bool robin = params.root_condition == RootCondition::Robin;
    int lo = robin ? 0 : 1, hi = params.n;
    if (k < lo || k > hi)
        throw std::invalid_argument("trace_component: component index out of range");
    int rank = robin ? k : k - 1;
    CurveComponent comp;
    comp.k = k;
    comp.kind = (robin ? k >= params.n - 1 : k == params.n) ? ComponentKind::Rogue
                                                            : ComponentKind::ConstrainedStrip;
    for (int i = 0; i < npts; ++i) {
        double z = z_lo + (z_hi - z_lo) * double(i) / double(std::max(1, npts - 1));
        try {
            auto roots = y_roots_at(params, z);
            comp.z.push_back(z);
            comp.y.push_back(roots[rank]);
        } catch (const std::runtime_error&) {
            comp.truncated = true;
        }
    }
    return comp;
}

StripCheck strip_membership(const GraphParams& params, int k, double y, double z) {
    if (!(params.alpha < 0.0))
        throw std::invalid_argument("strip_membership: requires alpha < 0");
    if (!(z > 0.0))
        throw std::invalid_argument("strip_membership: requires z > 0 (use the symmetry relations otherwise)");
    PQRoots roots = pq_roots({params.b, params.n});
    const auto& vr = roots.p;  // v_{n1} < ... < v_{nn}
    const auto& wr = roots.q;  // w_{n1} < ... < w_{n,n-1}
    double v = (params.b + 1.0) * y + params.alpha * z;
    double B = params.b + 1.0;
    StripCheck res;
    auto in = [&](double lov, double hiv, const std::string& label) {
        res.active = label;
        res.inside = lov < v && v < hiv;
    };
    const double inf = std::numeric_limits<double>::infinity();
    if (params.root_condition == RootCondition::Robin) {
        if (k < 0 || k > params.n)
            throw std::invalid_argument("strip_membership: bad component index");
        if (k == 0) {
            if (y < 1.0)
                in(-B, vr[0], "-(b+1) < v < v_n1");
            else
                in(vr[0], wr.empty() ? inf : wr[0], "v_n1 < v < w_n1");
        } else if (k <= params.n - 2) {
            if (y < 1.0)
                in(wr[k - 1], vr[k], "w_nk < v < v_n,k+1");
            else
                in(vr[k], wr[k], "v_n,k+1 < v < w_n,k+1");
        } else if (k == params.n - 1) {
            if (y < 1.0)
                in(wr[params.n - 2], vr[params.n - 1], "w_n,n-1 < v < v_nn");
            else
                in(vr[params.n - 1], inf, "v_nn < v");
        } else {
            in(B, inf, "b+1 < v");
        }
    } else {
        if (k < 1 || k > params.n)
            throw std::invalid_argument("strip_membership: bad component index");
        if (k == 1) {
            if (y < 0.0)
                in(-B, vr[0], "-(b+1) < v < v_n1");
            else
                in(vr[0], wr.empty() ? inf : wr[0], "v_n1 < v < w_n1");
        } else if (k <= params.n - 1) {
            if (y < 0.0)
                in(wr[k - 2], vr[k - 1], "w_n,k-1 < v < v_nk");
            else
                in(vr[k - 1], wr[k - 1], "v_nk < v < w_nk");
        } else {
            if (y < 0.0)
                in(wr[params.n - 2], vr[params.n - 1], "w_n,n-1 < v < v_nn");
            else
                in(vr[params.n - 1], inf, "v_nn < v");
        }
    }
    return res;
}

double rogue_asymptote(RogueCurve kind, double b, double alpha, double y) {
    if (alpha == 0.0)
        throw std::invalid_argument("rogue_asymptote: alpha = 0 gives vertical lines");
    if (kind == RogueCurve::CnnMinus1 && b < 2.0)
        throw std::invalid_argument("rogue_asymptote: C_n^{n-1} asymptote requires b >= 2");
    if (!(y > 1.0))
        throw std::invalid_argument("rogue_asymptote: y > 1 required");
    double beta = (kind == RogueCurve::CnnMinus1) ? b : 1.0;
    return -beta * (y - 1.0 / y) / alpha;
}

}  // namespace qtree
