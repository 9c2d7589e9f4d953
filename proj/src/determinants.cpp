#include "qtree/determinants.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "qtree/orthopoly.hpp"

namespace qtree {

SecularValue SecularValue::from_scaled(const Scaled& s) {
    SecularValue sv;
    sv.sign = s.sign();
    if (sv.sign == 0) return sv;
    double a = std::fabs(s.mant);
    double l = std::log(a);
    sv.value_hat = s.mant / a;
    sv.log_scale = s.log + l;
    return sv;
}

SecularValue dd_eval(const GraphParams& params, const Scaled& y, const Scaled& z) {
    Scaled v = (params.b + 1.0) * y + params.alpha * z;
    Scaled d_prev, d_curr;
    if (params.root_condition == RootCondition::Robin) {
        d_prev = Scaled(1.0) - y * y;       // D_{-1}
        d_curr = params.alpha * z;          // D_0
    } else {
        d_prev = y;                          // D°_{-1}
        d_curr = Scaled(1.0);                // D°_0
    }
    for (int k = 1; k <= params.n; ++k) {
        Scaled d_next = v * d_curr - params.b * d_prev;
        d_prev = d_curr;
        d_curr = d_next;
    }
    return SecularValue::from_scaled(d_curr);
}

SecularValue dd_eval(const GraphParams& params, double y, double z) {
    return dd_eval(params, Scaled(y), Scaled(z));
}

double dd_matrix_det(const GraphParams& params, double y, double z) {
    if (params.n > 30)
        throw std::invalid_argument("dd_matrix_det: n <= 30 (oracle scale)");
    int m = params.n + 1;
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(m, m);
    double sa = params.alpha * z;
    double mid = y * (params.b + 1.0) + sa;
    if (params.root_condition == RootCondition::Robin)
        M(0, 0) = y * params.b + sa;
    else
        M(0, 0) = 1.0;
    if (m > 1 && params.root_condition == RootCondition::Robin) M(0, 1) = -params.b;
    for (int i = 1; i < m; ++i) {
        M(i, i - 1) = -1.0;
        M(i, i) = (i == m - 1) ? y + sa : mid;
        if (i + 1 < m) M(i, i + 1) = -params.b;
    }
    return M.partialPivLu().determinant();
}

double dd_via_pq(const GraphParams& params, double y, double z) {
    double v = (params.b + 1.0) * y + params.alpha * z;
    PQValue pq = pq_eval({params.b, params.n}, v);
    if (params.root_condition == RootCondition::Robin)
        return params.alpha * z * pq.p + (1.0 - y * y) * pq.q;
    return pq.p + y * pq.q;
}

SecularValue secular_of(const GraphParams& params, const TransferValues& t) {
    return dd_eval(params, t.c(), t.s());
}

SecularValue secular_at(const GraphParams& params, const Potential& q, double lambda) {
    return secular_of(params, transfer_at(q, lambda));
}

Scaled v_of(const GraphParams& params, const TransferValues& t) {
    return (params.b + 1.0) * t.c() + params.alpha * t.s();
}

int sturm_count_below(const GraphParams& params, const Scaled& y, const Scaled& z) {
    // Leading principal minors of the vertex matrix.  Off-diagonal products
    // are b for every consecutive pair except, under the Dirichlet root
    // condition, the first (the decoupled u_0 = 0 row), where it is 0.
    Scaled v = (params.b + 1.0) * y + params.alpha * z;
    Scaled sa = params.alpha * z;
    bool robin = params.root_condition == RootCondition::Robin;
    int m = params.n + 1;  // matrix dimension
    Scaled d_prev(1.0);    // d_0, the empty minor
    Scaled d_curr = robin ? params.b * y + sa : Scaled(1.0);
    int prev_sign = 1, changes = 0;
    auto account = [&](const Scaled& d) {
        int s = d.sign();
        if (s == 0) s = -prev_sign;  // simple root of a minor: count a change
        if (s != prev_sign) ++changes;
        prev_sign = s;
    };
    account(d_curr);
    for (int k = 2; k <= m; ++k) {
        Scaled diag = (k == m) ? y + sa : v;
        double couple = (!robin && k == 2) ? 0.0 : params.b;
        Scaled d_next = diag * d_curr - couple * d_prev;
        d_prev = d_curr;
        d_curr = d_next;
        account(d_curr);
    }
    // changes = number of pencil roots above y; total root count is n+1
    // (Robin) or n (Dirichlet, where the constant first minor never changes).
    int total = robin ? params.n + 1 : params.n;
    return total - changes;
}

int sturm_count_below(const GraphParams& params, double y, double z) {
    return sturm_count_below(params, Scaled(y), Scaled(z));
}

int sturm_count_below(const GraphParams& params, const TransferValues& t) {
    return sturm_count_below(params, t.c(), t.s());
}

}  // namespace qtree
