#pragma once

#include "qtree/potential.hpp"
#include "qtree/scaled.hpp"
#include "qtree/transfer.hpp"

namespace qtree {

enum class RootCondition { Robin, Dirichlet };

struct GraphParams {
    int n;            // level count >= 1
    double b;         // branching factor > 1
    double alpha;     // Robin parameter
    RootCondition root_condition = RootCondition::Robin;
};

// Secular determinant value at a point, overflow-safe.
struct SecularValue {
    double value_hat = 0.0;  // |value_hat| in [1/2, 2], or 0
    double log_scale = 0.0;
    int sign = 0;

    static SecularValue from_scaled(const Scaled& s);
    Scaled scaled() const { return Scaled::from_log(value_hat, log_scale); }
    double value() const { return scaled().value(); }
};

// D_n (Robin) or D°_n (Dirichlet root) by the renormalized second-order
// recurrence; y and z may be Scaled to accept transfer values directly.
SecularValue dd_eval(const GraphParams& params, const Scaled& y, const Scaled& z);
SecularValue dd_eval(const GraphParams& params, double y, double z);

// Oracle: determinant of the (n+1)x(n+1) tridiagonal matrix via LU.  n <= 30.
double dd_matrix_det(const GraphParams& params, double y, double z);

// Composition through the orthogonal polynomials at v = (b+1)y + alpha z.
double dd_via_pq(const GraphParams& params, double y, double z);

// D_n(c(lambda), s(lambda)) through transfer_at.
SecularValue secular_at(const GraphParams& params, const Potential& q, double lambda);
SecularValue secular_of(const GraphParams& params, const TransferValues& t);

// v(lambda) = (b+1) c + alpha s, as a Scaled value.
Scaled v_of(const GraphParams& params, const TransferValues& t);

// Number of y-roots of D_n(., z) that lie strictly below y.  The vertex
// matrix is A + yB with B a positive diagonal, so the leading principal
// minors form a Sturm sequence and the count is exact.  Cheap (O(n)) and the
// workhorse for locating spectrum along the spiral: the count jumps by one
// exactly where (c(lambda), s(lambda)) crosses a component curve.
int sturm_count_below(const GraphParams& params, const Scaled& y, const Scaled& z);
int sturm_count_below(const GraphParams& params, double y, double z);
int sturm_count_below(const GraphParams& params, const TransferValues& t);

}  // namespace qtree
