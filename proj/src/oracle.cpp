#include "qtree/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace qtree {

namespace {

constexpr int kDenseCap = 4000;

struct Assembler {
    std::vector<Eigen::Triplet<double>> trip;
    Eigen::VectorXd mass;

    explicit Assembler(int ndof) : mass(Eigen::VectorXd::Zero(ndof)) {}

    void add(int i, int j, double v) { trip.emplace_back(i, j, v); }

    // One P1 edge of unit length with `cells` elements, endpoints at DOFs
    // `left` and `right`, interior DOFs starting at `interior0` (consecutive).
    // weight multiplies both stiffness and mass; q sampled at element midpoints.
    void edge(const Potential& q, int cells, int left, int right, int interior0,
              double weight) {
        double h = 1.0 / cells;
        auto node = [&](int i) {
            if (i == 0) return left;
            if (i == cells) return right;
            return interior0 + i - 1;
        };
        for (int e = 0; e < cells; ++e) {
            int a = node(e), b = node(e + 1);
            double qe = q((e + 0.5) * h);
            double diag = weight * (1.0 / h + qe * h / 2.0);
            add(a, a, diag);
            add(b, b, diag);
            add(a, b, -weight / h);
            add(b, a, -weight / h);
            mass[a] += weight * h / 2.0;
            mass[b] += weight * h / 2.0;
        }
    }

    DiscretizedOperator finish(int ndof, double h, std::string geometry,
                               bool tridiagonal) {
        DiscretizedOperator op;
        op.stiffness.resize(ndof, ndof);
        op.stiffness.setFromTriplets(trip.begin(), trip.end());
        op.mass = std::move(mass);
        op.h = h;
        op.geometry = std::move(geometry);
        op.tridiagonal = tridiagonal;
        if (op.mass.minCoeff() <= 0.0)
            throw std::runtime_error("oracle: lumped mass not positive definite");
        return op;
    }
};

void check_mesh(int cells) {
    if (cells < 16)
        throw std::invalid_argument("oracle: need at least 16 cells per edge (h <= 1/16)");
}

int int_branching(const GraphParams& params) {
    double ip;
    if (std::modf(params.b, &ip) != 0.0 || params.b < 2.0)
        throw std::invalid_argument("oracle: tree assembly needs integer b >= 2");
    return int(ip);
}

}  // namespace

DiscretizedOperator assemble_linear(const GraphParams& params, const Potential& q,
                                    int cells) {
    check_mesh(cells);
    const int n = params.n;
    if (n < 1) throw std::invalid_argument("oracle: need n >= 1");
    const bool robin = params.root_condition == RootCondition::Robin;
    const int nfull = n * cells + 1;
    const int off = robin ? 0 : 1;  // Dirichlet root eliminates u_0
    const int ndof = nfull - off;
    double h = 1.0 / cells;

    Assembler as(ndof);
    // DOFs run along the path: vertex k sits at full index k*cells.
    std::vector<Eigen::Triplet<double>> trip;
    for (int k = 1; k <= n; ++k) {
        double wk = std::pow(params.b, k);
        for (int e = 0; e < cells; ++e) {
            int a = (k - 1) * cells + e - off;
            int b = a + 1;
            double qe = q((e + 0.5) * h);
            double diag = wk * (1.0 / h + qe * h / 2.0);
            if (a >= 0) {
                as.add(a, a, diag);
                as.add(a, b, -wk / h);
                as.add(b, a, -wk / h);
                as.mass[a] += wk * h / 2.0;
            }
            as.add(b, b, diag);
            as.mass[b] += wk * h / 2.0;
        }
    }
    // Robin terms: weight 1 at the root, b^k at vertex k (terminal included).
    if (robin && params.alpha != 0.0) as.add(0, 0, params.alpha);
    for (int k = 1; k <= n; ++k)
        if (params.alpha != 0.0)
            as.add(k * cells - off, k * cells - off, params.alpha * std::pow(params.b, k));
    return as.finish(ndof, h,
                     "linear n=" + std::to_string(n) + ",b=" + std::to_string(params.b),
                     true);
}

DiscretizedOperator assemble_tree(const GraphParams& params, const Potential& q,
                                  int cells) {
    check_mesh(cells);
    const int n = params.n;
    if (n < 1 || n > 3) throw std::invalid_argument("oracle: tree assembly needs 1 <= n <= 3");
    const int b = int_branching(params);
    if (b > 3) throw std::invalid_argument("oracle: tree assembly needs b <= 3");

    // Vertices level by level: level j has b^j of them.
    std::vector<int> level_offset(n + 2, 0);
    int pw = 1;
    for (int j = 0; j <= n; ++j) {
        level_offset[j + 1] = level_offset[j] + pw;
        pw *= b;
    }
    const int nvert = level_offset[n + 1];
    int nedges = 0;
    pw = b;
    for (int j = 1; j <= n; ++j) {
        nedges += pw;
        pw *= b;
    }
    const int ndof = nvert + nedges * (cells - 1);
    if (ndof > 200000) throw std::invalid_argument("oracle: tree exceeds the size cap");
    if (ndof > kDenseCap)
        throw std::invalid_argument("oracle: tree exceeds the dense eigensolver cap of " +
                                    std::to_string(kDenseCap) + " unknowns");
    double h = 1.0 / cells;

    Assembler as(ndof);
    int interior0 = nvert;
    pw = b;
    for (int j = 1; j <= n; ++j) {
        for (int t = 0; t < pw; ++t) {
            int child = level_offset[j] + t;
            int parent = level_offset[j - 1] + t / b;
            as.edge(q, cells, parent, child, interior0, 1.0);
            interior0 += cells - 1;
        }
        pw *= b;
    }
    if (params.alpha != 0.0)
        for (int v = 0; v < nvert; ++v) as.add(v, v, params.alpha);
    return as.finish(ndof, h,
                     "tree n=" + std::to_string(n) + ",b=" + std::to_string(b), false);
}

namespace {

// D^{-1/2} K D^{-1/2} reduces the lumped generalized problem to standard form.
EigenPairs solve_all(const DiscretizedOperator& op, bool vectors) {
    const int ndof = int(op.stiffness.rows());
    Eigen::VectorXd dinv = op.mass.cwiseSqrt().cwiseInverse();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    auto opts = vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly;
    if (op.tridiagonal) {
        Eigen::VectorXd diag(ndof), sub(ndof - 1);
        for (int i = 0; i < ndof; ++i)
            diag[i] = op.stiffness.coeff(i, i) * dinv[i] * dinv[i];
        for (int i = 0; i + 1 < ndof; ++i)
            sub[i] = op.stiffness.coeff(i + 1, i) * dinv[i] * dinv[i + 1];
        es.computeFromTridiagonal(diag, sub, opts);
    } else {
        Eigen::MatrixXd dense = Eigen::MatrixXd(op.stiffness);
        dense = dinv.asDiagonal() * dense * dinv.asDiagonal();
        es.compute(dense, opts);
    }
    if (es.info() != Eigen::Success)
        throw std::runtime_error("oracle: eigensolver failed on " + op.geometry +
                                 " (ndof=" + std::to_string(ndof) + ")");
    EigenPairs out;
    out.values.assign(es.eigenvalues().data(), es.eigenvalues().data() + ndof);
    if (vectors) out.vectors = dinv.asDiagonal() * es.eigenvectors();
    return out;
}

void check_count(const DiscretizedOperator& op, int m) {
    if (m < 1 || m > int(op.stiffness.rows()) / 4)
        throw std::invalid_argument("oracle: requested count exceeds ndof/4");
}

}  // namespace

std::vector<double> lowest_eigenvalues(const DiscretizedOperator& op, int m) {
    check_count(op, m);
    EigenPairs all = solve_all(op, false);
    all.values.resize(m);
    return all.values;
}

EigenPairs lowest_eigenpairs(const DiscretizedOperator& op, int m) {
    check_count(op, m);
    EigenPairs all = solve_all(op, true);
    all.values.resize(m);
    all.vectors.conservativeResize(Eigen::NoChange, m);
    return all;
}

std::vector<double> fd_linear(const GraphParams& params, const Potential& q,
                              int cells, int m) {
    return lowest_eigenvalues(assemble_linear(params, q, cells), m);
}

std::vector<double> fd_tree(const GraphParams& params, const Potential& q,
                            int cells, int m) {
    return lowest_eigenvalues(assemble_tree(params, q, cells), m);
}

std::vector<double> richardson(const std::vector<double>& coarse,
                               const std::vector<double>& fine) {
    if (coarse.size() != fine.size())
        throw std::invalid_argument("richardson: length mismatch");
    std::vector<double> out(fine.size());
    for (size_t i = 0; i < fine.size(); ++i)
        out[i] = (4.0 * fine[i] - coarse[i]) / 3.0;
    return out;
}

std::vector<double> fd_linear_richardson(const GraphParams& params,
                                         const Potential& q, int cells, int m) {
    return richardson(fd_linear(params, q, cells, m),
                      fd_linear(params, q, 2 * cells, m));
}

std::vector<double> fd_tree_richardson(const GraphParams& params,
                                       const Potential& q, int cells, int m) {
    return richardson(fd_tree(params, q, cells, m), fd_tree(params, q, 2 * cells, m));
}

DecompositionReport decomposition_check(const GraphParams& params, const Potential& q,
                                        int m, int cells, double window) {
    const int b = int_branching(params);
    std::vector<double> tree = fd_tree_richardson(params, q, cells, m);

    std::vector<double> assembled;
    GraphParams full = params;
    full.root_condition = RootCondition::Robin;
    for (double v : fd_linear_richardson(full, q, cells, m)) assembled.push_back(v);
    int mult = b - 1;
    for (int sub = params.n; sub >= 1; --sub) {
        GraphParams ps = params;
        ps.n = sub;
        ps.root_condition = RootCondition::Dirichlet;
        int want = std::min(m, sub * cells / 4);
        std::vector<double> vals = fd_linear_richardson(ps, q, cells, want);
        for (double v : vals)
            for (int r = 0; r < mult; ++r) assembled.push_back(v);
        mult *= b;
    }
    std::sort(assembled.begin(), assembled.end());
    assembled.resize(m);

    DecompositionReport rep;
    for (int i = 0; i < m; ++i) {
        DecompositionRow row;
        row.tree_value = tree[i];
        row.assembled_value = assembled[i];
        rep.rows.push_back(row);
        rep.max_deviation = std::max(rep.max_deviation,
                                     std::fabs(tree[i] - assembled[i]));
    }
    // Group the assembled values within the window; the group size is the
    // predicted multiplicity.  Compare against the tree count in the same span.
    int i = 0;
    while (i < m) {
        int j = i;
        while (j + 1 < m && assembled[j + 1] - assembled[j] <= window) ++j;
        int predicted = j - i + 1;
        double lo = assembled[i] - window, hi = assembled[j] + window;
        int got = 0;
        for (double v : tree)
            if (v >= lo && v <= hi) ++got;
        for (int k = i; k <= j; ++k) rep.rows[k].multiplicity = predicted;
        if (got != predicted && j < m - 1)  // the last group may be truncated
            ++rep.multiplicity_mismatches;
        i = j + 1;
    }
    return rep;
}

void dump_matrix(const DiscretizedOperator& op, std::ostream& out) {
    out << "# stiffness " << op.geometry << " h=" << op.h << "\n";
    for (int k = 0; k < op.stiffness.outerSize(); ++k)
        for (Eigen::SparseMatrix<double>::InnerIterator it(op.stiffness, k); it; ++it)
            out << it.row() << " " << it.col() << " " << it.value() << "\n";
    out << "# mass (lumped diagonal)\n";
    for (int i = 0; i < op.mass.size(); ++i) out << i << " " << op.mass[i] << "\n";
}

}  // namespace qtree
