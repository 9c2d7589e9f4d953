#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/SparseCore>

#include "qtree/determinants.hpp"
#include "qtree/potential.hpp"

namespace qtree {

// Finite-difference ground truth, independent of the transfer-function
// pipeline.  Lumped-mass P1 discretization: second-order accurate in h,
// symmetric, Robin couplings enter as natural boundary terms, and the
// weighted path graphs stay tridiagonal.

struct DiscretizedOperator {
    Eigen::SparseMatrix<double> stiffness;  // symmetric
    Eigen::VectorXd mass;                   // lumped (diagonal), positive
    double h = 0.0;
    std::string geometry;  // "linear n=..,b=.." or "tree n=..,b=.."
    bool tridiagonal = false;
};

// Weighted path graph with n edges, weight b^k on edge k; Robin root row
// b u'(0) = alpha u or Dirichlet root (u_0 eliminated).  cells = 1/h per edge.
DiscretizedOperator assemble_linear(const GraphParams& params, const Potential& q,
                                    int cells);

// Full rooted tree, n levels, integer branching b, unweighted edges, Robin
// condition with the same alpha at every vertex (leaves included).
DiscretizedOperator assemble_tree(const GraphParams& params, const Potential& q,
                                  int cells);

// Lowest m eigenvalues of K u = lambda M u.  Tridiagonal systems use the
// direct symmetric tridiagonal solver; trees a dense solve (unknowns <= 4000).
std::vector<double> lowest_eigenvalues(const DiscretizedOperator& op, int m);

// Eigenpairs for the same problem (columns are M-orthonormal eigenvectors).
struct EigenPairs {
    std::vector<double> values;
    Eigen::MatrixXd vectors;
};
EigenPairs lowest_eigenpairs(const DiscretizedOperator& op, int m);

std::vector<double> fd_linear(const GraphParams& params, const Potential& q,
                              int cells, int m);
std::vector<double> fd_tree(const GraphParams& params, const Potential& q,
                            int cells, int m);

// (4 f(h/2) - f(h)) / 3 elementwise; kills the h^2 error term.
std::vector<double> richardson(const std::vector<double>& coarse,
                               const std::vector<double>& fine);

std::vector<double> fd_linear_richardson(const GraphParams& params,
                                         const Potential& q, int cells, int m);
std::vector<double> fd_tree_richardson(const GraphParams& params,
                                       const Potential& q, int cells, int m);

// Tree spectrum vs the assembled path-graph spectra of the decomposition:
// full path with Robin root, plus Dirichlet-root paths of length m' = 1..n
// with multiplicity (b-1) b^{n-m'}.  Both sides discretized at the same mesh
// and Richardson-extrapolated, then aligned greedily by value.
struct DecompositionRow {
    double tree_value = 0.0;
    double assembled_value = 0.0;
    int multiplicity = 0;  // predicted multiplicity of the assembled value
};
struct DecompositionReport {
    std::vector<DecompositionRow> rows;
    double max_deviation = 0.0;
    int multiplicity_mismatches = 0;
};
DecompositionReport decomposition_check(const GraphParams& params, const Potential& q,
                                        int m, int cells = 240,
                                        double window = 1e-3);

// Coordinate-format dump (row col value per line) of the stiffness matrix,
// followed by the lumped mass diagonal.
void dump_matrix(const DiscretizedOperator& op, std::ostream& out);

}  // namespace qtree
