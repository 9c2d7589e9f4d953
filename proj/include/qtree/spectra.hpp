#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qtree/determinants.hpp"
#include "qtree/potential.hpp"
#include "qtree/transfer.hpp"

namespace qtree {

enum class TagKind { Cluster, Intermediate, Rogue, DirichletPoint };
enum class Regime { Oscillatory, Exponential, Boundary };

struct TaggedEigenvalue {
    double lambda = 0.0;
    TagKind tag = TagKind::Cluster;
    int k = 0;          // cluster / gap index (Cluster, Intermediate, DirichletPoint)
    int position = 0;   // position within the cluster (Cluster)
    int side = 0;       // -1 below lambda_D^k, +1 above (Intermediate)
    char rogue_kind = 0;  // '=' or '-' (Rogue)
    int component = 0;    // index j of the zero-set curve carrying this root
    Regime regime = Regime::Oscillatory;
};

struct ClusterSummary {
    int k = 0;
    int count = 0;
    double min = 0.0, max = 0.0;
    double width() const { return max - min; }
    double center() const { return 0.5 * (min + max); }
};

struct DirichletPointCheck {
    int k = 0;
    double lambda = 0.0;
    bool eigenvalue = false;
    bool tangential = false;
    bool indeterminate = false;
    double limit = 0.0;  // Richardson limit of D_n / s at lambda_D^k
};

struct SpectrumReport {
    GraphParams params;
    double lambda_min = 0.0, lambda_max = 0.0;
    std::vector<double> dirichlet;  // sigma_D entries used for the windows
    std::vector<TaggedEigenvalue> eigenvalues;  // sorted by lambda
    std::vector<ClusterSummary> clusters;
    std::vector<DirichletPointCheck> dirichlet_checks;

    std::vector<double> values() const;
    std::vector<const TaggedEigenvalue*> in_cluster(int k) const;
    const TaggedEigenvalue* rogue(char kind) const;
};

// Eigenvalues of the linear graph (Lambda_n, B_n or B?_n) in
// [lambda_min, lambda_max], classified per the cluster/intermediate/rogue
// structure.  lambda_min is auto-extended below -1.5 alpha^2 - 10 when
// alpha < 0 so the rogue eigenvalues are always captured.
SpectrumReport linear_spectrum(const GraphParams& params, const Potential& q,
                               double lambda_min, double lambda_max);

// Whether lambda_D^k (k is 1-based) is an eigenvalue of (Lambda_n, B_n):
// Richardson limit of the removable singularity of D_n(lambda)/s(lambda).
DirichletPointCheck dirichlet_multiplicity(const GraphParams& params,
                                           const Potential& q, int k);
DirichletPointCheck dirichlet_multiplicity(const GraphParams& params,
                                           const Potential& q, int k,
                                           double lambda_d);

struct TreeEigenvalue {
    double lambda = 0.0;
    int multiplicity = 0;
    int origin_m = 0;  // 0 for B_n, m >= 1 for B?_m
    bool collision = false;
};

struct TreeSpectrum {
    GraphParams params;
    std::vector<TreeEigenvalue> values;  // sorted, collisions merged
    bool disjointness_warning = false;

    std::vector<double> expanded() const;  // values repeated by multiplicity
};

// Full-tree spectrum via the decomposition into B_n and B?_m, m = 1..n,
// with multiplicities (b-1) b^{n-m}.  Root condition of params is ignored
// (the tree operator has the Robin root).  Requires integer b >= 2.
TreeSpectrum tree_spectrum(const GraphParams& params, const Potential& q,
                           double lambda_min, double lambda_max);

struct RogueRow {
    double alpha = 0.0;
    double lambda_eq = 0.0;                 // lambda^=
    std::optional<double> lambda_minus;     // lambda^- (Robin root only)
    double cluster_center = 0.0, cluster_width = 0.0;
    double residual_eq = 0.0;               // lambda^= + alpha^2
    std::optional<double> residual_minus;   // lambda^- + b^-2 alpha^2
    double residual_center = 0.0;           // center + (b+1)^-2 alpha^2
    double width_bound = 0.0;  // 8 alpha^2 (b+1)^-2 exp(-|alpha|/(b+1)), q == 0
};

std::vector<RogueRow> rogue_trajectory(const GraphParams& params, const Potential& q,
                                       const std::vector<double>& alphas);

struct BandStructure {
    double beta = 0.0;  // arccos(2 / (b^{1/2} + b^{-1/2}))
    std::vector<std::pair<double, double>> bands;  // closed intervals, sorted
};

// Spectral bands of the infinite regular tree: closure of the oscillatory
// regime |b^{-1/2} v(lambda)| < 2 with v = (b+1)c + alpha s.
BandStructure infinite_bands(double b, double alpha, const Potential& q,
                             double lambda_max);

struct GapEigenvalue {
    double lambda = 0.0;
    int gap = 0;  // 0 = below the first band, k = between bands k and k+1
    bool passes_decay = false;  // |b^{-1/2} c(lambda)| > 1
};

// Point spectrum of the infinite tree in the spectral gaps.  Robin root:
// roots of b(c - 1/c) + alpha s, flagged by the decay test.  Dirichlet root:
// every sigma_D entry is an eigenvalue and is returned directly.
std::vector<GapEigenvalue> infinite_point_spectrum(double b, double alpha,
                                                   const Potential& q,
                                                   double lambda_max,
                                                   RootCondition root_condition);

// Density of states of the infinite tree at lambda inside a band.
double density_of_states(double b, double alpha, const Potential& q, double lambda);

}  // namespace qtree
