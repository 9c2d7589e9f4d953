#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "qtree/oracle.hpp"
#include "qtree/spectra.hpp"

using namespace qtree;

namespace {
const double kPi = std::acos(-1.0);
}

TEST_CASE("neumann interval to fourth order") {
    GraphParams p{1, 2.0, 0.0, RootCondition::Robin};
    std::vector<double> fd = fd_linear_richardson(p, Potential(), 400, 4);
    std::vector<double> want = {0.0, kPi * kPi, 4.0 * kPi * kPi, 9.0 * kPi * kPi};
    for (int i = 0; i < 4; ++i)
        CHECK(std::fabs(fd[i] - want[i]) < 2e-7 * std::max(1.0, want[i]));
}

TEST_CASE("path graph fd matches the analytic spectrum") {
    Potential z;
    GraphParams p{4, 2.0, -5.0, RootCondition::Robin};
    SpectrumReport rep = linear_spectrum(p, z, -60.0, 100.0);
    std::vector<double> vals = rep.values();
    std::vector<double> fd = fd_linear_richardson(p, z, 402, int(vals.size()));
    for (size_t i = 0; i < vals.size(); ++i)
        CHECK(std::fabs(fd[i] - vals[i]) < 1e-5 * std::max(1.0, std::fabs(vals[i])));

    GraphParams d{4, 2.0, -5.0, RootCondition::Dirichlet};
    SpectrumReport drep = linear_spectrum(d, z, -60.0, 100.0);
    std::vector<double> dvals = drep.values();
    std::vector<double> dfd = fd_linear_richardson(d, z, 402, int(dvals.size()));
    for (size_t i = 0; i < dvals.size(); ++i)
        CHECK(std::fabs(dfd[i] - dvals[i]) < 1e-5 * std::max(1.0, std::fabs(dvals[i])));
}

TEST_CASE("fd captures the deep rogue eigenvalue") {
    Potential z;
    GraphParams p{2, 2.0, -20.0, RootCondition::Robin};
    SpectrumReport rep = linear_spectrum(p, z, -10.0, 10.0);
    const TaggedEigenvalue* eq = rep.rogue('=');
    REQUIRE(eq != nullptr);
    std::vector<double> fd = fd_linear_richardson(p, z, 384, 1);
    CHECK(std::fabs(fd[0] - eq->lambda) < 0.05);
}

TEST_CASE("tree fd basics") {
    Potential z;
    // star graph, alpha = 0: lowest eigenvalue is 0 (constants)
    GraphParams star{1, 2.0, 0.0, RootCondition::Robin};
    std::vector<double> fd = fd_tree_richardson(star, z, 64, 3);
    CHECK(std::fabs(fd[0]) < 1e-8);
    CHECK(fd[1] > 1.0);

    // n = 2, b = 3, alpha = -5: the B?_1 value carries multiplicity
    // (b-1) b^{n-1} = 6
    GraphParams p{2, 3.0, -5.0, RootCondition::Robin};
    TreeSpectrum ts = tree_spectrum(p, z, -40.0, 60.0);
    // use the first positive such value: the negative one sits close to another
    // branch of the decomposition and a loose window would over-count
    const TreeEigenvalue* b1 = nullptr;
    for (const auto& v : ts.values)
        if (v.origin_m == 1 && !v.collision && v.lambda > 0.0) {
            b1 = &v;
            break;
        }
    REQUIRE(b1 != nullptr);
    CHECK(b1->multiplicity == 6);
    std::vector<double> tfd = fd_tree_richardson(p, z, 96, 30);
    double tol = 1e-3 * std::max(1.0, std::fabs(b1->lambda));
    int hits = int(std::count_if(tfd.begin(), tfd.end(), [&](double x) {
        return std::fabs(x - b1->lambda) < tol;
    }));
    CHECK(hits == 6);
}

TEST_CASE("decomposition of the tree spectrum") {
    Potential z;
    DecompositionReport a = decomposition_check({2, 2.0, 0.0, RootCondition::Robin}, z, 12, 162);
    CHECK(a.max_deviation < 1e-5);
    CHECK(a.multiplicity_mismatches == 0);

    DecompositionReport b = decomposition_check({2, 2.0, -5.0, RootCondition::Robin}, z, 12, 162);
    CHECK(b.max_deviation < 1e-5);
    CHECK(b.multiplicity_mismatches == 0);
    std::vector<int> mults;
    for (const auto& r : b.rows) mults.push_back(r.multiplicity);
    CHECK(mults == std::vector<int>{2, 2, 2, 2, 1, 1, 1, 1, 2, 2, 1, 1});

    Potential w = Potential::well(-16.0, 1.0 / 3.0);
    DecompositionReport c = decomposition_check({3, 2.0, -2.0, RootCondition::Robin}, w, 15, 96);
    CHECK(c.max_deviation < 1e-4);
    CHECK(c.multiplicity_mismatches == 0);
}

TEST_CASE("second order convergence") {
    Potential z;
    GraphParams p{2, 2.0, -3.0, RootCondition::Robin};
    SpectrumReport rep = linear_spectrum(p, z, -20.0, 100.0);
    std::vector<double> vals = rep.values();
    REQUIRE(vals.size() >= 4);
    double ref = vals[3];
    auto err = [&](int cells) {
        std::vector<double> fd = fd_linear(p, z, cells, 4);
        return std::fabs(fd[3] - ref);
    };
    double e1 = err(40), e2 = err(80), e3 = err(160);
    double o1 = std::log2(e1 / e2), o2 = std::log2(e2 / e3);
    CHECK(o1 > 1.7);
    CHECK(o1 < 2.3);
    CHECK(o2 > 1.7);
    CHECK(o2 < 2.3);
}

TEST_CASE("eigenpairs are mass orthonormal") {
    Potential w = Potential::well(-16.0, 1.0 / 3.0);
    GraphParams p{3, 2.0, -3.0, RootCondition::Robin};
    DiscretizedOperator op = assemble_linear(p, w, 60);
    EigenPairs ep = lowest_eigenpairs(op, 6);
    REQUIRE(ep.vectors.cols() == 6);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            double dot = (ep.vectors.col(i).array() * op.mass.array() *
                          ep.vectors.col(j).array())
                             .sum();
            CHECK(std::fabs(dot - (i == j ? 1.0 : 0.0)) < 1e-8);
        }
    // residual of the generalized eigenproblem
    for (int i = 0; i < 6; ++i) {
        Eigen::VectorXd r = op.stiffness * ep.vectors.col(i) -
                            ep.values[i] * op.mass.asDiagonal() * ep.vectors.col(i);
        CHECK(r.norm() < 1e-7 * std::max(1.0, std::fabs(ep.values[i])));
    }
}
