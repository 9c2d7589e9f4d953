#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "qtree/determinants.hpp"
#include "qtree/potential.hpp"
#include "qtree/zerosets.hpp"

using namespace qtree;

namespace {
const double kPi = std::acos(-1.0);

std::vector<double> z_roots_at_fixed_y(const GraphParams& p, double y, double z_lo,
                                       double z_hi) {
    // sign-change scan of D_n(y, .) in z
    const int npts = 4000;
    std::vector<double> roots;
    SecularValue prev = dd_eval(p, y, z_lo);
    double zp = z_lo;
    for (int i = 1; i <= npts; ++i) {
        double z = z_lo + (z_hi - z_lo) * i / npts;
        SecularValue cur = dd_eval(p, y, z);
        if (prev.sign * cur.sign < 0) {
            double a = zp, b = z;
            for (int it = 0; it < 80; ++it) {
                double m = 0.5 * (a + b);
                if (dd_eval(p, y, m).sign * prev.sign <= 0)
                    b = m;
                else
                    a = m;
            }
            roots.push_back(0.5 * (a + b));
        }
        prev = cur;
        zp = z;
    }
    return roots;
}

}  // namespace

TEST_CASE("one-step determinants") {
    GraphParams r1{1, 2.0, 0.0, RootCondition::Robin};
    CHECK(dd_eval(r1, 2.0, 0.3).value() == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(dd_matrix_det(r1, 2.0, 0.3) == doctest::Approx(6.0).epsilon(1e-12));

    GraphParams d1{1, 2.0, -3.0, RootCondition::Dirichlet};
    CHECK(dd_eval(d1, 2.0, 1.0).value() == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(dd_matrix_det(d1, 2.0, 1.0) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("pq composition special points") {
    GraphParams r2{2, 2.0, 1.0, RootCondition::Robin};
    CHECK(std::fabs(dd_via_pq(r2, 1.0, 0.0)) < 1e-12);  // (1,0) lies on C_n^n

    GraphParams d3{3, 2.0, -2.0, RootCondition::Dirichlet};
    CHECK(dd_via_pq(d3, 1.0, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("three-way equivalence on random samples") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> uy(-3.0, 3.0), uz(-3.0, 3.0), ua(-10.0, 10.0);
    std::uniform_int_distribution<int> un(1, 12), ub(2, 3), ur(0, 1);
    for (int i = 0; i < 1000; ++i) {
        GraphParams p{un(rng), double(ub(rng)), ua(rng),
                      ur(rng) ? RootCondition::Robin : RootCondition::Dirichlet};
        double y = uy(rng), z = uz(rng);
        double d1 = dd_eval(p, y, z).value();
        double d2 = dd_via_pq(p, y, z);
        double d3 = dd_matrix_det(p, y, z);
        double scale = std::max({std::fabs(d1), std::fabs(d2), std::fabs(d3), 1.0});
        CHECK(std::fabs(d1 - d2) / scale < 1e-9);
        CHECK(std::fabs(d1 - d3) / scale < 1e-9);
    }
}

TEST_CASE("symmetry identities") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-2.5, 2.5), ua(-8.0, 8.0);
    std::uniform_int_distribution<int> un(1, 10), ub(2, 3);
    for (int i = 0; i < 300; ++i) {
        int n = un(rng);
        double b = ub(rng), alpha = ua(rng), y = u(rng), z = u(rng);
        GraphParams rp{n, b, alpha, RootCondition::Robin};
        GraphParams rm{n, b, -alpha, RootCondition::Robin};
        GraphParams dp{n, b, alpha, RootCondition::Dirichlet};
        GraphParams dm{n, b, -alpha, RootCondition::Dirichlet};
        double sR = n % 2 ? 1.0 : -1.0;  // (-1)^{n+1}
        double sD = n % 2 ? -1.0 : 1.0;  // (-1)^n
        double base_r = dd_eval(rp, y, z).value();
        double base_d = dd_eval(dp, y, z).value();
        double tol = 1e-10 * std::max({1.0, std::fabs(base_r), std::fabs(base_d)});
        CHECK(std::fabs(dd_eval(rp, -y, -z).value() - sR * base_r) < tol);
        CHECK(std::fabs(dd_eval(dp, -y, -z).value() - sD * base_d) < tol);
        CHECK(std::fabs(dd_eval(rm, -y, z).value() - sR * base_r) < tol);
        CHECK(std::fabs(dd_eval(dm, -y, z).value() - sD * base_d) < tol);
    }
}

TEST_CASE("secular values through transfer functions") {
    Potential z;
    GraphParams p{1, 2.0, 0.0, RootCondition::Robin};
    // D_1 = -b sin^2(sqrt(lambda))
    CHECK(secular_at(p, z, 4.0).value() ==
          doctest::Approx(-2.0 * std::sin(2.0) * std::sin(2.0)).epsilon(1e-10));
    CHECK(std::fabs(secular_at(p, z, kPi * kPi).value()) < 1e-10);

    GraphParams p5{5, 2.0, -20.0, RootCondition::Robin};
    SecularValue lo = secular_at(p5, z, -401.0);
    SecularValue hi = secular_at(p5, z, -399.0);
    CHECK(lo.sign * hi.sign < 0);  // brackets the lambda^= rogue
}

TEST_CASE("sturm count matches the root list") {
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> uz(-1.5, 1.5), uy(-3.0, 3.0), ua(-6.0, -0.5);
    for (int trial = 0; trial < 60; ++trial) {
        GraphParams p{4, 2.0, ua(rng),
                      trial % 2 ? RootCondition::Robin : RootCondition::Dirichlet};
        double z = uz(rng);
        std::vector<double> roots = y_roots_at(p, z);
        double y = uy(rng);
        int expect = 0;
        for (double r : roots)
            if (r < y) ++expect;
        CHECK(sturm_count_below(p, y, z) == expect);
    }
}

TEST_CASE("z-roots interlace across n at fixed y") {
    for (int n : {3, 4, 5, 7}) {
        GraphParams pn{n, 2.0, -3.0, RootCondition::Robin};
        GraphParams pn1{n + 1, 2.0, -3.0, RootCondition::Robin};
        double y = 0.4;
        auto rn = z_roots_at_fixed_y(pn, y, -4.0, 4.0);
        auto rn1 = z_roots_at_fixed_y(pn1, y, -4.0, 4.0);
        // between consecutive roots of D_{n+1} there is at least one root of D_n
        int covered = 0;
        for (size_t i = 0; i + 1 < rn1.size(); ++i)
            for (double r : rn)
                if (r > rn1[i] && r < rn1[i + 1]) {
                    ++covered;
                    break;
                }
        CHECK(covered == int(rn1.size()) - 1);
    }
}
