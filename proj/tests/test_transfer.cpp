#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "qtree/potential.hpp"
#include "qtree/transfer.hpp"

using namespace qtree;

namespace {

const double kPi = std::acos(-1.0);

// Lumped FD eigenvalues of -u'' + q u on [0,1] with u(0) = u(1) = 0,
// Richardson-extrapolated: an oracle for the Dirichlet spectrum.
std::vector<double> interval_dirichlet_fd(const Potential& q, int m) {
    auto solve = [&](int cells) {
        int ndof = cells - 1;
        double h = 1.0 / cells;
        Eigen::VectorXd diag(ndof), sub(ndof - 1);
        for (int i = 0; i < ndof; ++i)
            diag[i] = 2.0 / (h * h) + q((i + 1) * h);
        for (int i = 0; i + 1 < ndof; ++i) sub[i] = -1.0 / (h * h);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
        es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
        return std::vector<double>(es.eigenvalues().data(), es.eigenvalues().data() + m);
    };
    auto a = solve(1200), b = solve(2400);
    std::vector<double> out(m);
    for (int i = 0; i < m; ++i) out[i] = (4.0 * b[i] - a[i]) / 3.0;
    return out;
}

}  // namespace

TEST_CASE("potential representations") {
    Potential z;
    CHECK(z.is_zero());
    CHECK(z(0.3) == 0.0);

    Potential w = Potential::well(-16.0, 1.0 / 3.0);
    CHECK(w(0.1) == 0.0);
    CHECK(w(0.5) == -16.0);
    CHECK(w(0.9) == 0.0);
    CHECK(w.min_value() == -16.0);
    CHECK(w.integral() == doctest::Approx(-16.0 / 3.0).epsilon(1e-12));

    CHECK_THROWS_AS(Potential::piecewise_constant({0.2}, {1.0, 2.0}),
                    std::invalid_argument);  // not mirror symmetric

    Potential rt = Potential::from_json(w.to_json());
    CHECK(rt(0.5) == -16.0);
    CHECK(rt(0.1) == 0.0);

    std::vector<double> grid(101);
    for (int i = 0; i <= 100; ++i) grid[i] = std::cos(2.0 * kPi * i / 100.0);
    Potential smp = Potential::sampled(grid);
    CHECK_FALSE(smp.symmetrize_warning());
    CHECK(smp(0.25) == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("zero potential closed forms") {
    Potential z;
    TransferValues t0 = transfer_at(z, 0.0);
    CHECK(t0.c_value() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(t0.s_value() == doctest::Approx(1.0).epsilon(1e-14));

    TransferValues tp = transfer_at(z, kPi * kPi);
    CHECK(tp.c_value() == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(std::fabs(tp.s_value()) < 1e-12);

    TransferValues tm = transfer_at(z, -1.0);
    CHECK(tm.c_value() == doctest::Approx(std::cosh(1.0)).epsilon(1e-13));
    CHECK(tm.s_value() == doctest::Approx(std::sinh(1.0)).epsilon(1e-13));

    // agreement with cos(sqrt(lambda)), sinc on |lambda| <= 1e4
    for (double lam = -10000.0; lam <= 10000.0; lam += 487.3) {
        TransferValues t = transfer_at(z, lam);
        double ref_c, ref_s;
        if (lam >= 0.0) {
            double r = std::sqrt(lam);
            ref_c = std::cos(r);
            ref_s = r == 0.0 ? 1.0 : std::sin(r) / r;
        } else {
            double r = std::sqrt(-lam);
            ref_c = std::cosh(r);
            ref_s = std::sinh(r) / r;
        }
        CHECK(t.c_value() == doctest::Approx(ref_c).epsilon(1e-12));
        CHECK(t.s_value() == doctest::Approx(ref_s).epsilon(1e-12));
    }
}

TEST_CASE("log scale representation far below zero") {
    TransferValues t = transfer_at(Potential(), -1.0e6);  // nu = 1000
    CHECK(t.log_scale > 900.0);
    CHECK(t.c().log_abs() == doctest::Approx(1000.0 - std::log(2.0)).epsilon(1e-9));
    CHECK(std::fabs(t.wronskian_defect()) < 1e-8);
}

TEST_CASE("piecewise path vs adaptive integration") {
    Potential w = Potential::well(-16.0, 1.0 / 3.0);
    TransferValues a = transfer_at(w, 1.0);
    TransferValues b = transfer_integrate(w, 1.0);
    CHECK(a.c_value() == doctest::Approx(b.c_value()).epsilon(1e-9));
    CHECK(a.s_value() == doctest::Approx(b.s_value()).epsilon(1e-9));

    std::mt19937 rng(11);
    std::uniform_real_distribution<double> uv(-20.0, 20.0), ub(0.05, 0.45),
        ul(-60.0, 300.0);
    for (int trial = 0; trial < 12; ++trial) {
        double br = ub(rng);
        double v0 = uv(rng), v1 = uv(rng);
        Potential q = Potential::piecewise_constant({br, 1.0 - br}, {v0, v1, v0});
        double lam = ul(rng);
        TransferValues c1 = transfer_at(q, lam);
        TransferValues c2 = transfer_integrate(q, lam);
        double scale = std::max(1.0, std::fabs(c1.c_value()));
        CHECK(std::fabs(c1.c_value() - c2.c_value()) / scale < 1e-9);
        CHECK(std::fabs(c1.s_value() - c2.s_value()) / scale < 1e-9);
    }
}

TEST_CASE("sampled potential path against a staircase oracle") {
    std::vector<double> grid(241);
    for (int i = 0; i <= 240; ++i) grid[i] = 3.0 * std::cos(2.0 * kPi * i / 240.0);
    Potential smooth = Potential::sampled(grid);

    // dense mirror-symmetric staircase of the same q
    int cells = 3000;
    std::vector<double> bps, vals;
    for (int i = 1; i < cells; ++i) bps.push_back(double(i) / cells);
    for (int i = 0; i < cells; ++i) {
        double xm = (i + 0.5) / cells;
        vals.push_back(3.0 * (std::cos(2.0 * kPi * xm) + std::cos(2.0 * kPi * (1 - xm))) / 2.0);
    }
    Potential stair = Potential::piecewise_constant(bps, vals);

    for (double lam : {-20.0, 3.0, 55.0, 160.0}) {
        TransferValues a = transfer_at(smooth, lam);
        TransferValues b = transfer_at(stair, lam);
        CHECK(a.c_value() == doctest::Approx(b.c_value()).epsilon(2e-5));
        CHECK(a.s_value() == doctest::Approx(b.s_value()).epsilon(2e-5));
        CHECK(std::fabs(a.wronskian_defect()) < 1e-8);
    }
}

TEST_CASE("wronskian identity on a lambda grid") {
    Potential z, w = Potential::well(-16.0, 1.0 / 3.0);
    for (double mu = -40.0; mu <= 40.0; mu += 0.7) {
        double lam = lambda_of_mu(mu);
        CHECK(std::fabs(transfer_at(z, lam).wronskian_defect()) < 1e-8);
        CHECK(std::fabs(transfer_at(w, lam).wronskian_defect()) < 1e-8);
    }
}

TEST_CASE("dirichlet spectrum of the free interval") {
    DirichletSpectrum d = dirichlet_spectrum(Potential(), 100.0);
    REQUIRE(d.values.size() == 3);
    CHECK(d.values[0] == doctest::Approx(kPi * kPi).epsilon(1e-10));
    CHECK(d.values[1] == doctest::Approx(4 * kPi * kPi).epsilon(1e-10));
    CHECK(d.values[2] == doctest::Approx(9 * kPi * kPi).epsilon(1e-10));

    CHECK(dirichlet_spectrum(Potential(), 5.0).values.empty());

    // c(lambda_D^k) = (-1)^k for the zero potential
    for (size_t k = 0; k < d.values.size(); ++k) {
        double c = transfer_at(Potential(), d.values[k]).c_value();
        CHECK(c == doctest::Approx(k % 2 == 0 ? -1.0 : 1.0).epsilon(1e-8));
    }
}

TEST_CASE("dirichlet spectrum of the well vs FD oracle") {
    Potential w = Potential::well(-16.0, 1.0 / 3.0);
    DirichletSpectrum d = dirichlet_spectrum(w, 100.0);
    std::vector<double> ref = interval_dirichlet_fd(w, int(d.values.size()));
    REQUIRE(!d.values.empty());
    for (size_t i = 0; i < d.values.size(); ++i)
        CHECK(d.values[i] == doctest::Approx(ref[i]).epsilon(1e-6));

    // s alternates sign between consecutive roots
    for (size_t i = 0; i + 1 < d.values.size(); ++i) {
        double mid = 0.5 * (d.values[i] + d.values[i + 1]);
        double s_mid = transfer_at(w, mid).s_value();
        double s_lo = transfer_at(w, d.values[i] - (i == 0 ? 5.0 : 0.0) - 1.0).s_value();
        CHECK(s_mid * s_lo < 0.0);
    }
}

TEST_CASE("spiral samples") {
    auto pts = sample_spiral(Potential(), 0.0, 2 * kPi, 5);
    REQUIRE(pts.size() == 5);
    // third point is mu = pi: lambda = pi^2, (y,z) = (-1, 0)
    CHECK(pts[2].lambda == doctest::Approx(kPi * kPi).epsilon(1e-12));
    CHECK(pts[2].y == doctest::Approx(-1.0).epsilon(1e-10));
    CHECK(std::fabs(pts[2].z) < 1e-10);

    auto neg = sample_spiral(Potential(), -3.0, 0.0, 4);
    // exact value tanh(3)/3; within ~2e-3 of the 1/3 asymptote
    CHECK(neg[0].z / neg[0].y == doctest::Approx(std::tanh(3.0) / 3.0).epsilon(1e-9));
    CHECK(std::fabs(neg[0].z / neg[0].y - 1.0 / 3.0) < 2e-3);
}

TEST_CASE("deep negative asymptotics with q0 correction") {
    // constant q = 4: q0 = integral(q)/4 = 1; e^{-nu} c -> 1/2 + q0/nu + O(nu^-2)
    Potential q = Potential::piecewise_constant({}, {4.0});
    double prev_scaled_err = 0.0;
    for (double nu : {20.0, 40.0, 80.0}) {
        double lam = -nu * nu;
        Scaled c = transfer_at(q, lam).c();
        double val = c.sign() * std::exp(c.log_abs() - nu);
        double err = std::fabs(val - (0.5 + 1.0 / nu));
        double scaled = err * nu * nu;
        CHECK(scaled < 10.0);  // O(nu^-2) coefficient is modest
        if (prev_scaled_err > 0.0) CHECK(scaled < 4.0 * prev_scaled_err);
        prev_scaled_err = scaled;
    }
}

TEST_CASE("transfer profile endpoints") {
    Potential w = Potential::well(-16.0, 1.0 / 3.0);
    TransferProfile prof = transfer_profile(w, 7.0, {0.0, 0.5, 1.0});
    TransferValues t = transfer_at(w, 7.0);
    CHECK(prof.c.front() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(prof.s.front() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(prof.c.back() == doctest::Approx(t.c_value()).epsilon(1e-9));
    CHECK(prof.s.back() == doctest::Approx(t.s_value()).epsilon(1e-9));
}
