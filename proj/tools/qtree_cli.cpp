#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qtree/determinants.hpp"
#include "qtree/eigenfunctions.hpp"
#include "qtree/io.hpp"
#include "qtree/oracle.hpp"
#include "qtree/orthopoly.hpp"
#include "qtree/potential.hpp"
#include "qtree/spectra.hpp"
#include "qtree/transfer.hpp"
#include "qtree/zerosets.hpp"

namespace {

using namespace qtree;

constexpr int kExitVerification = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

double parse_number(const std::string& text) {
    auto slash = text.find('/');
    if (slash != std::string::npos)
        return std::stod(text.substr(0, slash)) / std::stod(text.substr(slash + 1));
    return std::stod(text);
}

// "zero" | "well:V:a" (numbers may be fractions like 1/3) | inline JSON | @file
Potential parse_potential(const std::string& spec) {
    if (spec.empty() || spec == "zero") return Potential();
    if (spec.rfind("well:", 0) == 0) {
        auto rest = spec.substr(5);
        auto sep = rest.find(':');
        if (sep == std::string::npos)
            throw std::invalid_argument("potential: expected well:V:a");
        return Potential::well(parse_number(rest.substr(0, sep)),
                               parse_number(rest.substr(sep + 1)));
    }
    if (spec[0] == '@') {
        std::ifstream in(spec.substr(1));
        if (!in) throw std::invalid_argument("potential: cannot open " + spec.substr(1));
        std::stringstream ss;
        ss << in.rdbuf();
        return Potential::from_json(ss.str());
    }
    if (spec[0] == '{') return Potential::from_json(spec);
    throw std::invalid_argument("potential: unrecognized spec '" + spec + "'");
}

void emit(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file " + path);
    out << content;
}

struct CommonOpts {
    int n = 4;
    double b = 2.0;
    double alpha = 0.0;
    std::string q_spec = "zero";
    std::string root = "robin";
    std::string out;
    std::string format = "json";

    GraphParams params() const {
        RootCondition rc;
        if (root == "robin")
            rc = RootCondition::Robin;
        else if (root == "dirichlet")
            rc = RootCondition::Dirichlet;
        else
            throw std::invalid_argument("root condition must be robin or dirichlet");
        return GraphParams{n, b, alpha, rc};
    }
    Potential potential() const { return parse_potential(q_spec); }
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_n = true) {
    if (with_n) cmd->add_option("--n", o.n, "number of levels");
    cmd->add_option("--b", o.b, "branching factor");
    cmd->add_option("--alpha", o.alpha, "Robin parameter");
    cmd->add_option("--q", o.q_spec, "potential: zero | well:V:a | inline JSON | @file");
    cmd->add_option("--root", o.root, "root condition: robin | dirichlet");
    cmd->add_option("-o,--out", o.out, "output path (default stdout)");
    cmd->add_option("--format", o.format, "json | csv");
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// ---- verify suites ------------------------------------------------------

struct Verifier {
    int failures = 0;
    void check(bool ok, const std::string& what) {
        std::printf("%s %s\n", ok ? "PASS" : "FAIL", what.c_str());
        if (!ok) ++failures;
    }
};

void verify_determinants(Verifier& v, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> uy(-3.0, 3.0), uz(-2.0, 2.0),
        ua(-10.0, 10.0);
    std::uniform_int_distribution<int> un(1, 12), ub(2, 3), uroot(0, 1);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        GraphParams p{un(rng), double(ub(rng)), ua(rng),
                      uroot(rng) ? RootCondition::Robin : RootCondition::Dirichlet};
        double y = uy(rng), z = uz(rng);
        double d1 = dd_eval(p, y, z).value();
        double d2 = dd_via_pq(p, y, z);
        double d3 = dd_matrix_det(p, y, z);
        double scale = std::max({std::fabs(d1), std::fabs(d2), std::fabs(d3), 1.0});
        worst = std::max(worst, std::max(std::fabs(d1 - d2), std::fabs(d1 - d3)) / scale);
    }
    v.check(worst < 1e-9, "determinant three-way equivalence (worst " + fmt(worst) + ")");
}

void verify_transfer(Verifier& v, unsigned seed) {
    std::mt19937 rng(seed + 1);
    std::uniform_real_distribution<double> ul(-50.0, 400.0);
    Potential well = Potential::well(-16.0, 1.0 / 3.0);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        double lam = ul(rng);
        worst = std::max(worst, std::fabs(transfer_at(Potential(), lam).wronskian_defect()));
        worst = std::max(worst, std::fabs(transfer_at(well, lam).wronskian_defect()));
    }
    v.check(worst < 1e-8, "Wronskian identity c^2 - s c' = 1 (worst defect " + fmt(worst) + ")");
}

void verify_moments(Verifier& v) {
    double worst = 0.0;
    for (double b : {2.0, 3.0, 4.0}) {
        std::vector<double> ref;
        for (int n = 5; n <= 10; ++n) {
            QuadratureMeasure m = quadrature_measure({b, n});
            if (n == 5) ref = m.moments;
            for (int k = 0; k <= 9; ++k)
                worst = std::max(worst, std::fabs(m.moments[k] - ref[k]));
        }
    }
    v.check(worst < 1e-10, "moments independent of n (worst " + fmt(worst) + ")");
}

void verify_structure(Verifier& v) {
    GraphParams p{8, 2, -5.0, RootCondition::Robin};
    SpectrumReport rep = linear_spectrum(p, Potential(), -100.0, 400.0);
    bool ok = true;
    for (const auto& c : rep.clusters)
        if (c.k >= 1 && c.count != p.n - 1) ok = false;
    auto c0 = rep.in_cluster(0);
    if (int(c0.size()) != p.n - 2) ok = false;
    if (!rep.rogue('=') || !rep.rogue('-')) ok = false;
    v.check(ok, "cluster structure n=8 b=2 alpha=-5");
}

void verify_eigenfunctions(Verifier& v) {
    GraphParams p{6, 2, -3.0, RootCondition::Robin};
    Potential z;
    SpectrumReport rep = linear_spectrum(p, z, -50.0, 200.0);
    double worst = 0.0;
    for (const auto& e : rep.eigenvalues) {
        if (e.tag == TagKind::DirichletPoint) continue;
        DiscreteEigenvector ev = vertex_values(p, z, e.lambda);
        worst = std::max(worst, residual(p, z, e.lambda, ev.values));
    }
    v.check(worst < 1e-7, "eigenvector residuals n=6 b=2 alpha=-3 (worst " + fmt(worst) + ")");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum tree spectra: transfer functions, secular determinants, "
                 "cluster structure, and finite-difference cross-checks"};
    app.require_subcommand(1);

    CommonOpts spec_o, tree_o, plot_o, rogue_o, oracle_o;
    double lambda_min = -10.0, lambda_max = 250.0;
    double tlam_min = -10.0, tlam_max = 250.0;
    double mu_min = -6.0, mu_max = 10.0;
    std::string panel_alphas;
    double band_b = 2.0, band_alpha = 0.0, band_lambda_max = 1000.0;
    std::string band_q = "zero", band_out, band_format = "json";
    int band_density = 0;
    std::string band_root = "robin";
    bool band_points = false;
    std::string rogue_alphas = "-10,-20,-40";
    double mom_b = 2.0;
    int mom_n = 8;
    std::string mom_out, mom_format = "json";
    std::string suite = "all";
    unsigned seed = 7;
    int oc_m = 12, oc_cells = 162;
    double oc_tol = 1e-3;

    auto* cspec = app.add_subcommand("spectrum", "eigenvalues of the weighted path graph");
    add_common(cspec, spec_o);
    cspec->add_option("--lambda-min", lambda_min);
    cspec->add_option("--lambda-max", lambda_max);

    auto* ctree = app.add_subcommand("tree", "full-tree spectrum via the decomposition");
    add_common(ctree, tree_o);
    ctree->add_option("--lambda-min", tlam_min);
    ctree->add_option("--lambda-max", tlam_max);

    auto* cplot = app.add_subcommand("plot", "SVG of the zero sets, strips, and spiral");
    add_common(cplot, plot_o);
    cplot->add_option("--mu-min", mu_min);
    cplot->add_option("--mu-max", mu_max);
    cplot->add_option("--alpha-panel", panel_alphas,
                      "comma-separated alphas: eigenvalue-vs-alpha panel instead");

    auto* cbands = app.add_subcommand("bands", "spectral bands of the infinite tree");
    cbands->add_option("--b", band_b);
    cbands->add_option("--alpha", band_alpha);
    cbands->add_option("--q", band_q);
    cbands->add_option("--lambda-max", band_lambda_max);
    cbands->add_option("--density", band_density, "density-of-states samples per band");
    cbands->add_option("--root", band_root);
    cbands->add_flag("--point-spectrum", band_points, "also list gap eigenvalues");
    cbands->add_option("-o,--out", band_out);
    cbands->add_option("--format", band_format);

    auto* crogue = app.add_subcommand("rogue", "rogue eigenvalue trajectory over alpha");
    add_common(crogue, rogue_o);
    crogue->add_option("--alphas", rogue_alphas, "comma-separated negative alphas");

    auto* cmom = app.add_subcommand("moments", "orthogonal polynomial quadrature measure");
    cmom->add_option("--b", mom_b);
    cmom->add_option("--n", mom_n);
    cmom->add_option("-o,--out", mom_out);
    cmom->add_option("--format", mom_format);

    auto* cver = app.add_subcommand("verify", "run the invariant suites");
    cver->add_option("--suite", suite,
                     "all | determinants | transfer | moments | structure | eigenfunctions");
    cver->add_option("--seed", seed);

    auto* corc = app.add_subcommand("oracle-compare",
                                    "finite-difference tree vs assembled decomposition");
    add_common(corc, oracle_o);
    corc->add_option("--m", oc_m, "eigenvalue count");
    corc->add_option("--cells", oc_cells, "mesh cells per edge");
    corc->add_option("--tol", oc_tol, "max deviation treated as agreement");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*cspec) {
            SpectrumReport rep =
                linear_spectrum(spec_o.params(), spec_o.potential(), lambda_min, lambda_max);
            if (spec_o.format == "csv") {
                std::ostringstream s;
                write_spectrum_csv(s, rep);
                emit(spec_o.out, s.str());
            } else {
                emit(spec_o.out, dump(report_json(rep, spec_o.potential())));
            }
        } else if (*ctree) {
            TreeSpectrum ts =
                tree_spectrum(tree_o.params(), tree_o.potential(), tlam_min, tlam_max);
            if (tree_o.format == "csv") {
                std::ostringstream s;
                write_tree_csv(s, ts);
                emit(tree_o.out, s.str());
            } else {
                emit(tree_o.out, dump(tree_json(ts, tree_o.potential())));
            }
        } else if (*cplot) {
            std::string svg;
            if (!panel_alphas.empty()) {
                std::vector<double> alphas;
                std::stringstream ss(panel_alphas);
                std::string tok;
                while (std::getline(ss, tok, ',')) alphas.push_back(parse_number(tok));
                svg = alpha_panel_svg(plot_o.params(), plot_o.potential(), alphas, mu_max);
            } else {
                svg = spiral_plot_svg(plot_o.params(), plot_o.potential(), mu_min, mu_max);
            }
            emit(plot_o.out, svg);
        } else if (*cbands) {
            Potential q = parse_potential(band_q);
            BandStructure bs = infinite_bands(band_b, band_alpha, q, band_lambda_max);
            std::vector<std::pair<double, double>> density;
            for (const auto& [lo, hi] : bs.bands)
                for (int i = 1; i <= band_density; ++i) {
                    double lam = lo + (hi - lo) * i / (band_density + 1.0);
                    density.emplace_back(lam, density_of_states(band_b, band_alpha, q, lam));
                }
            Json j = bands_json(bs, band_b, band_alpha, density);
            if (band_points) {
                RootCondition rc = band_root == "dirichlet" ? RootCondition::Dirichlet
                                                            : RootCondition::Robin;
                Json pts = Json::array();
                for (const auto& g :
                     infinite_point_spectrum(band_b, band_alpha, q, band_lambda_max, rc))
                    pts.push_back(Json{{"lambda", g.lambda},
                                       {"gap", g.gap},
                                       {"passes_decay", g.passes_decay}});
                j["point_spectrum"] = std::move(pts);
            }
            if (band_format == "csv") {
                std::ostringstream s;
                write_bands_csv(s, bs, density);
                emit(band_out, s.str());
            } else {
                emit(band_out, dump(j));
            }
        } else if (*crogue) {
            std::vector<double> alphas;
            std::stringstream ss(rogue_alphas);
            std::string tok;
            while (std::getline(ss, tok, ',')) alphas.push_back(parse_number(tok));
            auto rows = rogue_trajectory(rogue_o.params(), rogue_o.potential(), alphas);
            if (rogue_o.format == "csv") {
                std::ostringstream s;
                write_rogue_csv(s, rows);
                emit(rogue_o.out, s.str());
            } else {
                emit(rogue_o.out, dump(rogue_json(rogue_o.params(), rows)));
            }
        } else if (*cmom) {
            QuadratureMeasure m = quadrature_measure({mom_b, mom_n});
            if (mom_format == "csv") {
                std::ostringstream s;
                write_moments_csv(s, m);
                emit(mom_out, s.str());
            } else {
                emit(mom_out, dump(moments_json({mom_b, mom_n}, m)));
            }
        } else if (*cver) {
            Verifier v;
            bool all = suite == "all";
            if (all || suite == "determinants") verify_determinants(v, seed);
            if (all || suite == "transfer") verify_transfer(v, seed);
            if (all || suite == "moments") verify_moments(v);
            if (all || suite == "structure") verify_structure(v);
            if (all || suite == "eigenfunctions") verify_eigenfunctions(v);
            if (v.failures > 0) {
                std::printf("%d suite(s) failed\n", v.failures);
                return kExitVerification;
            }
            std::printf("all suites passed\n");
        } else if (*corc) {
            DecompositionReport rep = decomposition_check(
                oracle_o.params(), oracle_o.potential(), oc_m, oc_cells);
            std::printf("tree_value assembled_value multiplicity deviation\n");
            for (const auto& r : rep.rows)
                std::printf("%.10g %.10g %d %.3e\n", r.tree_value, r.assembled_value,
                            r.multiplicity, std::fabs(r.tree_value - r.assembled_value));
            std::printf("max deviation %.3e, multiplicity mismatches %d\n",
                        rep.max_deviation, rep.multiplicity_mismatches);
            if (rep.max_deviation > oc_tol || rep.multiplicity_mismatches > 0)
                return kExitVerification;
        }
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return kExitNumerical;
    }
    return 0;
}
