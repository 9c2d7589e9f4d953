#include "qtree/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "qtree/transfer.hpp"

namespace qtree {

namespace {

const char* tag_name(TagKind t) {
    switch (t) {
        case TagKind::Cluster: return "cluster";
        case TagKind::Intermediate: return "intermediate";
        case TagKind::Rogue: return "rogue";
        case TagKind::DirichletPoint: return "dirichlet_point";
    }
    return "?";
}

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::Oscillatory: return "oscillatory";
        case Regime::Exponential: return "exponential";
        case Regime::Boundary: return "boundary";
    }
    return "?";
}

}  // namespace

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

Json params_json(const GraphParams& params) {
    return Json{{"n", params.n},
                {"b", params.b},
                {"alpha", params.alpha},
                {"root_condition",
                 params.root_condition == RootCondition::Robin ? "robin" : "dirichlet"}};
}

Json potential_json(const Potential& q) {
    return Json::parse(q.to_json());
}

Json report_json(const SpectrumReport& report, const Potential& q) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["params"] = params_json(report.params);
    j["potential"] = potential_json(q);
    j["lambda_min"] = report.lambda_min;
    j["lambda_max"] = report.lambda_max;
    j["dirichlet"] = report.dirichlet;
    Json evs = Json::array();
    for (const auto& e : report.eigenvalues) {
        Json row{{"lambda", e.lambda},
                 {"mu", mu_of_lambda(e.lambda)},
                 {"tag", tag_name(e.tag)},
                 {"k", e.k},
                 {"component", e.component},
                 {"regime", regime_name(e.regime)}};
        if (e.tag == TagKind::Cluster) row["position"] = e.position;
        if (e.tag == TagKind::Intermediate) row["side"] = e.side;
        if (e.tag == TagKind::Rogue) row["rogue_kind"] = std::string(1, e.rogue_kind);
        evs.push_back(std::move(row));
    }
    j["eigenvalues"] = std::move(evs);
    Json cls = Json::array();
    for (const auto& c : report.clusters)
        cls.push_back(Json{{"k", c.k},
                           {"count", c.count},
                           {"min", c.min},
                           {"max", c.max},
                           {"width", c.width()},
                           {"center", c.center()}});
    j["clusters"] = std::move(cls);
    Json dch = Json::array();
    for (const auto& d : report.dirichlet_checks)
        dch.push_back(Json{{"k", d.k},
                           {"lambda", d.lambda},
                           {"eigenvalue", d.eigenvalue},
                           {"tangential", d.tangential},
                           {"indeterminate", d.indeterminate},
                           {"limit", d.limit}});
    j["dirichlet_checks"] = std::move(dch);
    return j;
}

Json tree_json(const TreeSpectrum& tree, const Potential& q) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["params"] = params_json(tree.params);
    j["potential"] = potential_json(q);
    j["disjointness_warning"] = tree.disjointness_warning;
    Json vals = Json::array();
    for (const auto& v : tree.values)
        vals.push_back(Json{{"lambda", v.lambda},
                            {"multiplicity", v.multiplicity},
                            {"origin_m", v.origin_m},
                            {"collision", v.collision}});
    j["values"] = std::move(vals);
    return j;
}

Json bands_json(const BandStructure& bands, double b, double alpha,
                const std::vector<std::pair<double, double>>& density_samples) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["b"] = b;
    j["alpha"] = alpha;
    j["beta"] = bands.beta;
    Json bl = Json::array();
    for (const auto& [lo, hi] : bands.bands)
        bl.push_back(Json{{"lambda_lo", lo},
                          {"lambda_hi", hi},
                          {"mu_lo", mu_of_lambda(lo)},
                          {"mu_hi", mu_of_lambda(hi)}});
    j["bands"] = std::move(bl);
    Json ds = Json::array();
    for (const auto& [lam, rho] : density_samples)
        ds.push_back(Json{{"lambda", lam}, {"density", rho}});
    j["density"] = std::move(ds);
    return j;
}

Json moments_json(const PolyParams& params, const QuadratureMeasure& measure) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["b"] = params.b;
    j["n"] = params.n;
    j["nodes"] = measure.nodes;
    j["weights"] = measure.weights;
    j["moments"] = measure.moments;
    return j;
}

Json rogue_json(const GraphParams& params, const std::vector<RogueRow>& rows) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["params"] = params_json(params);
    Json rl = Json::array();
    for (const auto& r : rows) {
        Json row{{"alpha", r.alpha},
                 {"lambda_eq", r.lambda_eq},
                 {"cluster_center", r.cluster_center},
                 {"cluster_width", r.cluster_width},
                 {"residual_eq", r.residual_eq},
                 {"residual_center", r.residual_center},
                 {"width_bound", r.width_bound}};
        if (r.lambda_minus) row["lambda_minus"] = *r.lambda_minus;
        if (r.residual_minus) row["residual_minus"] = *r.residual_minus;
        rl.push_back(std::move(row));
    }
    j["rows"] = std::move(rl);
    return j;
}

void write_spectrum_csv(std::ostream& out, const SpectrumReport& report) {
    out << "lambda,mu,tag,k,position,side,rogue_kind,component,regime\n";
    for (const auto& e : report.eigenvalues) {
        out << fmt(e.lambda) << ',' << fmt(mu_of_lambda(e.lambda)) << ','
            << tag_name(e.tag) << ',' << e.k << ',' << e.position << ',' << e.side
            << ',' << (e.rogue_kind ? std::string(1, e.rogue_kind) : std::string())
            << ',' << e.component << ',' << regime_name(e.regime) << '\n';
    }
}

void write_tree_csv(std::ostream& out, const TreeSpectrum& tree) {
    out << "lambda,multiplicity,origin_m,collision\n";
    for (const auto& v : tree.values)
        out << fmt(v.lambda) << ',' << v.multiplicity << ',' << v.origin_m << ','
            << (v.collision ? 1 : 0) << '\n';
}

void write_spiral_csv(std::ostream& out, const std::vector<SpiralPoint>& pts) {
    out << "mu,lambda,y,z\n";
    for (const auto& p : pts)
        out << fmt(p.mu) << ',' << fmt(p.lambda) << ',' << fmt(p.y) << ','
            << fmt(p.z) << '\n';
}

void write_bands_csv(std::ostream& out, const BandStructure& bands,
                     const std::vector<std::pair<double, double>>& density_samples) {
    out << "band,lambda_lo,lambda_hi,mu_lo,mu_hi\n";
    int k = 0;
    for (const auto& [lo, hi] : bands.bands)
        out << ++k << ',' << fmt(lo) << ',' << fmt(hi) << ','
            << fmt(mu_of_lambda(lo)) << ',' << fmt(mu_of_lambda(hi)) << '\n';
    if (!density_samples.empty()) {
        out << "lambda,density\n";
        for (const auto& [lam, rho] : density_samples)
            out << fmt(lam) << ',' << fmt(rho) << '\n';
    }
}

void write_rogue_csv(std::ostream& out, const std::vector<RogueRow>& rows) {
    out << "alpha,lambda_eq,lambda_minus,cluster_center,cluster_width,"
           "residual_eq,residual_minus,residual_center,width_bound\n";
    for (const auto& r : rows) {
        out << fmt(r.alpha) << ',' << fmt(r.lambda_eq) << ','
            << (r.lambda_minus ? fmt(*r.lambda_minus) : std::string()) << ','
            << fmt(r.cluster_center) << ',' << fmt(r.cluster_width) << ','
            << fmt(r.residual_eq) << ','
            << (r.residual_minus ? fmt(*r.residual_minus) : std::string()) << ','
            << fmt(r.residual_center) << ',' << fmt(r.width_bound) << '\n';
    }
}

void write_moments_csv(std::ostream& out, const QuadratureMeasure& measure) {
    out << "index,node,weight,moment\n";
    size_t rows = std::max(measure.nodes.size(), measure.moments.size());
    for (size_t i = 0; i < rows; ++i) {
        out << i << ',';
        if (i < measure.nodes.size())
            out << fmt(measure.nodes[i]) << ',' << fmt(measure.weights[i]);
        else
            out << ',';
        out << ',';
        if (i < measure.moments.size()) out << fmt(measure.moments[i]);
        out << '\n';
    }
}

namespace {

struct Frame {
    double x_lo, x_hi, y_lo, y_hi;  // data coordinates
    int width, height, margin;

    double px(double x) const {
        return margin + (x - x_lo) / (x_hi - x_lo) * (width - 2.0 * margin);
    }
    double py(double y) const {
        return height - margin - (y - y_lo) / (y_hi - y_lo) * (height - 2.0 * margin);
    }
};

std::string coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

void open_svg(std::ostringstream& s, const Frame& f) {
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
      << f.width << "\" height=\"" << f.height << "\" viewBox=\"0 0 " << f.width
      << ' ' << f.height << "\">\n";
    s << "<defs><clipPath id=\"data\"><rect x=\"" << f.margin << "\" y=\""
      << f.margin << "\" width=\"" << f.width - 2 * f.margin << "\" height=\""
      << f.height - 2 * f.margin << "\"/></clipPath></defs>\n";
    s << "<rect width=\"" << f.width << "\" height=\"" << f.height
      << "\" fill=\"#ffffff\"/>\n";
}

void close_svg(std::ostringstream& s, const Frame& f, const std::string& xlabel,
               const std::string& ylabel) {
    s << "<rect x=\"" << f.margin << "\" y=\"" << f.margin << "\" width=\""
      << f.width - 2 * f.margin << "\" height=\"" << f.height - 2 * f.margin
      << "\" fill=\"none\" stroke=\"#000000\"/>\n";
    s << "<text x=\"" << f.width / 2 << "\" y=\"" << f.height - f.margin / 4
      << "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">"
      << xlabel << "</text>\n";
    s << "<text x=\"" << f.margin / 3 << "\" y=\"" << f.height / 2
      << "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\""
      << " transform=\"rotate(-90 " << f.margin / 3 << ' ' << f.height / 2
      << ")\">" << ylabel << "</text>\n";
    // tick labels at the corners of the data range
    s << "<text x=\"" << f.margin << "\" y=\"" << f.height - f.margin + 18
      << "\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(f.x_lo)
      << "</text>\n";
    s << "<text x=\"" << f.width - f.margin << "\" y=\"" << f.height - f.margin + 18
      << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">"
      << fmt(f.x_hi) << "</text>\n";
    s << "<text x=\"" << f.margin - 4 << "\" y=\"" << f.height - f.margin
      << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">"
      << fmt(f.y_lo) << "</text>\n";
    s << "<text x=\"" << f.margin - 4 << "\" y=\"" << f.margin + 4
      << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">"
      << fmt(f.y_hi) << "</text>\n";
    s << "</svg>\n";
}

void polyline(std::ostringstream& s, const Frame& f,
              const std::vector<std::pair<double, double>>& pts,
              const std::string& color, double width, bool dashed = false) {
    if (pts.size() < 2) return;
    s << "<polyline clip-path=\"url(#data)\" fill=\"none\" stroke=\"" << color
      << "\" stroke-width=\"" << width << "\"";
    if (dashed) s << " stroke-dasharray=\"5,4\"";
    s << " points=\"";
    for (const auto& [x, y] : pts) s << coord(f.px(x)) << ',' << coord(f.py(y)) << ' ';
    s << "\"/>\n";
}

}  // namespace

std::string spiral_plot_svg(const GraphParams& params, const Potential& q,
                            double mu_min, double mu_max, const PlotStyle& style) {
    auto spiral = sample_spiral(q, mu_min, mu_max, 2001);

    double z_lo = 0.0, z_hi = 0.0;
    for (const auto& p : spiral) {
        if (std::fabs(p.y) > 10.0 || std::fabs(p.z) > 10.0) continue;
        z_lo = std::min(z_lo, p.z);
        z_hi = std::max(z_hi, p.z);
    }
    if (z_hi - z_lo < 0.2) {
        z_lo -= 0.1;
        z_hi += 0.1;
    }
    double pad = 0.1 * (z_hi - z_lo);
    Frame f{-2.6, 2.6, z_lo - pad, z_hi + pad, style.width, style.height,
            style.margin};

    std::ostringstream s;
    open_svg(s, f);

    const double sb2 = 2.0 * std::sqrt(params.b);
    // oscillatory region |(b+1) y + alpha z| < 2 sqrt(b)
    {
        auto yv = [&](double v, double z) { return (v - params.alpha * z) / (params.b + 1.0); };
        s << "<polygon clip-path=\"url(#data)\" fill=\"" << style.shade_color
          << "\" points=\"" << coord(f.px(yv(-sb2, f.y_lo))) << ','
          << coord(f.py(f.y_lo)) << ' ' << coord(f.px(yv(sb2, f.y_lo))) << ','
          << coord(f.py(f.y_lo)) << ' ' << coord(f.px(yv(sb2, f.y_hi))) << ','
          << coord(f.py(f.y_hi)) << ' ' << coord(f.px(yv(-sb2, f.y_hi))) << ','
          << coord(f.py(f.y_hi)) << "\"/>\n";
    }

    // strip boundaries: lines (b+1) y + alpha z = root of P_n (solid) / Q_n (dashed)
    PQRoots roots = pq_roots({params.b, params.n});
    auto strip_line = [&](double v, bool dashed) {
        std::vector<std::pair<double, double>> pts;
        if (params.alpha == 0.0) {
            pts = {{v / (params.b + 1.0), f.y_lo}, {v / (params.b + 1.0), f.y_hi}};
        } else {
            pts = {{(v - params.alpha * f.y_lo) / (params.b + 1.0), f.y_lo},
                   {(v - params.alpha * f.y_hi) / (params.b + 1.0), f.y_hi}};
        }
        polyline(s, f, pts, style.strip_color, 0.8, dashed);
    };
    for (double v : roots.p) strip_line(v, false);
    for (double v : roots.q) strip_line(v, true);

    // zero-set components
    int k_lo = params.root_condition == RootCondition::Robin ? 0 : 1;
    if (params.alpha != 0.0) {
        for (int k = k_lo; k <= params.n; ++k) {
            CurveComponent comp = trace_component(params, k, f.y_lo, f.y_hi, 257);
            std::vector<std::pair<double, double>> pts;
            for (size_t i = 0; i < comp.z.size(); ++i) {
                if (std::fabs(comp.y[i]) > 50.0) {
                    polyline(s, f, pts, style.component_color, 1.3);
                    pts.clear();
                    continue;
                }
                pts.emplace_back(comp.y[i], comp.z[i]);
            }
            polyline(s, f, pts, style.component_color, 1.3);
        }
    } else {
        for (double y : y_roots_at(params, 0.0))
            polyline(s, f, {{y, f.y_lo}, {y, f.y_hi}}, style.component_color, 1.3);
    }

    // the spiral, split where it leaves the resolvable frame
    {
        std::vector<std::pair<double, double>> pts;
        for (const auto& p : spiral) {
            if (std::fabs(p.y) > 1e4 || std::fabs(p.z) > 1e4) {
                polyline(s, f, pts, style.spiral_color, 1.3);
                pts.clear();
                continue;
            }
            pts.emplace_back(p.y, p.z);
        }
        polyline(s, f, pts, style.spiral_color, 1.3);
    }

    // eigenvalue crossings
    SpectrumReport rep =
        linear_spectrum(params, q, lambda_of_mu(mu_min), lambda_of_mu(mu_max));
    for (const auto& e : rep.eigenvalues) {
        TransferValues t = transfer_at(q, e.lambda);
        double y = t.c_value(), z = t.s_value();
        if (std::fabs(y) > 1e4 || std::fabs(z) > 1e4) continue;
        s << "<circle clip-path=\"url(#data)\" cx=\"" << coord(f.px(y)) << "\" cy=\""
          << coord(f.py(z)) << "\" r=\"2.5\" fill=\"" << style.point_color
          << "\"/>\n";
    }

    close_svg(s, f, "y", "z");
    return s.str();
}

std::string alpha_panel_svg(const GraphParams& params, const Potential& q,
                            const std::vector<double>& alphas, double mu_max,
                            const PlotStyle& style) {
    if (alphas.size() < 2)
        throw std::invalid_argument("alpha_panel_svg: need at least two alpha values");
    double a_lo = *std::min_element(alphas.begin(), alphas.end());
    double a_hi = *std::max_element(alphas.begin(), alphas.end());

    std::vector<std::pair<double, double>> pts;  // (alpha, mu)
    double mu_lo = 0.0;
    for (double a : alphas) {
        GraphParams p = params;
        p.alpha = a;
        SpectrumReport rep = linear_spectrum(p, q, -10.0, lambda_of_mu(mu_max));
        for (const auto& e : rep.eigenvalues) {
            double mu = mu_of_lambda(e.lambda);
            if (mu <= mu_max) {
                pts.emplace_back(a, mu);
                mu_lo = std::min(mu_lo, mu);
            }
        }
    }

    Frame f{a_lo - 0.02 * (a_hi - a_lo), a_hi + 0.02 * (a_hi - a_lo),
            mu_lo - 0.3, mu_max + 0.3, style.width, style.height, style.margin};
    std::ostringstream s;
    open_svg(s, f);

    DirichletSpectrum ds = dirichlet_spectrum(q, lambda_of_mu(mu_max));
    for (double lam : ds.values) {
        double mu = mu_of_lambda(lam);
        polyline(s, f, {{f.x_lo, mu}, {f.x_hi, mu}}, style.strip_color, 0.8, true);
    }
    for (const auto& [a, mu] : pts)
        s << "<circle clip-path=\"url(#data)\" cx=\"" << coord(f.px(a)) << "\" cy=\""
          << coord(f.py(mu)) << "\" r=\"1.8\" fill=\"" << style.component_color
          << "\"/>\n";

    close_svg(s, f, "alpha", "mu");
    return s.str();
}

}  // namespace qtree
