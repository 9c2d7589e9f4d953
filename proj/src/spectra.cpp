#include "qtree/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qtree/scan.hpp"

namespace qtree {

namespace {

struct RawRoot {
    double lambda;
    int component;
};

int sigma_at(const GraphParams& params, const Potential& q, double mu) {
    return sturm_count_below(params, transfer_at(q, lambda_of_mu(mu)));
}

double mu_tol(double mu) { return 4e-16 * std::max(1.0, std::fabs(mu)); }

// Resolve every Sturm-count transition in (mu_lo, mu_hi) into a root with its
// component index.  The count jumps by +-1 at each transversal crossing of the
// spiral with a component curve; clusters narrower than the grid show up as
// multi-jumps and are split recursively.
void isolate(const GraphParams& params, const Potential& q, double mu_lo, int s_lo,
             double mu_hi, int s_hi, std::vector<RawRoot>& out) {
    if (s_lo == s_hi) return;
    if (mu_hi - mu_lo <= mu_tol(mu_lo)) {
        // Unresolvable at double precision: report one root per crossed level.
        double lam = lambda_of_mu(0.5 * (mu_lo + mu_hi));
        int lo = std::min(s_lo, s_hi), hi = std::max(s_lo, s_hi);
        for (int j = lo; j < hi; ++j) out.push_back({lam, j});
        return;
    }
    if (std::abs(s_hi - s_lo) == 1) {
        int comp = std::min(s_lo, s_hi);
        for (int it = 0; it < 200 && mu_hi - mu_lo > mu_tol(mu_lo); ++it) {
            double mid = 0.5 * (mu_lo + mu_hi);
            int sm = sigma_at(params, q, mid);
            if (sm == s_lo) {
                mu_lo = mid;
            } else if (sm == s_hi) {
                mu_hi = mid;
            } else {
                isolate(params, q, mu_lo, s_lo, mid, sm, out);
                isolate(params, q, mid, sm, mu_hi, s_hi, out);
                return;
            }
        }
        out.push_back({lambda_of_mu(0.5 * (mu_lo + mu_hi)), comp});
        return;
    }
    double mid = 0.5 * (mu_lo + mu_hi);
    int sm = sigma_at(params, q, mid);
    isolate(params, q, mu_lo, s_lo, mid, sm, out);
    isolate(params, q, mid, sm, mu_hi, s_hi, out);
}

std::vector<RawRoot> scan_window(const GraphParams& params, const Potential& q,
                                 double mu_a, double mu_b, int npts) {
    std::vector<RawRoot> roots;
    if (!(mu_b > mu_a)) return roots;
    auto mus = mu_grid(mu_a, mu_b, npts + 1);
    auto sig = scan_sturm(params, q, mus);
    for (size_t i = 0; i + 1 < mus.size(); ++i)
        if (sig[i] != sig[i + 1])
            isolate(params, q, mus[i], sig[i], mus[i + 1], sig[i + 1], roots);
    std::sort(roots.begin(), roots.end(),
              [](const RawRoot& a, const RawRoot& b) { return a.lambda < b.lambda; });
    return roots;
}

int count_comp_range(const std::vector<RawRoot>& roots, int lo, int hi) {
    int c = 0;
    for (const auto& r : roots)
        if (r.component >= lo && r.component <= hi) ++c;
    return c;
}

// Expected window contents per the cluster/intermediate/rogue structure.
// k_window = 0 is everything below lambda_D^1.  Enforced for n >= 3 on
// windows whose relevant boundaries are Dirichlet points.
bool window_counts_ok(const GraphParams& params, int k_window,
                      const std::vector<RawRoot>& roots) {
    int n = params.n;
    if (n < 3) return true;
    bool robin = params.root_condition == RootCondition::Robin;
    if (robin) {
        if (k_window == 0)
            return count_comp_range(roots, 1, n - 2) == n - 2 &&
                   count_comp_range(roots, n - 1, n - 1) == 1 &&
                   count_comp_range(roots, n, n) == 1 &&
                   count_comp_range(roots, 0, 0) <= 1;
        return count_comp_range(roots, 1, n - 1) == n - 1 &&
               count_comp_range(roots, 0, 0) <= 1 &&
               count_comp_range(roots, n, n) <= 1;
    }
    // Dirichlet scan ranks are 0..n-1; component labels are rank + 1.
    if (k_window == 0)
        return count_comp_range(roots, 1, n - 2) == n - 2 &&
               count_comp_range(roots, n - 1, n - 1) == 1 &&
               count_comp_range(roots, 0, 0) <= 1;
    return count_comp_range(roots, 1, n - 2) == n - 2 &&
           count_comp_range(roots, 0, 0) == 1 &&
           count_comp_range(roots, n - 1, n - 1) == 1;
}

Regime regime_of(const GraphParams& params, const Potential& q, double lambda) {
    Scaled v = v_of(params, transfer_at(q, lambda));
    if (v.sign() == 0) return Regime::Oscillatory;
    double la = v.log_abs() - 0.5 * std::log(params.b);
    if (la < 600.0) {
        double t = std::exp(la);
        if (std::fabs(t - 2.0) <= 1e-9) return Regime::Boundary;
        return t < 2.0 ? Regime::Oscillatory : Regime::Exponential;
    }
    return Regime::Exponential;
}

// Intermediate bookkeeping: in window k the curve met near lambda_D^k (where
// y = (-1)^k) is component 0 for odd k, component n for even k.
void tag_intermediate(TaggedEigenvalue& ev, int k_window, int n) {
    bool lower_is_comp0 = (k_window % 2 == 1);
    bool at_lower = (ev.component == 0) == lower_is_comp0;
    if (at_lower) {
        ev.k = k_window;
        ev.side = +1;
    } else {
        ev.k = k_window + 1;
        ev.side = -1;
    }
    (void)n;
}

void tag_intermediate_dir(TaggedEigenvalue& ev, int k_window, int n) {
    bool lower_is_comp1 = (k_window % 2 == 1);
    bool at_lower = (ev.component == 1) == lower_is_comp1;
    if (at_lower) {
        ev.k = k_window;
        ev.side = +1;
    } else {
        ev.k = k_window + 1;
        ev.side = -1;
    }
    (void)n;
}

double dd_over_s(const GraphParams& params, const Potential& q, double lambda) {
    TransferValues t = transfer_at(q, lambda);
    SecularValue d = secular_of(params, t);
    return (d.scaled() / t.s()).value();
}

}  // namespace

std::vector<double> SpectrumReport::values() const {
    std::vector<double> v;
    v.reserve(eigenvalues.size());
    for (const auto& e : eigenvalues) v.push_back(e.lambda);
    return v;
}

std::vector<const TaggedEigenvalue*> SpectrumReport::in_cluster(int k) const {
    std::vector<const TaggedEigenvalue*> v;
    for (const auto& e : eigenvalues)
        if (e.tag == TagKind::Cluster && e.k == k) v.push_back(&e);
    return v;
}

const TaggedEigenvalue* SpectrumReport::rogue(char kind) const {
    for (const auto& e : eigenvalues)
        if (e.tag == TagKind::Rogue && e.rogue_kind == kind) return &e;
    return nullptr;
}

DirichletPointCheck dirichlet_multiplicity(const GraphParams& params,
                                           const Potential& q, int k,
                                           double lambda_d) {
    DirichletPointCheck res;
    res.k = k;
    res.lambda = lambda_d;
    double scale = std::max(1.0, std::fabs(lambda_d));
    double ref = 0.0;
    for (double f : {-1.0, 1.0})
        ref = std::max(ref, std::fabs(dd_over_s(params, q, lambda_d + f * 1e-2 * scale)));
    if (ref == 0.0) ref = 1.0;
    double h1 = 1e-4 * scale, h2 = 1e-5 * scale, h3 = 1e-6 * scale;
    auto sym = [&](double h) {
        return 0.5 * (dd_over_s(params, q, lambda_d + h) +
                      dd_over_s(params, q, lambda_d - h));
    };
    double f1 = sym(h1), f2 = sym(h2), f3 = sym(h3);
    double est12 = (f2 * h1 * h1 - f1 * h2 * h2) / (h1 * h1 - h2 * h2);
    double est23 = (f3 * h2 * h2 - f2 * h3 * h3) / (h2 * h2 - h3 * h3);
    res.limit = est23;
    res.indeterminate =
        std::fabs(est12 - est23) > 1e-2 * std::max(ref, std::fabs(est23));
    res.eigenvalue = std::fabs(est23) < 1e-6 * ref;
    res.tangential = res.eigenvalue;
    return res;
}

DirichletPointCheck dirichlet_multiplicity(const GraphParams& params,
                                           const Potential& q, int k) {
    if (k < 1) throw std::invalid_argument("dirichlet_multiplicity: k >= 1");
    double guess = (k * M_PI + 4.0) * (k * M_PI + 4.0) + std::fabs(q.min_value());
    for (int tries = 0; tries < 8; ++tries) {
        auto sd = dirichlet_spectrum(q, guess);
        if (int(sd.values.size()) >= k)
            return dirichlet_multiplicity(params, q, k, sd.values[k - 1]);
        guess *= 2.0;
    }
    throw std::runtime_error("dirichlet_multiplicity: lambda_D^k not found");
}

SpectrumReport linear_spectrum(const GraphParams& params, const Potential& q,
                               double lambda_min, double lambda_max) {
    if (params.n < 1 || params.b <= 1.0)
        throw std::invalid_argument("linear_spectrum: need n >= 1, b > 1");
    if (!(lambda_min < lambda_max))
        throw std::invalid_argument("linear_spectrum: lambda_min < lambda_max");
    bool robin = params.root_condition == RootCondition::Robin;
    int n = params.n;

    double lam_lo = lambda_min;
    if (params.alpha < 0.0)
        lam_lo = std::min(lam_lo, -1.5 * params.alpha * params.alpha - 10.0);
    lam_lo = std::min(lam_lo, q.min_value() - 10.0);
    lam_lo = std::min(lam_lo, -64.0);

    // The scan starts below the whole spectrum, where the spiral lies above
    // every component curve; verified via the Sturm count.
    int full = robin ? n + 1 : n;
    double mu_lo = mu_of_lambda(lam_lo);
    int guard = 0;
    while (sigma_at(params, q, mu_lo) != full) {
        mu_lo *= 1.5;
        if (++guard > 6)
            throw std::runtime_error("linear_spectrum: could not bracket the spectrum from below");
    }
    lam_lo = lambda_of_mu(mu_lo);

    SpectrumReport rep;
    rep.params = params;
    rep.lambda_min = lam_lo;
    rep.lambda_max = lambda_max;
    rep.dirichlet = dirichlet_spectrum(q, lambda_max).values;

    // Window boundaries in mu, offset away from the Dirichlet points where
    // D_n vanishes structurally (Robin) and the classification flips.
    struct Window {
        double mu_a, mu_b;
        int k;
        bool full;
    };
    std::vector<Window> windows;
    double mu_max = mu_of_lambda(lambda_max);
    double prev = mu_lo;
    bool prev_full = true;
    for (size_t i = 0; i < rep.dirichlet.size(); ++i) {
        double mu_d = mu_of_lambda(rep.dirichlet[i]);
        double delta = 1e-7 * std::max(1.0, std::fabs(mu_d));
        windows.push_back({prev, mu_d - delta, int(i), prev_full});
        prev = mu_d + delta;
        prev_full = true;
    }
    if (prev < mu_max)
        windows.push_back({prev, mu_max, int(rep.dirichlet.size()), false});

    for (auto& w : windows) {
        bool check = w.full && (w.k < int(rep.dirichlet.size()));
        int npts = std::max(24, 8 * (n + 1));
        std::vector<RawRoot> roots;
        for (int attempt = 0;; ++attempt) {
            roots = scan_window(params, q, w.mu_a, w.mu_b, npts);
            if (!check || window_counts_ok(params, w.k, roots)) break;
            if (attempt >= 10) {
                std::ostringstream os;
                os << "linear_spectrum: window " << w.k << " count mismatch ("
                   << roots.size() << " roots) after maximal refinement";
                throw std::runtime_error(os.str());
            }
            npts *= 2;
        }
        for (const auto& r : roots) {
            if (r.lambda < lambda_min || r.lambda > lambda_max) {
                // Auto-extended range: rogue-region roots are kept.
                if (r.lambda > lambda_max) continue;
                if (params.alpha >= 0.0 && r.lambda < lambda_min) continue;
            }
            TaggedEigenvalue ev;
            ev.lambda = r.lambda;
            // Dirichlet components are conventionally labeled 1..n.
            ev.component = robin ? r.component : r.component + 1;
            if (robin) {
                if (w.k == 0) {
                    if (r.component == 0) {
                        ev.tag = TagKind::Intermediate;
                        ev.k = 1;
                        ev.side = -1;
                    } else if (r.component >= n - 1 && params.alpha < 0.0) {
                        ev.tag = TagKind::Rogue;
                        ev.rogue_kind = (r.component == n) ? '=' : '-';
                    } else {
                        ev.tag = TagKind::Cluster;
                        ev.k = 0;
                    }
                } else if (r.component == 0 || r.component == n) {
                    ev.tag = TagKind::Intermediate;
                    tag_intermediate(ev, w.k, n);
                } else {
                    ev.tag = TagKind::Cluster;
                    ev.k = w.k;
                }
            } else {
                if (w.k == 0) {
                    if (ev.component == 1) {
                        ev.tag = TagKind::Intermediate;
                        ev.k = 1;
                        ev.side = -1;
                    } else if (ev.component == n && params.alpha < 0.0) {
                        ev.tag = TagKind::Rogue;
                        ev.rogue_kind = '=';
                    } else {
                        ev.tag = TagKind::Cluster;
                        ev.k = 0;
                    }
                } else if (ev.component == 1 || ev.component == n) {
                    ev.tag = TagKind::Intermediate;
                    tag_intermediate_dir(ev, w.k, n);
                } else {
                    ev.tag = TagKind::Cluster;
                    ev.k = w.k;
                }
            }
            ev.regime = regime_of(params, q, ev.lambda);
            rep.eigenvalues.push_back(ev);
        }
    }

    // Dirichlet points: eigenvalues of (Lambda_n, B_n) exactly when D_n/s has
    // a root there (tangential intersection).  Never eigenvalues of B?_n.
    if (robin) {
        for (size_t i = 0; i < rep.dirichlet.size(); ++i) {
            auto chk = dirichlet_multiplicity(params, q, int(i) + 1, rep.dirichlet[i]);
            rep.dirichlet_checks.push_back(chk);
            if (chk.eigenvalue) {
                TaggedEigenvalue ev;
                ev.lambda = chk.lambda;
                ev.tag = TagKind::DirichletPoint;
                ev.k = int(i) + 1;
                ev.component = (i % 2 == 0) ? 0 : n;
                ev.regime = regime_of(params, q, ev.lambda);
                rep.eigenvalues.push_back(ev);
            }
        }
    }

    std::sort(rep.eigenvalues.begin(), rep.eigenvalues.end(),
              [](const TaggedEigenvalue& a, const TaggedEigenvalue& b) {
                  return a.lambda < b.lambda;
              });

    // Cluster positions and summaries for fully scanned windows.
    int max_full_k = int(rep.dirichlet.size()) - 1;
    for (int k = 0; k <= max_full_k; ++k) {
        ClusterSummary cs;
        cs.k = k;
        bool first = true;
        int pos = 0;
        for (auto& e : rep.eigenvalues) {
            if (e.tag != TagKind::Cluster || e.k != k) continue;
            e.position = pos++;
            if (first || e.lambda < cs.min) cs.min = e.lambda;
            if (first || e.lambda > cs.max) cs.max = e.lambda;
            first = false;
            ++cs.count;
        }
        if (cs.count > 0) rep.clusters.push_back(cs);
    }
    return rep;
}

std::vector<double> TreeSpectrum::expanded() const {
    std::vector<double> out;
    for (const auto& e : values)
        for (int i = 0; i < e.multiplicity; ++i) out.push_back(e.lambda);
    return out;
}

TreeSpectrum tree_spectrum(const GraphParams& params, const Potential& q,
                           double lambda_min, double lambda_max) {
    double bint;
    if (std::modf(params.b, &bint) != 0.0 || params.b < 2.0)
        throw std::invalid_argument("tree_spectrum: integer b >= 2 required");
    TreeSpectrum ts;
    ts.params = params;
    ts.params.root_condition = RootCondition::Robin;

    std::vector<TreeEigenvalue> all;
    GraphParams p = ts.params;
    auto rep = linear_spectrum(p, q, lambda_min, lambda_max);
    for (double lam : rep.values()) all.push_back({lam, 1, 0, false});
    for (int m = 1; m <= params.n; ++m) {
        GraphParams pm{m, params.b, params.alpha, RootCondition::Dirichlet};
        auto rm = linear_spectrum(pm, q, lambda_min, lambda_max);
        int mult = int(std::llround((params.b - 1.0) *
                                    std::pow(params.b, params.n - m)));
        for (double lam : rm.values()) all.push_back({lam, mult, m, false});
    }
    std::sort(all.begin(), all.end(), [](const TreeEigenvalue& a, const TreeEigenvalue& b) {
        return a.lambda < b.lambda;
    });
    for (size_t i = 0; i < all.size(); ++i) {
        if (!ts.values.empty()) {
            auto& last = ts.values.back();
            double tol = 1e-8 * std::max(1.0, std::fabs(all[i].lambda));
            if (all[i].lambda - last.lambda <= tol && all[i].origin_m != last.origin_m) {
                last.multiplicity += all[i].multiplicity;
                last.collision = true;
                ts.disjointness_warning = true;
                continue;
            }
        }
        ts.values.push_back(all[i]);
    }
    return ts;
}

std::vector<RogueRow> rogue_trajectory(const GraphParams& params, const Potential& q,
                                       const std::vector<double>& alphas) {
    std::vector<RogueRow> rows;
    for (double a : alphas) {
        if (!(a < 0.0))
            throw std::invalid_argument("rogue_trajectory: all alphas must be negative");
        GraphParams p = params;
        p.alpha = a;
        double guess = 40.0 + std::fabs(q.min_value());
        auto sd = dirichlet_spectrum(q, guess);
        if (sd.values.empty())
            throw std::runtime_error("rogue_trajectory: no Dirichlet point found");
        double lam_d1 = sd.values.front();
        double lam_max = lam_d1 + 1e-3 * std::max(1.0, std::fabs(lam_d1));
        auto rep = linear_spectrum(p, q, -1.5 * a * a - 10.0, lam_max);

        RogueRow row;
        row.alpha = a;
        const TaggedEigenvalue* eq = rep.rogue('=');
        if (!eq) throw std::runtime_error("rogue_trajectory: rogue '=' missing");
        row.lambda_eq = eq->lambda;
        row.residual_eq = eq->lambda + a * a;
        if (p.root_condition == RootCondition::Robin) {
            const TaggedEigenvalue* mn = rep.rogue('-');
            if (!mn) throw std::runtime_error("rogue_trajectory: rogue '-' missing");
            row.lambda_minus = mn->lambda;
            row.residual_minus = mn->lambda + a * a / (p.b * p.b);
        }
        for (const auto& cs : rep.clusters)
            if (cs.k == 0) {
                row.cluster_center = cs.center();
                row.cluster_width = cs.width();
                row.residual_center =
                    cs.center() + a * a / ((p.b + 1.0) * (p.b + 1.0));
            }
        double bp1 = p.b + 1.0;
        row.width_bound = 8.0 * a * a / (bp1 * bp1) * std::exp(-std::fabs(a) / bp1);
        rows.push_back(row);
    }
    return rows;
}

namespace {

bool oscillatory_at(double b, double alpha, const Potential& q, double mu) {
    GraphParams p{1, b, alpha, RootCondition::Robin};
    Scaled v = v_of(p, transfer_at(q, lambda_of_mu(mu)));
    if (v.sign() == 0) return true;
    return v.log_abs() < std::log(2.0 * std::sqrt(b));
}

}  // namespace

BandStructure infinite_bands(double b, double alpha, const Potential& q,
                             double lambda_max) {
    BandStructure bs;
    bs.beta = std::acos(2.0 / (std::sqrt(b) + 1.0 / std::sqrt(b)));
    double mu_lo = std::min(-8.0, -1.5 * std::fabs(alpha) - 8.0);
    mu_lo = std::min(mu_lo, mu_of_lambda(q.min_value() - 10.0));
    int guard = 0;
    while (oscillatory_at(b, alpha, q, mu_lo)) {
        mu_lo *= 1.5;
        if (++guard > 6)
            throw std::runtime_error("infinite_bands: no exponential regime below");
    }
    double mu_hi = mu_of_lambda(lambda_max);
    int npts = std::max(64, int((mu_hi - mu_lo) / 0.01));
    auto mus = mu_grid(mu_lo, mu_hi, npts + 1);
    // v passes through 0 inside every band, and exponentially thin bands
    // (strong-potential resonances) can slip between uniform samples while
    // still flipping the sign of v across them.  Bisect each sign flip for
    // the v = 0 crossing and add it as a sample; the edge refinement below
    // then resolves the thin band around it.
    {
        GraphParams p1{1, b, alpha, RootCondition::Robin};
        auto v_sign = [&](double mu) {
            return v_of(p1, transfer_at(q, lambda_of_mu(mu))).sign();
        };
        std::vector<double> crossings;
        int sp = v_sign(mus[0]);
        for (size_t i = 1; i < mus.size(); ++i) {
            int sc = v_sign(mus[i]);
            if (sc != 0 && sp != 0 && sc != sp) {
                double lo = mus[i - 1], hi = mus[i];
                for (int it = 0;
                     it < 100 && hi - lo > 1e-13 * std::max(1.0, std::fabs(hi)); ++it) {
                    double mid = 0.5 * (lo + hi);
                    (v_sign(mid) == sp ? lo : hi) = mid;
                }
                crossings.push_back(0.5 * (lo + hi));
            }
            if (sc != 0) sp = sc;
        }
        mus.insert(mus.end(), crossings.begin(), crossings.end());
        std::sort(mus.begin(), mus.end());
    }
    auto refine = [&](double lo, double hi, bool osc_lo) {
        for (int it = 0; it < 200 && hi - lo > 1e-12 * std::max(1.0, std::fabs(lo)); ++it) {
            double mid = 0.5 * (lo + hi);
            if (oscillatory_at(b, alpha, q, mid) == osc_lo)
                lo = mid;
            else
                hi = mid;
        }
        return 0.5 * (lo + hi);
    };
    bool prev = false;
    double band_start = 0.0;
    for (size_t i = 1; i < mus.size(); ++i) {
        bool cur = oscillatory_at(b, alpha, q, mus[i]);
        if (cur == prev) continue;
        double edge = refine(mus[i - 1], mus[i], prev);
        if (cur)
            band_start = edge;
        else
            bs.bands.push_back({lambda_of_mu(band_start), lambda_of_mu(edge)});
        prev = cur;
    }
    if (prev) bs.bands.push_back({lambda_of_mu(band_start), lambda_max});
    return bs;
}

std::vector<GapEigenvalue> infinite_point_spectrum(double b, double alpha,
                                                   const Potential& q,
                                                   double lambda_max,
                                                   RootCondition root_condition) {
    std::vector<GapEigenvalue> out;
    auto bands = infinite_bands(b, alpha, q, lambda_max).bands;
    auto gap_of = [&](double lam) {
        int g = 0;
        for (const auto& bd : bands)
            if (bd.second < lam) ++g;
        return g;
    };
    if (root_condition == RootCondition::Dirichlet) {
        for (double lam : dirichlet_spectrum(q, lambda_max).values)
            out.push_back({lam, gap_of(lam), true});
        return out;
    }
    // Robin root: roots of b(c - 1/c) + alpha s, via H = b(c^2 - 1) + alpha s c
    // (same roots; c = 0 makes H = -b, so no spurious pole roots).
    auto H_sign = [&](double mu) {
        TransferValues t = transfer_at(q, lambda_of_mu(mu));
        Scaled h = b * (t.c() * t.c() - Scaled(1.0)) + alpha * t.s() * t.c();
        return h.sign();
    };
    auto decay = [&](double mu) {
        Scaled c = transfer_at(q, lambda_of_mu(mu)).c();
        return c.sign() != 0 && c.log_abs() > 0.5 * std::log(b);
    };
    double scan_lo = std::min(-8.0, -1.5 * std::fabs(alpha) - 8.0);
    std::vector<std::pair<double, double>> gaps;
    double prev_mu = scan_lo;
    for (const auto& bd : bands) {
        gaps.push_back({prev_mu, mu_of_lambda(bd.first)});
        prev_mu = mu_of_lambda(bd.second);
    }
    if (prev_mu < mu_of_lambda(lambda_max))
        gaps.push_back({prev_mu, mu_of_lambda(lambda_max)});
    for (size_t gi = 0; gi < gaps.size(); ++gi) {
        double a = gaps[gi].first, bnd = gaps[gi].second;
        double eps = 1e-9 * std::max(1.0, std::fabs(bnd));
        a += eps;
        bnd -= eps;
        if (!(bnd > a)) continue;
        auto mus = mu_grid(a, bnd, 513);
        int sp = H_sign(mus[0]);
        for (size_t i = 1; i < mus.size(); ++i) {
            int sc = H_sign(mus[i]);
            if (sc != 0 && sp != 0 && sc != sp) {
                double lo = mus[i - 1], hi = mus[i];
                for (int it = 0; it < 200 && hi - lo > mu_tol(lo); ++it) {
                    double mid = 0.5 * (lo + hi);
                    int sm = H_sign(mid);
                    if (sm == sp)
                        lo = mid;
                    else
                        hi = mid;
                }
                double mu_root = 0.5 * (lo + hi);
                out.push_back({lambda_of_mu(mu_root), int(gi), decay(mu_root)});
            }
            if (sc != 0) sp = sc;
        }
    }
    return out;
}

double density_of_states(double b, double alpha, const Potential& q, double lambda) {
    GraphParams p{1, b, alpha, RootCondition::Robin};
    auto v_at = [&](double lam) { return v_of(p, transfer_at(q, lam)).value(); };
    double v = v_at(lambda);
    if (std::fabs(v) >= 2.0 * std::sqrt(b))
        throw std::domain_error("density_of_states: lambda is not inside a band");
    double h = 1e-6 * std::max(1.0, std::fabs(lambda));
    double dv = (v_at(lambda + h) - v_at(lambda - h)) / (2.0 * h);
    return 2.0 * std::sqrt(b) / (M_PI * std::sqrt(4.0 * b - v * v)) * std::fabs(dv);
}

}  // namespace qtree
