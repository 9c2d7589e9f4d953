#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "qtree/orthopoly.hpp"
#include "qtree/spectra.hpp"
#include "qtree/zerosets.hpp"

namespace qtree {

inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::ordered_json;

// %.12g, deterministic across runs.
std::string fmt(double x);

Json params_json(const GraphParams& params);
Json potential_json(const Potential& q);

Json report_json(const SpectrumReport& report, const Potential& q);
Json tree_json(const TreeSpectrum& tree, const Potential& q);
Json bands_json(const BandStructure& bands, double b, double alpha,
                const std::vector<std::pair<double, double>>& density_samples);
Json moments_json(const PolyParams& params, const QuadratureMeasure& measure);
Json rogue_json(const GraphParams& params, const std::vector<RogueRow>& rows);

void write_spectrum_csv(std::ostream& out, const SpectrumReport& report);
void write_tree_csv(std::ostream& out, const TreeSpectrum& tree);
void write_spiral_csv(std::ostream& out, const std::vector<SpiralPoint>& pts);
void write_bands_csv(std::ostream& out, const BandStructure& bands,
                     const std::vector<std::pair<double, double>>& density_samples);
void write_rogue_csv(std::ostream& out, const std::vector<RogueRow>& rows);
void write_moments_csv(std::ostream& out, const QuadratureMeasure& measure);

struct PlotStyle {
    int width = 880, height = 660;
    int margin = 60;
    std::string spiral_color = "#b03030";
    std::string component_color = "#1f4e8c";
    std::string strip_color = "#999999";
    std::string shade_color = "#dfe9f5";
    std::string point_color = "#000000";
};

// Zero-set components, slanted strips, oscillatory shading, the spiral
// (c(lambda), s(lambda)) for mu in [mu_min, mu_max], and the eigenvalue
// crossings.  SVG 1.1, no timestamps, byte-deterministic.
std::string spiral_plot_svg(const GraphParams& params, const Potential& q,
                            double mu_min, double mu_max,
                            const PlotStyle& style = {});

// Eigenvalue-vs-alpha panel: mu(lambda) of every eigenvalue against alpha,
// with the Dirichlet levels as dashed horizontals.
std::string alpha_panel_svg(const GraphParams& params, const Potential& q,
                            const std::vector<double>& alphas, double mu_max,
                            const PlotStyle& style = {});

}  // namespace qtree
