// states.cpp - Gaussian density matrix, Wigner function and phase-space grids

#include "lindosc/states.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "lindosc/config_io.hpp"
#include "lindosc/csv.hpp"
#include "lindosc/errors.hpp"
#include "lindosc/quadrature.hpp"

namespace lindosc {

using namespace std::complex_literals;

AlphaBetaGamma alpha_beta_gamma(const GaussianState& s, double hbar) {
    AlphaBetaGamma abg;
    abg.alpha = 1.0 / (2.0 * s.s_qq);
    abg.gamma = s.uncertainty() / (2.0 * hbar * hbar * s.s_qq);
    abg.beta = s.s_pq / (hbar * s.s_qq);
    return abg;
}

GaussianState state_from_alpha_beta_gamma(const AlphaBetaGamma& abg, double mean_q, double mean_p,
                                          double hbar) {
    GaussianState s;
    s.mean_q = mean_q;
    s.mean_p = mean_p;
    s.s_qq = 1.0 / (2.0 * abg.alpha);
    s.s_pq = abg.beta * hbar * s.s_qq;
    const double sigma = 2.0 * hbar * hbar * s.s_qq * abg.gamma;
    s.s_pp = (sigma + s.s_pq * s.s_pq) / s.s_qq;
    return s;
}

std::complex<double> density_matrix(const GaussianState& s, double q, double qp, double hbar) {
    const double centre = 0.5 * (q + qp) - s.mean_q;
    const double diff = q - qp;
    const double re = -centre * centre / (2.0 * s.s_qq) -
                      s.uncertainty() / (2.0 * hbar * hbar * s.s_qq) * diff * diff;
    const double im = s.s_pq / (hbar * s.s_qq) * centre * diff + s.mean_p / hbar * diff;
    const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi * s.s_qq);
    return norm * std::exp(std::complex<double>(re, im));
}

std::complex<double> density_sigma_delta(const GaussianState& s, double sigma, double delta,
                                         double hbar) {
    const auto [alpha, beta, gamma] = alpha_beta_gamma(s, hbar);
    const double mq = s.mean_q;
    const double re = -alpha * sigma * sigma - gamma * delta * delta + 2.0 * alpha * mq * sigma -
                      alpha * mq * mq;
    const double im = beta * sigma * delta + (s.mean_p / hbar - beta * mq) * delta;
    return std::sqrt(alpha / std::numbers::pi) * std::exp(std::complex<double>(re, im));
}

double wigner(const GaussianState& s, double q, double p) {
    const double sigma = s.uncertainty();
    const double x = q - s.mean_q;
    const double y = p - s.mean_p;
    const double form = s.s_pp * x * x + s.s_qq * y * y - 2.0 * s.s_pq * x * y;
    return std::exp(-form / (2.0 * sigma)) / (2.0 * std::numbers::pi * std::sqrt(sigma));
}

double wigner_sheared(const GaussianState& s, double q, double p, double hbar) {
    const auto [alpha, beta, gamma] = alpha_beta_gamma(s, hbar);
    const double x = q - s.mean_q;
    const double y = p - s.mean_p;
    const double ridge = hbar * beta * x - y;
    return std::sqrt(alpha / gamma) / (2.0 * std::numbers::pi * hbar) *
           std::exp(-ridge * ridge / (4.0 * hbar * hbar * gamma) - alpha * x * x);
}

double density_stationary(const OscillatorConfig& cfg, double q, double qp) {
    const double c = cfg.temp.coth();
    const double mw = cfg.m * cfg.omega;
    const double sum = q + qp;
    const double diff = q - qp;
    return std::sqrt(mw / (std::numbers::pi * cfg.hbar * c)) *
           std::exp(-mw / (4.0 * cfg.hbar) * (sum * sum / c + diff * diff * c));
}

double wigner_stationary(const OscillatorConfig& cfg, double q, double p) {
    const double c = cfg.temp.coth();
    const double mw = cfg.m * cfg.omega;
    return std::exp(-(mw * q * q + p * p / mw) / (cfg.hbar * c)) /
           (std::numbers::pi * cfg.hbar * c);
}

double density_trace(const GaussianState& s, double hbar) {
    const double half = 8.0 * std::sqrt(s.s_qq);
    return simpson_refined(
        [&](double q) { return density_matrix(s, q, q, hbar).real(); }, s.mean_q - half,
        s.mean_q + half);
}

double wigner_marginal_q(const GaussianState& s, double q) {
    // Conditional distribution of p at fixed q.
    const double centre = s.mean_p + s.s_pq / s.s_qq * (q - s.mean_q);
    const double half = 8.0 * std::sqrt(s.uncertainty() / s.s_qq);
    return simpson_refined([&](double p) { return wigner(s, q, p); }, centre - half,
                           centre + half, 1e-12);
}

std::complex<double> wigner_from_density(const GaussianState& s, double q, double p, double hbar) {
    const double gamma = alpha_beta_gamma(s, hbar).gamma;
    const double half = 8.0 / std::sqrt(2.0 * gamma);
    const auto integrand = [&](double delta) {
        return density_sigma_delta(s, q, delta, hbar) * std::exp(-1i * (p * delta / hbar));
    };
    return simpson_refined(integrand, -half, half, 1e-12) / (2.0 * std::numbers::pi * hbar);
}

void GridGeometry::check() const {
    if (n_q < 3 || n_p < 3) throw ValidationError("grid needs at least 3 points per axis");
    if (!(q_max > q_min) || !(p_max > p_min)) throw ValidationError("empty grid extent");
    if (!std::isfinite(q_min) || !std::isfinite(q_max) || !std::isfinite(p_min) ||
        !std::isfinite(p_max))
        throw ValidationError("grid bounds must be finite");
}

PhaseSpaceGrid::PhaseSpaceGrid(const GridGeometry& geom)
    : geom_(geom), values_((geom.check(), geom.n_q * geom.n_p), 0.0) {}

PhaseSpaceGrid::PhaseSpaceGrid(const GridGeometry& geom, std::vector<double> values)
    : geom_(geom), values_(std::move(values)) {
    geom_.check();
    if (values_.size() != geom_.n_q * geom_.n_p)
        throw ValidationError("grid value count does not match geometry");
}

double PhaseSpaceGrid::integral() const {
    double acc = 0.0;
    for (double v : values_) acc += v;
    return acc * geom_.cell_area();
}

double PhaseSpaceGrid::max_value() const {
    return *std::max_element(values_.begin(), values_.end());
}

double PhaseSpaceGrid::min_value() const {
    return *std::min_element(values_.begin(), values_.end());
}

GridGeometry covering_geometry(const std::vector<GaussianState>& states, double n_sigma,
                               std::size_t n_q, std::size_t n_p) {
    if (states.empty()) throw ValidationError("covering_geometry needs at least one state");
    GridGeometry g;
    g.q_min = g.p_min = std::numeric_limits<double>::infinity();
    g.q_max = g.p_max = -std::numeric_limits<double>::infinity();
    for (const auto& s : states) {
        const double hq = n_sigma * std::sqrt(s.s_qq);
        const double hp = n_sigma * std::sqrt(s.s_pp);
        g.q_min = std::min(g.q_min, s.mean_q - hq);
        g.q_max = std::max(g.q_max, s.mean_q + hq);
        g.p_min = std::min(g.p_min, s.mean_p - hp);
        g.p_max = std::max(g.p_max, s.mean_p + hp);
    }
    g.n_q = n_q;
    g.n_p = n_p;
    g.check();
    return g;
}

PhaseSpaceGrid render_grid(const GaussianState& s, const GridGeometry& geom) {
    PhaseSpaceGrid grid(geom);
    for (std::size_t i = 0; i < geom.n_q; ++i)
        for (std::size_t j = 0; j < geom.n_p; ++j) grid.at(i, j) = wigner(s, geom.q(i), geom.p(j));
    return grid;
}

DensityGrid density_grid(const GaussianState& s, double q_min, double q_max, std::size_t n,
                         double hbar) {
    DensityGrid g;
    g.geometry = GridGeometry{q_min, q_max, q_min, q_max, n, n};
    g.geometry.check();
    g.values.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            g.values[i * n + j] =
                density_matrix(s, g.geometry.q(i), g.geometry.p(j), hbar);
    return g;
}

namespace {

std::string geometry_header(const GridGeometry& g) {
    return "# " + format_number(g.q_min) + " " + format_number(g.q_max) + " " +
           format_number(g.p_min) + " " + format_number(g.p_max) + " " + std::to_string(g.n_q) +
           " " + std::to_string(g.n_p) + "\n";
}

template <class F>
std::string rows_csv(const GridGeometry& g, F&& value) {
    std::string out = geometry_header(g);
    std::vector<double> row(g.n_p);
    for (std::size_t i = 0; i < g.n_q; ++i) {
        for (std::size_t j = 0; j < g.n_p; ++j) row[j] = value(i, j);
        out += csv_row(row);
    }
    return out;
}

} // namespace

std::string grid_csv(const PhaseSpaceGrid& grid) {
    return rows_csv(grid.geometry(), [&](std::size_t i, std::size_t j) { return grid.at(i, j); });
}

std::string density_grid_csv(const DensityGrid& grid, Component component) {
    const std::size_t n = grid.geometry.n_p;
    return rows_csv(grid.geometry, [&](std::size_t i, std::size_t j) {
        const auto v = grid.values[i * n + j];
        switch (component) {
            case Component::real: return v.real();
            case Component::imag: return v.imag();
            case Component::abs: return std::abs(v);
        }
        return v.real();
    });
}

PhaseSpaceGrid parse_grid_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || line.empty() || line[0] != '#')
        throw ValidationError("grid csv: missing '#' geometry header");

    std::istringstream head(line.substr(1));
    std::string tok[6];
    for (auto& t : tok)
        if (!(head >> t)) throw ValidationError("grid csv: header needs six fields");
    GridGeometry g;
    g.q_min = parse_decimal(tok[0]);
    g.q_max = parse_decimal(tok[1]);
    g.p_min = parse_decimal(tok[2]);
    g.p_max = parse_decimal(tok[3]);
    g.n_q = static_cast<std::size_t>(parse_decimal(tok[4]));
    g.n_p = static_cast<std::size_t>(parse_decimal(tok[5]));
    g.check();

    std::vector<double> values;
    values.reserve(g.n_q * g.n_p);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::size_t start = 0;
        std::size_t count = 0;
        while (start <= line.size()) {
            const auto comma = line.find(',', start);
            const auto end = comma == std::string::npos ? line.size() : comma;
            values.push_back(parse_decimal(std::string_view(line).substr(start, end - start)));
            ++count;
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (count != g.n_p) throw ValidationError("grid csv: row length does not match n_p");
    }
    return PhaseSpaceGrid(g, std::move(values));
}

} // namespace lindosc
