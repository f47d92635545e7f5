// states.hpp - coordinate-representation density matrix and Wigner function of a
// Gaussian state, plus grid rendering for phase-space data

#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "lindosc/model.hpp"

namespace lindosc {

/// alpha = 1/(2 s_qq), gamma = sigma/(2 hbar^2 s_qq), beta = s_pq/(hbar s_qq).
/// alpha sets the diagonal width of rho, gamma its off-diagonal decay, beta the phase tilt.
struct AlphaBetaGamma {
    double alpha{0.0};
    double beta{0.0};
    double gamma{0.0};
};

AlphaBetaGamma alpha_beta_gamma(const GaussianState& s, double hbar = 1.0);
/// Inverse of alpha_beta_gamma for given means.
GaussianState state_from_alpha_beta_gamma(const AlphaBetaGamma& abg, double mean_q, double mean_p,
                                          double hbar = 1.0);

/// <q|rho|q'> for the Gaussian state.
std::complex<double> density_matrix(const GaussianState& s, double q, double qp,
                                    double hbar = 1.0);

/// Same matrix element in centre/difference variables Sigma = (q+q')/2, Delta = q-q'.
std::complex<double> density_sigma_delta(const GaussianState& s, double sigma, double delta,
                                         double hbar = 1.0);

/// Gaussian Wigner function written with the inverse covariance.
double wigner(const GaussianState& s, double q, double p);

/// The same Wigner function in the sheared (alpha, beta, gamma) form.
double wigner_sheared(const GaussianState& s, double q, double p, double hbar = 1.0);

/// Thermal steady state in closed form (no propagation involved).
double density_stationary(const OscillatorConfig& cfg, double q, double qp);
double wigner_stationary(const OscillatorConfig& cfg, double q, double p);

// Quadrature checks (composite Simpson over +-8 standard deviations).

/// Integral of rho(q, q) over q.
double density_trace(const GaussianState& s, double hbar = 1.0);
/// Integral of W(q, p) over p at fixed q.
double wigner_marginal_q(const GaussianState& s, double q);
/// (1/(2 pi hbar)) * integral of rho(q, Delta) exp(-i p Delta / hbar) over Delta.
std::complex<double> wigner_from_density(const GaussianState& s, double q, double p,
                                         double hbar = 1.0);

struct GridGeometry {
    double q_min{-1.0};
    double q_max{1.0};
    double p_min{-1.0};
    double p_max{1.0};
    std::size_t n_q{3};
    std::size_t n_p{3};

    /// Lattice nodes include both end points.
    double dq() const { return (q_max - q_min) / static_cast<double>(n_q - 1); }
    double dp() const { return (p_max - p_min) / static_cast<double>(n_p - 1); }
    double q(std::size_t i) const { return q_min + static_cast<double>(i) * dq(); }
    double p(std::size_t j) const { return p_min + static_cast<double>(j) * dp(); }
    double cell_area() const { return dq() * dp(); }
    void check() const;
};

/// Real values on a (q, p) lattice, row-major with q as the slow axis.
class PhaseSpaceGrid {
public:
    explicit PhaseSpaceGrid(const GridGeometry& geom);
    PhaseSpaceGrid(const GridGeometry& geom, std::vector<double> values);

    const GridGeometry& geometry() const { return geom_; }
    double& at(std::size_t i, std::size_t j) { return values_[i * geom_.n_p + j]; }
    double at(std::size_t i, std::size_t j) const { return values_[i * geom_.n_p + j]; }
    std::vector<double>& values() { return values_; }
    const std::vector<double>& values() const { return values_; }

    /// Riemann sum of the values times the cell area.
    double integral() const;
    double max_value() const;
    double min_value() const;

private:
    GridGeometry geom_;
    std::vector<double> values_;
};

/// Smallest box holding +-n_sigma standard deviations of every state given.
GridGeometry covering_geometry(const std::vector<GaussianState>& states, double n_sigma,
                               std::size_t n_q, std::size_t n_p);

PhaseSpaceGrid render_grid(const GaussianState& s, const GridGeometry& geom);

/// rho(q, q') on a square lattice; the `p` axis of the geometry holds q'.
struct DensityGrid {
    GridGeometry geometry;
    std::vector<std::complex<double>> values;
};

DensityGrid density_grid(const GaussianState& s, double q_min, double q_max, std::size_t n,
                         double hbar = 1.0);

enum class Component { real, imag, abs };

/// First line `# q_min q_max p_min p_max n_q n_p`, then one comma-separated row per q value.
std::string grid_csv(const PhaseSpaceGrid& grid);
std::string density_grid_csv(const DensityGrid& grid, Component component);
PhaseSpaceGrid parse_grid_csv(std::string_view text);

} // namespace lindosc
