// fpe.hpp - explicit finite-difference integrator for the Wigner-function Fokker-Planck
// equation, used as an independent check on the analytic Gaussian evolution
//
//   dW/dt = -div(v W) + D_qq W_qq + D_pp W_pp + 2 D_pq W_qp,
//   v = (p/m - (lambda - mu) q, -m omega^2 q - (lambda + mu) p).
//
// The divergence form contains the free-motion terms and both friction terms.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lindosc/model.hpp"
#include "lindosc/states.hpp"

namespace lindosc {

enum class AdvectionScheme {
    central,  // face value = average of the two neighbours (second order)
    upwind,   // face value from the upwind node (first order, more diffusive)
};

/// Time stepping of one run. The spatial lattice is the geometry of the initial grid;
/// grid edges are zero-inflow boundaries (mass may only leave).
struct FpeRunSpec {
    double dt{1e-3};
    double t_end{1.0};
    std::vector<double> snapshot_times;
    AdvectionScheme scheme{AdvectionScheme::central};
    double safety{0.5};
};

/// safety * min(dq^2/(2 D_qq), dp^2/(2 D_pp), dq/max|v_q|, dp/max|v_p|) on the geometry.
double stable_time_step(const GridGeometry& geom, const OscillatorConfig& cfg,
                        const DiffusionCoefficients& d, double safety = 0.5);

/// Lattice covering +-n_sigma standard deviations of the initial state and, when it
/// exists, of the steady state.
GridGeometry fpe_domain(const GaussianState& initial, const OscillatorConfig& cfg,
                        const DiffusionCoefficients& d, std::size_t n_q, std::size_t n_p,
                        double n_sigma = 6.0);

struct FpeSnapshot {
    double t{0.0};
    PhaseSpaceGrid grid;
};

struct FpeTelemetry {
    std::size_t steps{0};
    double dt_used{0.0};
    double dt_limit{0.0};
    double initial_mass{0.0};
    double final_mass{0.0};
    double outflow{0.0};         // mass carried out through the boundary by the drift
    double min_value{0.0};       // smallest W seen over the whole run
    double max_mass_drift{0.0};  // max |mass(t) - mass(0)|
};

struct FpeResult {
    PhaseSpaceGrid grid;
    std::vector<FpeSnapshot> snapshots;
    FpeTelemetry telemetry;
};

/// Forward-Euler integration up to run.t_end. The step is shortened to divide t_end evenly.
/// Throws ValidationError when dt exceeds the stability bound or W0 is not normalised
/// within 1e-3, and NumericError (with the step index) when a value becomes non-finite.
FpeResult evolve_wigner(const PhaseSpaceGrid& w0, const OscillatorConfig& cfg,
                        const DiffusionCoefficients& d, const FpeRunSpec& run);

struct GridMoments {
    double mass{0.0};
    GaussianState state;
};

/// Riemann-sum mass, means and central second moments (normalised by the mass).
GridMoments grid_moments(const PhaseSpaceGrid& w);

/// Continuous-norm distances between two grids of identical geometry.
double l2_distance(const PhaseSpaceGrid& a, const PhaseSpaceGrid& b);
double linf_distance(const PhaseSpaceGrid& a, const PhaseSpaceGrid& b);

std::string fpe_manifest_json(const OscillatorConfig& cfg, const DiffusionCoefficients& d,
                              const GridGeometry& geom, const FpeRunSpec& run,
                              const FpeTelemetry& tel, const std::vector<std::string>& files);

} // namespace lindosc
