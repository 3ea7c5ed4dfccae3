#pragma once

#include <vector>

#include "gl/energy.hpp"
#include "gl/polygeom.hpp"
#include "gl/profile1d.hpp"

namespace gl {

enum class BoundaryKind {
    torus_flux,      // everything free; net flux fixed by the background twist
    dirichlet_cell,  // strip conditions frozen: u=1, A=0 left; u=0, B=1/sqrt(2) right; a1=0
    periodic_cell,   // dirichlet_cell plus the pinned real trace row at x2 = -1/2
};

struct BoundarySpec {
    BoundaryKind kind = BoundaryKind::torus_flux;
    double delta = 0.25;
    // trace values per column for periodic_cell; defaults to the initial row
    std::vector<double> trace;
};

struct MinimizeOptions {
    double tol_per_site = 1e-8;  // gradient norm target is tol_per_site * nsites
    int budget = 50000;
};

struct MinimizeResult {
    Configuration cfg;
    EnergyBreakdown energy;
    int iterations = 0;
    double final_grad_norm = 0.0;
    bool converged = false;
};

// Barzilai-Borwein descent with Armijo backtracking; frozen entries are never
// touched and accepted steps never increase the energy.
MinimizeResult minimize(const Configuration& cfg0, const BoundarySpec& bc,
                        const MinimizeOptions& opts = {});

enum class CellVariant { dirichlet, periodic };

// Minimal cell energy at eps = eps0 under the chosen strip conditions,
// initialized from the one-dimensional lift block.
double cell_sigma(double kappa, double eps0, double delta, CellVariant variant, int n);

// A vertical normal band of width 1/2 centered on the torus, assembled from
// the block profile with quantized flux and a phase winding that jumps in the
// dead zone; ready for descent under torus_flux.
Configuration flat_interface_torus(double kappa, double epsilon, const BuildingBlock& block,
                                   int n);

enum class SweepScenario { flat_interface_torus, recovery_set };

struct SweepPoint {
    double epsilon = 0.0;
    double b_ext = 0.0;
    double energy = 0.0;
    double energy_per_length = 0.0;
    double well_l2 = 0.0;  // integral of (B - (1-rho^2)/sqrt(2))^2
    double rho_l1 = 0.0;   // L1 distance of rho to the sharp limit
    int iterations = 0;
    bool converged = false;
};

// Build each scenario at the listed epsilons, descend, and tabulate the
// indicators. E is required for the recovery_set scenario.
std::vector<SweepPoint> epsilon_sweep(SweepScenario scenario, double kappa,
                                      const std::vector<double>& eps_list, int n,
                                      const PolyhedralSet* E = nullptr,
                                      const MinimizeOptions& opts = {});

struct ScalingPoint {
    double height = 0.0;
    double energy = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Dirichlet cell minimization on rectangles of height b for each listed b.
std::vector<ScalingPoint> scaling_check(double kappa, double eps0, double delta,
                                        const std::vector<double>& heights, int n,
                                        const MinimizeOptions& opts = {});

}  // namespace gl
