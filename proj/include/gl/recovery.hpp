#pragma once

#include <vector>

#include "gl/energy.hpp"
#include "gl/polygeom.hpp"
#include "gl/profile1d.hpp"

namespace gl {

// Assembled candidate configuration near the sharp-interface limit, with the
// certificates gathered along the way.
struct RecoveryReport {
    Configuration cfg;
    EnergyBreakdown energy;
    double target = 0.0;           // sigma_cell * perimeter
    double flux_error = 0.0;       // |total flux - b_ext/kappa|
    double max_loop_defect = 0.0;  // distance of loop sums to 2*pi*Z, over 2*pi
    std::vector<double> zeta;      // per-component tube offsets
    std::vector<double> component_flux;    // measured per material component
    std::vector<double> component_target;  // quantized per-component goals
    double rho_l1_gap = 0.0;       // integral of |rho_n - indicator(complement)|
    // per-region audit
    double square_energy = 0.0;
    double corner_energy = 0.0;
    double deep_energy = 0.0;
    double outside_energy = 0.0;
    double per_square_mean = 0.0;  // square_energy / number of squares
    int squares = 0;
    double max_seam_jump = 0.0;      // largest rho_n jump across neighbor sites
    double max_offsquare_cov = 0.0;  // covariant-phase density off squares, rho>0
};

struct RecoveryScalars {
    ScalarField rho, B;
};

// Scalar parts of the construction: the density profile transported along the
// signed distance and the target magnetic field (curl of the sampled square
// potentials inside squares, 1/sqrt(2) deep inside, 0 elsewhere).
RecoveryScalars build_scalar_fields(const PolyhedralSet& E, const Params& params,
                                    const BuildingBlock& block, const TorusGrid& g,
                                    const std::vector<double>& zetas);

// Per-component tube offsets meeting the global flux constraint (and the
// per-component quantization targets when E has several components).
std::vector<double> solve_flux_offsets(const PolyhedralSet& E, const Params& params,
                                       const BuildingBlock& block, const TorusGrid& g);

// Periodic potential with a1 supported on a single seam column and a2 given by
// exact cumulative row sums, so that discrete_curl reproduces B.
LinkField global_potential(const ScalarField& B, const Params& params, const TorusGrid& g);

struct AuxFields {
    LinkField a0;
    ScalarField theta0;
};

// Square-supported sampled potentials (extended through the deep side of each
// square so plaquette curls telescope) and the auxiliary phase.
AuxFields aux_fields(const PolyhedralSet& E, const BuildingBlock& block,
                     const std::vector<double>& zetas, const Params& params,
                     const TorusGrid& g);

struct PhaseReport {
    ScalarField theta;
    double max_defect = 0.0;  // over 2*pi
    long long loops = 0;
    int components = 0;
};

// Spanning-tree integration of d(theta0) + alpha*h*(A - A0) over each
// connected component of {rho > 0}, with a closing-defect audit on every
// non-tree edge.
PhaseReport integrate_phase(const Configuration& cfg, const LinkField& a0,
                            const ScalarField& theta0, const ScalarField& rho,
                            double defect_tol);

RecoveryReport build_recovery(const PolyhedralSet& E, const Params& params,
                              const BuildingBlock& block, int n);

}  // namespace gl
