#pragma once

#include <cstdint>
#include <vector>

#include "gl/calculus.hpp"
#include "gl/fields.hpp"

namespace gl {

struct EnergyBreakdown {
    double grad_sym = 0.0;   // eps*(1 - kappa*sqrt(2)) |grad_A u|^2
    double grad_bogo = 0.0;  // eps*kappa*sqrt(2) |D3_A u|^2
    double well = 0.0;       // (1/eps) (B - (1-rho^2)/sqrt(2))^2
    double total = 0.0;
    double region_area = 0.0;
};

// Discrete energy over the region (a per-plaquette mask indexed by the
// lower-left site; null = whole domain). All terms are collocated at the
// plaquette's lower-left site; sums are deterministic pairwise reductions.
EnergyBreakdown total_energy(const Configuration& cfg,
                             const std::vector<std::uint8_t>* region = nullptr);

// Exact gradient of total_energy. grad_u holds 2*dE/d(conj u) per site, so the
// directional derivative along (v, b) is sum Re(conj(grad_u) v) + sum grad_a.b.
// The background twist is a fixed parameter, not a degree of freedom.
void energy_gradient(const Configuration& cfg, ComplexField& grad_u, LinkField& grad_a);

// Directional derivative of total_energy at cfg along (du, da).
double directional_derivative(const ComplexField& grad_u, const LinkField& grad_a,
                              const ComplexField& du, const LinkField& da);

// L1 norm of the pointwise defect of
//   |grad_A u|^2 = |D3_A u|^2 + alpha rho^2 B + curl j,
// which is O(h) for smooth fields.
double bogomolny_identity_residual(const Configuration& cfg);

// Double-well density W(rho) = 1/2 min{2 rho^2, 1} (1 - rho^2)^2 and its
// companion psi(rho) = min{2, 1/rho^2} (1 - rho^2) in [0, 2].
double well_density(double rho);
double psi_density(double rho);

// Modica-Mortola functional int eps |grad rho|^2 + W(rho)/eps over the region.
double modica_mortola(const ScalarField& rho, double eps, const TorusGrid& grid,
                      const std::vector<std::uint8_t>* region = nullptr);

// RHS - LHS of the pointwise Young inequality
//   W(rho) <= (B - (1-rho^2)/sqrt(2))^2 + sqrt(2) min{2 rho^2,1} B (1-rho^2),
// nonnegative for rho in [0,1] and any real B.
double well_inequality_margin(double rho, double B);

// Weak Meissner diagnostic: |int rho^2 B phi| and the three ingredients of the
// upper bound (E*||phi||_inf, eps^(1/2) E^(1/2) ||grad phi||_2, boundary term;
// the boundary term is zero on the torus).
struct MeissnerParts {
    double lhs = 0.0;
    double energy_part = 0.0;
    double gradient_part = 0.0;
    double boundary_part = 0.0;
};
MeissnerParts meissner_indicator(const Configuration& cfg, const ScalarField& phi);

}  // namespace gl
