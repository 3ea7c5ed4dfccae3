#pragma once

#include <vector>

#include "gl/fields.hpp"

namespace gl {

// Discrete transition profile on [-T, T]: nodes t[j], order parameter rho[j]
// in [0, 1] and scalar potential a[j], with rho(-T) = 1, a(-T) = 0, rho(T) = 0
// and a natural right boundary slope of 1/sqrt(2).
struct Profile1D {
    std::vector<double> t, rho, a;
    double kappa = 0.0;
    double energy_1d = 0.0;
};

// Surface tension of the zero-field scalar transition, by quadrature along
// v(t) = tanh(t/sqrt(2)); closed-form cross-check value 2*sqrt(2)/3.
double sigma0_reference();

// Minimizes the trapezoidal discretization of
//   int |rho'|^2 + kappa^-2 rho^2 a^2 + (a' - (1-rho^2)/sqrt(2))^2 dt
// with the pinned/natural boundary conditions above.
Profile1D minimize_profile1d(double kappa, double T, int n);

// Recomputes the discrete functional for an existing profile.
double profile_energy(const Profile1D& p);

// Linear interpolation of rho and a at arbitrary t (clamped to the end values).
double profile_rho_at(const Profile1D& p, double t);
double profile_a_at(const Profile1D& p, double t);

// Unit-cell building block: the x2-independent lift of a 1D profile at scale
// eps0, with tails truncated so the strip conditions hold on |x1| > delta0.
struct BuildingBlock {
    Configuration cfg;  // rectangle grid over the unit cell, a1 = 0
    Profile1D profile;  // the source profile (untruncated)
    double eps0 = 0.0;
    double delta0 = 0.0;
    double tail_tol = 1e-8;
    double cut = 0.0;        // x1 beyond which rho is truncated to 0
    double sigma_cell = 0.0; // cell energy at eps0
    double flux0 = 0.0;      // integral of B over the cell

    // Truncated column functions of x1 in [-1/2, 1/2]; constant in x2.
    double rho0(double x1) const;
    double a20(double x1) const;
    double b0(double x1) const;  // piecewise slope of a20
};

BuildingBlock build_block(const Profile1D& p, double eps0, double delta0, int cell_n);

// Relative gap between the 2D cell energy of the untruncated lift at eps = 1
// and the 1D energy restricted to (-1/2, 1/2).
double lift_consistency(const Profile1D& p, int cell_n);

}  // namespace gl
