#pragma once

#include "gl/fields.hpp"

namespace gl {

enum class Axis { x1, x2 };

// Link-variable covariant difference
//   D_mu u(x) = (exp(-i*alpha*h*A_mu(x)) u(x+h e_mu) - u(x)) / h.
// In rectangle mode the direction-1 difference is left at zero on the last
// site column (no link there).
ComplexField covariant_diff(const Configuration& cfg, Axis axis);

// (D2 u) - i (D1 u), sitewise.
ComplexField bogomolny(const ComplexField& d1, const ComplexField& d2);

// Per-plaquette curl (values indexed by the plaquette's lower-left site).
// In torus mode the mean over all plaquettes equals twist_c by telescoping.
ScalarField discrete_curl(const LinkField& a, const TorusGrid& grid);

// Supercurrent j_mu = Im(conj(u) D_mu u).
VectorField supercurrent(const Configuration& cfg);

// u' = u e^{i phi}, A'_mu(x) = A_mu(x) + (phi(x+h e_mu) - phi(x)) / (alpha h).
// This discrete update commutes with covariant_diff, so the energy is
// invariant up to roundoff.
Configuration gauge_transform(const Configuration& cfg, const ScalarField& phi);

}  // namespace gl
