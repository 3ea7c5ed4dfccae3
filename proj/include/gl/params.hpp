#pragma once

namespace gl {

// Physical and numerical constants of a run. alpha is the phase stiffness
// kappa^-1 * epsilon^-2 and is recomputed whenever Params are built, never
// stored independently of (epsilon, kappa).
struct Params {
    double epsilon = 1.0;
    double kappa = 0.25;
    double b_ext = 0.0;
    double alpha = 0.0;
};

// Validates 0 < kappa < 1/sqrt(2), 0 <= b_ext < kappa/sqrt(2), epsilon > 0
// and fills in alpha. Throws validation_error naming the violated inequality.
Params make_params(double epsilon, double kappa, double b_ext);

// Converts a physical sample of side L to the unit-torus model: epsilon = 1/(kappa*L).
Params nondimensionalize(double kappa, double sample_side_L, double b_ext);

// Nearest epsilon to the hint satisfying epsilon^-2 kappa^-2 b_ext = 2*pi*m
// with integer m >= 1, i.e. epsilon = sqrt(b_ext / (2*pi*m*kappa^2)).
struct SnappedEpsilon {
    double epsilon = 0.0;
    long long m = 0;
};
SnappedEpsilon admissible_epsilon(double kappa, double b_ext, double epsilon_hint);

}  // namespace gl
