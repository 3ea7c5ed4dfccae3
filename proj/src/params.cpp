#include "gl/params.hpp"

#include <cmath>

#include "gl/errors.hpp"

namespace gl {

namespace {
constexpr double kInvSqrt2 = 0.7071067811865475244;
constexpr double kTwoPi = 6.283185307179586477;
}  // namespace

Params make_params(double epsilon, double kappa, double b_ext) {
    if (!(epsilon > 0)) throw validation_error("epsilon <= 0");
    if (!(kappa > 0)) throw validation_error("kappa <= 0");
    if (!(kappa < kInvSqrt2)) throw validation_error("kappa >= 1/sqrt(2)");
    if (!(b_ext >= 0)) throw validation_error("b_ext < 0");
    if (!(b_ext < kappa * kInvSqrt2)) throw validation_error("b_ext >= kappa/sqrt(2)");
    Params p;
    p.epsilon = epsilon;
    p.kappa = kappa;
    p.b_ext = b_ext;
    p.alpha = 1.0 / (kappa * epsilon * epsilon);
    return p;
}

Params nondimensionalize(double kappa, double sample_side_L, double b_ext) {
    if (!(sample_side_L > 0)) throw validation_error("sample side L <= 0");
    return make_params(1.0 / (kappa * sample_side_L), kappa, b_ext);
}

SnappedEpsilon admissible_epsilon(double kappa, double b_ext, double epsilon_hint) {
    make_params(epsilon_hint > 0 ? epsilon_hint : 1.0, kappa, b_ext);
    if (!(b_ext > 0)) throw validation_error("no quantization constraint: b_ext = 0");
    if (!(epsilon_hint > 0)) throw validation_error("epsilon hint <= 0");
    // epsilon(m) = sqrt(b_ext / (2 pi m kappa^2)); pick the m whose epsilon is
    // nearest the hint.
    double m_real = b_ext / (kTwoPi * kappa * kappa * epsilon_hint * epsilon_hint);
    long long lo = (long long)std::floor(m_real);
    if (lo < 1) lo = 1;
    SnappedEpsilon best;
    for (long long m = lo; m <= lo + 1; m++) {
        double eps = std::sqrt(b_ext / (kTwoPi * (double)m * kappa * kappa));
        if (best.m == 0 || std::fabs(eps - epsilon_hint) < std::fabs(best.epsilon - epsilon_hint)) {
            best.epsilon = eps;
            best.m = m;
        }
    }
    return best;
}

}  // namespace gl
