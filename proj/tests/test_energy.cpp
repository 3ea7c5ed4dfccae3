#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "gl/energy.hpp"
#include "gl/sum.hpp"

using namespace gl;

namespace {

constexpr double kSqrt2 = 1.4142135623730950488;

Configuration random_config(int n, double eps, double kappa, double b_ext, unsigned seed) {
    Params p = make_params(eps, kappa, b_ext);
    Configuration cfg = make_configuration(TorusGrid::torus(n), p);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> amp(0.2, 1.0), ang(0.0, 6.28), lnk(-0.2, 0.2);
    for (int s = 0; s < cfg.grid.nsites(); s++) {
        cfg.u.v[s] = std::polar(amp(rng), ang(rng));
        cfg.a.a1[s] = lnk(rng);
        cfg.a.a2[s] = lnk(rng);
    }
    return cfg;
}

// Straightforward re-derivation of the energy with no shared code paths, used
// as an oracle for the collocated implementation.
double brute_force_energy(const Configuration& cfg) {
    const TorusGrid& g = cfg.grid;
    const Params& p = cfg.params;
    double total = 0.0;
    for (int iy = 0; iy < g.ny; iy++) {
        for (int ix = 0; ix < g.nx; ix++) {
            auto u = [&](int i, int j) { return cfg.u.v[g.site(i, j)]; };
            double a1 = cfg.a.a1[g.site(ix, iy)];
            double a2 = cfg.a.a2[g.site(ix, iy)] + cfg.a.twist_c * ix * g.h;
            double a2r = cfg.a.a2[g.site(ix + 1, iy)] + cfg.a.twist_c * (ix + 1) * g.h;
            double a1t = cfg.a.a1[g.site(ix, iy + 1)];
            Complex e1 = std::exp(Complex(0, -p.alpha * g.h * a1));
            Complex e2 = std::exp(Complex(0, -p.alpha * g.h * a2));
            Complex d1 = (e1 * u(ix + 1, iy) - u(ix, iy)) / g.h;
            Complex d2 = (e2 * u(ix, iy + 1) - u(ix, iy)) / g.h;
            Complex d3 = d2 - Complex(0, 1) * d1;
            double B = (a2r - a2 - a1t + a1) / g.h;
            double rho2 = std::abs(u(ix, iy)) * std::abs(u(ix, iy));
            double dens = p.epsilon * (1.0 - p.kappa * kSqrt2) * (std::abs(d1) * std::abs(d1) + std::abs(d2) * std::abs(d2)) +
                          p.epsilon * p.kappa * kSqrt2 * std::abs(d3) * std::abs(d3) +
                          (B - (1.0 - rho2) / kSqrt2) * (B - (1.0 - rho2) / kSqrt2) / p.epsilon;
            total += dens * g.h * g.h;
        }
    }
    return total;
}

}  // namespace

TEST_CASE("collocated energy matches an independent re-derivation") {
    Configuration cfg = random_config(8, 0.25, 0.3, 0.1, 99);
    EnergyBreakdown e = total_energy(cfg);
    CHECK(e.total == doctest::Approx(brute_force_energy(cfg)).epsilon(1e-12));
    CHECK(e.total == doctest::Approx(e.grad_sym + e.grad_bogo + e.well).epsilon(1e-15));
    CHECK(e.region_area == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("region mask restricts the energy additively") {
    Configuration cfg = random_config(10, 0.25, 0.3, 0.1, 7);
    std::vector<std::uint8_t> left(cfg.grid.nsites(), 0), right(cfg.grid.nsites(), 0);
    for (int iy = 0; iy < 10; iy++)
        for (int ix = 0; ix < 10; ix++)
            (ix < 5 ? left : right)[cfg.grid.site(ix, iy)] = 1;
    double full = total_energy(cfg).total;
    double parts = total_energy(cfg, &left).total + total_energy(cfg, &right).total;
    CHECK(parts == doctest::Approx(full).epsilon(1e-13));
    CHECK(total_energy(cfg, &left).region_area == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("energy is gauge invariant to near machine precision") {
    Configuration cfg = random_config(12, 0.2, 0.25, 0.08, 4242);
    double e0 = total_energy(cfg).total;
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ang(-3.0, 3.0);
    for (int trial = 0; trial < 5; trial++) {
        ScalarField phi;
        phi.v.resize(cfg.grid.nsites());
        for (double& p : phi.v) p = ang(rng);
        double e1 = total_energy(gauge_transform(cfg, phi)).total;
        CHECK(std::fabs(e1 - e0) / e0 < 1e-12);
    }
}

TEST_CASE("analytic gradient matches central finite differences") {
    Configuration cfg = random_config(6, 0.3, 0.25, 0.05, 314);
    ComplexField gu;
    LinkField ga;
    energy_gradient(cfg, gu, ga);
    std::mt19937_64 rng(2718);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    ComplexField du;
    LinkField da;
    du.v.resize(cfg.grid.nsites());
    da.a1.resize(cfg.grid.nsites());
    da.a2.resize(cfg.grid.nsites());
    for (int trial = 0; trial < 6; trial++) {
        for (int s = 0; s < cfg.grid.nsites(); s++) {
            du.v[s] = Complex(d(rng), d(rng));
            da.a1[s] = d(rng);
            da.a2[s] = d(rng);
        }
        double predicted = directional_derivative(gu, ga, du, da);
        double t = 1e-6;
        Configuration plus = cfg, minus = cfg;
        for (int s = 0; s < cfg.grid.nsites(); s++) {
            plus.u.v[s] += t * du.v[s];
            plus.a.a1[s] += t * da.a1[s];
            plus.a.a2[s] += t * da.a2[s];
            minus.u.v[s] -= t * du.v[s];
            minus.a.a1[s] -= t * da.a1[s];
            minus.a.a2[s] -= t * da.a2[s];
        }
        double fd = (total_energy(plus).total - total_energy(minus).total) / (2.0 * t);
        CHECK(std::fabs(predicted - fd) / std::max(1.0, std::fabs(fd)) < 1e-6);
    }
}

TEST_CASE("pointwise splitting identity holds up to discretization error that halves with h") {
    // smooth test fields on the torus
    auto build = [](int n) {
        Params p = make_params(1.0, 0.25, 0.0);
        Configuration cfg = make_configuration(TorusGrid::torus(n), p);
        cfg.a.twist_c = 0.0;
        const double two_pi = 6.283185307179586477;
        for (int iy = 0; iy < n; iy++) {
            for (int ix = 0; ix < n; ix++) {
                int s = cfg.grid.site(ix, iy);
                double x = cfg.grid.x1(ix), y = cfg.grid.x2(iy);
                double rho = 0.6 + 0.3 * std::sin(two_pi * x) * std::cos(two_pi * y);
                double th = 0.4 * std::sin(two_pi * (x + y));
                cfg.u.v[s] = std::polar(rho, th);
                cfg.a.a1[s] = 0.1 * std::sin(two_pi * y);
                cfg.a.a2[s] = 0.1 * std::cos(two_pi * x);
            }
        }
        return cfg;
    };
    double r1 = bogomolny_identity_residual(build(32));
    double r2 = bogomolny_identity_residual(build(64));
    CHECK(r1 / r2 > 1.5);
    CHECK(r1 / r2 < 3.0);
}

TEST_CASE("double well density and its companion") {
    CHECK(well_density(0.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(well_density(1.0) == doctest::Approx(0.0).epsilon(1e-15));
    double r = 0.3;  // 2 rho^2 < 1 branch
    CHECK(well_density(r) == doctest::Approx(r * r * (1 - r * r) * (1 - r * r)).epsilon(1e-14));
    r = 0.9;  // plateau branch
    CHECK(well_density(r) == doctest::Approx(0.5 * (1 - r * r) * (1 - r * r)).epsilon(1e-14));
    CHECK(psi_density(0.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(psi_density(1.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(psi_density(0.5) == doctest::Approx(2.0 * 0.75).epsilon(1e-14));
    CHECK(psi_density(0.9) == doctest::Approx((1.0 / 0.81) * 0.19).epsilon(1e-14));
}

TEST_CASE("pointwise field-well inequality has nonnegative margin") {
    std::mt19937_64 rng(555);
    std::uniform_real_distribution<double> rho(0.0, 1.0), B(0.0, 2.0);
    double worst = 0.0;
    for (int i = 0; i < 200000; i++) {
        double m = well_inequality_margin(rho(rng), B(rng));
        worst = std::min(worst, m);
    }
    CHECK(worst >= -1e-14);
}

TEST_CASE("modica mortola value on an explicit profile") {
    TorusGrid g = TorusGrid::torus(64);
    ScalarField rho;
    rho.v.resize(g.nsites());
    for (int iy = 0; iy < g.ny; iy++)
        for (int ix = 0; ix < g.nx; ix++)
            rho.v[g.site(ix, iy)] = 0.5 + 0.5 * std::sin(6.283185307179586 * g.x1(ix));
    double eps = 0.1;
    double got = modica_mortola(rho, eps, g);
    // independent quadrature of the same discrete sum
    double expect = 0.0;
    for (int iy = 0; iy < g.ny; iy++) {
        for (int ix = 0; ix < g.nx; ix++) {
            double r0 = rho.v[g.site(ix, iy)];
            double dx = (rho.v[g.site(ix + 1, iy)] - r0) / g.h;
            double r2 = r0 * r0;
            double w = 0.5 * std::min(2.0 * r2, 1.0) * (1 - r2) * (1 - r2);
            expect += g.h * g.h * (eps * dx * dx + w / eps);
        }
    }
    CHECK(got == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("weak field expulsion bound holds for the indicator") {
    Configuration cfg = random_config(16, 0.2, 0.25, 0.1, 808);
    ScalarField phi;
    phi.v.resize(cfg.grid.nsites());
    for (int iy = 0; iy < 16; iy++)
        for (int ix = 0; ix < 16; ix++)
            phi.v[cfg.grid.site(ix, iy)] = std::sin(6.283185307179586 * cfg.grid.x1(ix));
    MeissnerParts m = meissner_indicator(cfg, phi);
    CHECK(m.lhs >= 0.0);
    CHECK(m.energy_part > 0.0);
    CHECK(m.gradient_part > 0.0);
    CHECK(m.boundary_part == 0.0);
}
