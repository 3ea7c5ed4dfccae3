#include "gl/profile1d.hpp"

#include <algorithm>
#include <cmath>

#include "gl/energy.hpp"
#include "gl/errors.hpp"
#include "gl/sum.hpp"

namespace gl {

namespace {

constexpr double kSqrt2 = 1.4142135623730950488;
constexpr double kInvSqrt2 = 0.7071067811865475244;

// Trapezoidal discretization of the transition functional. Derivatives live on
// intervals; the zeroth-order terms are averaged over the interval endpoints.
double energy_1d_impl(const std::vector<double>& t, const std::vector<double>& rho,
                      const std::vector<double>& a, double kappa) {
    const std::size_t n = t.size() - 1;
    const double ik2 = 1.0 / (kappa * kappa);
    SumAccumulator acc;
    for (std::size_t j = 0; j < n; j++) {
        double dt = t[j + 1] - t[j];
        double dr = (rho[j + 1] - rho[j]) / dt;
        double da = (a[j + 1] - a[j]) / dt;
        double wbar = (1.0 - 0.5 * (rho[j] * rho[j] + rho[j + 1] * rho[j + 1])) * kInvSqrt2;
        double cov = 0.5 * (rho[j] * rho[j] * a[j] * a[j] + rho[j + 1] * rho[j + 1] * a[j + 1] * a[j + 1]);
        double r = da - wbar;
        acc.add(dt * (dr * dr + r * r + ik2 * cov));
    }
    return acc.sum();
}

void gradient_1d(const std::vector<double>& t, const std::vector<double>& rho,
                 const std::vector<double>& a, double kappa,
                 std::vector<double>& grho, std::vector<double>& ga) {
    const std::size_t m = t.size();
    const std::size_t n = m - 1;
    const double ik2 = 1.0 / (kappa * kappa);
    grho.assign(m, 0.0);
    ga.assign(m, 0.0);
    for (std::size_t j = 0; j < n; j++) {
        double dt = t[j + 1] - t[j];
        double dr = (rho[j + 1] - rho[j]) / dt;
        double da = (a[j + 1] - a[j]) / dt;
        double wbar = (1.0 - 0.5 * (rho[j] * rho[j] + rho[j + 1] * rho[j + 1])) * kInvSqrt2;
        double r = da - wbar;
        // |rho'|^2 piece
        grho[j] += -2.0 * dr;
        grho[j + 1] += 2.0 * dr;
        // (a' - (1-rho^2)/sqrt(2))^2 piece
        ga[j] += -2.0 * r;
        ga[j + 1] += 2.0 * r;
        grho[j] += 2.0 * r * rho[j] * kInvSqrt2 * dt;
        grho[j + 1] += 2.0 * r * rho[j + 1] * kInvSqrt2 * dt;
        // kappa^-2 rho^2 a^2 piece
        grho[j] += ik2 * dt * rho[j] * a[j] * a[j];
        grho[j + 1] += ik2 * dt * rho[j + 1] * a[j + 1] * a[j + 1];
        ga[j] += ik2 * dt * rho[j] * rho[j] * a[j];
        ga[j + 1] += ik2 * dt * rho[j + 1] * rho[j + 1] * a[j + 1];
    }
    // pinned nodes
    grho[0] = grho[n] = 0.0;
    ga[0] = 0.0;
}

double interp(const std::vector<double>& t, const std::vector<double>& y, double x) {
    if (x <= t.front()) return y.front();
    if (x >= t.back()) return y.back();
    // uniform spacing
    double dt = t[1] - t[0];
    std::size_t j = (std::size_t)((x - t.front()) / dt);
    if (j >= t.size() - 1) j = t.size() - 2;
    double w = (x - t[j]) / (t[j + 1] - t[j]);
    return (1.0 - w) * y[j] + w * y[j + 1];
}

}  // namespace

double sigma0_reference() {
    // composite Simpson on [-30, 0]; integrand |v'|^2 + (1-v^2)^2/2 along tanh
    auto f = [](double t) {
        double v = std::tanh(t * kInvSqrt2);
        double vdot = (1.0 - v * v) * kInvSqrt2;
        double w = (1.0 - v * v);
        return vdot * vdot + 0.5 * w * w;
    };
    const int n = 60000;  // even
    const double a = -30.0, b = 0.0;
    const double h = (b - a) / n;
    SumAccumulator acc;
    acc.add(f(a));
    acc.add(f(b));
    for (int i = 1; i < n; i++) acc.add((i % 2 ? 4.0 : 2.0) * f(a + i * h));
    return acc.sum() * h / 3.0;
}

Profile1D minimize_profile1d(double kappa, double T, int n) {
    if (!(T >= 20.0)) throw validation_error("profile1d: T < 20");
    if (n < 2000) throw validation_error("profile1d: n < 2000");
    if (!(kappa > 0.0) || !(kappa < kInvSqrt2))
        throw validation_error("profile1d: kappa outside (0, 1/sqrt(2))");

    Profile1D p;
    p.kappa = kappa;
    p.t.resize(n + 1);
    p.rho.resize(n + 1);
    p.a.resize(n + 1);
    double dt = 2.0 * T / n;
    for (int j = 0; j <= n; j++) {
        double t = -T + j * dt;
        p.t[j] = t;
        p.rho[j] = 0.5 * (1.0 - std::tanh(t * kInvSqrt2));
        p.a[j] = t > 0 ? t * kInvSqrt2 : 0.0;
    }
    p.rho[0] = 1.0;
    p.rho[n] = 0.0;
    p.a[0] = 0.0;

    auto project = [&](std::vector<double>& rho) {
        for (double& r : rho) r = std::clamp(r, 0.0, 1.0);
        rho[0] = 1.0;
        rho[n] = 0.0;
    };

    std::vector<double> grho, ga, grho_prev, ga_prev, rho_prev, a_prev;
    double e = energy_1d_impl(p.t, p.rho, p.a, kappa);
    gradient_1d(p.t, p.rho, p.a, kappa, grho, ga);
    double step = 1e-3;
    const int budget = 400000;
    const double gtol = 1e-7;
    bool converged = false;
    double e_mark = e;
    int mark_it = 0;
    for (int it = 0; it < budget; it++) {
        double gnorm2 = 0.0;
        for (int j = 0; j <= n; j++) {
            double gr = grho[j];
            // ignore the outward gradient at active bound constraints
            if ((p.rho[j] <= 0.0 && gr > 0) || (p.rho[j] >= 1.0 && gr < 0)) gr = 0.0;
            gnorm2 += gr * gr + ga[j] * ga[j];
        }
        if (std::sqrt(gnorm2) < gtol) {
            converged = true;
            break;
        }
        // stop on long energy stagnation as well; the functional is smooth and
        // further descent is below measurement tolerance
        if (it - mark_it >= 500) {
            if (e_mark - e < 1e-9 * std::max(1.0, std::fabs(e))) {
                converged = true;
                break;
            }
            e_mark = e;
            mark_it = it;
        }
        rho_prev = p.rho;
        a_prev = p.a;
        grho_prev = grho;
        ga_prev = ga;
        // backtracking on the energy value
        double trial = step;
        for (int bt = 0;; bt++) {
            for (int j = 0; j <= n; j++) {
                p.rho[j] = rho_prev[j] - trial * grho_prev[j];
                p.a[j] = a_prev[j] - trial * ga_prev[j];
            }
            project(p.rho);
            p.a[0] = 0.0;
            double e_trial = energy_1d_impl(p.t, p.rho, p.a, kappa);
            if (e_trial <= e - 1e-4 * trial * gnorm2 || bt > 60) {
                e = e_trial;
                break;
            }
            trial *= 0.5;
        }
        gradient_1d(p.t, p.rho, p.a, kappa, grho, ga);
        // Barzilai-Borwein step from the last accepted move
        double sy = 0.0, ss = 0.0;
        for (int j = 0; j <= n; j++) {
            double s1 = p.rho[j] - rho_prev[j], y1 = grho[j] - grho_prev[j];
            double s2 = p.a[j] - a_prev[j], y2 = ga[j] - ga_prev[j];
            sy += s1 * y1 + s2 * y2;
            ss += s1 * s1 + s2 * s2;
        }
        step = (sy > 0 && ss > 0) ? std::clamp(ss / sy, 1e-12, 1e3) : 1e-3;
    }
    if (!converged) {
        double gn = 0.0;
        for (int j = 0; j <= n; j++) gn += grho[j] * grho[j] + ga[j] * ga[j];
        throw numerical_error("profile1d: no convergence, gradient norm " +
                              std::to_string(std::sqrt(gn)));
    }
    p.energy_1d = e;
    return p;
}

double profile_energy(const Profile1D& p) {
    if (p.t.size() < 2 || p.t.size() != p.rho.size() || p.t.size() != p.a.size())
        throw validation_error("profile1d: malformed profile");
    return energy_1d_impl(p.t, p.rho, p.a, p.kappa);
}

double profile_rho_at(const Profile1D& p, double t) { return interp(p.t, p.rho, t); }
double profile_a_at(const Profile1D& p, double t) { return interp(p.t, p.a, t); }

double BuildingBlock::rho0(double x1) const {
    if (x1 <= -delta0) return 1.0;
    if (x1 >= cut) return 0.0;
    double r = profile_rho_at(profile, x1 / eps0);
    return std::clamp(r, 0.0, 1.0);
}

double BuildingBlock::a20(double x1) const {
    if (x1 <= -delta0) return 0.0;
    double off = eps0 * profile_a_at(profile, -delta0 / eps0);
    if (x1 <= delta0) return eps0 * profile_a_at(profile, x1 / eps0) - off;
    double v = eps0 * profile_a_at(profile, delta0 / eps0) - off;
    return v + (x1 - delta0) * kInvSqrt2;
}

double BuildingBlock::b0(double x1) const {
    if (x1 <= -delta0) return 0.0;
    if (x1 >= delta0) return kInvSqrt2;
    double dt = (profile.t[1] - profile.t[0]) * eps0;
    return (a20(std::min(x1 + 0.5 * dt, delta0)) - a20(std::max(x1 - 0.5 * dt, -delta0))) /
           (std::min(x1 + 0.5 * dt, delta0) - std::max(x1 - 0.5 * dt, -delta0));
}

BuildingBlock build_block(const Profile1D& p, double eps0, double delta0, int cell_n) {
    if (!(eps0 > 0) || !(eps0 < delta0) || !(delta0 < 0.5))
        throw validation_error("build_block: need 0 < eps0 < delta0 < 1/2");
    if (!(delta0 / eps0 <= p.t.back()))
        throw validation_error("build_block: profile does not cover the strip");
    if (cell_n < 8) throw validation_error("build_block: cell_n too small");

    BuildingBlock b;
    b.profile = p;
    b.eps0 = eps0;
    b.delta0 = delta0;

    // truncation point: first node with rho below tail_tol, in cell coordinates
    double cut = delta0;
    for (std::size_t j = 0; j < p.t.size(); j++) {
        if (p.rho[j] < b.tail_tol) {
            cut = std::min(delta0, p.t[j] * eps0);
            break;
        }
    }
    if (cut <= 0) throw validation_error("build_block: profile truncates before the interface");
    b.cut = cut;

    Params prm = make_params(eps0, p.kappa, 0.0);
    b.cfg = make_configuration(TorusGrid::rectangle(cell_n, 1.0, 1.0), prm);
    const TorusGrid& g = b.cfg.grid;
    for (int iy = 0; iy < g.sy(); iy++) {
        for (int ix = 0; ix < g.sx(); ix++) {
            int s = g.site(ix, iy);
            double x1 = g.x1(ix);
            b.cfg.u.v[s] = Complex(b.rho0(x1), 0.0);
            b.cfg.a.a1[s] = 0.0;
            b.cfg.a.a2[s] = b.a20(x1);
        }
    }
    EnergyBreakdown e = total_energy(b.cfg);
    b.sigma_cell = e.total;
    ScalarField B = discrete_curl(b.cfg.a, g);
    SumAccumulator flux;
    for (int iy = 0; iy < g.ny; iy++)
        for (int ix = 0; ix < g.nx; ix++) flux.add(B.v[g.site(ix, iy)] * g.h * g.h);
    b.flux0 = flux.sum();
    const double lo = 1.0 / (4.0 * kSqrt2), hi = 3.0 / (4.0 * kSqrt2);
    if (!(b.flux0 > lo) || !(b.flux0 <= hi))
        throw validation_error("block flux out of range");
    return b;
}

double lift_consistency(const Profile1D& p, int cell_n) {
    Params prm = make_params(1.0, p.kappa, 0.0);
    Configuration cfg = make_configuration(TorusGrid::rectangle(cell_n, 1.0, 1.0), prm);
    const TorusGrid& g = cfg.grid;
    for (int iy = 0; iy < g.sy(); iy++) {
        for (int ix = 0; ix < g.sx(); ix++) {
            int s = g.site(ix, iy);
            double x1 = g.x1(ix);
            cfg.u.v[s] = Complex(profile_rho_at(p, x1), 0.0);
            cfg.a.a2[s] = profile_a_at(p, x1);
        }
    }
    double e2d = total_energy(cfg).total;
    // matching one-dimensional sum on the same columns
    SumAccumulator acc;
    const double ik2 = 1.0 / (p.kappa * p.kappa);
    for (int ix = 0; ix < g.nx; ix++) {
        double r0 = profile_rho_at(p, g.x1(ix)), r1 = profile_rho_at(p, g.x1(ix + 1));
        double a0 = profile_a_at(p, g.x1(ix)), a1 = profile_a_at(p, g.x1(ix + 1));
        double dr = (r1 - r0) / g.h;
        double da = (a1 - a0) / g.h;
        double r = da - (1.0 - r0 * r0) * kInvSqrt2;
        acc.add(g.h * (dr * dr + ik2 * r0 * r0 * a0 * a0 + r * r));
    }
    double e1d = acc.sum();
    if (e1d == 0.0) return std::fabs(e2d);
    return std::fabs(e2d - e1d) / e1d;
}

}  // namespace gl
