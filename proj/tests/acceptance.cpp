// Release checklist: one self-contained check per line, selectable by number.
// Each check prints "criterion N: pass|FAIL" plus the measured numbers, and
// the process exits nonzero if any selected check fails.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "gl/calculus.hpp"
#include "gl/energy.hpp"
#include "gl/io.hpp"
#include "gl/optimize.hpp"
#include "gl/polygeom.hpp"
#include "gl/profile1d.hpp"
#include "gl/recovery.hpp"
#include "gl/sum.hpp"

using namespace gl;

namespace {

constexpr double kSqrt2 = 1.4142135623730950488;
constexpr double kInvSqrt2 = 0.7071067811865475244;
constexpr double kTwoPi = 6.2831853071795864769;
constexpr double kSigma0 = 2.0 * kSqrt2 / 3.0;

struct Outcome {
    bool pass = true;
    std::string detail;
};

void note(Outcome& o, bool ok, const std::string& what) {
    if (!ok) o.pass = false;
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += what + (ok ? " ok" : " FAILED");
}

const Profile1D& profile025() {
    static Profile1D p = minimize_profile1d(0.25, 25.0, 2500);
    return p;
}

const BuildingBlock& block025() {
    static BuildingBlock b = build_block(profile025(), 1.0 / 16.0, 0.25, 512);
    return b;
}

PolygonLoop rect_loop(double x0, double y0, double x1, double y1, bool ccw = true) {
    PolygonLoop l;
    l.x = {x0, x1, x1, x0};
    l.y = {y0, y0, y1, y1};
    if (!ccw) {
        std::reverse(l.x.begin(), l.x.end());
        std::reverse(l.y.begin(), l.y.end());
    }
    return l;
}

PolyhedralSet half_square() {
    return make_polyhedral({rect_loop(0.25, 0.25, 0.75, 0.75)});
}

// nearest flux-admissible epsilon whose quantum count the grid divides
Params snapped_params(double kappa, double b_ext, int n, double eps_target) {
    double m_t = b_ext / (kTwoPi * kappa * kappa * eps_target * eps_target);
    long long mult = std::max<long long>(1, std::llround(m_t / n));
    double eps = std::sqrt(b_ext / (kTwoPi * (double)(n * mult) * kappa * kappa));
    return make_params(eps, kappa, b_ext);
}

Configuration random_config(int n, double eps, double kappa, double b_ext, unsigned seed) {
    Configuration cfg = make_configuration(TorusGrid::torus(n), make_params(eps, kappa, b_ext));
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> amp(0.2, 1.0), ang(0.0, 6.28), lnk(-0.2, 0.2);
    for (int s = 0; s < cfg.grid.nsites(); s++) {
        cfg.u.v[s] = std::polar(amp(rng), ang(rng));
        cfg.a.a1[s] = lnk(rng);
        cfg.a.a2[s] = lnk(rng);
    }
    return cfg;
}

// Simpson quadrature along v(t) = tanh(t/sqrt(2)), independent of the library
double tanh_quadrature(int n) {
    double T = 30.0, dt = T / n, acc = 0.0;
    auto f = [](double t) {
        double v = std::tanh(t * kInvSqrt2);
        double dv = (1.0 - v * v) * kInvSqrt2;
        return dv * dv + 0.5 * (1.0 - v * v) * (1.0 - v * v);
    };
    for (int j = 0; j < n; j++) {
        double a = -T + j * dt, b = a + dt;
        acc += dt / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b));
    }
    return acc;
}

// ---------------------------------------------------------------- criteria --

Outcome crit1() {
    Outcome o;
    double s0 = sigma0_reference();
    note(o, std::fabs(s0 - kSigma0) <= 1e-6,
         "sigma0 " + format_full(s0) + " vs 2*sqrt(2)/3");
    double q1 = tanh_quadrature(30000), q2 = tanh_quadrature(60000);
    note(o, std::fabs(q1 - q2) <= 1e-8, "step halving moves it by " + format_full(q1 - q2));
    return o;
}

Outcome crit2() {
    Outcome o;
    Profile1D p = minimize_profile1d(0.01, 30.0, 6000);
    double rel = std::fabs(p.energy_1d - kSigma0) / kSigma0;
    note(o, rel <= 0.02,
         "sigma_1d(0.01) = " + format_full(p.energy_1d) + ", off sigma0 by " + format_full(rel));
    return o;
}

Outcome crit3() {
    Outcome o;
    Profile1D a = minimize_profile1d(0.70, 25.0, 2500);
    Profile1D b = minimize_profile1d(0.70, 25.0, 5000);
    note(o, std::fabs(a.energy_1d - b.energy_1d) <= 0.05 * b.energy_1d,
         "grid agreement " + format_full(a.energy_1d) + " vs " + format_full(b.energy_1d));
    note(o, b.energy_1d < 0.1 * kSigma0,
         "sigma_1d(0.70) = " + format_full(b.energy_1d) + " vs 0.1*sigma0 = " +
             format_full(0.1 * kSigma0));
    return o;
}

Outcome crit4() {
    Outcome o;
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> ang(-3.0, 3.0);
    double worst = 0.0;
    for (int trial = 0; trial < 20; trial++) {
        Configuration cfg = random_config(32, 0.3, 0.3, 0.1, 100 + trial);
        double e0 = total_energy(cfg).total;
        ScalarField phi;
        phi.v.resize(cfg.grid.nsites());
        for (double& p : phi.v) p = ang(rng);
        double e1 = total_energy(gauge_transform(cfg, phi)).total;
        worst = std::max(worst, std::fabs(e1 - e0) / e0);
    }
    note(o, worst <= 1e-12, "worst relative gauge drift " + format_full(worst));
    return o;
}

Outcome crit5() {
    Outcome o;
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 20; trial++) {
        Configuration cfg = random_config(24, 0.3, 0.25, 0.05, 500 + trial);
        ComplexField gu, du;
        LinkField ga, da;
        energy_gradient(cfg, gu, ga);
        int ns = cfg.grid.nsites();
        du.v.resize(ns);
        da.a1.resize(ns);
        da.a2.resize(ns);
        for (int s = 0; s < ns; s++) {
            du.v[s] = Complex(d(rng), d(rng));
            da.a1[s] = d(rng);
            da.a2[s] = d(rng);
        }
        double predicted = directional_derivative(gu, ga, du, da);
        double t = 1e-5;
        Configuration plus = cfg, minus = cfg;
        for (int s = 0; s < ns; s++) {
            plus.u.v[s] += t * du.v[s];
            plus.a.a1[s] += t * da.a1[s];
            plus.a.a2[s] += t * da.a2[s];
            minus.u.v[s] -= t * du.v[s];
            minus.a.a1[s] -= t * da.a1[s];
            minus.a.a2[s] -= t * da.a2[s];
        }
        double fd = (total_energy(plus).total - total_energy(minus).total) / (2.0 * t);
        worst = std::max(worst, std::fabs(predicted - fd) / std::fabs(fd));
    }
    note(o, worst <= 1e-6, "worst directional-derivative error " + format_full(worst));
    return o;
}

Configuration smooth_config(int n) {
    Configuration cfg = make_configuration(TorusGrid::torus(n), make_params(1.0, 0.25, 0.0));
    for (int iy = 0; iy < n; iy++) {
        for (int ix = 0; ix < n; ix++) {
            int s = cfg.grid.site(ix, iy);
            double x = cfg.grid.x1(ix), y = cfg.grid.x2(iy);
            double rho = 0.6 + 0.3 * std::sin(kTwoPi * x) * std::cos(kTwoPi * y);
            double th = 0.4 * std::sin(kTwoPi * (x + y));
            cfg.u.v[s] = std::polar(rho, th);
            cfg.a.a1[s] = 0.1 * std::sin(kTwoPi * y);
            cfg.a.a2[s] = 0.1 * std::cos(kTwoPi * x);
        }
    }
    return cfg;
}

// signed full-torus defect of the splitting identity; the current-curl term
// telescopes away over the torus
double integrated_identity_defect(const Configuration& cfg) {
    ComplexField d1 = covariant_diff(cfg, Axis::x1);
    ComplexField d2 = covariant_diff(cfg, Axis::x2);
    ComplexField d3 = bogomolny(d1, d2);
    ScalarField B = discrete_curl(cfg.a, cfg.grid);
    SumAccumulator acc;
    const TorusGrid& g = cfg.grid;
    for (int s = 0; s < g.nsites(); s++) {
        double rho2 = std::norm(cfg.u.v[s]);
        acc.add(g.h * g.h * (std::norm(d1.v[s]) + std::norm(d2.v[s]) - std::norm(d3.v[s]) -
                             cfg.params.alpha * rho2 * B.v[s]));
    }
    return acc.sum();
}

Outcome crit6() {
    Outcome o;
    double r1 = bogomolny_identity_residual(smooth_config(256));
    double r2 = bogomolny_identity_residual(smooth_config(512));
    double ratio = r1 / r2;
    note(o, ratio >= 1.5 && ratio <= 3.0, "L1 residual ratio 256->512 " + format_full(ratio));
    double i1 = integrated_identity_defect(smooth_config(256));
    double i2 = integrated_identity_defect(smooth_config(512));
    note(o, std::fabs(i1) <= 5.0 / 256.0 && std::fabs(i2) <= 5.0 / 512.0,
         "integrated defect " + format_full(i1) + " / " + format_full(i2));
    return o;
}

Outcome crit7() {
    Outcome o;
    std::mt19937_64 rng(31337);
    std::uniform_real_distribution<double> ur(0.0, 1.0), ub(-2.0, 2.0);
    double worst_margin = 1e300, psi_lo = 1e300, psi_hi = -1e300;
    for (int k = 0; k < 1000000; k++) {
        double rho = ur(rng), B = ub(rng);
        worst_margin = std::min(worst_margin, well_inequality_margin(rho, B));
        double psi = psi_density(rho);
        psi_lo = std::min(psi_lo, psi);
        psi_hi = std::max(psi_hi, psi);
    }
    note(o, worst_margin >= -1e-14, "worst margin " + format_full(worst_margin));
    note(o, psi_lo >= 0.0 && psi_hi <= 2.0,
         "psi range [" + format_full(psi_lo) + ", " + format_full(psi_hi) + "]");
    return o;
}

Outcome crit8() {
    Outcome o;
    PolyhedralSet E = half_square();
    double kappa = 0.25, b_ext = 0.25 * kappa / kSqrt2;
    const BuildingBlock& blk = block025();
    struct Pt {
        int n;
        double eps_target;
    };
    std::vector<Pt> pts = {{256, 1.0 / 512.0}, {512, 1.0 / 768.0}, {1024, 1.0 / 1536.0}};
    double corner_scale = 0.0;
    double prev_dev = 1e300;
    bool shrink = true;
    for (std::size_t j = 0; j < pts.size(); j++) {
        Params prm = snapped_params(kappa, b_ext, pts[j].n, pts[j].eps_target);
        RecoveryReport r = build_recovery(E, prm, blk, pts[j].n);
        char tag[64];
        std::snprintf(tag, sizeof tag, "eps=%.5f", prm.epsilon);
        note(o, r.flux_error <= 1e-8, std::string(tag) + " flux_error");
        note(o, r.max_loop_defect <= 1e-6, std::string(tag) + " loop defects");
        double c = r.corner_energy / prm.epsilon;
        if (j == 0) corner_scale = c;
        note(o, c <= 1.3 * corner_scale,
             std::string(tag) + " corner/eps " + format_full(c));
        double ratio = r.energy.total / r.target;
        note(o, ratio >= 0.85 && ratio <= 1.15,
             std::string(tag) + " energy/target " + format_full(ratio));
        double dev = std::fabs(ratio - 1.0);
        if (dev >= prev_dev) shrink = false;
        prev_dev = dev;
    }
    note(o, shrink, "deviation band shrinks along the sweep");
    return o;
}

Outcome crit9() {
    Outcome o;
    double kappa = 0.25;
    int n = 256;
    const BuildingBlock& blk = block025();

    PolyhedralSet frame = make_polyhedral(
        {rect_loop(0.2, 0.2, 0.8, 0.8), rect_loop(0.35, 0.35, 0.65, 0.65, false)});
    double b1 = measures(frame).area * kappa / kSqrt2;
    Params p1 = snapped_params(kappa, b1, n, 1.0 / 512.0);
    RecoveryReport r1 = build_recovery(frame, p1, blk, n);
    note(o, r1.max_loop_defect <= 1e-6, "frame loop defects");
    bool f1 = true;
    for (std::size_t c = 0; c < r1.component_flux.size(); c++)
        f1 = f1 && std::fabs(r1.component_flux[c] - r1.component_target[c]) <=
                       1e-9 * kTwoPi / p1.alpha;
    note(o, f1, "frame component fluxes");

    PolyhedralSet two = make_polyhedral(
        {rect_loop(0.05, 0.05, 0.35, 0.35), rect_loop(0.55, 0.55, 0.85, 0.85)});
    double b2 = measures(two).area * kappa / kSqrt2;
    Params p2 = snapped_params(kappa, b2, n, 1.0 / 512.0);
    RecoveryReport r2 = build_recovery(two, p2, blk, n);
    note(o, r2.max_loop_defect <= 1e-6, "pair loop defects");
    note(o, r2.component_flux.size() == 2, "pair has two components");
    bool f2 = true;
    for (std::size_t c = 0; c < r2.component_flux.size(); c++)
        f2 = f2 && std::fabs(r2.component_flux[c] - r2.component_target[c]) <=
                       1e-9 * kTwoPi / p2.alpha;
    note(o, f2, "pair component fluxes");
    return o;
}

Outcome crit10() {
    Outcome o;
    double sd = cell_sigma(0.25, 1.0 / 16.0, 0.25, CellVariant::dirichlet, 512);
    double sp = cell_sigma(0.25, 1.0 / 16.0, 0.25, CellVariant::periodic, 512);
    note(o, sp >= sd - 1e-9,
         "periodic " + format_full(sp) + " >= dirichlet " + format_full(sd));
    note(o, sd <= profile025().energy_1d * 1.02,
         "dirichlet below the line bound " + format_full(profile025().energy_1d));

    PolyhedralSet E = half_square();
    double b_ext = 0.25 * 0.25 / kSqrt2;
    Params prm = snapped_params(0.25, b_ext, 512, 1.0 / 126.0);
    RecoveryReport rec = build_recovery(E, prm, block025(), 512);
    MinimizeOptions opts;
    opts.budget = 20000;
    MinimizeResult r = minimize(rec.cfg, BoundarySpec{}, opts);
    note(o, r.energy.total <= rec.energy.total,
         "descent " + format_full(rec.energy.total) + " -> " + format_full(r.energy.total));
    return o;
}

Outcome crit11() {
    Outcome o;
    std::vector<ScalingPoint> pts = scaling_check(0.25, 1.0 / 16.0, 0.25, {1.0, 2.0, 3.0}, 128);
    double per1 = pts[0].energy, per2 = pts[1].energy / 2.0, per3 = pts[2].energy / 3.0;
    note(o, std::fabs(per2 / per1 - 1.0) <= 0.02,
         "energy(2)/2 vs energy(1): " + format_full(per2 / per1));
    note(o, std::fabs(per3 / per1 - 1.0) <= 0.02,
         "energy(3)/3 vs energy(1): " + format_full(per3 / per1));
    note(o, pts[2].energy >= 3.0 * pts[0].energy * 0.98, "superadditivity");
    note(o, pts[1].energy >= pts[0].energy && pts[2].energy >= pts[1].energy,
         "monotone in height");
    return o;
}

Outcome crit12() {
    Outcome o;
    std::vector<SweepPoint> rows = epsilon_sweep(
        SweepScenario::flat_interface_torus, 0.25, {1.0 / 40.0, 1.0 / 80.0, 1.0 / 160.0}, 256);
    for (std::size_t j = 1; j < rows.size(); j++) {
        double ratio = rows[j].well_l2 / rows[j - 1].well_l2;
        char tag[96];
        std::snprintf(tag, sizeof tag, "well ratio at eps=%.5f: %.4f", rows[j].epsilon, ratio);
        note(o, ratio >= 0.3 && ratio <= 0.7, tag);
    }
    return o;
}

std::string recovery_signature(const RecoveryReport& r) {
    std::string s = format_full(r.energy.total) + "|" + format_full(r.flux_error) + "|" +
                    format_full(r.max_loop_defect) + "|" + format_full(r.rho_l1_gap) + "|" +
                    format_full(r.square_energy) + "|" + format_full(r.corner_energy) + "|" +
                    format_full(r.deep_energy) + "|" + format_full(r.outside_energy);
    for (double z : r.zeta) s += "|" + format_full(z);
    return s;
}

Outcome crit13() {
    Outcome o;
    PolyhedralSet E = half_square();
    double b_ext = 0.25 * 0.25 / kSqrt2;
    Params prm = snapped_params(0.25, b_ext, 512, 1.0 / 160.0);
    RecoveryReport a = build_recovery(E, prm, block025(), 512);
    RecoveryReport b = build_recovery(E, prm, block025(), 512);
    note(o, recovery_signature(a) == recovery_signature(b), "assembly report bytes");
    note(o, a.cfg.u.v == b.cfg.u.v && a.cfg.a.a1 == b.cfg.a.a1 && a.cfg.a.a2 == b.cfg.a.a2,
         "assembled fields bitwise");

    MinimizeOptions opts;
    opts.budget = 300;
    MinimizeResult ra = minimize(a.cfg, BoundarySpec{}, opts);
    MinimizeResult rb = minimize(b.cfg, BoundarySpec{}, opts);
    note(o,
         ra.energy.total == rb.energy.total && ra.iterations == rb.iterations &&
             ra.final_grad_norm == rb.final_grad_norm,
         "descent report bytes");
    note(o, ra.cfg.u.v == rb.cfg.u.v && ra.cfg.a.a2 == rb.cfg.a.a2, "descended fields bitwise");
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    Outcome (*checks[])() = {crit1, crit2, crit3, crit4,  crit5,  crit6, crit7,
                             crit8, crit9, crit10, crit11, crit12, crit13};
    int from = 1, to = 13;
    if (argc > 1) {
        from = to = std::atoi(argv[1]);
        if (from < 1 || from > 13) {
            std::fprintf(stderr, "usage: %s [criterion 1..13]\n", argv[0]);
            return 2;
        }
    }
    bool all_pass = true;
    for (int k = from; k <= to; k++) {
        Outcome o = checks[k - 1]();
        std::printf("criterion %d: %s (%s)\n", k, o.pass ? "pass" : "FAIL", o.detail.c_str());
        std::fflush(stdout);
        all_pass = all_pass && o.pass;
    }
    return all_pass ? 0 : 1;
}
