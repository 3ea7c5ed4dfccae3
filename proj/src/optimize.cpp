#include "gl/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>

#include "gl/calculus.hpp"
#include "gl/errors.hpp"
#include "gl/recovery.hpp"
#include "gl/sum.hpp"

namespace gl {

namespace {

constexpr double kSqrt2 = 1.4142135623730950488;
constexpr double kTwoPi = 6.2831853071795864769;

struct FrozenMask {
    std::vector<std::uint8_t> u, a1, a2;
};

// Marks the constrained entries and overwrites them with their prescribed
// values, so the descent below can simply skip them.
FrozenMask apply_constraints(Configuration& cfg, const BoundarySpec& bc) {
    const TorusGrid& g = cfg.grid;
    FrozenMask fm;
    fm.u.assign(g.nsites(), 0);
    fm.a1.assign(g.nsites(), 0);
    fm.a2.assign(g.nsites(), 0);
    if (bc.kind == BoundaryKind::torus_flux) {
        if (g.kind != DomainKind::torus_with_flux)
            throw validation_error("minimize: torus_flux needs a torus grid");
        return fm;
    }
    if (g.kind != DomainKind::rectangle)
        throw validation_error("minimize: cell conditions need a rectangle grid");
    double delta = bc.delta;
    if (!(delta > 0) || !(delta < g.width / 2))
        throw validation_error("minimize: delta outside (0, width/2)");

    // gauge a1 = 0 throughout the cell
    for (int i = 0; i < g.nsites(); i++) {
        fm.a1[i] = 1;
        cfg.a.a1[i] = 0.0;
    }
    int first_right = -1;
    for (int ix = 0; ix < g.sx(); ix++) {
        double x1 = g.x1(ix);
        bool left = x1 <= -delta + 1e-12;
        bool right = x1 >= delta - 1e-12;
        if (right && first_right < 0) first_right = ix;
        if (!left && !right) continue;
        for (int iy = 0; iy < g.sy(); iy++) {
            int s = g.site(ix, iy);
            fm.u[s] = 1;
            cfg.u.v[s] = left ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
            fm.a2[s] = 1;
            if (left) cfg.a.a2[s] = 0.0;
        }
    }
    // anchor the right strip at its first column so every fully frozen
    // plaquette there carries B = 1/sqrt(2) exactly
    if (first_right >= 0) {
        for (int iy = 0; iy < g.sy(); iy++) {
            double base = cfg.a.a2[g.site(first_right, iy)];
            for (int ix = first_right + 1; ix < g.sx(); ix++)
                cfg.a.a2[g.site(ix, iy)] = base + (ix - first_right) * g.h / kSqrt2;
        }
    }
    if (bc.kind == BoundaryKind::periodic_cell) {
        // pinned real trace on the identified rows x2 = -1/2 and +1/2
        for (int ix = 0; ix < g.sx(); ix++) {
            int s = g.site(ix, 0);
            double tr = bc.trace.empty() ? cfg.u.v[s].real() : bc.trace[(std::size_t)ix];
            fm.u[s] = 1;
            cfg.u.v[s] = Complex(tr, 0.0);
        }
    }
    return fm;
}

void masked_gradient(const Configuration& cfg, const FrozenMask& fm, ComplexField& gu,
                     LinkField& ga) {
    energy_gradient(cfg, gu, ga);
    int n = cfg.grid.nsites();
    for (int i = 0; i < n; i++) {
        if (fm.u[i]) gu.v[i] = Complex(0.0, 0.0);
        if (fm.a1[i]) ga.a1[i] = 0.0;
        if (fm.a2[i]) ga.a2[i] = 0.0;
    }
    if (cfg.grid.kind == DomainKind::rectangle) {
        // the a1 column at ix = nx has no link attached to it
        for (int iy = 0; iy < cfg.grid.sy(); iy++)
            ga.a1[cfg.grid.site(cfg.grid.sx() - 1, iy)] = 0.0;
    }
}

double grad_dot(const ComplexField& gu1, const LinkField& ga1, const ComplexField& gu2,
                const LinkField& ga2) {
    SumAccumulator acc;
    std::size_t n = gu1.v.size();
    for (std::size_t i = 0; i < n; i++) {
        acc.add(gu1.v[i].real() * gu2.v[i].real() + gu1.v[i].imag() * gu2.v[i].imag());
        acc.add(ga1.a1[i] * ga2.a1[i] + ga1.a2[i] * ga2.a2[i]);
    }
    return acc.sum();
}

void take_step(Configuration& cfg, const Configuration& base, const ComplexField& gu,
               const LinkField& ga, double t) {
    std::size_t n = cfg.u.v.size();
    for (std::size_t i = 0; i < n; i++) {
        cfg.u.v[i] = base.u.v[i] - t * gu.v[i];
        cfg.a.a1[i] = base.a.a1[i] - t * ga.a1[i];
        cfg.a.a2[i] = base.a.a2[i] - t * ga.a2[i];
    }
}

// cached line profiles so the cell and scaling helpers do not redo the
// one-dimensional solve on every call
const Profile1D& profile_for(double kappa) {
    static std::map<long long, Profile1D> cache;
    long long key = std::llround(kappa * 1e12);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, minimize_profile1d(kappa, 25.0, 2500)).first;
    return it->second;
}

}  // namespace

MinimizeResult minimize(const Configuration& cfg0, const BoundarySpec& bc,
                        const MinimizeOptions& opts) {
    MinimizeResult res;
    res.cfg = cfg0;
    Configuration& cfg = res.cfg;
    FrozenMask fm = apply_constraints(cfg, bc);

    double tol = opts.tol_per_site * cfg.grid.nsites();
    double e = total_energy(cfg).total;

    ComplexField gu, gu_prev;
    LinkField ga, ga_prev;
    masked_gradient(cfg, fm, gu, ga);
    double gnorm2 = grad_dot(gu, ga, gu, ga);

    Configuration base = cfg;
    double t = 1.0;
    int iter = 0;
    bool stalled = false;
    while (iter < opts.budget && std::sqrt(gnorm2) > tol) {
        double best_e = e, best_t = 0.0;
        bool accepted = false;
        double tt = t;
        for (int bt = 0; bt < 60; bt++) {
            take_step(cfg, base, gu, ga, tt);
            double et = total_energy(cfg).total;
            if (et <= e - 1e-4 * tt * gnorm2) {
                accepted = true;
                e = et;
                t = tt;
                break;
            }
            if (et < best_e) {
                best_e = et;
                best_t = tt;
            }
            tt *= 0.5;
        }
        if (!accepted) {
            if (best_t > 0.0) {
                // plain decrease without the Armijo margin; still monotone
                take_step(cfg, base, gu, ga, best_t);
                e = best_e;
                t = best_t;
            } else {
                cfg = base;
                stalled = true;
                break;
            }
        }
        iter++;
        gu_prev = gu;
        ga_prev = ga;
        double gnorm2_prev = gnorm2;
        masked_gradient(cfg, fm, gu, ga);
        gnorm2 = grad_dot(gu, ga, gu, ga);
        // Barzilai-Borwein step from s = -t*g_prev, y = g - g_prev
        double cross = grad_dot(gu_prev, ga_prev, gu, ga);
        double denom = gnorm2_prev - cross;
        t = denom > 0.0 ? std::clamp(t * gnorm2_prev / denom, 1e-12, 1e8) : 2.0 * t;
        base = cfg;
    }

    res.energy = total_energy(cfg);
    res.iterations = iter;
    res.final_grad_norm = std::sqrt(gnorm2);
    res.converged = !stalled && std::sqrt(gnorm2) <= tol;
    return res;
}

double cell_sigma(double kappa, double eps0, double delta, CellVariant variant, int n) {
    const Profile1D& p = profile_for(kappa);
    BuildingBlock blk = build_block(p, eps0, delta, n);
    BoundarySpec bc;
    bc.kind = variant == CellVariant::dirichlet ? BoundaryKind::dirichlet_cell
                                                : BoundaryKind::periodic_cell;
    bc.delta = delta;
    MinimizeResult r = minimize(blk.cfg, bc);
    return r.energy.total;
}

Configuration flat_interface_torus(double kappa, double epsilon, const BuildingBlock& block,
                                   int n) {
    double s = epsilon / block.eps0;
    if (!(s > 0) || s > 0.5)
        throw validation_error("flat_interface_torus: epsilon too large for the band");

    // normal band |x1| >= 1/4 wrapping the seam; the superconducting slab in
    // between is simply connected, so one winding integer serves everywhere
    TorusGrid g = TorusGrid::torus(n);
    double twist = 0.5 / kSqrt2;  // band area times 1/sqrt(2)
    Params prm = make_params(epsilon, kappa, kappa * twist);
    double alpha = prm.alpha;

    auto side_flux = [&](double zeta, bool left_side) {
        SumAccumulator acc;
        for (int ix = 0; ix < n; ix++) {
            double x1 = g.x1(ix);
            if ((x1 < 0.0) != left_side) continue;
            double sd = std::fabs(x1) - 0.25;
            acc.add(block.b0((sd - zeta) / s));
        }
        return g.h * acc.sum();
    };

    // quantize the left interface flux so the slab winding is consistent, and
    // give the rest of the field to the right interface
    long long m1 = std::max<long long>(1, std::llround(alpha * side_flux(0.0, true) / kTwoPi));
    double target_l = kTwoPi * m1 / alpha;
    double target_r = twist - target_l;
    if (!(target_r > 0))
        throw validation_error("flat_interface_torus: no flux left for the right interface");

    auto bisect = [&](double target, bool left_side) {
        double w = std::min(4.0 * s, 0.12);
        double lo = -w, hi = w;  // flux decreases as zeta grows
        if (!(side_flux(lo, left_side) >= target && side_flux(hi, left_side) <= target))
            throw numerical_error("flat_interface_torus: interface offset not bracketed");
        for (int k = 0; k < 200; k++) {
            double mid = 0.5 * (lo + hi);
            if (side_flux(mid, left_side) >= target) lo = mid;
            else hi = mid;
        }
        return 0.5 * (lo + hi);
    };
    double zeta_l = bisect(target_l, true);
    double zeta_r = bisect(target_r, false);

    std::vector<double> bcol(n), rho(n);
    for (int ix = 0; ix < n; ix++) {
        double x1 = g.x1(ix);
        double zeta = x1 < 0.0 ? zeta_l : zeta_r;
        double y = (std::fabs(x1) - 0.25 - zeta) / s;
        bcol[ix] = block.b0(y);
        rho[ix] = block.rho0(y);
    }
    // push the bisection remainder onto the dead columns of each side, twice,
    // so both side fluxes match their targets to roundoff
    for (int pass = 0; pass < 2; pass++) {
        for (int side = 0; side < 2; side++) {
            bool left_side = side == 0;
            SumAccumulator acc;
            std::vector<int> deep;
            for (int ix = 0; ix < n; ix++) {
                double x1 = g.x1(ix);
                if ((x1 < 0.0) != left_side) continue;
                acc.add(bcol[ix]);
                double zeta = left_side ? zeta_l : zeta_r;
                if ((std::fabs(x1) - 0.25 - zeta) / s >= 0.5) deep.push_back(ix);
            }
            double resid = (left_side ? target_l : target_r) - g.h * acc.sum();
            if (deep.empty()) throw numerical_error("flat_interface_torus: no dead zone");
            for (int ix : deep) bcol[ix] += resid / (g.h * (double)deep.size());
        }
    }

    ScalarField B;
    B.v.resize((std::size_t)n * n);
    for (int iy = 0; iy < n; iy++)
        for (int ix = 0; ix < n; ix++) B.v[g.site(ix, iy)] = bcol[ix];

    Configuration cfg = make_configuration(g, prm);
    cfg.a = global_potential(B, prm, g);
    for (int iy = 0; iy < n; iy++) {
        double th = kTwoPi * m1 * iy * g.h;
        Complex ph(std::cos(th), std::sin(th));
        for (int ix = 0; ix < n; ix++) cfg.u.v[g.site(ix, iy)] = rho[ix] * ph;
    }
    return cfg;
}

std::vector<SweepPoint> epsilon_sweep(SweepScenario scenario, double kappa,
                                      const std::vector<double>& eps_list, int n,
                                      const PolyhedralSet* E, const MinimizeOptions& opts) {
    if (scenario == SweepScenario::recovery_set && E == nullptr)
        throw validation_error("epsilon_sweep: recovery scenario needs a set");
    const Profile1D& p = profile_for(kappa);
    BuildingBlock blk = build_block(p, 1.0 / 16.0, 0.25, 512);

    std::vector<SweepPoint> out;
    for (double eps : eps_list) {
        SweepPoint pt;
        pt.epsilon = eps;
        Configuration init;
        double perimeter = 0.0;
        if (scenario == SweepScenario::flat_interface_torus) {
            init = flat_interface_torus(kappa, eps, blk, n);
            perimeter = 2.0;
        } else {
            // per-epsilon flux quantum count, rounded to a multiple of n
            double alpha = 1.0 / (kappa * eps * eps);
            double twist_nat = measures(*E).area / kSqrt2;
            long long mult = std::max<long long>(
                1, std::llround(alpha * twist_nat / (kTwoPi * (double)n)));
            double b_ext = kappa * kTwoPi * (double)n * (double)mult / alpha;
            Params prm = make_params(eps, kappa, b_ext);
            init = build_recovery(*E, prm, blk, n).cfg;
            perimeter = E->perimeter;
        }
        MinimizeResult r = minimize(init, BoundarySpec{}, opts);
        pt.b_ext = init.params.b_ext;
        pt.energy = r.energy.total;
        pt.energy_per_length = r.energy.total / perimeter;
        pt.well_l2 = eps * r.energy.well;
        pt.iterations = r.iterations;
        pt.converged = r.converged;

        // L1 distance of the relaxed density to the sharp interface limit
        const TorusGrid& g = r.cfg.grid;
        SumAccumulator l1;
        for (int iy = 0; iy < n; iy++) {
            for (int ix = 0; ix < n; ix++) {
                double limit;
                if (scenario == SweepScenario::flat_interface_torus)
                    limit = std::fabs(g.x1(ix)) >= 0.25 ? 0.0 : 1.0;
                else
                    limit = contains(*E, g.x1(ix) + 0.5, g.x2(iy) + 0.5) ? 0.0 : 1.0;
                l1.add(std::fabs(std::abs(r.cfg.u.v[g.site(ix, iy)]) - limit));
            }
        }
        pt.rho_l1 = g.h * g.h * l1.sum();
        out.push_back(pt);
    }
    return out;
}

std::vector<ScalingPoint> scaling_check(double kappa, double eps0, double delta,
                                        const std::vector<double>& heights, int n,
                                        const MinimizeOptions& opts) {
    const Profile1D& p = profile_for(kappa);
    BuildingBlock unit = build_block(p, eps0, delta, n);

    std::vector<ScalingPoint> out;
    for (double b : heights) {
        long long ny = std::llround(n * b);
        if (std::fabs(n * b - (double)ny) > 1e-9 || ny < 1)
            throw validation_error("scaling_check: height does not fit the grid");
        TorusGrid g = TorusGrid::rectangle(n, 1.0, b);
        Configuration cfg = make_configuration(g, make_params(eps0, kappa, 0.0));
        for (int iy = 0; iy < g.sy(); iy++) {
            for (int ix = 0; ix < g.sx(); ix++) {
                int s = g.site(ix, iy);
                cfg.u.v[s] = Complex(unit.rho0(g.x1(ix)), 0.0);
                cfg.a.a1[s] = 0.0;
                cfg.a.a2[s] = unit.a20(g.x1(ix));
            }
        }
        BoundarySpec bc;
        bc.kind = BoundaryKind::dirichlet_cell;
        bc.delta = delta;
        MinimizeResult r = minimize(cfg, bc, opts);
        ScalingPoint pt;
        pt.height = b;
        pt.energy = r.energy.total;
        pt.iterations = r.iterations;
        pt.converged = r.converged;
        out.push_back(pt);
    }
    return out;
}

}  // namespace gl
