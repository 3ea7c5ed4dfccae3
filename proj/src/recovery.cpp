#include "gl/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

#include "gl/calculus.hpp"
#include "gl/errors.hpp"
#include "gl/sum.hpp"

namespace gl {

namespace {

constexpr double kInvSqrt2 = 0.7071067811865475244;
constexpr double kTwoPi = 6.2831853071795864769;

double wrap01(double x) {
    double y = x - std::floor(x);
    return y < 1.0 ? y : 0.0;
}

// Per-site geometry shared by every zeta evaluation: the signed distance, the
// component of the nearest edge, and the square slot the site projects into
// along the edge tangent (fixed; only the normal coordinate moves with zeta).
struct SiteGeom {
    std::vector<double> sd;
    std::vector<int> comp;
    std::vector<int> cedge;    // candidate edge, -1 if no tangential slot
    std::vector<int> csquare;  // candidate square along that edge
    std::vector<double> cy1;   // signed normal offset to the candidate, in units of s
    std::vector<double> cy2;   // tangential coordinate in units of s
};

double seg_dist(double px, double py, const Point& a, const Point& b) {
    double vx = b.x - a.x, vy = b.y - a.y;
    double wx = px - a.x, wy = py - a.y;
    double len2 = vx * vx + vy * vy;
    double t = len2 > 0 ? std::clamp((wx * vx + wy * vy) / len2, 0.0, 1.0) : 0.0;
    return std::hypot(wx - t * vx, wy - t * vy);
}

SiteGeom site_geometry(const PolyhedralSet& E, const EdgeDecomposition& dec,
                       const TorusGrid& g) {
    SiteGeom sg;
    const int n = g.nx;
    sg.sd.resize((std::size_t)n * n);
    sg.comp.resize((std::size_t)n * n);
    sg.cedge.assign((std::size_t)n * n, -1);
    sg.csquare.assign((std::size_t)n * n, -1);
    sg.cy1.assign((std::size_t)n * n, 0.0);
    sg.cy2.assign((std::size_t)n * n, 0.0);
    const double s = dec.s;
    for (int iy = 0; iy < n; iy++) {
        for (int ix = 0; ix < n; ix++) {
            int idx = g.site(ix, iy);
            double x = wrap01(ix * g.h), y = wrap01(iy * g.h);
            double best = 1e300;
            int comp = 0;
            for (const PolyEdge& e : E.edges) {
                for (int ox = -1; ox <= 1; ox++) {
                    for (int oy = -1; oy <= 1; oy++) {
                        double d = seg_dist(x + ox, y + oy, e.a, e.b);
                        if (d < best) {
                            best = d;
                            comp = e.component;
                        }
                    }
                }
            }
            sg.sd[idx] = contains(E, x, y) ? best : -best;
            sg.comp[idx] = comp;
            // tangential slot: the square whose tangent window holds the site,
            // preferring the smallest normal offset when several edges match
            double bestn = 1e300;
            for (const EdgeSquares& es : dec.per_edge) {
                const PolyEdge& e = E.edges[es.edge];
                for (std::size_t j = 0; j < es.centers.size(); j++) {
                    double dx = x - es.centers[j].x, dy = y - es.centers[j].y;
                    dx -= std::round(dx);
                    dy -= std::round(dy);
                    double u2 = dx * e.tau.x + dy * e.tau.y;
                    if (std::fabs(u2) > 0.5 * s) continue;
                    double u1 = dx * e.nu.x + dy * e.nu.y;
                    if (std::fabs(u1) < bestn) {
                        bestn = std::fabs(u1);
                        sg.cedge[idx] = es.edge;
                        sg.csquare[idx] = (int)j;
                        sg.cy1[idx] = u1 / s;
                        sg.cy2[idx] = u2 / s;
                    }
                }
            }
        }
    }
    return sg;
}

// normal coordinate of a site in units of s, for a given component offset
inline double yhat(const SiteGeom& sg, const std::vector<double>& zetas, int idx,
                   double s) {
    return (sg.sd[idx] - zetas[sg.comp[idx]]) / s;
}

bool square_member(const SiteGeom& sg, const std::vector<double>& zetas, int idx,
                   double s) {
    // the site must actually lie inside the candidate square; the tangential
    // window alone also matches far-away slots of other edges
    return sg.cedge[idx] >= 0 && std::fabs(sg.cy1[idx]) <= 0.5;
}

// Sampled square potentials: A0 = s * a20(yhat) * nu_perp on links whose base
// site lies in a square; zero elsewhere. For rectilinear edges exactly one
// component is nonzero, and plaquette curls telescope to first differences of
// a20, which is what the target field B reuses verbatim.
AuxFields sample_aux(const PolyhedralSet& E, const BuildingBlock& block,
                     const SiteGeom& sg, const std::vector<double>& zetas,
                     const TorusGrid& g, double s) {
    AuxFields aux;
    std::size_t sites = (std::size_t)g.nx * g.ny;
    aux.a0.a1.assign(sites, 0.0);
    aux.a0.a2.assign(sites, 0.0);
    aux.a0.twist_c = 0.0;
    aux.theta0.v.assign(sites, 0.0);
    for (std::size_t idx = 0; idx < sites; idx++) {
        if (!square_member(sg, zetas, (int)idx, s)) continue;
        const PolyEdge& e = E.edges[sg.cedge[idx]];
        double v = s * block.a20(yhat(sg, zetas, (int)idx, s));
        aux.a0.a1[idx] = v * (-e.nu.y);
        aux.a0.a2[idx] = v * e.nu.x;
    }
    return aux;
}

// Target field: curl of the sampled potentials on square plaquettes, 1/sqrt(2)
// deep inside, 0 on corner patches and outside. A plaquette counts as square
// only when all the links its curl reads are sampled, so the assembled value
// telescopes exactly; the one-plaquette ring this leaves at the deep rim takes
// the deep value, which the linear branch of a20 matches up to rounding.
ScalarField assemble_b(const PolyhedralSet& E, const BuildingBlock& block,
                       const SiteGeom& sg, const std::vector<double>& zetas,
                       const TorusGrid& g, double s, const AuxFields& aux) {
    const int n = g.nx;
    ScalarField B;
    B.v.assign((std::size_t)n * n, 0.0);
    for (int iy = 0; iy < n; iy++) {
        for (int ix = 0; ix < n; ix++) {
            int idx = g.site(ix, iy);
            int ir = g.site(ix + 1 == n ? 0 : ix + 1, iy);
            int it = g.site(ix, iy + 1 == n ? 0 : iy + 1);
            double y1 = yhat(sg, zetas, idx, s);
            if (square_member(sg, zetas, idx, s)) {
                // curl of the sampled potentials; when the neighbor link is
                // outside the square, its continuous extension is used (zero
                // on the outer rim, the linear branch on the deep rim)
                const PolyEdge& e = E.edges[sg.cedge[idx]];
                if (e.nu.y == 0.0) {  // vertical edge, potential on a2
                    double vr = square_member(sg, zetas, ir, s)
                                    ? aux.a0.a2[ir]
                                    : s * block.a20(yhat(sg, zetas, ir, s)) * e.nu.x;
                    B.v[idx] = (vr - aux.a0.a2[idx]) / g.h;
                } else {  // horizontal edge, potential on a1
                    double vt = square_member(sg, zetas, it, s)
                                    ? aux.a0.a1[it]
                                    : s * block.a20(yhat(sg, zetas, it, s)) * (-e.nu.y);
                    B.v[idx] = -(vt - aux.a0.a1[idx]) / g.h;
                }
                continue;
            }
            if (y1 >= 0.5) {
                B.v[idx] = kInvSqrt2;
            }  // else corner or outside: 0
        }
    }
    return B;
}

std::vector<double> component_flux(const ScalarField& B, const SiteGeom& sg,
                                   const TorusGrid& g, int components) {
    std::vector<SumAccumulator> acc(components);
    for (std::size_t idx = 0; idx < B.v.size(); idx++)
        acc[sg.comp[idx]].add(B.v[idx] * g.h * g.h);
    std::vector<double> out(components);
    for (int c = 0; c < components; c++) out[c] = acc[c].sum();
    return out;
}

std::vector<double> component_areas(const PolyhedralSet& E) {
    std::vector<double> a(E.components, 0.0);
    for (std::size_t i = 0; i < E.loops.size(); i++)
        a[E.loop_component[i]] += E.loop_area[i];
    return a;
}

// seam-column accumulation mismatch of the would-be periodic a1 correction
double seam_mismatch(const ScalarField& B, const TorusGrid& g, double twist_c) {
    const int n = g.nx;
    double c = 0.0;
    for (int iy = 0; iy < n; iy++) {
        double rowh = 0.0;
        for (int ix = 0; ix < n; ix++) rowh += g.h * B.v[g.site(ix, iy)];
        c += twist_c - rowh;
    }
    return c;
}

}  // namespace

RecoveryScalars build_scalar_fields(const PolyhedralSet& E, const Params& params,
                                    const BuildingBlock& block, const TorusGrid& g,
                                    const std::vector<double>& zetas) {
    EdgeDecomposition dec = edge_squares(E, params.epsilon, zetas, block.eps0);
    SiteGeom sg = site_geometry(E, dec, g);
    const double s = dec.s;
    RecoveryScalars out;
    out.rho.v.assign((std::size_t)g.nx * g.ny, 0.0);
    for (std::size_t idx = 0; idx < out.rho.v.size(); idx++)
        out.rho.v[idx] = block.rho0(yhat(sg, zetas, (int)idx, s));
    AuxFields aux = sample_aux(E, block, sg, zetas, g, s);
    out.B = assemble_b(E, block, sg, zetas, g, s, aux);
    (void)params;
    return out;
}

std::vector<double> solve_flux_offsets(const PolyhedralSet& E, const Params& params,
                                       const BuildingBlock& block, const TorusGrid& g) {
    const double s = params.epsilon / block.eps0;
    const double twist_c = params.b_ext / params.kappa;
    std::vector<double> zetas(E.components, 0.0);
    EdgeDecomposition dec = edge_squares(E, params.epsilon, zetas, block.eps0);
    SiteGeom sg = site_geometry(E, dec, g);

    // per-component targets: floor-quantized for all but the last component,
    // which absorbs the remainder of the global constraint
    std::vector<double> target(E.components);
    if (E.components == 1) {
        target[0] = twist_c;
    } else {
        std::vector<double> areas = component_areas(E);
        double acc = 0.0;
        for (int c = 0; c + 1 < E.components; c++) {
            double phi = kTwoPi / params.alpha *
                         std::floor(params.alpha * areas[c] * kInvSqrt2 / kTwoPi);
            target[c] = phi;
            acc += phi;
        }
        target[E.components - 1] = twist_c - acc;
    }

    auto flux_of = [&](int c, double z) {
        std::vector<double> zz = zetas;
        zz[c] = z;
        AuxFields aux = sample_aux(E, block, sg, zz, g, s);
        ScalarField B = assemble_b(E, block, sg, zz, g, s, aux);
        return component_flux(B, sg, g, E.components)[c];
    };

    for (int c = 0; c < E.components; c++) {
        double lo = -0.5 * s, hi = 0.5 * s;
        double flo = flux_of(c, lo), fhi = flux_of(c, hi);
        // flux decreases as the tube moves inward
        if (!(flo >= target[c] && fhi <= target[c]))
            throw validation_error(
                "solve_flux_offsets: target flux not bracketed, reduce epsilon");
        for (int it = 0; it < 200 && hi - lo > 1e-15 * s; it++) {
            double mid = 0.5 * (lo + hi);
            double f = flux_of(c, mid);
            if (f >= target[c])
                lo = mid;
            else
                hi = mid;
            if (std::fabs(f - target[c]) < 1e-13) break;
        }
        zetas[c] = 0.5 * (lo + hi);
    }
    return zetas;
}

LinkField global_potential(const ScalarField& B, const Params& params,
                           const TorusGrid& g) {
    const int n = g.nx;
    const double twist_c = params.b_ext / params.kappa;
    LinkField a;
    a.a1.assign((std::size_t)n * n, 0.0);
    a.a2.assign((std::size_t)n * n, 0.0);
    a.twist_c = twist_c;
    // a2: cumulative row sums minus the background, so the effective value is
    // the plain prefix integral of B from the seam
    for (int iy = 0; iy < n; iy++) {
        double S = 0.0;
        for (int ix = 0; ix < n; ix++) {
            a.a2[g.site(ix, iy)] = S - twist_c * ix * g.h;
            S += g.h * B.v[g.site(ix, iy)];
        }
        // row flux mismatch against the twist goes into the seam a1 column
        // via the recurrence below
    }
    // a1 on the last column closes each row: c(iy+1)-c(iy) = twist - rowsum
    double c = 0.0;
    for (int iy = 0; iy < n; iy++) {
        a.a1[g.site(n - 1, iy)] = c;
        double rowh = 0.0;
        for (int ix = 0; ix < n; ix++) rowh += g.h * B.v[g.site(ix, iy)];
        c += twist_c - rowh;
    }
    return a;
}

AuxFields aux_fields(const PolyhedralSet& E, const BuildingBlock& block,
                     const std::vector<double>& zetas, const Params& params,
                     const TorusGrid& g) {
    EdgeDecomposition dec = edge_squares(E, params.epsilon, zetas, block.eps0);
    SiteGeom sg = site_geometry(E, dec, g);
    return sample_aux(E, block, sg, zetas, g, dec.s);
}

PhaseReport integrate_phase(const Configuration& cfg, const LinkField& a0,
                            const ScalarField& theta0, const ScalarField& rho,
                            double defect_tol) {
    const TorusGrid& g = cfg.grid;
    const int n = g.nx;
    const double ah = cfg.params.alpha * g.h;
    PhaseReport rep;
    rep.theta.v.assign((std::size_t)n * n, 0.0);
    std::vector<signed char> state((std::size_t)n * n, 0);  // 0 out, 1 seen

    // phase increment along the +x / +y link based at (ix, iy)
    auto wx = [&](int ix, int iy) {
        int idx = g.site(ix, iy);
        return ah * (cfg.a.a1[idx] - a0.a1[idx]);
    };
    auto wy = [&](int ix, int iy) {
        int idx = g.site(ix, iy);
        return ah * (cfg.eff_a2(ix, iy) - a0.a2[idx]);
    };

    std::vector<int> order;
    order.reserve((std::size_t)n * n);
    for (int root = 0; root < n * n; root++) {
        if (state[root] || !(rho.v[root] > 0.0)) continue;
        rep.components++;
        state[root] = 1;
        rep.theta.v[root] = theta0.v[root];
        std::queue<int> q;
        q.push(root);
        while (!q.empty()) {
            int idx = q.front();
            q.pop();
            int ix = idx % n, iy = idx / n;
            const int nbr[4][3] = {
                {g.site(ix + 1 == n ? 0 : ix + 1, iy), 0, +1},
                {g.site(ix == 0 ? n - 1 : ix - 1, iy), 0, -1},
                {g.site(ix, iy + 1 == n ? 0 : iy + 1), 1, +1},
                {g.site(ix, iy == 0 ? n - 1 : iy - 1), 1, -1},
            };
            for (const int* nb : nbr) {
                int jdx = nb[0];
                if (state[jdx] || !(rho.v[jdx] > 0.0)) continue;
                double w;
                if (nb[1] == 0)
                    w = nb[2] > 0 ? wx(ix, iy) : -wx(ix == 0 ? n - 1 : ix - 1, iy);
                else
                    w = nb[2] > 0 ? wy(ix, iy) : -wy(ix, iy == 0 ? n - 1 : iy - 1);
                double dth0 = theta0.v[jdx] - theta0.v[idx];
                rep.theta.v[jdx] = rep.theta.v[idx] + dth0 + w;
                state[jdx] = 1;
                q.push(jdx);
            }
        }
    }
    // closing defect on every link between reached sites
    double worst = 0.0;
    for (int iy = 0; iy < n; iy++) {
        for (int ix = 0; ix < n; ix++) {
            int idx = g.site(ix, iy);
            if (!state[idx]) continue;
            int ir = g.site(ix + 1 == n ? 0 : ix + 1, iy);
            int it = g.site(ix, iy + 1 == n ? 0 : iy + 1);
            if (state[ir]) {
                double d = rep.theta.v[ir] - rep.theta.v[idx] -
                           (theta0.v[ir] - theta0.v[idx]) - wx(ix, iy);
                worst = std::max(worst, std::fabs(std::remainder(d, kTwoPi)));
                rep.loops++;
            }
            if (state[it]) {
                double d = rep.theta.v[it] - rep.theta.v[idx] -
                           (theta0.v[it] - theta0.v[idx]) - wy(ix, iy);
                worst = std::max(worst, std::fabs(std::remainder(d, kTwoPi)));
                rep.loops++;
            }
        }
    }
    rep.max_defect = worst / kTwoPi;
    if (defect_tol > 0 && rep.max_defect > defect_tol)
        throw numerical_error("quantization violated: worst loop defect " +
                              std::to_string(rep.max_defect) + " of 2*pi");
    return rep;
}

RecoveryReport build_recovery(const PolyhedralSet& E, const Params& params,
                              const BuildingBlock& block, int n) {
    const double twist_c = params.b_ext / params.kappa;
    // quantization prechecks: integer flux quanta, divisible by the grid size
    // so the far-field seam holonomies close row by row
    double mfloat = params.alpha * twist_c / kTwoPi;
    long long m = (long long)std::llround(mfloat);
    if (std::fabs(mfloat - (double)m) > 1e-6)
        throw validation_error("build_recovery: alpha*b_ext/kappa is not 2*pi-integral");
    if (E.rectilinear && m % n != 0)
        throw validation_error(
            "build_recovery: grid size must divide the flux quantum count");

    TorusGrid g = TorusGrid::torus(n);
    std::vector<double> zetas = solve_flux_offsets(E, params, block, g);
    EdgeDecomposition dec = edge_squares(E, params.epsilon, zetas, block.eps0);
    SiteGeom sg = site_geometry(E, dec, g);
    const double s = dec.s;

    AuxFields aux = sample_aux(E, block, sg, zetas, g, s);
    ScalarField B = assemble_b(E, block, sg, zetas, g, s, aux);
    ScalarField rho;
    rho.v.assign((std::size_t)n * n, 0.0);
    for (std::size_t idx = 0; idx < rho.v.size(); idx++)
        rho.v[idx] = block.rho0(yhat(sg, zetas, (int)idx, s));

    // spread the residual flux of each component over its deep plaquettes so
    // the per-component targets hold to rounding, then close the global sum
    // on the seam plaquette
    std::vector<double> target(E.components, twist_c);
    {
        if (E.components > 1) {
            std::vector<double> areas = component_areas(E);
            double acc = 0.0;
            for (int c = 0; c + 1 < E.components; c++) {
                target[c] = kTwoPi / params.alpha *
                            std::floor(params.alpha * areas[c] * kInvSqrt2 / kTwoPi);
                acc += target[c];
            }
            target[E.components - 1] = twist_c - acc;
        }
        std::vector<double> flux = component_flux(B, sg, g, E.components);
        std::vector<long long> deep(E.components, 0);
        for (std::size_t idx = 0; idx < B.v.size(); idx++)
            if (!square_member(sg, zetas, (int)idx, s) &&
                yhat(sg, zetas, (int)idx, s) >= 0.5)
                deep[sg.comp[idx]]++;
        for (int c = 0; c < E.components; c++) {
            if (deep[c] == 0) continue;
            double db = (target[c] - flux[c]) / ((double)deep[c] * g.h * g.h);
            for (std::size_t idx = 0; idx < B.v.size(); idx++)
                if (sg.comp[idx] == c && !square_member(sg, zetas, (int)idx, s) &&
                    yhat(sg, zetas, (int)idx, s) >= 0.5)
                    B.v[idx] += db;
        }
        for (int round = 0; round < 2; round++) {
            double gamma = seam_mismatch(B, g, twist_c);
            B.v[g.site(n - 1, n - 1)] += gamma / g.h;
        }
    }

    LinkField A = global_potential(B, params, g);

    RecoveryReport rep;
    rep.cfg = make_configuration(g, params);
    rep.cfg.a = A;
    rep.zeta = zetas;
    rep.component_flux = component_flux(B, sg, g, E.components);
    rep.component_target = target;
    rep.target = block.sigma_cell * E.perimeter;
    rep.squares = 0;
    for (const EdgeSquares& es : dec.per_edge) rep.squares += (int)es.centers.size();

    {
        SumAccumulator acc;
        for (double b : B.v) acc.add(b * g.h * g.h);
        rep.flux_error = std::fabs(acc.sum() - twist_c);
    }

    // phase assembly over the carrier {rho > 0}
    ScalarField theta0;
    theta0.v.assign((std::size_t)n * n, 0.0);
    PhaseReport ph =
        integrate_phase(rep.cfg, aux.a0, theta0, rho, E.rectilinear ? 1e-6 : 0.0);
    rep.max_loop_defect = ph.max_defect;
    for (std::size_t idx = 0; idx < rho.v.size(); idx++)
        rep.cfg.u.v[idx] =
            rho.v[idx] > 0.0
                ? Complex(rho.v[idx] * std::cos(ph.theta.v[idx]),
                          rho.v[idx] * std::sin(ph.theta.v[idx]))
                : Complex(0.0, 0.0);

    rep.energy = total_energy(rep.cfg);

    // region audit masks keyed by the plaquette's base site
    std::vector<std::uint8_t> msq(rho.v.size(), 0), mcorner(rho.v.size(), 0),
        mdeep(rho.v.size(), 0), mout(rho.v.size(), 0);
    for (std::size_t idx = 0; idx < rho.v.size(); idx++) {
        double y1 = yhat(sg, zetas, (int)idx, s);
        if (square_member(sg, zetas, (int)idx, s))
            msq[idx] = 1;
        else if (y1 >= 0.5)
            mdeep[idx] = 1;
        else if (y1 <= -0.5)
            mout[idx] = 1;
        else
            mcorner[idx] = 1;
    }
    rep.square_energy = total_energy(rep.cfg, &msq).total;
    rep.corner_energy = total_energy(rep.cfg, &mcorner).total;
    rep.deep_energy = total_energy(rep.cfg, &mdeep).total;
    rep.outside_energy = total_energy(rep.cfg, &mout).total;
    rep.per_square_mean = rep.squares > 0 ? rep.square_energy / rep.squares : 0.0;

    // continuity audit: square-local coordinates against the global formula
    double jump = 0.0;
    for (int iy = 0; iy < n; iy++) {
        for (int ix = 0; ix < n; ix++) {
            int idx = g.site(ix, iy);
            if (!square_member(sg, zetas, idx, s)) continue;
            const EdgeSquares& es = dec.per_edge[sg.cedge[idx]];
            const PolyEdge& e = E.edges[es.edge];
            const Point& ctr = es.centers[sg.csquare[idx]];
            double dx = wrap01(ix * g.h) - ctr.x, dy = wrap01(iy * g.h) - ctr.y;
            dx -= std::round(dx);
            dy -= std::round(dy);
            double y1 = (dx * e.nu.x + dy * e.nu.y) / s;
            jump = std::max(jump, std::fabs(block.rho0(y1) - rho.v[idx]));
        }
    }
    rep.max_seam_jump = jump;

    // covariant phase residual off the squares where the carrier is present
    double cov = 0.0;
    for (int iy = 0; iy < n; iy++) {
        for (int ix = 0; ix < n; ix++) {
            int idx = g.site(ix, iy);
            if (msq[idx] || !(rho.v[idx] > 0.0)) continue;
            int ir = g.site(ix + 1 == n ? 0 : ix + 1, iy);
            int it = g.site(ix, iy + 1 == n ? 0 : iy + 1);
            double ah = params.alpha * g.h;
            if (rho.v[ir] > 0.0 && !msq[ir]) {
                double d = ph.theta.v[ir] - ph.theta.v[idx] - ah * rep.cfg.a.a1[idx];
                cov = std::max(cov, std::fabs(std::remainder(d, kTwoPi)));
            }
            if (rho.v[it] > 0.0 && !msq[it]) {
                double d = ph.theta.v[it] - ph.theta.v[idx] - ah * rep.cfg.eff_a2(ix, iy);
                cov = std::max(cov, std::fabs(std::remainder(d, kTwoPi)));
            }
        }
    }
    rep.max_offsquare_cov = cov;

    // L1 distance of the density to the sharp-interface indicator
    SumAccumulator l1;
    for (int iy = 0; iy < n; iy++) {
        for (int ix = 0; ix < n; ix++) {
            int idx = g.site(ix, iy);
            double chi = contains(E, wrap01(ix * g.h), wrap01(iy * g.h)) ? 0.0 : 1.0;
            l1.add(std::fabs(rho.v[idx] - chi) * g.h * g.h);
        }
    }
    rep.rho_l1_gap = l1.sum();
    return rep;
}

}  // namespace gl
