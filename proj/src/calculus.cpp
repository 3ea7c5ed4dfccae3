#include "gl/calculus.hpp"

#include <cmath>

#include "gl/errors.hpp"

namespace gl {

Configuration make_configuration(const TorusGrid& grid, const Params& params) {
    Configuration cfg;
    cfg.grid = grid;
    cfg.params = params;
    cfg.u.v.assign(grid.nsites(), Complex(1.0, 0.0));
    cfg.a.a1.assign(grid.nsites(), 0.0);
    cfg.a.a2.assign(grid.nsites(), 0.0);
    if (grid.kind == DomainKind::torus_with_flux)
        cfg.a.twist_c = params.b_ext / params.kappa;
    return cfg;
}

ComplexField covariant_diff(const Configuration& cfg, Axis axis) {
    const TorusGrid& g = cfg.grid;
    const double ah = cfg.params.alpha * g.h;
    ComplexField d;
    d.v.assign(g.nsites(), Complex(0.0, 0.0));
    for (int iy = 0; iy < g.sy(); iy++) {
        for (int ix = 0; ix < g.sx(); ix++) {
            int s = g.site(ix, iy);
            if (axis == Axis::x1) {
                if (g.kind == DomainKind::rectangle && ix == g.nx) continue;
                double a = cfg.eff_a1(ix, iy);
                Complex up = cfg.u.v[g.site(ix + 1, iy)];
                d.v[s] = (std::polar(1.0, -ah * a) * up - cfg.u.v[s]) / g.h;
            } else {
                double a = cfg.eff_a2(ix, iy);
                Complex up = cfg.u.v[g.site(ix, iy + 1)];
                d.v[s] = (std::polar(1.0, -ah * a) * up - cfg.u.v[s]) / g.h;
            }
        }
    }
    return d;
}

ComplexField bogomolny(const ComplexField& d1, const ComplexField& d2) {
    if (d1.v.size() != d2.v.size()) throw validation_error("bogomolny: mismatched grids");
    ComplexField d3;
    d3.v.resize(d1.v.size());
    for (std::size_t i = 0; i < d1.v.size(); i++)
        d3.v[i] = d2.v[i] - Complex(0.0, 1.0) * d1.v[i];
    return d3;
}

ScalarField discrete_curl(const LinkField& a, const TorusGrid& g) {
    ScalarField b;
    b.v.assign(g.nsites(), 0.0);
    const bool torus = g.kind == DomainKind::torus_with_flux;
    for (int iy = 0; iy < g.ny; iy++) {
        for (int ix = 0; ix < g.nx; ix++) {
            double a2r = a.a2[g.site(ix + 1 == g.sx() && torus ? 0 : ix + 1, iy)];
            if (torus) a2r += a.twist_c * (ix + 1) * g.h;
            double a2l = a.a2[g.site(ix, iy)];
            if (torus) a2l += a.twist_c * ix * g.h;
            double a1t = a.a1[g.site(ix, iy + 1)];
            double a1b = a.a1[g.site(ix, iy)];
            b.v[g.site(ix, iy)] = (a2r - a2l - a1t + a1b) / g.h;
        }
    }
    return b;
}

VectorField supercurrent(const Configuration& cfg) {
    ComplexField d1 = covariant_diff(cfg, Axis::x1);
    ComplexField d2 = covariant_diff(cfg, Axis::x2);
    VectorField j;
    j.x.resize(cfg.grid.nsites());
    j.y.resize(cfg.grid.nsites());
    for (int s = 0; s < cfg.grid.nsites(); s++) {
        j.x[s] = std::imag(std::conj(cfg.u.v[s]) * d1.v[s]);
        j.y[s] = std::imag(std::conj(cfg.u.v[s]) * d2.v[s]);
    }
    return j;
}

Configuration gauge_transform(const Configuration& cfg, const ScalarField& phi) {
    const TorusGrid& g = cfg.grid;
    if ((int)phi.v.size() != g.nsites()) throw validation_error("gauge_transform: phi size mismatch");
    Configuration out = cfg;
    const double inv_ah = 1.0 / (cfg.params.alpha * g.h);
    for (int iy = 0; iy < g.sy(); iy++) {
        for (int ix = 0; ix < g.sx(); ix++) {
            int s = g.site(ix, iy);
            out.u.v[s] = cfg.u.v[s] * std::polar(1.0, phi.v[s]);
            if (!(g.kind == DomainKind::rectangle && ix == g.nx))
                out.a.a1[s] = cfg.a.a1[s] + (phi.v[g.site(ix + 1, iy)] - phi.v[s]) * inv_ah;
            out.a.a2[s] = cfg.a.a2[s] + (phi.v[g.site(ix, iy + 1)] - phi.v[s]) * inv_ah;
        }
    }
    return out;
}

}  // namespace gl
