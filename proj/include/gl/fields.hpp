#pragma once

#include <complex>
#include <vector>

#include "gl/grid.hpp"
#include "gl/params.hpp"

namespace gl {

using Complex = std::complex<double>;

struct ComplexField {
    std::vector<Complex> v;
};

struct ScalarField {
    std::vector<double> v;
};

struct VectorField {
    std::vector<double> x, y;
};

// Gauge links. a1[s] lives on the link from site s to s+e1, a2[s] on the link
// to s+e2; both arrays are sized like the site array (the a1 column at
// ix = nx is unused in rectangle mode). In torus mode the represented
// potential is the periodic part plus the fixed background (0, twist_c*x1);
// a direction-2 link read across the x1-seam picks up twist_c*width.
struct LinkField {
    std::vector<double> a1, a2;
    double twist_c = 0.0;
};

struct Configuration {
    TorusGrid grid;
    Params params;
    ComplexField u;
    LinkField a;

    // Effective direction-2 potential at the link based at (ix, iy); ix may
    // run to nx inclusive so the seam shift falls out of twist_c*ix*h.
    double eff_a2(int ix, int iy) const {
        double bg = 0.0;
        if (grid.kind == DomainKind::torus_with_flux) bg = a.twist_c * ix * grid.h;
        return a.a2[grid.site(ix == grid.sx() ? 0 : ix, iy)] + bg;
    }
    double eff_a1(int ix, int iy) const {
        return a.a1[grid.site(ix, iy)];
    }
};

// A zero-initialised configuration: u = 1, links = 0, twist from params in torus mode.
Configuration make_configuration(const TorusGrid& grid, const Params& params);

}  // namespace gl
