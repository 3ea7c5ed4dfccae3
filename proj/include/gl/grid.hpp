#pragma once

#include <cmath>

namespace gl {

enum class DomainKind {
    torus_with_flux,  // unit torus, net flux carried by the background twist
    rectangle,        // cell Q_{W,H}: open in x1 (explicit boundary columns), periodic in x2
};

// Uniform grid. Sites sit at (ix*h - width/2, iy*h - height/2). In torus mode
// there are nx*ny sites and both indices wrap; in rectangle mode there are
// (nx+1)*ny sites (an extra column of sites at x1 = +width/2) and only iy wraps.
struct TorusGrid {
    DomainKind kind = DomainKind::torus_with_flux;
    int nx = 0;  // plaquettes per row
    int ny = 0;  // plaquettes per column
    double h = 0.0;
    double width = 1.0;
    double height = 1.0;

    static TorusGrid torus(int n);
    static TorusGrid rectangle(int nx, double width, double height);

    int sx() const { return kind == DomainKind::torus_with_flux ? nx : nx + 1; }
    int sy() const { return ny; }
    int nsites() const { return sx() * sy(); }
    int nplaquettes() const { return nx * ny; }

    // Wrapped site index; ix may be in [-1, sx] and iy in [-1, sy].
    int site(int ix, int iy) const {
        if (iy < 0) iy += ny;
        if (iy >= ny) iy -= ny;
        int w = sx();
        if (kind == DomainKind::torus_with_flux) {
            if (ix < 0) ix += w;
            if (ix >= w) ix -= w;
        }
        return iy * w + ix;
    }

    double x1(int ix) const { return ix * h - width / 2; }
    double x2(int iy) const { return iy * h - height / 2; }
};

}  // namespace gl
