#include "gl/grid.hpp"

#include "gl/errors.hpp"

namespace gl {

TorusGrid TorusGrid::torus(int n) {
    if (n < 2) throw validation_error("torus grid needs n >= 2");
    TorusGrid g;
    g.kind = DomainKind::torus_with_flux;
    g.nx = g.ny = n;
    g.width = g.height = 1.0;
    g.h = 1.0 / n;
    return g;
}

TorusGrid TorusGrid::rectangle(int nx, double width, double height) {
    if (nx < 2) throw validation_error("rectangle grid needs nx >= 2");
    if (!(width > 0) || !(height > 0)) throw validation_error("rectangle sides must be positive");
    TorusGrid g;
    g.kind = DomainKind::rectangle;
    g.nx = nx;
    g.width = width;
    g.height = height;
    g.h = width / nx;
    g.ny = (int)std::lround(height / g.h);
    if (g.ny < 2) throw validation_error("rectangle grid needs height >= 2h");
    return g;
}

}  // namespace gl
