#include "gl/polygeom.hpp"

#include <algorithm>
#include <cmath>

#include "gl/errors.hpp"

namespace gl {

namespace {

double shoelace(const std::vector<Point>& v) {
    double a = 0.0;
    for (std::size_t i = 0; i < v.size(); i++) {
        const Point& p = v[i];
        const Point& q = v[(i + 1) % v.size()];
        a += p.x * q.y - q.x * p.y;
    }
    return 0.5 * a;
}

// even-odd crossing test in the plane (no wrap)
bool inside_loop(const std::vector<Point>& v, double x, double y) {
    bool in = false;
    for (std::size_t i = 0; i < v.size(); i++) {
        const Point& p = v[i];
        const Point& q = v[(i + 1) % v.size()];
        if ((p.y > y) != (q.y > y)) {
            double xc = p.x + (y - p.y) / (q.y - p.y) * (q.x - p.x);
            if (x < xc) in = !in;
        }
    }
    return in;
}

double point_segment_dist(double px, double py, const Point& a, const Point& b) {
    double vx = b.x - a.x, vy = b.y - a.y;
    double wx = px - a.x, wy = py - a.y;
    double len2 = vx * vx + vy * vy;
    double t = len2 > 0 ? std::clamp((wx * vx + wy * vy) / len2, 0.0, 1.0) : 0.0;
    double dx = wx - t * vx, dy = wy - t * vy;
    return std::hypot(dx, dy);
}

double wrap01(double x) {
    double y = x - std::floor(x);
    return y < 1.0 ? y : 0.0;
}

}  // namespace

PolyhedralSet make_polyhedral(const std::vector<PolygonLoop>& raw) {
    PolyhedralSet E;
    for (const PolygonLoop& l : raw) {
        if (l.x.size() < 3) throw validation_error("polyhedral set: loop with fewer than 3 vertices");
        std::vector<Point> loop(l.x.size());
        for (std::size_t i = 0; i < l.x.size(); i++) {
            if (l.x[i] < 0 || l.x[i] >= 1 || l.y[i] < 0 || l.y[i] >= 1)
                throw validation_error("polyhedral set: vertex outside [0,1)^2");
            loop[i] = {l.x[i], l.y[i]};
        }
        E.loops.push_back(loop);
        E.loop_area.push_back(shoelace(loop));
        if (E.loop_area.back() == 0.0) throw validation_error("polyhedral set: degenerate loop");
    }
    // material components = counterclockwise loops, in input order
    E.loop_component.assign(E.loops.size(), -1);
    std::vector<std::size_t> ccw;
    for (std::size_t i = 0; i < E.loops.size(); i++) {
        if (E.loop_area[i] > 0) {
            E.loop_component[i] = (int)ccw.size();
            ccw.push_back(i);
        }
    }
    E.components = (int)ccw.size();
    if (E.components == 0) throw validation_error("polyhedral set: no material loop");
    // holes attach to the counterclockwise loop that contains them
    for (std::size_t i = 0; i < E.loops.size(); i++) {
        if (E.loop_area[i] > 0) continue;
        for (std::size_t k : ccw) {
            if (inside_loop(E.loops[k], E.loops[i][0].x, E.loops[i][0].y)) {
                E.loop_component[i] = E.loop_component[k];
                break;
            }
        }
        if (E.loop_component[i] < 0)
            throw validation_error("polyhedral set: hole not contained in any material loop");
    }
    for (std::size_t i = 0; i < E.loops.size(); i++) {
        const std::vector<Point>& v = E.loops[i];
        for (std::size_t j = 0; j < v.size(); j++) {
            PolyEdge e;
            e.a = v[j];
            e.b = v[(j + 1) % v.size()];
            e.len = std::hypot(e.b.x - e.a.x, e.b.y - e.a.y);
            if (e.len == 0.0) throw validation_error("polyhedral set: zero-length edge");
            e.tau = {(e.b.x - e.a.x) / e.len, (e.b.y - e.a.y) / e.len};
            e.nu = {-e.tau.y, e.tau.x};  // left of tau = material side
            e.loop = (int)i;
            e.component = E.loop_component[i];
            bool axis = (e.a.x == e.b.x) || (e.a.y == e.b.y);
            E.rectilinear_flags.push_back(axis ? 1 : 0);
            if (!axis) E.rectilinear = false;
            E.edges.push_back(e);
            E.perimeter += e.len;
        }
    }
    E.area = 0.0;
    for (double a : E.loop_area) E.area += a;  // holes subtract via negative shoelace
    if (!(E.area > 0) || !(E.area < 1))
        throw validation_error("polyhedral set: area must lie in (0,1)");
    return E;
}

PolyhedralSet load_polyhedral(const std::string& path) {
    return make_polyhedral(load_polygons(path));
}

bool contains(const PolyhedralSet& E, double x, double y) {
    x = wrap01(x);
    y = wrap01(y);
    bool in = false;
    for (const std::vector<Point>& loop : E.loops)
        if (inside_loop(loop, x, y)) in = !in;
    return in;
}

double signed_distance(const PolyhedralSet& E, double x, double y) {
    x = wrap01(x);
    y = wrap01(y);
    double d = 1e300;
    for (int sx = -1; sx <= 1; sx++) {
        for (int sy = -1; sy <= 1; sy++) {
            for (const PolyEdge& e : E.edges)
                d = std::min(d, point_segment_dist(x + sx, y + sy, e.a, e.b));
        }
    }
    return contains(E, x, y) ? d : -d;
}

SetMeasures measures(const PolyhedralSet& E) {
    SetMeasures m;
    m.perimeter = E.perimeter;
    m.area = E.area;
    m.components = E.components;
    m.simply_connected.assign(E.components, 1);
    for (std::size_t i = 0; i < E.loops.size(); i++)
        if (E.loop_area[i] < 0) m.simply_connected[E.loop_component[i]] = 0;
    return m;
}

bool in_tube(const PolyhedralSet& E, double eps_n, double zeta, double eps0,
             double x, double y) {
    double s = eps_n / eps0;
    double sd = signed_distance(E, x, y);
    return sd > zeta - 0.5 * s && sd < zeta + 0.5 * s;
}

EdgeDecomposition edge_squares(const PolyhedralSet& E, double eps_n,
                               const std::vector<double>& zeta_per_component, double eps0) {
    if ((int)zeta_per_component.size() != E.components)
        throw validation_error("edge_squares: need one zeta per component");
    EdgeDecomposition dec;
    dec.eps_n = eps_n;
    dec.eps0 = eps0;
    dec.s = eps_n / eps0;
    dec.zeta = zeta_per_component;
    const double s = dec.s;
    for (double z : dec.zeta)
        if (!(std::fabs(z) <= 0.5 * s))
            throw validation_error("edge_squares: |zeta| > s/2");

    double min_len = 1e300;
    for (const PolyEdge& e : E.edges) min_len = std::min(min_len, e.len);
    if (!(s < 0.5 * min_len))
        throw validation_error("edge_squares: eps_n too large for the shortest edge");

    // initial minimal trims: one slot at each end, the sub-slot remainder
    // attached to the starting endpoint
    std::vector<long long> km(E.edges.size(), 1), kp(E.edges.size(), 1);
    std::vector<double> rem(E.edges.size());
    for (std::size_t i = 0; i < E.edges.size(); i++) {
        long long slots = (long long)std::floor(E.edges[i].len / s + 1e-12);
        rem[i] = E.edges[i].len - (double)slots * s;
        if (slots < 3)
            throw validation_error("edge_squares: eps_n too large for edge " + std::to_string(i));
    }

    auto build_centers = [&](std::size_t i, double zeta) {
        const PolyEdge& e = E.edges[i];
        long long slots = (long long)std::floor(e.len / s + 1e-12);
        long long N = slots - km[i] - kp[i];
        double lm = (double)km[i] * s + rem[i];
        std::vector<Point> centers;
        for (long long j = 0; j < N; j++) {
            double along = lm + ((double)j + 0.5) * s;
            centers.push_back({e.a.x + along * e.tau.x + zeta * e.nu.x,
                               e.a.y + along * e.tau.y + zeta * e.nu.y});
        }
        return centers;
    };

    // enforce disjointness of the doubled squares at zeta = 0 by growing trims
    for (int round = 0;; round++) {
        if (round > 64) throw numerical_error("edge_squares: disjointness not reachable");
        std::vector<std::vector<Point>> cs(E.edges.size());
        for (std::size_t i = 0; i < E.edges.size(); i++) cs[i] = build_centers(i, 0.0);
        bool ok = true;
        for (std::size_t i = 0; i < E.edges.size() && ok; i++) {
            for (std::size_t j = i + 1; j < E.edges.size() && ok; j++) {
                for (const Point& p : cs[i]) {
                    for (const Point& q : cs[j]) {
                        double dx = std::fabs(p.x - q.x), dy = std::fabs(p.y - q.y);
                        dx = std::min(dx, 1.0 - dx);
                        dy = std::min(dy, 1.0 - dy);
                        // need a half-slot safety margin so the squares stay
                        // disjoint over the whole |zeta| <= s/2 range
                        if (std::max(dx, dy) < 1.5 * s - 1e-12) {
                            km[i]++;
                            kp[i]++;
                            km[j]++;
                            kp[j]++;
                            long long si = (long long)std::floor(E.edges[i].len / s + 1e-12);
                            long long sj = (long long)std::floor(E.edges[j].len / s + 1e-12);
                            if (si - km[i] - kp[i] < 1 || sj - kp[j] - km[j] < 1)
                                throw validation_error("edge_squares: eps_n too large for edge pair " +
                                                       std::to_string(i) + "," + std::to_string(j));
                            ok = false;
                            break;
                        }
                    }
                    if (!ok) break;
                }
            }
        }
        if (ok) break;
    }

    for (std::size_t i = 0; i < E.edges.size(); i++) {
        EdgeSquares es;
        es.edge = (int)i;
        es.l_minus = (double)km[i] * s + rem[i];
        es.l_plus = (double)kp[i] * s;
        es.centers = build_centers(i, dec.zeta[E.edges[i].component]);
        dec.per_edge.push_back(es);
    }

    // measured corner leftover |T \ union of squares| on a sampling grid
    {
        int n = 256;
        long long corner_cnt = 0;
        for (int iy = 0; iy < n; iy++) {
            for (int ix = 0; ix < n; ix++) {
                double x = (ix + 0.5) / n, y = (iy + 0.5) / n;
                RegionLabel lab = classify(E, dec, x, y);
                if (lab.kind == RegionKind::corner) corner_cnt++;
            }
        }
        dec.corner_area_constant = (double)corner_cnt / (double)((long long)n * n) / (eps_n * eps_n);
    }
    return dec;
}

RegionLabel classify(const PolyhedralSet& E, const EdgeDecomposition& dec,
                     double x, double y) {
    x = wrap01(x);
    y = wrap01(y);
    const double s = dec.s;
    RegionLabel lab;

    // square membership first (squares lie inside the tube by construction)
    for (const EdgeSquares& es : dec.per_edge) {
        const PolyEdge& e = E.edges[es.edge];
        for (std::size_t j = 0; j < es.centers.size(); j++) {
            // nearest torus copy of the center
            double dx = x - es.centers[j].x, dy = y - es.centers[j].y;
            dx -= std::round(dx);
            dy -= std::round(dy);
            double u1 = dx * e.nu.x + dy * e.nu.y;
            double u2 = dx * e.tau.x + dy * e.tau.y;
            if (std::fabs(u1) <= 0.5 * s && std::fabs(u2) <= 0.5 * s) {
                lab.kind = RegionKind::square;
                lab.edge = es.edge;
                lab.index = (int)j;
                lab.component = e.component;
                lab.y1 = u1 / s;
                lab.y2 = u2 / s;
                return lab;
            }
        }
    }

    double sd = signed_distance(E, x, y);
    // zeta of the nearest edge's component
    double best = 1e300;
    int comp = 0;
    for (const PolyEdge& e : E.edges) {
        for (int sx = -1; sx <= 1; sx++) {
            for (int sy = -1; sy <= 1; sy++) {
                double d = point_segment_dist(x + sx, y + sy, e.a, e.b);
                if (d < best) {
                    best = d;
                    comp = e.component;
                }
            }
        }
    }
    lab.component = comp;
    double zeta = dec.zeta[comp];
    if (sd - zeta >= 0.5 * s) {
        lab.kind = RegionKind::deep_interior;
    } else if (sd - zeta <= -0.5 * s) {
        lab.kind = RegionKind::outside;
    } else {
        lab.kind = RegionKind::corner;
        lab.y1 = (sd - zeta) / s;
    }
    return lab;
}

}  // namespace gl
