#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gl/io.hpp"

namespace gl {

struct Point {
    double x = 0.0, y = 0.0;
};

// One boundary edge: endpoints in loop order, unit tangent tau, material-side
// (left) unit normal nu, owning loop and owning material component.
struct PolyEdge {
    Point a, b;
    Point tau, nu;
    double len = 0.0;
    int loop = -1;
    int component = -1;
};

// Closed polyhedral set on the unit torus, represented by simple closed loops
// with vertices in [0,1)^2: counterclockwise loops bound material, clockwise
// loops are holes inside an enclosing counterclockwise loop. Loops must not
// cross the periodic seam.
struct PolyhedralSet {
    std::vector<std::vector<Point>> loops;
    std::vector<double> loop_area;     // signed (shoelace)
    std::vector<int> loop_component;   // material component index per loop
    std::vector<PolyEdge> edges;
    std::vector<std::uint8_t> rectilinear_flags;  // per edge: axis-aligned
    int components = 0;
    double area = 0.0;
    double perimeter = 0.0;
    bool rectilinear = true;
};

PolyhedralSet make_polyhedral(const std::vector<PolygonLoop>& loops);
PolyhedralSet load_polyhedral(const std::string& path);

// Signed distance on the torus metric (minimum over the 3x3 adjacent copies),
// positive inside the set.
double signed_distance(const PolyhedralSet& E, double x, double y);
bool contains(const PolyhedralSet& E, double x, double y);

struct SetMeasures {
    double perimeter = 0.0;
    double area = 0.0;
    int components = 0;
    std::vector<std::uint8_t> simply_connected;  // per material component
};
SetMeasures measures(const PolyhedralSet& E);

// Open tube {zeta - s/2 < sd_E < zeta + s/2} with s = eps_n/eps0.
bool in_tube(const PolyhedralSet& E, double eps_n, double zeta, double eps0,
             double x, double y);

// Edge decomposition into disjoint squares of side s = eps_n/eps0 along each
// edge, with trims near the vertices.
struct EdgeSquares {
    int edge = -1;
    double l_minus = 0.0, l_plus = 0.0;
    std::vector<Point> centers;
};

struct EdgeDecomposition {
    double eps_n = 0.0, eps0 = 0.0, s = 0.0;
    std::vector<double> zeta;  // per material component
    std::vector<EdgeSquares> per_edge;
    double corner_area_constant = 0.0;  // measured |corner region| / eps_n^2
};

EdgeDecomposition edge_squares(const PolyhedralSet& E, double eps_n,
                               const std::vector<double>& zeta_per_component, double eps0);

enum class RegionKind { deep_interior, outside, square, corner };

struct RegionLabel {
    RegionKind kind = RegionKind::outside;
    int edge = -1;     // for square labels
    int index = -1;    // square index along the edge
    int component = -1;
    double y1 = 0.0, y2 = 0.0;  // square-local coordinates scaled by eps0/eps_n
};

RegionLabel classify(const PolyhedralSet& E, const EdgeDecomposition& dec,
                     double x, double y);

}  // namespace gl
