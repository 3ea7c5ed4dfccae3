#pragma once

#include <string>
#include <vector>

#include "gl/fields.hpp"

namespace gl {

// Binary snapshot: magic "GL2D\0", format version, grid and parameter header,
// then row-major Re u, Im u, a1, a2 as little-endian doubles.
void save_snapshot(const std::string& path, const Configuration& cfg);
Configuration load_snapshot(const std::string& path);

// Text snapshot with a '#'-prefixed header; values printed with 17 significant
// digits so a save/load cycle is lossless.
void save_snapshot_csv(const std::string& path, const Configuration& cfg);
Configuration load_snapshot_csv(const std::string& path);

// 17-significant-digit decimal rendering used by every text output.
std::string format_full(double x);

struct ProfileTable {
    std::vector<double> t, rho, a;
};

// CSV with columns t,rho,a.
void save_profile_csv(const std::string& path, const ProfileTable& table);
ProfileTable load_profile_csv(const std::string& path);

struct PolygonLoop {
    std::vector<double> x, y;  // vertices in order, implicitly closed
};

// One loop per blank-line-separated block of "x y" lines; '#' starts a comment.
std::vector<PolygonLoop> load_polygons(const std::string& path);

}  // namespace gl
