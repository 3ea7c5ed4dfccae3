#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <random>

#include "gl/errors.hpp"
#include "gl/io.hpp"

using namespace gl;

namespace {

Configuration sample_config(unsigned seed) {
    Params p = make_params(0.17, 0.31, 0.12);
    Configuration cfg = make_configuration(TorusGrid::torus(6), p);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    for (int s = 0; s < cfg.grid.nsites(); s++) {
        cfg.u.v[s] = Complex(d(rng), d(rng));
        cfg.a.a1[s] = d(rng);
        cfg.a.a2[s] = d(rng);
    }
    return cfg;
}

bool identical(const Configuration& a, const Configuration& b) {
    if (a.grid.nx != b.grid.nx || a.grid.ny != b.grid.ny || a.grid.kind != b.grid.kind) return false;
    if (a.params.epsilon != b.params.epsilon || a.params.kappa != b.params.kappa ||
        a.params.b_ext != b.params.b_ext || a.a.twist_c != b.a.twist_c)
        return false;
    for (int s = 0; s < a.grid.nsites(); s++)
        if (a.u.v[s] != b.u.v[s] || a.a.a1[s] != b.a.a1[s] || a.a.a2[s] != b.a.a2[s]) return false;
    return true;
}

}  // namespace

TEST_CASE("binary snapshot round-trips bit for bit") {
    Configuration cfg = sample_config(42);
    const char* path = "snap_test.gl2d";
    save_snapshot(path, cfg);
    Configuration back = load_snapshot(path);
    CHECK(identical(cfg, back));
    std::remove(path);
}

TEST_CASE("csv snapshot round-trips bit for bit via 17 significant digits") {
    Configuration cfg = sample_config(314159);
    const char* path = "snap_test.csv";
    save_snapshot_csv(path, cfg);
    Configuration back = load_snapshot_csv(path);
    CHECK(identical(cfg, back));
    std::remove(path);
}

TEST_CASE("rectangle snapshots keep the extra site column") {
    Params p = make_params(0.2, 0.25, 0.0);
    Configuration cfg = make_configuration(TorusGrid::rectangle(8, 0.5, 0.25), p);
    cfg.u.v[cfg.grid.site(8, 1)] = Complex(0.25, -0.75);
    const char* path = "snap_rect.gl2d";
    save_snapshot(path, cfg);
    Configuration back = load_snapshot(path);
    CHECK(identical(cfg, back));
    std::remove(path);
}

TEST_CASE("corrupt snapshots are rejected") {
    const char* path = "snap_bad.gl2d";
    {
        std::ofstream f(path, std::ios::binary);
        f << "NOTGL2D";
    }
    CHECK_THROWS_AS(load_snapshot(path), validation_error);
    std::remove(path);
    CHECK_THROWS_AS(load_snapshot("does_not_exist.gl2d"), validation_error);
}

TEST_CASE("profile table round-trips bit for bit") {
    ProfileTable t;
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> d(-5.0, 5.0);
    for (int i = 0; i < 100; i++) {
        t.t.push_back(d(rng));
        t.rho.push_back(d(rng));
        t.a.push_back(d(rng));
    }
    const char* path = "profile_test.csv";
    save_profile_csv(path, t);
    ProfileTable back = load_profile_csv(path);
    REQUIRE(back.t.size() == t.t.size());
    for (std::size_t i = 0; i < t.t.size(); i++) {
        CHECK(back.t[i] == t.t[i]);
        CHECK(back.rho[i] == t.rho[i]);
        CHECK(back.a[i] == t.a[i]);
    }
    std::remove(path);
}

TEST_CASE("polygon reader splits loops on blank lines and strips comments") {
    const char* path = "polys_test.txt";
    {
        std::ofstream f(path);
        f << "# two loops\n";
        f << "0 0\n1 0  # a vertex\n1 1\n0 1\n";
        f << "\n";
        f << "0.25 0.25\n0.25 0.75\n0.75 0.75\n";
    }
    auto loops = load_polygons(path);
    REQUIRE(loops.size() == 2);
    CHECK(loops[0].x.size() == 4);
    CHECK(loops[1].x.size() == 3);
    CHECK(loops[0].x[1] == 1.0);
    CHECK(loops[1].y[1] == 0.75);
    std::remove(path);
}
