#include "gl/io.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "gl/errors.hpp"

namespace gl {

namespace {

constexpr char kMagic[5] = {'G', 'L', '2', 'D', '\0'};
constexpr std::uint32_t kVersion = 1;

void write_bytes(std::ofstream& f, const void* p, std::size_t n) {
    f.write(reinterpret_cast<const char*>(p), (std::streamsize)n);
}

void read_bytes(std::ifstream& f, void* p, std::size_t n) {
    f.read(reinterpret_cast<char*>(p), (std::streamsize)n);
    if (!f) throw validation_error("snapshot: truncated file");
}

void write_doubles(std::ofstream& f, const std::vector<double>& v) {
    write_bytes(f, v.data(), v.size() * sizeof(double));
}

std::vector<double> read_doubles(std::ifstream& f, std::size_t n) {
    std::vector<double> v(n);
    read_bytes(f, v.data(), n * sizeof(double));
    return v;
}

TorusGrid rebuild_grid(std::uint32_t kind, std::int32_t nx, std::int32_t ny,
                       double width, double height) {
    if (kind == 0) {
        if (nx != ny) throw validation_error("snapshot: torus grid must be square");
        return TorusGrid::torus(nx);
    }
    TorusGrid g = TorusGrid::rectangle(nx, width, height);
    if (g.ny != ny) throw validation_error("snapshot: inconsistent rectangle height");
    return g;
}

}  // namespace

std::string format_full(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void save_snapshot(const std::string& path, const Configuration& cfg) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw validation_error("cannot open for writing: " + path);
    write_bytes(f, kMagic, 5);
    std::uint32_t ver = kVersion;
    std::uint32_t kind = cfg.grid.kind == DomainKind::torus_with_flux ? 0u : 1u;
    std::int32_t nx = cfg.grid.nx, ny = cfg.grid.ny;
    write_bytes(f, &ver, 4);
    write_bytes(f, &kind, 4);
    write_bytes(f, &nx, 4);
    write_bytes(f, &ny, 4);
    double head[6] = {cfg.grid.width, cfg.grid.height, cfg.params.epsilon,
                      cfg.params.kappa, cfg.params.b_ext, cfg.a.twist_c};
    write_bytes(f, head, sizeof(head));
    int n = cfg.grid.nsites();
    std::vector<double> re(n), im(n);
    for (int s = 0; s < n; s++) {
        re[s] = cfg.u.v[s].real();
        im[s] = cfg.u.v[s].imag();
    }
    write_doubles(f, re);
    write_doubles(f, im);
    write_doubles(f, cfg.a.a1);
    write_doubles(f, cfg.a.a2);
    if (!f) throw validation_error("write failed: " + path);
}

Configuration load_snapshot(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw validation_error("cannot open: " + path);
    char magic[5];
    read_bytes(f, magic, 5);
    if (std::memcmp(magic, kMagic, 5) != 0) throw validation_error("snapshot: bad magic");
    std::uint32_t ver, kind;
    std::int32_t nx, ny;
    read_bytes(f, &ver, 4);
    if (ver != kVersion) throw validation_error("snapshot: unsupported version");
    read_bytes(f, &kind, 4);
    read_bytes(f, &nx, 4);
    read_bytes(f, &ny, 4);
    double head[6];
    read_bytes(f, head, sizeof(head));
    TorusGrid g = rebuild_grid(kind, nx, ny, head[0], head[1]);
    Configuration cfg;
    cfg.grid = g;
    cfg.params = make_params(head[2], head[3], head[4]);
    int n = g.nsites();
    std::vector<double> re = read_doubles(f, n);
    std::vector<double> im = read_doubles(f, n);
    cfg.a.a1 = read_doubles(f, n);
    cfg.a.a2 = read_doubles(f, n);
    cfg.a.twist_c = head[5];
    cfg.u.v.resize(n);
    for (int s = 0; s < n; s++) cfg.u.v[s] = Complex(re[s], im[s]);
    return cfg;
}

void save_snapshot_csv(const std::string& path, const Configuration& cfg) {
    std::ofstream f(path);
    if (!f) throw validation_error("cannot open for writing: " + path);
    f << "# gl2d-csv 1\n";
    f << "# kind " << (cfg.grid.kind == DomainKind::torus_with_flux ? "torus" : "rectangle") << "\n";
    f << "# nx " << cfg.grid.nx << " ny " << cfg.grid.ny << "\n";
    f << "# width " << format_full(cfg.grid.width) << " height " << format_full(cfg.grid.height) << "\n";
    f << "# epsilon " << format_full(cfg.params.epsilon) << " kappa " << format_full(cfg.params.kappa)
      << " b_ext " << format_full(cfg.params.b_ext) << "\n";
    f << "# twist_c " << format_full(cfg.a.twist_c) << "\n";
    f << "ix,iy,re_u,im_u,a1,a2\n";
    for (int iy = 0; iy < cfg.grid.sy(); iy++) {
        for (int ix = 0; ix < cfg.grid.sx(); ix++) {
            int s = cfg.grid.site(ix, iy);
            f << ix << ',' << iy << ',' << format_full(cfg.u.v[s].real()) << ','
              << format_full(cfg.u.v[s].imag()) << ',' << format_full(cfg.a.a1[s]) << ','
              << format_full(cfg.a.a2[s]) << "\n";
        }
    }
    if (!f) throw validation_error("write failed: " + path);
}

Configuration load_snapshot_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw validation_error("cannot open: " + path);
    std::string line;
    std::string kind_word;
    std::int32_t nx = -1, ny = -1;
    double width = 0, height = 0, epsilon = 0, kappa = 0, b_ext = 0, twist_c = 0;
    bool saw_columns = false;
    Configuration cfg;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream is(line.substr(1));
            std::string key;
            while (is >> key) {
                if (key == "kind") is >> kind_word;
                else if (key == "nx") is >> nx;
                else if (key == "ny") is >> ny;
                else if (key == "width") is >> width;
                else if (key == "height") is >> height;
                else if (key == "epsilon") is >> epsilon;
                else if (key == "kappa") is >> kappa;
                else if (key == "b_ext") is >> b_ext;
                else if (key == "twist_c") is >> twist_c;
            }
            continue;
        }
        if (!saw_columns) {
            // the column-name row
            if (kind_word.empty() || nx < 0 || ny < 0)
                throw validation_error("snapshot csv: incomplete header");
            cfg.grid = rebuild_grid(kind_word == "torus" ? 0 : 1, nx, ny, width, height);
            cfg.params = make_params(epsilon, kappa, b_ext);
            cfg.u.v.assign(cfg.grid.nsites(), Complex(0, 0));
            cfg.a.a1.assign(cfg.grid.nsites(), 0.0);
            cfg.a.a2.assign(cfg.grid.nsites(), 0.0);
            cfg.a.twist_c = twist_c;
            saw_columns = true;
            continue;
        }
        std::istringstream is(line);
        int ix, iy;
        double re, im, a1, a2;
        char comma;
        if (!(is >> ix >> comma >> iy >> comma >> re >> comma >> im >> comma >> a1 >> comma >> a2))
            throw validation_error("snapshot csv: bad data row");
        if (ix < 0 || ix >= cfg.grid.sx() || iy < 0 || iy >= cfg.grid.sy())
            throw validation_error("snapshot csv: site index out of range");
        int s = cfg.grid.site(ix, iy);
        cfg.u.v[s] = Complex(re, im);
        cfg.a.a1[s] = a1;
        cfg.a.a2[s] = a2;
    }
    if (!saw_columns) throw validation_error("snapshot csv: no data");
    return cfg;
}

void save_profile_csv(const std::string& path, const ProfileTable& table) {
    std::ofstream f(path);
    if (!f) throw validation_error("cannot open for writing: " + path);
    f << "t,rho,a\n";
    for (std::size_t i = 0; i < table.t.size(); i++)
        f << format_full(table.t[i]) << ',' << format_full(table.rho[i]) << ','
          << format_full(table.a[i]) << "\n";
    if (!f) throw validation_error("write failed: " + path);
}

ProfileTable load_profile_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw validation_error("cannot open: " + path);
    ProfileTable table;
    std::string line;
    bool first = true;
    while (std::getline(f, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (first) {
            first = false;
            continue;  // column names
        }
        std::istringstream is(line);
        double t, rho, a;
        char comma;
        if (!(is >> t >> comma >> rho >> comma >> a))
            throw validation_error("profile csv: bad data row");
        table.t.push_back(t);
        table.rho.push_back(rho);
        table.a.push_back(a);
    }
    if (table.t.empty()) throw validation_error("profile csv: no data");
    return table;
}

std::vector<PolygonLoop> load_polygons(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw validation_error("cannot open: " + path);
    std::vector<PolygonLoop> loops;
    PolygonLoop cur;
    std::string line;
    auto flush = [&] {
        if (!cur.x.empty()) {
            if (cur.x.size() < 3) throw validation_error("polygon file: loop with fewer than 3 vertices");
            loops.push_back(cur);
            cur = PolygonLoop{};
        }
    };
    while (std::getline(f, line)) {
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream is(line);
        double x, y;
        if (is >> x >> y) {
            cur.x.push_back(x);
            cur.y.push_back(y);
        } else {
            flush();  // blank or comment-only line ends the current loop
        }
    }
    flush();
    if (loops.empty()) throw validation_error("polygon file: no loops");
    return loops;
}

}  // namespace gl
