// gl2d: batch front-end for the interface-energy toolbox.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gl/calculus.hpp"
#include "gl/errors.hpp"
#include "gl/io.hpp"
#include "gl/optimize.hpp"
#include "gl/polygeom.hpp"
#include "gl/profile1d.hpp"
#include "gl/recovery.hpp"
#include "gl/sum.hpp"

using namespace gl;

namespace {

constexpr double kSqrt2 = 1.4142135623730950488;
constexpr double kTwoPi = 6.2831853071795864769;

int g_exit = 0;  // promoted to 3 on numerical trouble that still wrote outputs

std::vector<double> parse_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    if (out.empty()) throw validation_error("empty numeric list: '" + csv + "'");
    return out;
}

using KV = std::vector<std::pair<std::string, std::string>>;

void write_kv(const std::string& path, const KV& kv) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw validation_error("cannot write " + path);
    for (const auto& [k, v] : kv) f << k << " = " << v << "\n";
}

// flat one-object JSON; values arrive pre-rendered so numbers keep their
// 17-digit form
void write_json(const std::string& path, const KV& kv) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw validation_error("cannot write " + path);
    f << "{\n";
    for (std::size_t i = 0; i < kv.size(); i++) {
        bool quoted = !kv[i].second.empty() && kv[i].second != "true" &&
                      kv[i].second != "false" &&
                      kv[i].second.find_first_not_of("0123456789+-.eE") != std::string::npos;
        f << "  \"" << kv[i].first << "\": ";
        if (quoted) f << '"' << kv[i].second << '"';
        else f << kv[i].second;
        f << (i + 1 < kv.size() ? ",\n" : "\n");
    }
    f << "}\n";
}

std::string fb(bool b) { return b ? "true" : "false"; }

PolyhedralSet load_set(const std::string& path) {
    return make_polyhedral(load_polygons(path));
}

// shared recovery setup: natural field strength for the set, epsilon snapped
// so the flux quantum count is a positive multiple of n
struct RecoverySetup {
    Params params;
    double area = 0.0;
};

RecoverySetup recovery_setup(const PolyhedralSet& E, double kappa, const std::string& eps_str,
                             int n, double eps0) {
    RecoverySetup rs;
    rs.area = measures(E).area;
    double b_ext = rs.area * kappa / kSqrt2;
    double eps;
    if (eps_str == "auto") {
        double hint = eps0 / 8.0;
        double m_hint = b_ext / (kTwoPi * kappa * kappa * hint * hint);
        long long mult = std::max<long long>(1, std::llround(m_hint / n));
        eps = std::sqrt(b_ext / (kTwoPi * (double)(n * mult) * kappa * kappa));
    } else {
        eps = std::stod(eps_str);
    }
    rs.params = make_params(eps, kappa, b_ext);
    return rs;
}

KV recovery_report_kv(const RecoveryReport& r, const Params& prm) {
    KV kv = {
        {"epsilon", format_full(prm.epsilon)},
        {"kappa", format_full(prm.kappa)},
        {"b_ext", format_full(prm.b_ext)},
        {"alpha", format_full(prm.alpha)},
        {"energy_total", format_full(r.energy.total)},
        {"energy_grad_sym", format_full(r.energy.grad_sym)},
        {"energy_grad_bogo", format_full(r.energy.grad_bogo)},
        {"energy_well", format_full(r.energy.well)},
        {"target", format_full(r.target)},
        {"flux_error", format_full(r.flux_error)},
        {"max_loop_defect", format_full(r.max_loop_defect)},
        {"max_seam_jump", format_full(r.max_seam_jump)},
        {"max_offsquare_cov", format_full(r.max_offsquare_cov)},
        {"rho_l1_gap", format_full(r.rho_l1_gap)},
        {"square_energy", format_full(r.square_energy)},
        {"corner_energy", format_full(r.corner_energy)},
        {"deep_energy", format_full(r.deep_energy)},
        {"outside_energy", format_full(r.outside_energy)},
        {"per_square_mean", format_full(r.per_square_mean)},
        {"squares", std::to_string(r.squares)},
    };
    for (std::size_t c = 0; c < r.zeta.size(); c++)
        kv.emplace_back("zeta_" + std::to_string(c), format_full(r.zeta[c]));
    for (std::size_t c = 0; c < r.component_flux.size(); c++) {
        kv.emplace_back("component_flux_" + std::to_string(c), format_full(r.component_flux[c]));
        kv.emplace_back("component_target_" + std::to_string(c),
                        format_full(r.component_target[c]));
    }
    return kv;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"discrete vortex-free interface energies on the unit torus"};
    app.require_subcommand(1);
    app.set_config("--config", "", "flat key = value configuration file");

    std::string out = ".";
    bool deterministic = true;
    long long seed = 0;
    app.add_option("--out", out, "output directory");
    app.add_flag("--deterministic,!--no-deterministic", deterministic,
                 "fixed-order reductions (always on in this build)");
    app.add_option("--seed", seed, "recorded in resolved.cfg for provenance");

    auto common_kv = [&](const std::string& sub) {
        return KV{{"subcommand", sub},
                  {"out", out},
                  {"deterministic", fb(deterministic)},
                  {"seed", std::to_string(seed)}};
    };

    // profile1d: kappa sweep of the line energy
    {
        auto* sc = app.add_subcommand("profile1d", "line transition energies over kappa");
        auto kappa_list = std::make_shared<std::string>("0.05,0.2,0.4,0.6,0.7");
        auto T = std::make_shared<double>(25.0);
        auto n = std::make_shared<int>(2500);
        sc->add_option("--kappa-list", *kappa_list, "comma separated kappas");
        sc->add_option("--T", *T, "half length of the line domain");
        sc->add_option("--n", *n, "line grid intervals");
        sc->callback([&, kappa_list, T, n] {
            KV cfg = common_kv("profile1d");
            cfg.emplace_back("kappa_list", *kappa_list);
            cfg.emplace_back("T", format_full(*T));
            cfg.emplace_back("n", std::to_string(*n));
            write_kv(out + "/resolved.cfg", cfg);
            std::ostringstream csv;
            csv << "# line transition energy sweep, T = " << format_full(*T)
                << ", n = " << *n << "\n";
            csv << "kappa,sigma_1d\n";
            for (double k : parse_list(*kappa_list)) {
                Profile1D p = minimize_profile1d(k, *T, *n);
                csv << format_full(k) << "," << format_full(p.energy_1d) << "\n";
            }
            std::ofstream f(out + "/profile1d.csv", std::ios::binary);
            f << csv.str();
            std::cout << csv.str();
        });
    }

    // block: build and audit one unit-cell building block
    {
        auto* sc = app.add_subcommand("block", "build the lifted unit-cell block");
        auto kappa = std::make_shared<double>(0.25);
        auto eps0 = std::make_shared<double>(1.0 / 16.0);
        auto delta0 = std::make_shared<double>(0.25);
        auto n = std::make_shared<int>(512);
        sc->add_option("--kappa", *kappa);
        sc->add_option("--eps0", *eps0);
        sc->add_option("--delta0", *delta0);
        sc->add_option("--n", *n, "cell grid intervals");
        sc->callback([&, kappa, eps0, delta0, n] {
            KV cfg = common_kv("block");
            cfg.emplace_back("kappa", format_full(*kappa));
            cfg.emplace_back("eps0", format_full(*eps0));
            cfg.emplace_back("delta0", format_full(*delta0));
            cfg.emplace_back("n", std::to_string(*n));
            write_kv(out + "/resolved.cfg", cfg);
            Profile1D p = minimize_profile1d(*kappa, 25.0, 2500);
            BuildingBlock blk = build_block(p, *eps0, *delta0, *n);
            write_json(out + "/report.json",
                       {{"kappa", format_full(*kappa)},
                        {"eps0", format_full(*eps0)},
                        {"delta0", format_full(*delta0)},
                        {"sigma_cell", format_full(blk.sigma_cell)},
                        {"flux0", format_full(blk.flux0)},
                        {"cut", format_full(blk.cut)},
                        {"sigma_1d", format_full(p.energy_1d)}});
            save_snapshot(out + "/fields.gl2d", blk.cfg);
        });
    }

    // cell: constrained cell minimization
    {
        auto* sc = app.add_subcommand("cell", "minimal cell energy under strip conditions");
        auto kappa = std::make_shared<double>(0.25);
        auto eps0 = std::make_shared<double>(1.0 / 16.0);
        auto delta = std::make_shared<double>(0.25);
        auto variant = std::make_shared<std::string>("dirichlet");
        auto n = std::make_shared<int>(256);
        sc->add_option("--kappa", *kappa);
        sc->add_option("--eps0", *eps0);
        sc->add_option("--delta", *delta);
        sc->add_option("--variant", *variant)->check(CLI::IsMember({"dirichlet", "periodic"}));
        sc->add_option("--n", *n);
        sc->callback([&, kappa, eps0, delta, variant, n] {
            KV cfg = common_kv("cell");
            cfg.emplace_back("kappa", format_full(*kappa));
            cfg.emplace_back("eps0", format_full(*eps0));
            cfg.emplace_back("delta", format_full(*delta));
            cfg.emplace_back("variant", *variant);
            cfg.emplace_back("n", std::to_string(*n));
            write_kv(out + "/resolved.cfg", cfg);
            CellVariant v =
                *variant == "dirichlet" ? CellVariant::dirichlet : CellVariant::periodic;
            double value = cell_sigma(*kappa, *eps0, *delta, v, *n);
            write_json(out + "/report.json", {{"kappa", format_full(*kappa)},
                                              {"variant", *variant},
                                              {"n", std::to_string(*n)},
                                              {"value", format_full(value)}});
            std::cout << "value = " << format_full(value) << "\n";
        });
    }

    // recovery: assemble the near-limit candidate on a polygon file
    {
        auto* sc = app.add_subcommand("recovery", "assembled candidate for a polyhedral set");
        auto set_path = std::make_shared<std::string>();
        auto kappa = std::make_shared<double>(0.25);
        auto eps = std::make_shared<std::string>("auto");
        auto n = std::make_shared<int>(256);
        auto eps0 = std::make_shared<double>(1.0 / 16.0);
        auto delta0 = std::make_shared<double>(0.25);
        sc->add_option("--set", *set_path, "polygon loop file")->required();
        sc->add_option("--kappa", *kappa);
        sc->add_option("--eps", *eps, "epsilon value, or 'auto' to snap");
        sc->add_option("--n", *n);
        sc->add_option("--eps0", *eps0);
        sc->add_option("--delta0", *delta0);
        sc->callback([&, set_path, kappa, eps, n, eps0, delta0] {
            KV cfg = common_kv("recovery");
            cfg.emplace_back("set", *set_path);
            cfg.emplace_back("kappa", format_full(*kappa));
            cfg.emplace_back("eps", *eps);
            cfg.emplace_back("n", std::to_string(*n));
            cfg.emplace_back("eps0", format_full(*eps0));
            cfg.emplace_back("delta0", format_full(*delta0));
            write_kv(out + "/resolved.cfg", cfg);
            PolyhedralSet E = load_set(*set_path);
            RecoverySetup rs = recovery_setup(E, *kappa, *eps, *n, *eps0);
            Profile1D p = minimize_profile1d(*kappa, 25.0, 2500);
            BuildingBlock blk = build_block(p, *eps0, *delta0, 512);
            RecoveryReport r = build_recovery(E, rs.params, blk, *n);
            write_json(out + "/report.json", recovery_report_kv(r, rs.params));
            save_snapshot(out + "/fields.gl2d", r.cfg);
            std::cout << "energy = " << format_full(r.energy.total)
                      << ", target = " << format_full(r.target) << "\n";
        });
    }

    // minimize: torus ground state from a snapshot or a fresh recovery init
    {
        auto* sc = app.add_subcommand("minimize", "descend to a torus ground state");
        auto snapshot = std::make_shared<std::string>();
        auto set_path = std::make_shared<std::string>();
        auto kappa = std::make_shared<double>(0.25);
        auto eps = std::make_shared<std::string>("auto");
        auto n = std::make_shared<int>(256);
        auto eps0 = std::make_shared<double>(1.0 / 16.0);
        auto budget = std::make_shared<int>(50000);
        auto tol = std::make_shared<double>(1e-8);
        sc->add_option("--snapshot", *snapshot, "start from a saved field file");
        sc->add_option("--set", *set_path, "or assemble a recovery start from this set");
        sc->add_option("--kappa", *kappa);
        sc->add_option("--eps", *eps);
        sc->add_option("--n", *n);
        sc->add_option("--eps0", *eps0);
        sc->add_option("--budget", *budget, "iteration budget");
        sc->add_option("--tol", *tol, "gradient tolerance per grid site");
        sc->callback([&, snapshot, set_path, kappa, eps, n, eps0, budget, tol] {
            if (snapshot->empty() == set_path->empty())
                throw validation_error("minimize: give exactly one of --snapshot, --set");
            KV cfg = common_kv("minimize");
            cfg.emplace_back("snapshot", *snapshot);
            cfg.emplace_back("set", *set_path);
            cfg.emplace_back("kappa", format_full(*kappa));
            cfg.emplace_back("eps", *eps);
            cfg.emplace_back("n", std::to_string(*n));
            cfg.emplace_back("budget", std::to_string(*budget));
            cfg.emplace_back("tol", format_full(*tol));
            write_kv(out + "/resolved.cfg", cfg);
            Configuration init;
            if (!snapshot->empty()) {
                init = load_snapshot(*snapshot);
            } else {
                PolyhedralSet E = load_set(*set_path);
                RecoverySetup rs = recovery_setup(E, *kappa, *eps, *n, *eps0);
                Profile1D p = minimize_profile1d(*kappa, 25.0, 2500);
                BuildingBlock blk = build_block(p, *eps0, 0.25, 512);
                init = build_recovery(E, rs.params, blk, *n).cfg;
            }
            MinimizeOptions opts;
            opts.budget = *budget;
            opts.tol_per_site = *tol;
            MinimizeResult r = minimize(init, BoundarySpec{}, opts);
            write_json(out + "/report.json",
                       {{"energy_total", format_full(r.energy.total)},
                        {"energy_grad_sym", format_full(r.energy.grad_sym)},
                        {"energy_grad_bogo", format_full(r.energy.grad_bogo)},
                        {"energy_well", format_full(r.energy.well)},
                        {"iterations", std::to_string(r.iterations)},
                        {"final_grad_norm", format_full(r.final_grad_norm)},
                        {"converged", fb(r.converged)}});
            save_snapshot(out + "/fields.gl2d", r.cfg);
            std::cout << "energy = " << format_full(r.energy.total)
                      << ", converged = " << fb(r.converged) << "\n";
            if (!r.converged) g_exit = 3;
        });
    }

    // sweep: epsilon sweep of a scenario
    {
        auto* sc = app.add_subcommand("sweep", "epsilon sweep of a scenario");
        auto scenario = std::make_shared<std::string>("flat");
        auto kappa = std::make_shared<double>(0.25);
        auto eps_list = std::make_shared<std::string>();
        auto n = std::make_shared<int>(128);
        auto set_path = std::make_shared<std::string>();
        auto budget = std::make_shared<int>(50000);
        sc->add_option("--scenario", *scenario)->check(CLI::IsMember({"flat", "recovery"}));
        sc->add_option("--kappa", *kappa);
        sc->add_option("--eps-list", *eps_list, "comma separated epsilons")->required();
        sc->add_option("--n", *n);
        sc->add_option("--set", *set_path, "polygon file for the recovery scenario");
        sc->add_option("--budget", *budget);
        sc->callback([&, scenario, kappa, eps_list, n, set_path, budget] {
            KV cfg = common_kv("sweep");
            cfg.emplace_back("scenario", *scenario);
            cfg.emplace_back("kappa", format_full(*kappa));
            cfg.emplace_back("eps_list", *eps_list);
            cfg.emplace_back("n", std::to_string(*n));
            cfg.emplace_back("set", *set_path);
            cfg.emplace_back("budget", std::to_string(*budget));
            write_kv(out + "/resolved.cfg", cfg);
            PolyhedralSet E;
            SweepScenario sscn = SweepScenario::flat_interface_torus;
            const PolyhedralSet* ep = nullptr;
            if (*scenario == "recovery") {
                if (set_path->empty()) throw validation_error("sweep: recovery needs --set");
                E = load_set(*set_path);
                ep = &E;
                sscn = SweepScenario::recovery_set;
            }
            MinimizeOptions opts;
            opts.budget = *budget;
            std::vector<SweepPoint> rows =
                epsilon_sweep(sscn, *kappa, parse_list(*eps_list), *n, ep, opts);
            std::ofstream f(out + "/sweep.csv", std::ios::binary);
            f << "# scenario = " << *scenario << ", kappa = " << format_full(*kappa)
              << ", n = " << *n << ", budget = " << *budget << "\n";
            f << "epsilon,b_ext,energy,energy_per_length,well_l2,rho_l1,iterations,converged\n";
            bool all_ok = true;
            for (const SweepPoint& r : rows) {
                f << format_full(r.epsilon) << "," << format_full(r.b_ext) << ","
                  << format_full(r.energy) << "," << format_full(r.energy_per_length) << ","
                  << format_full(r.well_l2) << "," << format_full(r.rho_l1) << ","
                  << r.iterations << "," << fb(r.converged) << "\n";
                all_ok = all_ok && r.converged;
            }
            if (!all_ok) g_exit = 3;
        });
    }

    // snap-eps: nearest admissible epsilon
    {
        auto* sc = app.add_subcommand("snap-eps", "nearest flux-quantized epsilon");
        auto kappa = std::make_shared<double>(0.25);
        auto b_ext = std::make_shared<double>(-1.0);
        auto b_over_k = std::make_shared<double>(-1.0);
        auto hint = std::make_shared<double>(0.05);
        sc->add_option("--kappa", *kappa);
        sc->add_option("--b-ext", *b_ext, "applied field strength");
        sc->add_option("--b-ext-over-kappa", *b_over_k, "applied field as a multiple of kappa");
        sc->add_option("--hint", *hint, "epsilon hint");
        sc->callback([&, kappa, b_ext, b_over_k, hint] {
            double b = *b_ext;
            if (b < 0 && *b_over_k >= 0) b = *b_over_k * *kappa;
            if (b < 0) throw validation_error("snap-eps: give --b-ext or --b-ext-over-kappa");
            KV cfg = common_kv("snap-eps");
            cfg.emplace_back("kappa", format_full(*kappa));
            cfg.emplace_back("b_ext", format_full(b));
            cfg.emplace_back("hint", format_full(*hint));
            write_kv(out + "/resolved.cfg", cfg);
            SnappedEpsilon se = admissible_epsilon(*kappa, b, *hint);
            std::cout << "epsilon = " << format_full(se.epsilon) << "\n";
            std::cout << "m = " << se.m << "\n";
        });
    }

    // nondim: physical sample to unit-torus parameters
    {
        auto* sc = app.add_subcommand("nondim", "convert a physical sample to model units");
        auto kappa = std::make_shared<double>(0.25);
        auto L = std::make_shared<double>(1.0);
        auto b_ext = std::make_shared<double>(0.0);
        sc->add_option("--kappa", *kappa);
        sc->add_option("--L", *L, "physical sample side");
        sc->add_option("--b-ext", *b_ext);
        sc->callback([&, kappa, L, b_ext] {
            KV cfg = common_kv("nondim");
            cfg.emplace_back("kappa", format_full(*kappa));
            cfg.emplace_back("L", format_full(*L));
            cfg.emplace_back("b_ext", format_full(*b_ext));
            write_kv(out + "/resolved.cfg", cfg);
            Params prm = nondimensionalize(*kappa, *L, *b_ext);
            std::cout << "epsilon = " << format_full(prm.epsilon) << "\n";
            std::cout << "alpha = " << format_full(prm.alpha) << "\n";
            std::cout << "b_ext = " << format_full(prm.b_ext) << "\n";
        });
    }

    // let --out and friends appear after the subcommand name
    for (CLI::App* s : app.get_subcommands([](CLI::App*) { return true; })) s->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "{\"error\": \"validation\", \"message\": \"" << e.what() << "\"}\n";
        return 2;
    } catch (const validation_error& e) {
        std::cerr << "{\"error\": \"validation\", \"message\": \"" << e.what() << "\"}\n";
        return 2;
    } catch (const numerical_error& e) {
        std::cerr << "{\"error\": \"numerical\", \"message\": \"" << e.what() << "\"}\n";
        return 3;
    }
    return g_exit;
}
