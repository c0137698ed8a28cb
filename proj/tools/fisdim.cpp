// fisdim: construct generalized affine fractal interpolation surfaces and
// estimate the box dimension of their graphs.
//
//   fisdim validate <config.json>
//   fisdim render   <config.json> --level m [--out dir]
//   fisdim spectra  <config.json> --n-max k [--tol t] [--out dir]
//   fisdim dim      <config.json> [--out dir]
//   fisdim osc      <config.json> --n n --k k [--out dir]

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fisdim/config.hpp"
#include "fisdim/dimension.hpp"
#include "fisdim/oscillation.hpp"
#include "fisdim/scaling.hpp"

namespace fs = std::filesystem;
using namespace fisdim;

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir = ".";
};

fif::FisSystem load_system(const CommonArgs& args, const config::Config** cfg_out,
                           config::Config& cfg_storage) {
    cfg_storage = config::load(args.config_path);
    if (cfg_out) *cfg_out = &cfg_storage;
    return config::make_system(cfg_storage);
}

std::ofstream open_out(const CommonArgs& args, const std::string& name) {
    fs::create_directories(args.out_dir);
    const fs::path p = fs::path(args.out_dir) / name;
    std::ofstream out(p, std::ios::binary);
    if (!out) throw Error("cannot open output file " + p.string());
    return out;
}

void print_validation(const fif::ValidationReport& rep, const scaling::ConditionReport& cond) {
    std::cout << "validation: " << (rep.ok() ? "pass" : "FAIL") << "\n";
    std::cout << "  s_max = " << rep.s_max << " (interval certificate, refine=" << rep.s_max_refine
              << ") " << (rep.s_max_ok ? "ok" : "FAIL") << "\n";
    std::cout << "  h node residual = " << rep.h_node_residual << " (worst node " << rep.h_worst_i
              << "," << rep.h_worst_j << ")\n";
    std::cout << "  g corner residual = " << rep.g_corner_residual << "\n";
    std::cout << "  lambda_S = " << rep.lambda_S
              << (rep.lambda_S_overridden ? " (override)" : " (estimate)") << "\n";
    std::cout << "  lambda_q = " << rep.lambda_q
              << (rep.lambda_q_overridden ? " (override)" : " (estimate)") << "\n";
    for (const auto& f : rep.failures) std::cout << "  failure: " << f << "\n";
    for (const auto& w : rep.warnings) std::cout << "  warning: " << w << "\n";
    std::cout << "conditions:\n";
    std::cout << "  sign-definite: "
              << (cond.sign_definite ? "verified" : cond.sign_refuted ? "refuted" : "inconclusive");
    if (cond.sign_definite) std::cout << " (sign " << (cond.sign > 0 ? "+" : "-") << ")";
    if (cond.zero_curve) std::cout << " (zero curve flagged)";
    std::cout << "\n";
    std::cout << "  gamma_* estimate = " << cond.gamma_star << " -> "
              << (cond.gamma_condition ? "verified" : "not verified") << "\n";
    std::cout << "  S not identically zero on subrectangles: "
              << (cond.not_identically_zero ? "yes" : "NO") << "\n";
}

int dispatch(const std::string& cmd, const CommonArgs& args, int level, int n_max, int osc_n,
             int osc_k, double tol_flag) {
    config::Config cfg;
    const config::Config* cfgp = nullptr;
    fif::FisSystem sys = load_system(args, &cfgp, cfg);
    const int refine = cfg.refine.value_or(2);
    const double tol = tol_flag > 0 ? tol_flag : cfg.tol.value_or(1e-8);

    fif::ValidationReport vrep = fif::validate(sys, refine);

    if (cmd == "validate") {
        const auto cond = scaling::check_conditions(sys.S, sys.nodes, sys.lambda_S);
        print_validation(vrep, cond);
        return vrep.ok() ? 0 : 1;
    }
    if (!vrep.ok()) {
        nlohmann::json j;
        j["error"] = "validation failed";
        j["failures"] = vrep.failures;
        std::cerr << j.dump(2) << "\n";
        return 1;
    }

    if (cmd == "render") {
        const fif::GridFunction gf = fif::evaluate_and_record(sys, level);
        auto out = open_out(args, "surface_level" + std::to_string(level) + ".csv");
        fif::write_csv(gf, out);
        std::cout << "wrote surface_level" << level << ".csv (" << gf.size << "x" << gf.size
                  << ")\n";
        return 0;
    }
    if (cmd == "spectra") {
        const int nm = n_max > 0 ? n_max : cfg.n_max.value_or(3);
        const auto seq = scaling::rho_sequence(sys.S, sys.nodes, nm, refine, tol);
        std::cout << "n  rho(M_lower) enclosure      rho(M_upper) enclosure\n";
        for (const auto& e : seq) {
            std::printf("%d  [%.10g, %.10g]  [%.10g, %.10g]%s\n", e.n, e.lower.rho_lo,
                        e.lower.rho_hi, e.upper.rho_lo, e.upper.rho_hi,
                        e.lower.certified ? "" : "  (lower not certified)");
            auto [up, low] = scaling::build(sys.S, sys.nodes, e.n, refine);
            auto uout = open_out(args, "matrix_upper_n" + std::to_string(e.n) + ".mtx");
            scaling::write_matrix_market(up, uout);
            auto lout = open_out(args, "matrix_lower_n" + std::to_string(e.n) + ".mtx");
            scaling::write_matrix_market(low, lout);
        }
        return 0;
    }
    if (cmd == "dim") {
        dim::ReportOptions opt;
        opt.n_max = cfg.n_max.value_or(3);
        opt.refine = refine;
        opt.tol = tol;
        opt.eval_level = cfg.eval_level.value_or(std::max(opt.n_max + 2, 6));
        const dim::DimensionReport rep = dim::full_report(sys, opt);
        auto jout = open_out(args, "dimension_report.json");
        jout << dim::to_json(rep) << "\n";
        auto pout = open_out(args, "dimension_plots.csv");
        dim::write_plot_csv(rep, pout);
        dim::write_text(rep, std::cout);
        return 0;
    }
    if (cmd == "osc") {
        const int lvl = cfg.eval_level.value_or(std::max(osc_n + osc_k + 2, 6));
        const fif::GridFunction gf = fif::evaluate_and_record(sys, lvl);
        const osc::OscVector v = osc::osc_vector(gf, osc_n, osc_k);
        auto out = open_out(args,
                            "oscvector_n" + std::to_string(osc_n) + "_k" + std::to_string(osc_k) +
                                ".csv");
        osc::write_csv(v, out);
        std::cout << "||V(f," << osc_n << "," << osc_k << ")||_1 = " << v.norm1() << "\n";
        return 0;
    }
    throw Error("unknown command " + cmd);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fractal interpolation surfaces and box-dimension bounds"};
    app.require_subcommand(1);

    CommonArgs args;
    int level = 6, n_max = 0, osc_n = 1, osc_k = 1;
    double tol_flag = 0.0;

    std::vector<CLI::App*> subs;
    for (const char* name : {"validate", "render", "spectra", "dim", "osc"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("config", args.config_path, "JSON configuration file")->required();
        sub->add_option("--out", args.out_dir, "output directory");
        sub->add_option("--tol", tol_flag, "spectral enclosure tolerance");
        subs.push_back(sub);
    }
    app.get_subcommand("render")->add_option("--level", level, "evaluation level m");
    app.get_subcommand("spectra")->add_option("--n-max", n_max, "largest matrix level");
    app.get_subcommand("osc")->add_option("--n", osc_n, "word length n")->required();
    app.get_subcommand("osc")->add_option("--k", osc_k, "oscillation depth k")->required();

    CLI11_PARSE(app, argc, argv);

    const std::string cmd = app.get_subcommands().front()->get_name();
    try {
        return dispatch(cmd, args, level, n_max, osc_n, osc_k, tol_flag);
    } catch (const config::ConfigError& e) {
        nlohmann::json j;
        j["error"] = "invalid config";
        nlohmann::json fields = nlohmann::json::array();
        for (const auto& fe : e.errors) fields.push_back({{"field", fe.field}, {"reason", fe.reason}});
        j["fields"] = fields;
        std::cerr << j.dump(2) << "\n";
        return 2;
    } catch (const std::exception& e) {
        nlohmann::json j;
        j["error"] = e.what();
        std::cerr << j.dump(2) << "\n";
        return 1;
    }
}
