// wedge: diffraction coefficients of an impedance right-angled concave wedge.
//
//   wedge --config run.cfg [--mode full|identities-only|oracle|index-only]
//         [--out-dir DIR] [--seed-rho0 re,im] [--seed-sigma0 re,im]
//         [--tol-override NAME=VALUE]...
//
// Exit status: 0 all checks pass, 2 bad input, 3 some check failed.

#include <iostream>

#include "CLI11.hpp"
#include "wedge/cli.hpp"

int main(int argc, char** argv) {
    using namespace wedge;
    CLI::App app{"Diffraction by an anisotropic impedance right-angled concave wedge"};
    std::string config, mode, out_dir = ".", rho0, sigma0;
    std::vector<std::string> overrides;
    app.add_option("--config", config, "run configuration (dotted keys)")->required();
    app.add_option("--mode", mode, "full, identities-only, oracle or index-only");
    app.add_option("--out-dir", out_dir, "directory for tables and the report");
    app.add_option("--seed-rho0", rho0, "surface seed rho0 as re,im");
    app.add_option("--seed-sigma0", sigma0, "surface seed sigma0 as re,im");
    app.add_option("--tol-override", overrides, "NAME=VALUE, repeatable");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    cli::RunConfig cfg;
    try {
        cfg = cli::load_config(config);
        std::vector<std::string> err;
        if (!mode.empty()) {
            if (auto m = cli::parse_mode(mode)) cfg.mode = *m;
            else err.push_back("--mode: unknown mode '" + mode + "'");
        }
        auto seed = [&](const std::string& s, std::optional<cplx>& slot, const char* flag) {
            if (s.empty()) return;
            if (auto z = cli::parse_pair(s)) slot = z;
            else err.push_back(std::string(flag) + ": expected re,im");
        };
        seed(rho0, cfg.rho0, "--seed-rho0");
        seed(sigma0, cfg.sigma0, "--seed-sigma0");
        Tolerances probe;
        for (auto& o : overrides) {
            auto eq = o.find('=');
            std::optional<double> v;
            if (eq != std::string::npos) v = cli::parse_real(o.substr(eq + 1));
            if (v && probe.set(o.substr(0, eq), *v)) cfg.tol_overrides.emplace_back(o.substr(0, eq), *v);
            else err.push_back("--tol-override: bad entry '" + o + "'");
        }
        if (!err.empty()) throw ValidationError(err);
    } catch (const ValidationError& e) {
        for (auto& m : e.messages) std::cerr << "config error: " << m << "\n";
        return 2;
    }
    return cli::run(cfg, out_dir, std::cout).status;
}
