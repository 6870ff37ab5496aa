#include "wedge/cli.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

namespace wedge::cli {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r"), b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
}

// locale-free, whole string must be consumed
std::optional<double> to_double(const std::string& s) {
    double v = 0;
    auto t = trim(s);
    if (t.empty()) return std::nullopt;
    const char* b = t.data() + (t[0] == '+');
    auto [ptr, ec] = std::from_chars(b, t.data() + t.size(), v);
    if (ec != std::errc{} || ptr != t.data() + t.size()) return std::nullopt;
    return v;
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// complex keys: the value is assembled from KEY.re and KEY.im
const std::map<std::string, std::optional<cplx> RawProblem::*> complex_problem_keys = {
    {"problem.k", &RawProblem::k},           {"problem.k0", &RawProblem::k0},
    {"problem.gamma1p", &RawProblem::g1p},   {"problem.gamma4p", &RawProblem::g4p},
    {"problem.gamma1m", &RawProblem::g1m},   {"problem.gamma4m", &RawProblem::g4m},
    {"problem.eta_rr_p", &RawProblem::eta_rr_p}, {"problem.eta_zz_p", &RawProblem::eta_zz_p},
    {"problem.eta_rr_m", &RawProblem::eta_rr_m}, {"problem.eta_zz_m", &RawProblem::eta_zz_m},
};

struct Parts {
    std::optional<double> re, im;
};

}  // namespace

std::optional<Mode> parse_mode(const std::string& s) {
    if (s == "full") return Mode::full;
    if (s == "identities-only") return Mode::identities_only;
    if (s == "oracle") return Mode::oracle;
    if (s == "index-only") return Mode::index_only;
    return std::nullopt;
}

std::optional<double> parse_real(const std::string& s) { return to_double(s); }

std::optional<cplx> parse_pair(const std::string& s) {
    auto c = s.find(',');
    if (c == std::string::npos) return std::nullopt;
    auto re = to_double(s.substr(0, c)), im = to_double(s.substr(c + 1));
    if (!re || !im) return std::nullopt;
    return cplx(*re, *im);
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::vector<std::string> err;
    std::map<std::string, Parts> pairs;
    std::istringstream in(text);
    std::string line;
    for (int lineno = 1; std::getline(in, line); ++lineno) {
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            err.push_back("line " + std::to_string(lineno) + ": expected key = value");
            continue;
        }
        std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
        auto bad = [&](const std::string& what) {
            err.push_back("line " + std::to_string(lineno) + ": " + key + ": " + what);
        };
        auto real = [&](auto& slot) {
            if (auto v = to_double(val)) slot = *v;
            else bad("not a number '" + val + "'");
        };

        if (key.size() > 3 && (key.ends_with(".re") || key.ends_with(".im"))) {
            std::string base = key.substr(0, key.size() - 3);
            bool known = complex_problem_keys.count(base) || base == "problem.i1" || base == "problem.i2" ||
                         base == "seeds.rho0" || base == "seeds.sigma0";
            if (!known) {
                bad("unknown key");
                continue;
            }
            auto& part = pairs[base];
            real(key.ends_with(".re") ? part.re : part.im);
        } else if (key == "problem.beta") {
            real(cfg.problem.beta);
        } else if (key == "problem.theta0") {
            real(cfg.problem.theta0);
        } else if (key == "problem.preset") {
            cfg.preset = val;
        } else if (key == "numerics.rel_tol") {
            real(cfg.rel_tol);
        } else if (key == "numerics.abs_tol") {
            real(cfg.abs_tol);
        } else if (key == "numerics.truncation_radius") {
            real(cfg.truncation_radius);
        } else if (key == "numerics.tail_exponent") {
            real(cfg.tail_exponent);
        } else if (key == "numerics.max_subdivisions") {
            std::optional<double> v;
            real(v);
            if (v) cfg.max_subdivisions = (int)*v;
        } else if (key == "grid.start") {
            real(cfg.grid_start);
        } else if (key == "grid.stop") {
            real(cfg.grid_stop);
        } else if (key == "grid.count") {
            double v = 0;
            real(v);
            cfg.grid_count = (int)v;
        } else if (key == "outputs.csv") {
            cfg.csv = val;
        } else if (key == "outputs.reflections") {
            cfg.reflections = val;
        } else if (key == "outputs.plot") {
            cfg.plot = val;
        } else if (key == "outputs.diagnostics") {
            cfg.diagnostics = val;
        } else if (key == "mode") {
            if (auto m = parse_mode(val)) cfg.mode = *m;
            else bad("unknown mode '" + val + "'");
        } else if (key.starts_with("tol.")) {
            std::optional<double> v;
            real(v);
            if (v) cfg.tol_overrides.emplace_back(key.substr(4), *v);
        } else {
            bad("unknown key");
        }
    }

    for (auto& [base, part] : pairs) {
        if (!part.re || !part.im) {
            err.push_back(base + ": both .re and .im are required");
            continue;
        }
        cplx z(*part.re, *part.im);
        if (auto it = complex_problem_keys.find(base); it != complex_problem_keys.end()) cfg.problem.*(it->second) = z;
        else if (base == "problem.i1") cfg.problem.i1 = z;
        else if (base == "problem.i2") cfg.problem.i2 = z;
        else if (base == "seeds.rho0") cfg.rho0 = z;
        else cfg.sigma0 = z;
    }

    if (!(cfg.grid_start > 0 && cfg.grid_stop < PI / 2 && cfg.grid_start < cfg.grid_stop))
        err.push_back("grid: need 0 < start < stop < pi/2");
    if (cfg.grid_count < 2) err.push_back("grid.count must be at least 2");
    Tolerances probe;
    for (auto& [name, v] : cfg.tol_overrides)
        if (!probe.set(name, v)) err.push_back("tol." + name + ": unknown tolerance");
    if (!err.empty()) throw ValidationError(err);
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ValidationError({"cannot read config " + path});
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

WedgeProblem resolve_problem(const RunConfig& cfg) {
    RawProblem raw = cfg.problem;
    if (cfg.preset) {
        const ReferenceCase* fc = nullptr;
        for (auto& c : reference_cases())
            if (c.name == *cfg.preset) fc = &c;
        if (!fc) throw ValidationError({"problem.preset: unknown set '" + *cfg.preset + "'"});
        bool custom = raw.g1p || raw.g4p || raw.g1m || raw.g4m || raw.eta_rr_p || raw.eta_zz_p || raw.eta_rr_m ||
                      raw.eta_zz_m;
        if (!custom) raw.g1p = fc->g1p, raw.g4p = fc->g4p, raw.g1m = fc->g1m, raw.g4m = fc->g4m;
        if (!raw.k && !raw.k0) raw.k0 = cplx(1.0, 0.1);
        if (!raw.beta) raw.beta = PI / 4;
        if (!raw.theta0) raw.theta0 = PI / 3;
    }
    return build_problem(raw);
}

std::string emit_table(const std::vector<DiffractionSample>& rows) {
    std::string s = "theta,re_D1,im_D1,re_D2,im_D2,flag\n";
    for (auto& r : rows)
        s += num(r.theta) + "," + num(r.D(0).real()) + "," + num(r.D(0).imag()) + "," + num(r.D(1).real()) + "," +
             num(r.D(1).imag()) + "," + (r.flagged ? "1" : "0") + "\n";
    return s;
}

std::string emit_plotdata(const std::vector<DiffractionSample>& rows) {
    std::string s = "theta,abs_D1,arg_D1,abs_D2,arg_D2\n";
    for (auto& r : rows)
        s += num(r.theta) + "," + num(std::abs(r.D(0))) + "," + num(std::arg(r.D(0))) + "," + num(std::abs(r.D(1))) +
             "," + num(std::arg(r.D(1))) + "\n";
    return s;
}

std::string emit_reflections(const ReflectionSet& r) {
    std::string s = "name,re,im\n";
    std::pair<const char*, cplx> v[] = {{"r1+", r.r1p}, {"r2+", r.r2p}, {"r1-", r.r1m}, {"r2-", r.r2m},
                                        {"R1+", r.R1p}, {"R2+", r.R2p}, {"R1-", r.R1m}, {"R2-", r.R2m}};
    for (auto& [name, z] : v) s += std::string(name) + "," + num(z.real()) + "," + num(z.imag()) + "\n";
    return s;
}

std::string emit_report(const std::vector<CheckRow>& rows) {
    std::string s = "# NAME | REF | RESIDUAL | TOL | PASS/FAIL\n";
    int failed = 0;
    for (auto& r : rows) {
        s += format_row(r) + "\n";
        failed += !r.pass();
    }
    s += "summary: " + std::to_string(rows.size()) + " checks, " + std::to_string(failed) + " failed\n";
    return s;
}

namespace {

void append(std::vector<CheckRow>& out, const std::vector<CheckRow>& rows, const std::string& prefix = {}) {
    for (auto r : rows) {
        r.name = prefix + r.name;
        out.push_back(std::move(r));
    }
}

CheckRow failure(const std::string& name, const std::string& ref, const std::exception& e) {
    return {name, ref, std::numeric_limits<double>::quiet_NaN(), 0.0, e.what()};
}

void write_file(const std::filesystem::path& p, const std::string& s) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    f << s;
}

}  // namespace

RunOutcome run(const RunConfig& cfg, const std::string& out_dir, std::ostream& log) {
    RunOutcome out;
    WedgeProblem p;
    Tolerances tol;
    for (auto& [name, v] : cfg.tol_overrides) tol.set(name, v);
    try {
        p = resolve_problem(cfg);
        if (cfg.mode == Mode::oracle && std::abs(p.beta - PI / 2) > 1e-12)
            throw ValidationError({"mode oracle needs problem.beta = pi/2"});
    } catch (const ValidationError& e) {
        for (auto& m : e.messages) log << "config error: " << m << "\n";
        out.status = 2;
        return out;
    }

    RhpConfig rc;
    for (QuadratureConfig* q : {&rc.surface.quad, &rc.factor.quad}) {
        if (cfg.rel_tol) q->rel_tol = *cfg.rel_tol;
        if (cfg.abs_tol) q->abs_tol = *cfg.abs_tol;
        if (cfg.truncation_radius) q->truncation_radius = *cfg.truncation_radius;
        if (cfg.tail_exponent) q->tail_exponent = *cfg.tail_exponent;
        if (cfg.max_subdivisions) q->max_subdivisions = *cfg.max_subdivisions;
    }
    rc.surface.rho0 = cfg.rho0;
    rc.surface.sigma0 = cfg.sigma0;

    namespace fs = std::filesystem;
    fs::path dir(out_dir.empty() ? "." : out_dir);
    fs::create_directories(dir);
    auto& rows = out.rows;

    switch (cfg.mode) {
    case Mode::index_only: {
        for (auto [tag, q] : {std::pair{std::string("kappa0"), p}, std::pair{std::string("kappa0^"), p.swapped()}}) {
            try {
                auto S = build_surface(q, build_structural(q), rc.surface);
                int ref = S.kappa0;
                std::string note = "computed " + std::to_string(S.kappa0);
                if (cfg.preset && tag == "kappa0")
                    for (auto& fc : reference_cases())
                        if (fc.name == *cfg.preset) {
                            ref = fc.kappa0_expected;
                            note += " expected " + std::to_string(ref);
                        }
                double r = std::abs(S.kappa0 - ref) + (std::abs(S.kappa0) > 1 ? 1.0 : 0.0);
                rows.push_back({tag, "index", r, tol.index, note});
            } catch (const std::exception& e) {
                rows.push_back(failure(tag, "index", e));
            }
        }
        break;
    }
    case Mode::identities_only:
        append(rows, structural_checks(p, tol));
        rows.push_back(reflection_check(p, tol));
        rows.push_back(identity_check(p, tol));
        break;
    case Mode::oracle:
        append(rows, oracle_checks(p, tol));
        break;
    case Mode::full: {
        append(rows, structural_checks(p, tol));
        rows.push_back(reflection_check(p, tol));
        rows.push_back(identity_check(p, tol));
        for (auto [pre, q] : {std::pair{std::string(""), p}, std::pair{std::string("swapped."), p.swapped()}}) {
            try {
                append(rows, jacobi_checks(q, tol, rc.surface), pre);
                append(rows, factorization_checks(q, tol, rc.surface), pre);
            } catch (const std::exception& e) {
                rows.push_back(failure(pre + "surface", "jacobi", e));
            }
        }
        try {
            auto sol = std::make_shared<const RhpSolution>(solve_rhp(p, rc));
            append(rows, rhp_checks(*sol, tol));
            Spectra sp(sol);
            rows.push_back(residue_check(sp, tol));
            std::vector<double> th(cfg.grid_count);
            for (int i = 0; i < cfg.grid_count; ++i)
                th[i] = cfg.grid_start + (cfg.grid_stop - cfg.grid_start) * i / (cfg.grid_count - 1);
            out.table = diffraction_grid(sp, th);
            append(rows, invariance_checks(p, tol, rc));
            if (std::abs(p.beta - PI / 2) < 1e-12) append(rows, oracle_checks(p, tol));
        } catch (const std::exception& e) {
            rows.push_back(failure("pipeline", "rhp", e));
        }
        break;
    }
    }

    try {
        if (cfg.mode == Mode::full || cfg.mode == Mode::identities_only)
            write_file(dir / cfg.reflections, emit_reflections(reflection_coefficients(p)));
        if (!out.table.empty()) {
            write_file(dir / cfg.csv, emit_table(out.table));
            write_file(dir / cfg.plot, emit_plotdata(out.table));
        }
        std::string report = emit_report(rows);
        write_file(dir / cfg.diagnostics, report);
        log << report;
    } catch (const std::exception& e) {
        log << "output error: " << e.what() << "\n";
        out.status = 3;
        return out;
    }
    for (auto& r : rows)
        if (!r.pass()) out.status = 3;
    return out;
}

}  // namespace wedge::cli
