#pragma once
// Run configuration, report and table writers behind the wedge command-line tool.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wedge/diagnostics.hpp"

namespace wedge::cli {

enum class Mode { full, identities_only, oracle, index_only };
std::optional<Mode> parse_mode(const std::string& s);

struct RunConfig {
    RawProblem problem;
    std::optional<std::string> preset;  // reference set name; fills unset problem keys
    // quadrature overrides applied to both the surface and factorization stages
    std::optional<double> rel_tol, abs_tol, truncation_radius, tail_exponent;
    std::optional<int> max_subdivisions;
    double grid_start = 0.05, grid_stop = PI / 2 - 0.05;
    int grid_count = 64;
    std::string csv = "diffraction.csv", reflections = "reflections.csv", plot = "plot.csv",
                diagnostics = "diagnostics.txt";
    std::optional<cplx> rho0, sigma0;
    Mode mode = Mode::full;
    std::vector<std::pair<std::string, double>> tol_overrides;
};

// Flat "dotted.key = value" text; '#' starts a comment.  Throws ValidationError.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

// locale-free number; "re,im" pair as used by the seed flags
std::optional<double> parse_real(const std::string& s);
std::optional<cplx> parse_pair(const std::string& s);

WedgeProblem resolve_problem(const RunConfig& cfg);

std::string emit_table(const std::vector<DiffractionSample>& rows);
std::string emit_plotdata(const std::vector<DiffractionSample>& rows);
std::string emit_reflections(const ReflectionSet& r);
std::string emit_report(const std::vector<CheckRow>& rows);

struct RunOutcome {
    int status = 0;  // 0 all pass, 2 validation, 3 failed checks
    std::vector<CheckRow> rows;
    std::vector<DiffractionSample> table;
};

// Runs the pipeline for cfg and writes the files into out_dir.
RunOutcome run(const RunConfig& cfg, const std::string& out_dir, std::ostream& log);

}  // namespace wedge::cli
