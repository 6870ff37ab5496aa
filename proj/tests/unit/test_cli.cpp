#include <filesystem>
#include <fstream>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "wedge/cli.hpp"

using namespace wedge;

namespace {
std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::filesystem::path scratch_dir(const std::string& tag) {
    auto d = std::filesystem::temp_directory_path() / ("wedge_unit_" + tag);
    std::filesystem::remove_all(d);
    return d;
}

bool parse_fails(const std::string& text, const std::string& fragment) {
    try {
        cli::parse_config(text);
    } catch (const ValidationError& e) {
        for (auto& m : e.messages)
            if (m.find(fragment) != std::string::npos) return true;
    }
    return false;
}
}  // namespace

TEST_CASE("config parsing") {
    auto cfg = cli::parse_config(
        "# comment\n"
        "problem.k0.re = 1\nproblem.k0.im = 0.1  # trailing\n"
        "problem.beta = 0.5\nproblem.theta0 = 0.6\n"
        "grid.count = 5\nmode = oracle\ntol.jacobi = 1e-4\nseeds.rho0.re = -0.2\nseeds.rho0.im = 0.9\n");
    CHECK(*cfg.problem.k0 == cplx(1, 0.1));
    CHECK(*cfg.problem.beta == 0.5);
    CHECK(cfg.grid_count == 5);
    CHECK(cfg.mode == cli::Mode::oracle);
    CHECK(*cfg.rho0 == cplx(-0.2, 0.9));
    REQUIRE(cfg.tol_overrides.size() == 1);
    CHECK(cfg.tol_overrides[0].first == "jacobi");

    CHECK(parse_fails("problem.k0.re = 1\n", "both .re and .im"));
    CHECK(parse_fails("problem.colour = 3\n", "unknown key"));
    CHECK(parse_fails("problem.beta = 1,5\n", "not a number"));
    CHECK(parse_fails("grid.count = 1\n", "at least 2"));
    CHECK(parse_fails("grid.stop = 2\n", "pi/2"));
    CHECK(parse_fails("tol.nothing = 1\n", "unknown tolerance"));
    CHECK(parse_fails("mode = fast\n", "unknown mode"));
    CHECK(parse_fails("just text\n", "key = value"));
}

TEST_CASE("pairs and numbers ignore the locale") {
    CHECK(*cli::parse_pair("1.5,-2e-3") == cplx(1.5, -2e-3));
    CHECK_FALSE(cli::parse_pair("1.5"));
    CHECK_FALSE(cli::parse_real("1.5x"));
    CHECK(*cli::parse_real("+0.25") == 0.25);
}

TEST_CASE("presets fill unset keys") {
    cli::RunConfig cfg = cli::parse_config("problem.preset = 3a\n");
    auto p = cli::resolve_problem(cfg);
    auto q = reference_problem("3a");
    CHECK(std::abs(p.k0 - q.k0) < 1e-15);
    CHECK(p.g1p == q.g1p);
    CHECK(std::abs(p.theta0 - q.theta0) < 1e-15);
    CHECK_THROWS_AS(cli::resolve_problem(cli::parse_config("problem.preset = 9z\n")), ValidationError);
}

TEST_CASE("table formats") {
    std::vector<DiffractionSample> rows = {{0.25, Vec2(cplx(1, -1), cplx(0, 2)), false},
                                           {0.5, Vec2(cplx(0, 0), cplx(0, 0)), true}};
    auto t = cli::emit_table(rows);
    CHECK(t.rfind("theta,re_D1,im_D1,re_D2,im_D2,flag\n", 0) == 0);
    CHECK(t.find("0.25,1,-1,0,2,0\n") != std::string::npos);
    CHECK(t.find(",1\n") != std::string::npos);
    auto pl = cli::emit_plotdata(rows);
    std::istringstream in(pl);
    std::string line;
    while (std::getline(in, line)) CHECK(std::count(line.begin(), line.end(), ',') == 4);
    CHECK(pl.find("0.5,0,0,0,0\n") != std::string::npos);

    CheckRow ok{"a", "t", 1e-12, 1e-9, {}}, bad{"b", "t", std::nan(""), 1e-9, "why"};
    auto rep = cli::emit_report({ok, bad});
    CHECK(rep.find("a | t | 1.000e-12 | 1.0e-09 | PASS") != std::string::npos);
    CHECK(rep.find("FAIL  # why") != std::string::npos);
    CHECK(rep.find("summary: 2 checks, 1 failed") != std::string::npos);
}

TEST_CASE("runs write their files and set the exit status") {
    std::ostringstream log;
    auto d = scratch_dir("ids");
    auto cfg = cli::parse_config("problem.preset = 2a\nmode = identities-only\n");
    auto out = cli::run(cfg, d.string(), log);
    CHECK(out.status == 0);
    CHECK(std::filesystem::exists(d / "diagnostics.txt"));
    CHECK(slurp(d / "reflections.csv").rfind("name,re,im\n", 0) == 0);

    auto bad = cli::parse_config("problem.preset = 2a\nmode = oracle\n");
    CHECK(cli::run(bad, d.string(), log).status == 2);

    // a negative tolerance cannot be met
    auto strict = cli::parse_config("problem.preset = 2a\nmode = identities-only\ntol.structural = -1\n");
    CHECK(cli::run(strict, d.string(), log).status == 3);
    CHECK(std::filesystem::exists(d / "diagnostics.txt"));
}

TEST_CASE("full runs are reproducible") {
    std::ostringstream log;
    auto cfg = cli::parse_config("problem.preset = 3c\ngrid.count = 6\n");
    auto a = scratch_dir("full_a"), b = scratch_dir("full_b");
    auto ra = cli::run(cfg, a.string(), log);
    auto rb = cli::run(cfg, b.string(), log);
    CHECK(ra.status == 0);
    CHECK(ra.table.size() == 6);
    CHECK(slurp(a / "diffraction.csv") == slurp(b / "diffraction.csv"));
    CHECK(slurp(a / "diagnostics.txt") == slurp(b / "diagnostics.txt"));
}
