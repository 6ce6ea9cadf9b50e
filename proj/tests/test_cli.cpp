#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "landscape/pipeline.hpp"

using namespace landscape;
namespace fs = std::filesystem;

namespace {

std::string bin() {
    const char* b = std::getenv("LANDSCAPE_LAB_BIN");
    REQUIRE(b != nullptr);
    return b;
}

std::string configs_dir() {
    const char* d = std::getenv("LANDSCAPE_LAB_CONFIGS");
    REQUIRE(d != nullptr);
    return d;
}

int run_cmd(const std::string& args) {
    std::string cmd = bin() + " " + args + " > cli_test_stdout.txt 2>&1";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("run: oval config produces a report, a CSV and an SVG") {
    fs::create_directories("cli_out_a");
    int rc = run_cmd("run " + configs_dir() + "/oval_sub.toml --out cli_out_a --csv --svg");
    CHECK(rc == 0);
    std::string csv = slurp("cli_out_a/oval_sub.csv");
    CHECK(csv.rfind("re,im,class,", 0) == 0);
    // three data rows before the census block
    std::istringstream lines(csv);
    std::string line;
    int rows = 0;
    std::getline(lines, line); // header
    while (std::getline(lines, line) && !line.empty()) ++rows;
    CHECK(rows == 3);
    CHECK(slurp("cli_out_a/oval_sub.svg").rfind("<svg", 0) == 0);
}

TEST_CASE("run: supercritical oval reports a single row") {
    fs::create_directories("cli_out_b");
    int rc = run_cmd("run " + configs_dir() + "/oval_super.toml --out cli_out_b --csv");
    CHECK(rc == 0);
    std::string csv = slurp("cli_out_b/oval_super.csv");
    std::istringstream lines(csv);
    std::string line;
    int rows = 0;
    std::getline(lines, line);
    while (std::getline(lines, line) && !line.empty()) ++rows;
    CHECK(rows == 1);
}

TEST_CASE("determinism: identical config and seed give identical bytes") {
    fs::create_directories("cli_out_c");
    fs::create_directories("cli_out_d");
    REQUIRE(run_cmd("run " + configs_dir() + "/quad_t04.toml --out cli_out_c --csv --svg") == 0);
    REQUIRE(run_cmd("run " + configs_dir() + "/quad_t04.toml --out cli_out_d --csv --svg") == 0);
    CHECK(slurp("cli_out_c/quad_t04.csv") == slurp("cli_out_d/quad_t04.csv"));
    CHECK(slurp("cli_out_c/quad_t04.svg") == slurp("cli_out_d/quad_t04.svg"));
}

TEST_CASE("exit codes: config problems are 2, numeric refusals are 3") {
    CHECK(run_cmd("run missing_config.toml") == 2);

    std::ofstream("cli_bad_key.toml") << "schema = 1\nkind = \"oval\"\nr = 1.2\nbogus = 3\n";
    CHECK(run_cmd("run cli_bad_key.toml") == 2);

    std::ofstream("cli_bad_syntax.toml") << "schema = \n";
    CHECK(run_cmd("run cli_bad_syntax.toml") == 2);

    // annulus-degenerate potential: solver refuses with a diagnostic
    std::ofstream("cli_annulus.toml") << "schema = 1\nkind = \"rl\"\nnodes = [[0.0, 0.0]]\n"
                                         "weights = [1.0]\nlevel_t = 3.0\n";
    CHECK(run_cmd("run cli_annulus.toml") == 3);
}

TEST_CASE("verify-all reports missing configs") {
    fs::create_directories("cli_empty_configs");
    CHECK(run_cmd("verify-all --configs cli_empty_configs") == 1);
    std::string outtxt = slurp("cli_test_stdout.txt");
    CHECK(outtxt.find("MISSING") != std::string::npos);
}

TEST_CASE("empty critical set still yields a header plus census block") {
    Report rep;
    rep.kind = JobKind::Pde;
    rep.title = "empty";
    TopologyCensus cen;
    cen.components.push_back({0, 0, 0, 0, 1, false});
    rep.census_result = cen;
    export_csv(rep, "cli_empty.csv");
    std::string csv = slurp("cli_empty.csv");
    CHECK(csv.rfind("re,im,class,multiplier,v,residual\n", 0) == 0);
    CHECK(csv.find("census") != std::string::npos);
}

TEST_CASE("bound verdicts appear exactly for the rational-gradient kinds") {
    JobConfig oval = parse_config_text("schema = 1\nkind = \"oval\"\nr = 1.3\ngrid_n = 128\n");
    Report rep_oval = run(oval);
    CHECK(!rep_oval.verdicts.has_value());
    CHECK(rep_oval.census_result.has_value());
    CHECK(rep_oval.ok());

    JobConfig rl = parse_config_text(
        "schema = 1\nkind = \"rl\"\nnodes = [[0.0, 1.0], [0.0, -1.0]]\nweights = [1.0, 1.0]\n"
        "level_t = 0.5\ngrid_n = 128\n");
    Report rep_rl = run(rl);
    CHECK(rep_rl.verdicts.has_value());
    CHECK(rep_rl.ok());
    CHECK(rep_rl.points.size() == 3);
}

TEST_CASE("a level set grazing a saddle triggers the smoothness warning") {
    // place the level within 1e-9 of the inner-saddle height: the boundary
    // then passes almost through a gradient zero
    std::vector<cplx> nodes{std::polar(1.0, 0.0), std::polar(1.0, 2 * M_PI / 3),
                            std::polar(1.0, -2 * M_PI / 3)};
    RLPotential p(RationalFn::simple_poles(nodes, {0.75, 0.75, 0.75}),
                  0.5 - 0.46333727674228759 + 1e-9);
    GridField f = sample_sign_grid(p, auto_box(p), 256);
    std::vector<std::string> warnings;
    landscape::detail::boundary_smoothness_warning(p, f, warnings);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("NonSmoothBoundary") != std::string::npos);

    // a healthy level set stays quiet
    RLPotential good(RationalFn::simple_poles(nodes, {0.75, 0.75, 0.75}), 0.5);
    GridField fg = sample_sign_grid(good, auto_box(good), 256);
    warnings.clear();
    landscape::detail::boundary_smoothness_warning(good, fg, warnings);
    CHECK(warnings.empty());
}
