#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <fstream>

#include "landscape/config.hpp"

using namespace landscape;

namespace {
std::string configs_dir() {
    if (const char* d = std::getenv("LANDSCAPE_LAB_CONFIGS")) return d;
    return "../configs";
}
} // namespace

TEST_CASE("shipped configs parse and round-trip") {
    for (const char* name :
         {"fig1_left", "fig1_right", "fig2", "rhie_n4", "oval_sub", "oval_super",
          "oval_critical", "quad_identity", "quad_t04", "neck_02", "neck_01", "neck_005",
          "dumbbell", "chain3"}) {
        std::string path = configs_dir() + "/" + name + ".toml";
        INFO(path);
        JobConfig job = parse_config(path);
        CHECK(job.schema == 1);
        JobConfig again = parse_config_text(write_config(job));
        CHECK(again == job);
    }
}

TEST_CASE("first shipped config describes the order-3 tight-level run") {
    JobConfig job = parse_config(configs_dir() + "/fig1_left.toml");
    CHECK(job.kind == JobKind::Rl);
    REQUIRE(job.nodes.size() == 3);
    CHECK(job.weights == std::vector<double>{0.75, 0.75, 0.75});
    CHECK(job.level_t == 0.5);
    CHECK(job.grid_n == 512);
    for (const auto& nd : job.nodes) CHECK(std::abs(std::abs(nd) - 1.0) < 1e-14);
}

TEST_CASE("empty file is a parse error") {
    CHECK_THROWS_AS(parse_config_text(""), ParseError);
    CHECK_THROWS_AS(parse_config_text("# only a comment\n"), ParseError);
}

TEST_CASE("syntax errors carry line/column positions") {
    try {
        parse_config_text("schema = 1\nkind \"rl\"\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(parse_config_text("schema = 1\nkind = \"rl\"\nnodes = [[1, 2]\n"),
                    ParseError);
    CHECK_THROWS_AS(parse_config_text("schema = 1\nx = 12abc\n"), ParseError);
    CHECK_THROWS_AS(parse_config_text("schema = 1\nkind = \"rl\"\nlevel_t = 0.5 0.7\n"),
                    ParseError);
}

TEST_CASE("unknown keys are refused by name") {
    try {
        parse_config_text("schema = 1\nkind = \"oval\"\nr = 1.2\ngird_n = 512\n");
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(e.key() == "gird_n");
    }
}

TEST_CASE("schema and kind are mandatory") {
    CHECK_THROWS_AS(parse_config_text("kind = \"oval\"\nr = 1.2\n"), ValidationError);
    CHECK_THROWS_AS(parse_config_text("schema = 2\nkind = \"oval\"\nr = 1.2\n"), ValidationError);
    CHECK_THROWS_AS(parse_config_text("schema = 1\nr = 1.2\n"), ValidationError);
    CHECK_THROWS_AS(parse_config_text("schema = 1\nkind = \"blob\"\n"), ValidationError);
}

TEST_CASE("complex weights on simple poles cannot be expressed") {
    CHECK_THROWS_AS(
        parse_config_text("schema = 1\nkind = \"rl\"\nnodes = [[0.0, 0.0]]\n"
                          "weights = [[0.75, 0.1]]\nlevel_t = 0.5\n"),
        ValidationError);
}

TEST_CASE("per-kind requirements") {
    CHECK_THROWS_AS(parse_config_text("schema = 1\nkind = \"rl\"\nnodes = [[1.0, 0.0]]\n"
                                      "weights = [1.0, 2.0]\nlevel_t = 0.5\n"),
                    ValidationError); // weights/nodes mismatch
    CHECK_THROWS_AS(parse_config_text("schema = 1\nkind = \"rhie\"\nn = 3\n"), ValidationError);
    CHECK_THROWS_AS(parse_config_text("schema = 1\nkind = \"rhie\"\nn = 4\na = 1.3\n"),
                    ValidationError); // partial triple
    CHECK_THROWS_AS(parse_config_text("schema = 1\nkind = \"oval\"\n"), ValidationError);
    CHECK_THROWS_AS(parse_config_text("schema = 1\nkind = \"oval\"\nr = 1.2\na = 0.5\n"),
                    ValidationError);
    CHECK_THROWS_AS(parse_config_text("schema = 1\nkind = \"neck\"\neps = 0.1\n"),
                    ValidationError);
    CHECK_THROWS_AS(parse_config_text("schema = 1\nkind = \"pde\"\n"), ValidationError);
    CHECK_THROWS_AS(parse_config_text("schema = 1\nkind = \"quadrature\"\n"), ValidationError);
    CHECK_THROWS_AS(
        parse_config_text("schema = 1\nkind = \"dumbbell\"\neps = 0.05\ndisks = 0\n"),
        ValidationError);
    CHECK_THROWS_AS(parse_config_text("schema = 1\nkind = \"rl\"\nnodes = [[1.0, 0.0]]\n"
                                      "weights = [1.0]\nlevel_t = 0.5\ntol = -1.0\n"),
                    ValidationError);
}

TEST_CASE("rhie with a full triple parses") {
    JobConfig job = parse_config_text(
        "schema = 1\nkind = \"rhie\"\nn = 4\na = 1.3\neps = 0.09\nt = 1.0\n");
    CHECK(job.n == 4);
    REQUIRE(job.rhie_a);
    CHECK(*job.rhie_a == 1.3);
    CHECK(job.eps == 0.09);
    REQUIRE(job.rhie_t);
    JobConfig again = parse_config_text(write_config(job));
    CHECK(again == job);
}

TEST_CASE("comments and blank lines are ignored; strings may contain #") {
    JobConfig job = parse_config_text("schema = 1 # version\n\n# a comment\nkind = \"pde\"\n"
                                      "mask = \"dir#1/mask.pgm\"\n");
    CHECK(job.mask_path == "dir#1/mask.pgm");
}
