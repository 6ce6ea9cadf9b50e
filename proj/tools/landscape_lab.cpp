// Command-line front end: runs one experiment config or the whole shipped
// set, writes CSV/SVG reports, and exits nonzero when an identity or bound
// assertion fails.

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "landscape/pipeline.hpp"

namespace {

using namespace landscape;

void print_report(const Report& rep) {
    std::printf("== %s (%s)\n", rep.title.c_str(), to_string(rep.kind));
    std::printf("critical points: %zu\n", rep.points.size());
    for (const auto& p : rep.points)
        std::printf("  (% .10f, % .10f)  %-10s mult=%.6g v=%.8g res=%.2g\n", p.location.real(),
                    p.location.imag(), to_string(p.cls), p.multiplier, p.value, p.residual);
    if (rep.census_result) {
        for (const auto& c : rep.census_result->components)
            std::printf("component %d: M=%d S=%d k=%d morse=%s\n", c.component_id, c.maxima,
                        c.saddles, c.connectivity, c.morse_ok ? "ok" : "VIOLATED");
    }
    if (rep.verdicts) {
        const auto& v = *rep.verdicts;
        std::printf("bounds: morse=%s total<=4n+k-6=%s maxima<=2n-2=%s k<=n+1=%s%s\n",
                    v.morse_ok ? "pass" : "FAIL",
                    v.total_bound_applies ? (v.total_bound_ok ? "pass" : "FAIL") : "n/a",
                    v.maxima_bound_ok ? "pass" : "FAIL",
                    v.connectivity_bound_ok ? "pass" : "FAIL",
                    v.asserted() ? "" : " (degenerate: informational)");
    }
    if (rep.cross_hausdorff)
        std::printf("cross-check hausdorff: %.3g\n", *rep.cross_hausdorff);
    for (const auto& [k, x] : rep.metrics) std::printf("metric %s = %.12g\n", k.c_str(), x);
    if (!rep.warnings.empty()) {
        std::printf("warnings:\n");
        for (const auto& w : rep.warnings) std::printf("  %s\n", w.c_str());
    }
    for (const auto& [k, ms] : rep.timings_ms) std::printf("time %s: %.1f ms\n", k.c_str(), ms);
    if (!rep.failures.empty()) {
        std::printf("FAILURES:\n");
        for (const auto& f : rep.failures) std::printf("  %s\n", f.c_str());
    }
    std::printf("status: %s\n", rep.ok() ? "PASS" : "FAIL");
}

std::vector<std::string> shipped_config_names() {
    return {"fig1_left",  "fig1_right", "fig2",     "rhie_n4",  "oval_sub",
            "oval_super", "oval_critical", "quad_identity", "quad_t04", "neck_02",
            "neck_01",    "neck_005",   "dumbbell", "chain3"};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"critical points of the landscape function on algebraic planar domains"};
    app.require_subcommand(1);

    std::string config_path, out_dir = ".";
    int grid_override = 0;
    unsigned seed_override = 0;
    bool seed_given = false, want_svg = false, want_csv = false;

    CLI::App* run_cmd = app.add_subcommand("run", "run one config file");
    run_cmd->add_option("config", config_path, "TOML config file")->required();
    run_cmd->add_option("--out", out_dir, "output directory");
    run_cmd->add_option("--grid", grid_override, "override grid_n");
    run_cmd->add_option("--seed", seed_override, "override RNG seed")
        ->each([&seed_given](const std::string&) { seed_given = true; });
    run_cmd->add_flag("--svg", want_svg, "write an SVG contour figure");
    run_cmd->add_flag("--csv", want_csv, "write a CSV report");

    std::string configs_dir = "configs";
    CLI::App* verify_cmd = app.add_subcommand("verify-all", "run every shipped config");
    verify_cmd->add_option("--configs", configs_dir, "directory holding the shipped configs");
    verify_cmd->add_option("--out", out_dir, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        std::filesystem::create_directories(out_dir);
        if (run_cmd->parsed()) {
            landscape::JobConfig job = landscape::parse_config(config_path);
            if (job.out_prefix.empty())
                job.out_prefix = std::filesystem::path(config_path).stem().string();
            landscape::RunOptions opts;
            opts.out_dir = out_dir;
            opts.force_svg = want_svg;
            opts.force_csv = want_csv;
            if (grid_override > 0) opts.grid_n = grid_override;
            if (seed_given) opts.seed = seed_override;
            landscape::Report rep = landscape::run(job, opts);
            print_report(rep);
            return rep.ok() ? 0 : 1;
        }

        // verify-all
        int failures = 0;
        std::vector<std::pair<std::string, bool>> results;
        for (const std::string& name : shipped_config_names()) {
            std::string path = configs_dir + "/" + name + ".toml";
            if (!std::filesystem::exists(path)) {
                std::printf("%-14s MISSING (%s)\n", name.c_str(), path.c_str());
                ++failures;
                continue;
            }
            landscape::JobConfig job = landscape::parse_config(path);
            if (job.out_prefix.empty()) job.out_prefix = name;
            landscape::RunOptions opts;
            opts.out_dir = out_dir;
            landscape::Report rep = landscape::run(job, opts);
            bool ok = rep.ok();
            results.emplace_back(name, ok);
            std::printf("%-14s %s\n", name.c_str(), ok ? "PASS" : "FAIL");
            if (!ok) {
                ++failures;
                for (const auto& f : rep.failures) std::printf("    %s\n", f.c_str());
            }
        }
        std::printf("verify-all: %zu configs, %d failed\n", results.size(), failures);
        return failures == 0 ? 0 : 1;
    } catch (const landscape::ParseError& e) {
        std::fprintf(stderr, "config parse error: %s\n", e.what());
        return 2;
    } catch (const landscape::ValidationError& e) {
        std::fprintf(stderr, "config validation error: %s\n", e.what());
        return 2;
    } catch (const landscape::IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return 2;
    } catch (const landscape::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}
