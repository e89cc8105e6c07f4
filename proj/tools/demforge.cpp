#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "demforge/config_io.hpp"
#include "demforge/error.hpp"
#include "demforge/runner.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;
constexpr int kExitVerifyFailed = 4;

struct CommonOptions {
    std::string config_path;
    std::string out_dir = "out";
    std::int64_t steps = -1;
    std::string variant;
    std::int64_t seed = -1;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("config", opts.config_path, "configuration file")->required();
    cmd->add_option("--out-dir", opts.out_dir, "output directory");
    cmd->add_option("--steps", opts.steps, "override run.steps");
    cmd->add_option("--variant", opts.variant, "override run.collide_variant")
        ->check(CLI::IsMember({"baseline", "two_phase"}));
    cmd->add_option("--seed", opts.seed, "override seed");
}

demforge::SimConfig load_config(const CommonOptions& opts) {
    demforge::SimConfig cfg = demforge::parse_config(opts.config_path);
    if (opts.steps >= 0) cfg.run.steps = opts.steps;
    if (!opts.variant.empty()) {
        cfg.run.collide_variant = opts.variant == "baseline"
                                      ? demforge::CollideVariant::baseline
                                      : demforge::CollideVariant::two_phase;
    }
    if (opts.seed >= 0) cfg.seed = static_cast<std::uint64_t>(opts.seed);
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"demforge: DEM pipeline with a SIMT warp divergence cost model"};
    app.require_subcommand(1);

    CommonOptions run_opts, bench_opts, verify_opts;
    CLI::App* run_cmd = app.add_subcommand("run", "run a simulation and write snapshots/metrics");
    add_common(run_cmd, run_opts);
    CLI::App* bench_cmd =
        app.add_subcommand("bench", "compare both Collide variants on one configuration");
    add_common(bench_cmd, bench_opts);
    CLI::App* verify_cmd =
        app.add_subcommand("verify", "run the oracle and property suite on one configuration");
    add_common(verify_cmd, verify_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) {
            const auto cfg = load_config(run_opts);
            const auto summary = demforge::run_simulation(cfg, run_opts.out_dir);
            std::cout << "ran " << summary.steps_run << " steps, wrote "
                      << summary.snapshots_written << " snapshots and "
                      << summary.metrics_path.string() << "\n";
            return kExitOk;
        }
        if (bench_cmd->parsed()) {
            const auto cfg = load_config(bench_opts);
            const auto report = demforge::bench(cfg);
            const std::string text = report.format();
            std::cout << text;
            if (!bench_opts.out_dir.empty()) {
                std::filesystem::create_directories(bench_opts.out_dir);
                std::ofstream f(std::filesystem::path(bench_opts.out_dir) / "bench_report.txt");
                f << text;
            }
            return kExitOk;
        }
        const auto cfg = load_config(verify_opts);
        const auto report = demforge::verify(cfg);
        std::cout << report.format();
        return report.all_pass() ? kExitOk : kExitVerifyFailed;
    } catch (const demforge::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const demforge::KernelError& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return kExitRuntime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}
