#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "nlpid/commands.hpp"

int main(int argc, char** argv) {
    namespace cli = nlpid::cli;

    CLI::App app{"nlpid - PID / nonlinear-integral PID analysis and simulation"};
    app.require_subcommand(1);

    cli::GlobalOptions opts;
    opts.jobs = std::max(1u, std::thread::hardware_concurrency());
    std::string config;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    app.add_option("--config", config, "Run configuration (JSON)");
    app.add_option("--out", out_dir, "Output directory")->capture_default_str();
    app.add_option("--jobs", opts.jobs, "Worker threads for sweeps")->check(CLI::PositiveNumber);
    auto* seed_opt = app.add_option("--seed", seed, "Override simulation.rng_seed");

    auto* stability = app.add_subcommand("stability", "Routh-Hurwitz and circle-criterion verdicts");

    auto* freq = app.add_subcommand("freq", "Sensitivity magnitude for Omega in {1c, 2c, 3c, 4c}");
    bool wide = false;
    freq->add_flag("--wide", wide, "Write one wide CSV instead of one file per Omega");

    auto* step = app.add_subcommand("step", "Closed-form step-disturbance responses");
    cli::StepOptions step_opts;
    double lambda1 = 0.0;
    step->add_option("--lambda1", lambda1, "Double-pole decay rate (1/s)")->required();
    step->add_option("--omegas", step_opts.omegas, "Integral gains; default 0.5c, 1c, 2c from --config");
    step->add_option("--dt", step_opts.dt, "Time step of the written series")->capture_default_str();

    auto* simulate = app.add_subcommand("simulate", "Closed-loop RK4 simulation");
    bool sweep = false;
    simulate->add_flag("--sweep", sweep, "Run the d in {0,1,2,3} and e in {-10,-100,-1000} families");

    auto* benchmark = app.add_subcommand("benchmark", "PD vs PID vs nl-PID with an actuator lag");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : cli::kConfigError;
    }

    opts.config = config;
    opts.out_dir = out_dir;
    if (*seed_opt) {
        opts.seed = seed;
    }

    if (stability->parsed()) {
        return cli::cmd_stability(opts, std::cout, std::cerr);
    }
    if (freq->parsed()) {
        return cli::cmd_freq(opts, wide, std::cout, std::cerr);
    }
    if (step->parsed()) {
        step_opts.lambda1 = lambda1;
        return cli::cmd_step(opts, step_opts, std::cout, std::cerr);
    }
    if (simulate->parsed()) {
        return cli::cmd_simulate(opts, sweep, std::cout, std::cerr);
    }
    if (benchmark->parsed()) {
        return cli::cmd_benchmark(opts, std::cout, std::cerr);
    }
    return cli::kConfigError;
}
