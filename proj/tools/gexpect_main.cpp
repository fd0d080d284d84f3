#include <string>

#include "CLI11.hpp"

#include "gexpect/scenario.hpp"

int main(int argc, char** argv) {
    CLI::App app{"gexpect: G-expectation lattice, BSDE and BSB solvers"};
    app.require_subcommand(1);

    gexpect::RunOptions opts;
    std::string validate_path;

    const char* commands[] = {"gheat", "hjb",  "bsde",           "bsb",
                              "scan",  "mc",   "counterexample", "verify"};
    for (const char* cmd : commands) {
        CLI::App* sub = app.add_subcommand(cmd, std::string("run the ") + cmd +
                                                    " scenario");
        sub->add_option("--config", opts.config_path, "scenario config JSON")
            ->required();
        sub->add_option("--out", opts.out_dir, "output directory")->required();
        sub->add_option("--threads", opts.threads,
                        "worker cap (GEXPECT_THREADS as fallback)");
        sub->add_flag("--emit-policy", opts.emit_policy,
                      "add vertex columns to surface CSVs");
        sub->callback([cmd, &opts]() { opts.command = cmd; });
    }
    CLI::App* val = app.add_subcommand("validate", "check a config without running");
    val->add_option("--config", validate_path, "scenario config JSON")->required();

    CLI11_PARSE(app, argc, argv);

    if (app.got_subcommand("validate"))
        return gexpect::validate_config(validate_path);
    return gexpect::run_scenario(opts);
}
