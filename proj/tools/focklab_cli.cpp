// Batch driver: each subcommand reads one key=value config file and writes
// CSV reports into --out. See configs/ for ready-to-run examples.

#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "focklab/experiment.hpp"
#include "focklab/types.hpp"

namespace {

struct SubArgs {
    std::string config;
    std::string out;
    int threads = 0;
};

void add_common(CLI::App* sub, SubArgs& args) {
    sub->add_option("config", args.config, "key=value experiment config file")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", args.out, "output directory (default: out_dir from the config)");
    sub->add_option("--threads", args.threads, "worker thread cap (default: from the config)");
}

int dispatch(const SubArgs& args, int (*runner)(const focklab::ExperimentConfig&)) {
    focklab::ExperimentConfig cfg = focklab::ExperimentConfig::from_file(args.config);
    if (!args.out.empty()) cfg.out_dir = args.out;
    if (args.threads > 0) cfg.threads = args.threads;
    return runner(cfg);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(focklab::kVersionTag) +
                 " - numerical laboratory for Lagrange series in radial Fock spaces"};
    app.require_subcommand(1);

    SubArgs certify, converge, diverge, contour, norms;
    add_common(app.add_subcommand("certify",
                                  "grid-check |S| e^{-phi} d/rho comparability; exit 0 iff bounded"),
               certify);
    add_common(app.add_subcommand("converge",
                                  "residual norms of Lagrange partial sums over the N schedule"),
               converge);
    add_common(app.add_subcommand("diverge",
                                  "block-witness interior remainders A_k over the shell schedule"),
               diverge);
    add_common(app.add_subcommand("contour-dump",
                                  "build and verify separating contours; dump their profiles"),
               contour);
    add_common(app.add_subcommand("norms", "monomial norm table and f_lambda norm growth"),
               norms);

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("certify")) return dispatch(certify, focklab::run_certify);
        if (app.got_subcommand("converge")) return dispatch(converge, focklab::run_converge);
        if (app.got_subcommand("diverge")) return dispatch(diverge, focklab::run_diverge);
        if (app.got_subcommand("contour-dump"))
            return dispatch(contour, focklab::run_contour_dump);
        if (app.got_subcommand("norms")) return dispatch(norms, focklab::run_norms);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
