#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "focklab/types.hpp"

namespace focklab {

// One batch run, fully described by a key=value file so that identical
// configs give bit-identical CSV bodies. Unknown keys are rejected rather
// than ignored: a typo silently falling back to a default would poison an
// experiment without a trace.
struct ExperimentConfig {
    std::string weight = "power";  // power | logsquare
    double a = 2.0;
    std::string sine = "sigma";  // sigma | sigma_over_linear
    double gamma = 0.0;          // decay exponent certified against / used by diverge
    std::vector<double> betas = {0.75};
    std::vector<std::size_t> schedule = {25, 50, 100, 200, 400};
    int shells = 3;
    double node_radius = 21.0;  // zero-set truncation
    complex kernel_w = {1.0, 0.5};

    // certification grid
    double grid_r_min = 1.0;
    double grid_r_max = 12.0;
    int grid_annuli = 11;
    int grid_radial = 4;
    int grid_angular = 256;
    double grid_exclusion = 1e-3;

    // quadrature
    int panels_per_rho = 2;
    int radial_order = 12;
    int angular_nodes = 0;  // 0 = automatic
    int max_doublings = 4;
    double self_check_tol = 1e-6;

    // norms subcommand
    std::vector<double> radii = {5, 10, 15, 20, 25, 30};
    std::size_t flambda_index = 1;

    int contour_samples = 2048;
    unsigned seed = 42;
    bool timings = false;  // wall_time_ms columns stay 0 when off (determinism)
    int threads = 1;
    std::string out_dir = ".";

    // original key=value lines, echoed into every output header
    std::vector<std::pair<std::string, std::string>> raw;

    static ExperimentConfig from_file(const std::string& path);
    void echo(std::ostream& os) const;  // "# cfg: key=value" lines
};

// Each runner writes its CSVs into cfg.out_dir (atomically: temp file then
// rename) and returns a process exit code.
int run_certify(const ExperimentConfig& cfg);
int run_converge(const ExperimentConfig& cfg);
int run_diverge(const ExperimentConfig& cfg);
int run_contour_dump(const ExperimentConfig& cfg);
int run_norms(const ExperimentConfig& cfg);

}  // namespace focklab
