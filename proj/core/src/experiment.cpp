#include "focklab/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "focklab/counterexample.hpp"
#include "focklab/genfun.hpp"
#include "focklab/interp.hpp"
#include "focklab/kernels.hpp"
#include "focklab/util.hpp"

namespace focklab {

namespace {

// Certification gates, shared by the CLI exit code and the batch summary.
constexpr double kRatioBound = 50.0;
constexpr double kSlopeBound = 0.05;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double parse_double(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    double x;
    try {
        x = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad number for " + key + ": '" + v + "'");
    }
    if (pos != v.size())
        throw std::invalid_argument("config: trailing junk in " + key + ": '" + v + "'");
    return x;
}

long parse_long(const std::string& key, const std::string& v) {
    const double x = parse_double(key, v);
    if (x != std::floor(x))
        throw std::invalid_argument("config: " + key + " must be an integer, got '" + v + "'");
    return static_cast<long>(x);
}

bool parse_flag(const std::string& key, const std::string& v) {
    if (v == "on" || v == "true" || v == "1") return true;
    if (v == "off" || v == "false" || v == "0") return false;
    throw std::invalid_argument("config: " + key + " must be on/off, got '" + v + "'");
}

void apply_key(ExperimentConfig& c, const std::string& key, const std::string& val) {
    if (key == "weight") {
        if (val != "power" && val != "logsquare")
            throw std::invalid_argument("config: weight must be power or logsquare");
        c.weight = val;
    } else if (key == "a") {
        c.a = parse_double(key, val);
    } else if (key == "sine") {
        if (val != "sigma" && val != "sigma_over_linear")
            throw std::invalid_argument("config: sine must be sigma or sigma_over_linear");
        c.sine = val;
    } else if (key == "gamma") {
        c.gamma = parse_double(key, val);
    } else if (key == "betas") {
        c.betas.clear();
        for (const auto& s : split_list(val)) c.betas.push_back(parse_double(key, s));
        if (c.betas.empty()) throw std::invalid_argument("config: betas list is empty");
    } else if (key == "schedule") {
        c.schedule.clear();
        for (const auto& s : split_list(val)) {
            const long n = parse_long(key, s);
            if (n < 1) throw std::invalid_argument("config: schedule entries must be >= 1");
            c.schedule.push_back(static_cast<std::size_t>(n));
        }
        if (c.schedule.empty()) throw std::invalid_argument("config: schedule is empty");
    } else if (key == "shells") {
        c.shells = static_cast<int>(parse_long(key, val));
    } else if (key == "node_radius") {
        c.node_radius = parse_double(key, val);
    } else if (key == "kernel_re") {
        c.kernel_w = complex(parse_double(key, val), c.kernel_w.imag());
    } else if (key == "kernel_im") {
        c.kernel_w = complex(c.kernel_w.real(), parse_double(key, val));
    } else if (key == "grid_r_min") {
        c.grid_r_min = parse_double(key, val);
    } else if (key == "grid_r_max") {
        c.grid_r_max = parse_double(key, val);
    } else if (key == "grid_annuli") {
        c.grid_annuli = static_cast<int>(parse_long(key, val));
    } else if (key == "grid_radial") {
        c.grid_radial = static_cast<int>(parse_long(key, val));
    } else if (key == "grid_angular") {
        c.grid_angular = static_cast<int>(parse_long(key, val));
    } else if (key == "grid_exclusion") {
        c.grid_exclusion = parse_double(key, val);
    } else if (key == "panels_per_rho") {
        c.panels_per_rho = static_cast<int>(parse_long(key, val));
    } else if (key == "radial_order") {
        c.radial_order = static_cast<int>(parse_long(key, val));
    } else if (key == "angular_nodes") {
        c.angular_nodes = static_cast<int>(parse_long(key, val));
    } else if (key == "max_doublings") {
        c.max_doublings = static_cast<int>(parse_long(key, val));
    } else if (key == "self_check_tol") {
        c.self_check_tol = parse_double(key, val);
    } else if (key == "radii") {
        c.radii.clear();
        for (const auto& s : split_list(val)) c.radii.push_back(parse_double(key, s));
        if (c.radii.empty()) throw std::invalid_argument("config: radii list is empty");
    } else if (key == "flambda_index") {
        const long n = parse_long(key, val);
        if (n < 0) throw std::invalid_argument("config: flambda_index must be >= 0");
        c.flambda_index = static_cast<std::size_t>(n);
    } else if (key == "contour_samples") {
        c.contour_samples = static_cast<int>(parse_long(key, val));
    } else if (key == "seed") {
        c.seed = static_cast<unsigned>(parse_long(key, val));
    } else if (key == "timings") {
        c.timings = parse_flag(key, val);
    } else if (key == "threads") {
        c.threads = static_cast<int>(parse_long(key, val));
    } else if (key == "out_dir") {
        c.out_dir = val;
    } else {
        throw std::invalid_argument("config: unknown key '" + key + "'");
    }
}

// Writes body() to <dir>/<name> through a temp file so a crash mid-write
// never leaves a truncated CSV behind.
void write_atomic(const std::string& dir, const std::string& name,
                  const std::function<void(std::ostream&)>& body) {
    std::filesystem::create_directories(dir);
    const std::string path = dir + "/" + name;
    const std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::trunc);
        if (!os) throw std::runtime_error("cannot open " + tmp + " for writing");
        body(os);
        os.flush();
        if (!os) throw std::runtime_error("write failed for " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

void write_header(std::ostream& os, const ExperimentConfig& cfg) {
    os << "# version: " << kVersionTag << "\n";
    cfg.echo(os);
}

RadialWeight weight_of(const ExperimentConfig& cfg) {
    return cfg.weight == "logsquare" ? RadialWeight::log_square() : RadialWeight::power(cfg.a);
}

// All built-in experiments run on the Gaussian-type weight whose node set is
// the critical square lattice; anything else has no generating function here.
void require_gaussian(const ExperimentConfig& cfg, const char* what) {
    if (cfg.weight != "power" || cfg.a != 2.0)
        throw std::invalid_argument(std::string(what) +
                                    ": only weight=power with a=2 has a built-in node set");
}

SineType sine_of(const ExperimentConfig& cfg, double min_radius) {
    const double r = std::max(cfg.node_radius, min_radius);
    return cfg.sine == "sigma_over_linear" ? SineType::sigma_over_linear(r)
                                           : SineType::sigma_lattice(r);
}

QuadratureSpec quad_of(const ExperimentConfig& cfg) {
    QuadratureSpec q;
    q.panels_per_rho = cfg.panels_per_rho;
    q.radial_order = cfg.radial_order;
    q.angular_nodes = cfg.angular_nodes;
    q.self_check_tol = cfg.self_check_tol;
    q.max_doublings = cfg.max_doublings;
    return q;
}

long long elapsed_ms(std::chrono::steady_clock::time_point t0, bool enabled) {
    if (!enabled) return 0;
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                                 t0)
        .count();
}

}  // namespace

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::invalid_argument("config: cannot open " + path);
    ExperimentConfig cfg;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                        " is not key=value: '" + t + "'");
        const std::string key = trim(t.substr(0, eq));
        const std::string val = trim(t.substr(eq + 1));
        apply_key(cfg, key, val);
        cfg.raw.emplace_back(key, val);
    }
    return cfg;
}

void ExperimentConfig::echo(std::ostream& os) const {
    for (const auto& [k, v] : raw) os << "# cfg: " << k << "=" << v << "\n";
}

int run_certify(const ExperimentConfig& cfg) {
    require_gaussian(cfg, "certify");
    set_max_threads(cfg.threads);
    const SineType s = sine_of(cfg, cfg.grid_r_max + 2.0);

    AnnularGrid grid;
    grid.r_min = cfg.grid_r_min;
    grid.r_max = cfg.grid_r_max;
    grid.annuli = cfg.grid_annuli;
    grid.radial = cfg.grid_radial;
    grid.angular = cfg.grid_angular;
    grid.exclusion = cfg.grid_exclusion;

    const CertifyReport rep = certify_sinetype(s, grid, cfg.gamma);
    write_atomic(cfg.out_dir, "certify.csv", [&](std::ostream& os) {
        write_header(os, cfg);
        rep.write_csv(os);
    });

    const double slope = rep.cmax_log_slope();
    const bool pass = rep.ratio() <= kRatioBound && std::abs(slope) <= kSlopeBound;
    std::printf("certify: sine=%s gamma=%g ratio=%.4g slope=%.4g excluded=%zu -> %s\n",
                cfg.sine.c_str(), cfg.gamma, rep.ratio(), slope, rep.n_excluded,
                pass ? "pass" : "FAIL");
    return pass ? 0 : 1;
}

int run_converge(const ExperimentConfig& cfg) {
    require_gaussian(cfg, "converge");
    set_max_threads(cfg.threads);
    const std::size_t k_max = *std::max_element(cfg.schedule.begin(), cfg.schedule.end());
    const SineType s = sine_of(cfg, 0.0);
    const ZeroSet& zs = s.zeros();
    if (k_max > zs.size())
        throw std::invalid_argument("converge: schedule exceeds the node count; raise node_radius");
    for (const std::size_t N : cfg.schedule) {
        const double T = zs.modulus(N - 1) + 10.0 * s.weight().rho(zs.modulus(N - 1));
        if (T > zs.truncation_radius())
            throw std::invalid_argument("converge: node_radius too small for N=" +
                                        std::to_string(N) + " (need " + std::to_string(T) + ")");
    }

    const KernelFunction kf(cfg.kernel_w, cfg.a, zs.truncation_radius() + 0.5);
    const double half_log_norm = 0.5 * kf.eval_log(cfg.kernel_w).logmag;
    auto f_log = [&kf, half_log_norm](complex z) {
        const LogComplex v = kf.eval_log(z);
        return LogComplex::make(v.logmag - half_log_norm, v.phase);
    };

    struct Row {
        std::size_t N;
        double beta, value;
        long long ms;
    };
    std::vector<Row> rows;
    for (const double beta : cfg.betas) {
        if (cfg.weight == "power" && beta < cfg.a / 4.0)
            std::fprintf(stderr,
                         "warning: condition r^(1-2 beta) = O(rho(r)) violated for beta=%g "
                         "(needs beta >= a/4 = %g); residual decay is not guaranteed\n",
                         beta, cfg.a / 4.0);
        InterpolationProblem prob(s, k_max, f_log, beta);
        for (const std::size_t N : cfg.schedule) {
            QuadratureSpec spec = quad_of(cfg);
            spec.truncation_radius = zs.modulus(N - 1) + 10.0 * s.weight().rho(zs.modulus(N - 1));
            spec.eps_tail = std::numeric_limits<double>::infinity();
            const auto t0 = std::chrono::steady_clock::now();
            const double v = prob.residual_norm(N, &spec);
            rows.push_back({N, beta, v, elapsed_ms(t0, cfg.timings)});
            std::printf("converge: beta=%g N=%zu residual=%.6g\n", beta, N, v);
        }
    }

    write_atomic(cfg.out_dir, "converge.csv", [&](std::ostream& os) {
        write_header(os, cfg);
        os << "N,beta,gamma,residual_norm,wall_time_ms\n";
        char line[160];
        for (const Row& r : rows) {
            std::snprintf(line, sizeof line, "%zu,%.17g,%.17g,%.17g,%lld\n", r.N, r.beta,
                          cfg.gamma, r.value, r.ms);
            os << line;
        }
    });
    return 0;
}

int run_diverge(const ExperimentConfig& cfg) {
    require_gaussian(cfg, "diverge");
    set_max_threads(cfg.threads);
    for (const double beta : cfg.betas)
        if (!(beta < cfg.a / 4.0)) {
            std::fprintf(stderr,
                         "diverge: beta=%g refused, the construction needs beta < a/4 = %g\n",
                         beta, cfg.a / 4.0);
            return 2;
        }
    const SineType s = sine_of(cfg, 0.0);

    struct Row {
        std::size_t k;
        double R;
        std::size_t N;
        double A, beta;
    };
    std::vector<Row> rows;
    for (std::size_t bi = 0; bi < cfg.betas.size(); ++bi) {
        const double beta = cfg.betas[bi];
        const CounterexampleParams p = choose_parameters(cfg.a, beta, cfg.gamma);
        const std::vector<Shell> shells = select_shells(s, cfg.shells, p);
        if (static_cast<int>(shells.size()) < cfg.shells)
            std::fprintf(stderr,
                         "diverge: only %zu of %d shells fit inside node_radius=%g\n",
                         shells.size(), cfg.shells, s.zeros().truncation_radius());
        const BlockWitness witness(p, shells);

        char wname[64];
        std::snprintf(wname, sizeof wname, "witness_%zu.csv", bi);
        write_atomic(cfg.out_dir, wname, [&](std::ostream& os) {
            write_header(os, cfg);
            witness.write_csv(os);
        });

        QuadratureSpec spec = quad_of(cfg);
        spec.abs_floor = 1e-12 * witness.norm_phi();
        for (std::size_t k = 0; k < shells.size(); ++k) {
            const Contour c = build_contour(s.zeros(), shells[k].N);
            const double A = interior_remainder_norm(witness, s, c, beta, spec);
            rows.push_back({k + 1, shells[k].R, shells[k].N, A, beta});
            std::printf("diverge: beta=%g k=%zu R=%.6g N=%zu A=%.6g\n", beta, k + 1,
                        shells[k].R, shells[k].N, A);
        }
    }

    write_atomic(cfg.out_dir, "diverge.csv", [&](std::ostream& os) {
        write_header(os, cfg);
        os << "k,R_k,N_k,A_k,beta\n";
        char line[160];
        for (const Row& r : rows) {
            std::snprintf(line, sizeof line, "%zu,%.17g,%zu,%.17g,%.17g\n", r.k, r.R, r.N, r.A,
                          r.beta);
            os << line;
        }
    });
    return 0;
}

int run_contour_dump(const ExperimentConfig& cfg) {
    require_gaussian(cfg, "contour-dump");
    set_max_threads(cfg.threads);
    const ZeroSet zs =
        ZeroSet::square_lattice(weight_of(cfg), critical_omega(), cfg.node_radius);
    bool all_ok = true;
    for (const std::size_t N : cfg.schedule) {
        if (N >= zs.size())
            throw std::invalid_argument("contour-dump: N=" + std::to_string(N) +
                                        " exceeds the node count; raise node_radius");
        const Contour c = build_contour(zs, N);
        const ContourReport rep = verify_contour(c, zs, N);
        char name[64];
        std::snprintf(name, sizeof name, "contour_%04zu.csv", N);
        write_atomic(cfg.out_dir, name, [&](std::ostream& os) {
            write_header(os, cfg);
            c.write_csv(os, cfg.contour_samples);
        });
        const bool ok = rep.inside_matches && rep.annulus_ok && rep.eps_emp >= 0.05;
        all_ok = all_ok && ok;
        std::printf("contour: N=%zu R=%.6g bumps=%zu K=%.4g eps=%.4g inside=%zu -> %s\n", N,
                    c.scale_radius(), c.bumps().size(), rep.K_emp, rep.eps_emp,
                    rep.inside_count, ok ? "ok" : "FAIL");
    }
    return all_ok ? 0 : 1;
}

int run_norms(const ExperimentConfig& cfg) {
    require_gaussian(cfg, "norms");
    set_max_threads(cfg.threads);
    if (cfg.flambda_index < 1)
        throw std::invalid_argument("norms: flambda_index must be >= 1 (index 0 is the origin)");
    const double r_need = *std::max_element(cfg.radii.begin(), cfg.radii.end()) + 1.0;
    const SineType s0 = SineType::sigma_lattice(std::max(cfg.node_radius, r_need));
    const SineType s1 = SineType::sigma_over_linear(std::max(cfg.node_radius, r_need));
    if (cfg.flambda_index >= s0.zeros().size())
        throw std::invalid_argument("norms: flambda_index out of range");

    write_atomic(cfg.out_dir, "monomials.csv", [&](std::ostream& os) {
        write_header(os, cfg);
        os << "n,a,log_norm\n";
        char line[96];
        for (int n = 0; n <= 40; ++n) {
            std::snprintf(line, sizeof line, "%d,%.17g,%.17g\n", n, cfg.a,
                          log_monomial_norm(n, cfg.a));
            os << line;
        }
    });

    // Same geometric node in both families; removing the origin shifts every
    // index down by one.
    const std::vector<double> g0 = flambda_partial_norms(s0, cfg.flambda_index, cfg.radii);
    const std::vector<double> g1 = flambda_partial_norms(s1, cfg.flambda_index - 1, cfg.radii);
    write_atomic(cfg.out_dir, "flambda.csv", [&](std::ostream& os) {
        write_header(os, cfg);
        os << "variant,R,norm_sq\n";
        char line[96];
        for (std::size_t i = 0; i < cfg.radii.size(); ++i) {
            std::snprintf(line, sizeof line, "sigma,%.17g,%.17g\n", cfg.radii[i], g0[i]);
            os << line;
        }
        for (std::size_t i = 0; i < cfg.radii.size(); ++i) {
            std::snprintf(line, sizeof line, "sigma_over_linear,%.17g,%.17g\n", cfg.radii[i],
                          g1[i]);
            os << line;
        }
    });

    write_atomic(cfg.out_dir, "zeros.csv", [&](std::ostream& os) {
        write_header(os, cfg);
        s0.zeros().write_csv(os);
    });

    std::printf("norms: wrote monomials.csv, flambda.csv, zeros.csv (nodes=%zu)\n",
                s0.zeros().size());
    return 0;
}

}  // namespace focklab
