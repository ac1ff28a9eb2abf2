#include "focklab/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

#include "focklab/interp.hpp"
#include "focklab/kernels.hpp"
#include "focklab/util.hpp"

namespace focklab {

namespace {
constexpr double kPi = std::numbers::pi;
}

CounterexampleParams choose_parameters(double a, double beta, double gamma) {
    if (!(a > 0.0 && a <= 2.0))
        throw std::invalid_argument("choose_parameters: exponent must lie in (0, 2]");
    if (!(beta >= 0.0 && beta < a / 4.0))
        throw std::invalid_argument("choose_parameters: beta must lie in [0, a/4)");
    CounterexampleParams p;
    p.a = a;
    p.beta = beta;
    p.gamma = gamma;
    p.eps = 0.5 * (0.5 * a - 2.0 * beta);
    const double lo = 1.0 - 0.25 * a + 0.5 * p.eps - gamma;
    const double hi = 1.0 - beta - gamma;
    // hi - lo = (a/4 - beta)/2, positive by the beta check above
    p.kappa = 0.5 * (lo + hi);
    return p;
}

LogComplex TaylorBlock::eval_log(complex z) const {
    if (s_n.empty()) return LogComplex::zero();
    if (z == complex{0.0, 0.0})
        return n_lo == 0 ? s_n[0] : LogComplex::zero();
    const double lz = std::log(std::abs(z));
    const double az = std::arg(z);
    std::vector<LogComplex> terms(s_n.size());
    for (std::size_t i = 0; i < s_n.size(); ++i) {
        const double n = static_cast<double>(n_lo) + static_cast<double>(i);
        terms[i] = LogComplex::make(s_n[i].logmag + n * lz, s_n[i].phase + n * az);
    }
    return log_sum(terms);
}

double TaylorBlock::log_norm_sq(double a) const {
    double shift = -std::numeric_limits<double>::infinity();
    std::vector<double> logs;
    logs.reserve(s_n.size());
    for (std::size_t i = 0; i < s_n.size(); ++i) {
        if (s_n[i].is_zero()) continue;
        const int n = n_lo + static_cast<int>(i);
        logs.push_back(2.0 * s_n[i].logmag + log_monomial_norm(n, a));
        shift = std::max(shift, logs.back());
    }
    if (logs.empty()) return -std::numeric_limits<double>::infinity();
    for (double& v : logs) v = std::exp(v - shift);
    return shift + std::log(pairwise_sum(logs));
}

TaylorBlock build_block(const SineType& s, double R, double eps) {
    if (!(R > 0.0)) throw std::invalid_argument("build_block: R must be positive");
    const RadialWeight& w = s.weight();
    if (w.kind() != WeightKind::Power)
        throw std::logic_error("build_block: coefficient windows need a power weight");
    const double a = w.exponent();
    const double center = a * std::pow(R, a);
    const double halfw = std::pow(R, 0.5 * a + eps);

    TaylorBlock b;
    b.R = R;
    b.n_lo = std::max(0, static_cast<int>(std::floor(center - halfw)) + 1);
    b.n_hi = static_cast<int>(std::ceil(center + halfw)) - 1;
    if (b.n_hi < b.n_lo) throw std::invalid_argument("build_block: empty coefficient window");
    b.s_n = taylor_coeffs(s, b.n_lo, b.n_hi);

    // How much of S the window misses on its own annulus, in normalized size.
    double defect = 0.0;
    for (int i = 0; i < 5; ++i) {
        const double r = R + w.rho(R) * (-0.8 + 0.4 * i);
        for (int j = 0; j < 64; ++j) {
            const complex z = std::polar(r, 2.0 * kPi * (j + 0.5) / 64.0);
            const LogComplex d = s.eval_log(z) - b.eval_log(z);
            defect = std::max(defect, std::exp(d.logmag - w.phi(r)));
        }
    }
    b.annulus_defect = defect;
    return b;
}

namespace {

// The FFT extraction validates on a circle about 1.17x the saddle radius of
// the top degree; the node set must extend at least that far.
double extraction_reach(double a, int n_hi) {
    return 1.17 * std::pow(std::max(n_hi, 1) / a, 1.0 / a);
}

int window_top(double a, double eps, double R) {
    return static_cast<int>(std::ceil(a * std::pow(R, a) + std::pow(R, 0.5 * a + eps))) - 1;
}

// Checks e^{-phi} |sum_{m != k} R_m^{-kappa} S_m| <= |z|^{-(gamma+1)} on the
// annulus of shell k, sampling 5 radii x 64 angles.
bool cross_shell_small(const std::vector<Shell>& shells, std::size_t k,
                       const CounterexampleParams& p, const RadialWeight& w) {
    for (int i = 0; i < 5; ++i) {
        const double r = shells[k].R + w.rho(shells[k].R) * (-0.8 + 0.4 * i);
        if (r <= 0.0) continue;
        for (int j = 0; j < 64; ++j) {
            const complex z = std::polar(r, 2.0 * kPi * (j + 0.5) / 64.0);
            std::vector<LogComplex> terms;
            terms.reserve(shells.size());
            for (std::size_t m = 0; m < shells.size(); ++m) {
                if (m == k) continue;
                const LogComplex v = shells[m].block.eval_log(z);
                terms.push_back(
                    LogComplex::make(v.logmag - p.kappa * std::log(shells[m].R), v.phase));
            }
            if (terms.empty()) continue;
            const LogComplex sum = log_sum(terms);
            if (sum.logmag - w.phi(r) > -(p.gamma + 1.0) * std::log(r)) return false;
        }
    }
    return true;
}

}  // namespace

std::vector<Shell> select_shells(const SineType& s, int shells_wanted,
                                 const CounterexampleParams& p) {
    if (shells_wanted < 1) throw std::invalid_argument("select_shells: need at least one shell");
    const ZeroSet& zs = s.zeros();
    const RadialWeight& w = s.weight();
    const double trunc = zs.truncation_radius();

    std::vector<Shell> shells;
    double cand = 3.0;
    while (static_cast<int>(shells.size()) < shells_wanted) {
        // Both the Taylor extraction and the defect sampling must stay inside
        // the region where the node set (hence S) is available.
        const double reach =
            std::max(extraction_reach(p.a, window_top(p.a, p.eps, cand)), cand + w.rho(cand));
        if (reach > trunc) break;

        // The N_k nodes inside |z| <= R_k pin down polynomials of degree
        // < N_k, so a block whose top degree falls below that count would be
        // reproduced by the partial sums instead of defeating them.  Nudge
        // the radius outward until the window clears the node count; at
        // small radii the two sit within a few units of each other, so this
        // rarely takes more than a step or two.
        double R = cand;
        std::size_t N = zs.count_within(R);
        for (int tries = 0; tries < 50 && window_top(p.a, p.eps, R) < static_cast<double>(N);
             ++tries) {
            R *= 1.05;
            N = zs.count_within(R);
        }
        const bool fresh = shells.empty() || R > shells.back().R * (1.0 + 1e-12);
        if (fresh && N > 0 && window_top(p.a, p.eps, R) >= static_cast<double>(N)) {
            Shell candidate{R, N, build_block(s, R, p.eps)};
            std::vector<Shell> trial = shells;
            trial.push_back(std::move(candidate));
            bool ok = true;
            for (std::size_t k = 0; ok && k < trial.size(); ++k)
                ok = cross_shell_small(trial, k, p, w);
            if (ok) shells = std::move(trial);
        }
        cand = 2.0 * cand + 1.0;
    }
    if (shells.empty())
        throw std::runtime_error("select_shells: no shell fits inside the node truncation");
    return shells;
}

BlockWitness::BlockWitness(CounterexampleParams p, std::vector<Shell> shells)
    : p_(p), shells_(std::move(shells)) {
    if (shells_.empty()) throw std::invalid_argument("BlockWitness: no shells");
    for (std::size_t k = 1; k < shells_.size(); ++k) {
        if (shells_[k].R <= shells_[k - 1].R)
            throw std::invalid_argument("BlockWitness: shell radii must increase");
        // Disjoint windows are what make the coefficient-space norm exact.
        if (shells_[k].block.n_lo <= shells_[k - 1].block.n_hi)
            throw std::invalid_argument("BlockWitness: Taylor windows overlap");
    }
}

LogComplex BlockWitness::eval_log(complex z) const {
    std::vector<LogComplex> terms;
    terms.reserve(shells_.size());
    for (const Shell& sh : shells_) {
        const LogComplex v = sh.block.eval_log(z);
        terms.push_back(LogComplex::make(v.logmag - p_.kappa * std::log(sh.R), v.phase));
    }
    return log_sum(terms);
}

double BlockWitness::norm_phi() const {
    std::vector<double> logs;
    logs.reserve(shells_.size());
    double shift = -std::numeric_limits<double>::infinity();
    for (const Shell& sh : shells_) {
        logs.push_back(sh.block.log_norm_sq(p_.a) - 2.0 * p_.kappa * std::log(sh.R));
        shift = std::max(shift, logs.back());
    }
    for (double& v : logs) v = std::exp(v - shift);
    return std::exp(0.5 * (shift + std::log(pairwise_sum(logs))));
}

std::vector<double> BlockWitness::shell_norm_sq() const {
    std::vector<double> out;
    out.reserve(shells_.size());
    for (const Shell& sh : shells_)
        out.push_back(std::exp(sh.block.log_norm_sq(p_.a) - 2.0 * p_.kappa * std::log(sh.R)));
    return out;
}

void BlockWitness::write_csv(std::ostream& os) const {
    os << "shell,R,n,logmag,phase\n";
    char line[160];
    for (std::size_t k = 0; k < shells_.size(); ++k) {
        const Shell& sh = shells_[k];
        const double scale = -p_.kappa * std::log(sh.R);
        for (std::size_t i = 0; i < sh.block.s_n.size(); ++i) {
            const LogComplex& c = sh.block.s_n[i];
            std::snprintf(line, sizeof line, "%zu,%.17g,%d,%.17g,%.17g\n", k, sh.R,
                          sh.block.n_lo + static_cast<int>(i),
                          c.is_zero() ? -std::numeric_limits<double>::infinity()
                                      : c.logmag + scale,
                          c.phase);
            os << line;
        }
    }
}

double interior_remainder_norm(const BlockWitness& bw, const SineType& s, const Contour& c,
                               double beta, const QuadratureSpec& spec) {
    InterpolationProblem prob(s, c.n_target(), [&bw](complex z) { return bw.eval_log(z); },
                              beta);
    const std::size_t N = prob.k_max();
    NormalizedFunction u{[&prob, N](complex z) {
                             return prob.partial_sum_normalized(N, z) - prob.f_normalized(z);
                         },
                         0.0};
    return region_norm(u, prob.modified_weight(), c, spec);
}

}  // namespace focklab
