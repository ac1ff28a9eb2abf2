// End-to-end acceptance checks, one per numbered claim the library is built
// around. Each check prints exactly one [PASS]/[FAIL] line with the measured
// quantities, so a log of this binary is the quantitative summary of the
// whole laboratory. Run with a number to execute a single check, with no
// arguments to execute all ten.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "focklab/contours.hpp"
#include "focklab/counterexample.hpp"
#include "focklab/genfun.hpp"
#include "focklab/interp.hpp"
#include "focklab/kernels.hpp"
#include "focklab/lattice.hpp"
#include "focklab/quadrature.hpp"
#include "focklab/util.hpp"
#include "focklab/weights.hpp"
#include "support/oracles.hpp"

using namespace focklab;

namespace {

struct Line {
    bool pass = false;
    char detail[240] = {0};
};

std::function<LogComplex(complex)> kernel_f(complex w, double cap) {
    const KernelFunction k(w, 2.0, cap);
    const double half_norm = 0.5 * k.eval_log(w).logmag;
    return [k, half_norm](complex z) {
        const LogComplex v = k.eval_log(z);
        if (v.is_zero()) return v;
        return LogComplex::make(v.logmag - half_norm, v.phase);
    };
}

std::function<LogComplex(complex)> cubic_f() {
    const double half = 0.5 * log_monomial_norm(3, 2.0);
    return [half](complex z) {
        const LogComplex lz = LogComplex::from_complex(z);
        if (lz.is_zero()) return lz;
        return LogComplex::make(3.0 * lz.logmag - half, 3.0 * lz.phase);
    };
}

complex normalized_value(const LogComplex& v, double phi) {
    if (v.is_zero()) return {0.0, 0.0};
    return LogComplex::make(v.logmag - phi, v.phase).to_complex_or_zero();
}

// 1. Comparability certificate for sigma: bounded ratio, no radial trend.
Line criterion1() {
    Line out;
    const SineType s = SineType::sigma_lattice(16.0);
    AnnularGrid grid;
    grid.r_min = 1.0;
    grid.r_max = 12.0;
    grid.annuli = 11;
    grid.radial = 4;
    grid.angular = 256;  // 11264 samples >= 10^4
    grid.exclusion = 1e-3;
    const CertifyReport rep = certify_sinetype(s, grid);
    const double ratio = rep.ratio();
    const double slope = rep.cmax_log_slope();
    out.pass = ratio <= 50.0 && std::abs(slope) <= 0.05;
    std::snprintf(out.detail, sizeof out.detail,
                  "ratio=%.4g (<=50) trend_slope=%.4g (|.|<=0.05) samples>=10^4", ratio, slope);
    return out;
}

// 2. Biorthogonality of the Lagrange family across the first 50 nodes.
Line criterion2() {
    Line out;
    const SineType s = SineType::sigma_lattice(10.0);
    InterpolationProblem p(s, 50, cubic_f(), 0.0);
    double worst = 0.0;
    for (std::size_t k = 0; k < 50; ++k)
        for (std::size_t j = 0; j < 50; ++j) {
            const complex got = p.lagrange_term(k, s.zeros().point(j)).to_complex_or_zero();
            const complex want = (k == j) ? complex{1.0, 0.0} : complex{0.0, 0.0};
            worst = std::max(worst, std::abs(got - want));
        }
    out.pass = worst <= 1e-8;
    std::snprintf(out.detail, sizeof out.detail, "max |f_k(node_j) - delta| = %.3g (<=1e-8)",
                  worst);
    return out;
}

// 3. Norm growth of one Lagrange element: log-divergent for the critical
// family, stabilizing once a zero is divided out.
Line criterion3() {
    Line out;
    const SineType s0 = SineType::sigma_lattice(31.5);
    const SineType s1 = SineType::sigma_over_linear(31.5);
    const std::vector<double> radii{10.0, 15.0, 20.0, 25.0, 30.0};
    const auto g0 = flambda_partial_norms(s0, 1, radii);
    const auto g1 = flambda_partial_norms(s1, 0, radii);

    std::vector<double> lr(radii.size());
    for (std::size_t i = 0; i < radii.size(); ++i) lr[i] = std::log(radii[i]);
    const double slope = oracles::fit_slope(lr, g0);
    // Mid-range local slope of the same data: the fit must not be carried by
    // one end of the window.
    const double mid = (g0[3] - g0[1]) / (lr[3] - lr[1]);
    const bool grows = slope > 0.0 && slope > 0.5 * mid;

    // Shifted family: increments beyond R=20 below 2% of the running total.
    const double inc1 = (g1[3] - g1[2]) / g1[3];
    const double inc2 = (g1[4] - g1[3]) / g1[4];
    const bool stable = inc1 < 0.02 && inc2 < 0.02;

    out.pass = grows && stable;
    std::snprintf(out.detail, sizeof out.detail,
                  "critical: slope=%.4g mid=%.4g (slope>0.5*mid) | shifted: inc=%.3g,%.3g (<0.02)",
                  slope, mid, inc1, inc2);
    return out;
}

// 4. Cauchy identity for the remainder integral at random off-curve points.
Line criterion4() {
    Line out;
    const SineType s = SineType::sigma_lattice(12.0);
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    double worst = 0.0;
    for (const auto& f : {kernel_f({1.0, 0.5}, 14.0), cubic_f()}) {
        InterpolationProblem p(s, 29, f, 0.75);
        for (std::size_t N : {std::size_t{5}, std::size_t{13}, std::size_t{29}}) {
            const Contour c = build_contour(s.zeros(), N);
            const double R = c.scale_radius();
            int done = 0;
            while (done < 20) {
                const complex z{2.0 * R * uni(rng), 2.0 * R * uni(rng)};
                const double gap = std::abs(std::abs(z) - R * c.radius_at(std::arg(z)));
                if (gap < 1e-2 || s.zeros().dist_to(z) < 1e-3) continue;
                ++done;
                const double phi = std::norm(z);
                const complex u_f = normalized_value(f(z), phi);
                const complex lhs =
                    p.partial_sum_normalized(N, z) - static_cast<double>(chi(c, z)) * u_f;
                const complex rhs = normalized_value(s.eval_log(z) * p.cauchy_remainder(c, z), phi);
                const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-12});
                worst = std::max(worst, std::abs(lhs - rhs) / scale);
            }
        }
    }
    out.pass = worst <= 1e-6;
    std::snprintf(out.detail, sizeof out.detail,
                  "max rel defect = %.3g (<=1e-6) over 120 points, N in {5,13,29}", worst);
    return out;
}

// 5. Contour geometry across the whole schedule: exact counts, stable slope
// bound, working separation.
Line criterion5() {
    Line out;
    const ZeroSet zs =
        ZeroSet::square_lattice(RadialWeight::power(2.0), critical_omega(), 16.0);
    bool counts_ok = true, eps_ok = true;
    std::vector<double> ns, ks;
    double eps_min = 1e300;
    for (std::size_t N = 5; N <= 200; N += 5) {
        const Contour c = build_contour(zs, N);
        const ContourReport rep = verify_contour(c, zs, N);
        counts_ok = counts_ok && rep.inside_matches;
        eps_ok = eps_ok && rep.eps_emp >= 0.05;
        eps_min = std::min(eps_min, rep.eps_emp);
        ns.push_back(static_cast<double>(N));
        ks.push_back(rep.K_emp);
    }
    const double k_slope = std::abs(oracles::fit_slope(ns, ks));
    const bool k_ok = k_slope <= 0.01 / 200.0;
    out.pass = counts_ok && eps_ok && k_ok;
    std::snprintf(out.detail, sizeof out.detail,
                  "counts %s, |dK/dN|=%.2g (<=5e-5), eps_min=%.3g (>=0.05)",
                  counts_ok ? "exact" : "WRONG", k_slope, eps_min);
    return out;
}

// 6. Summable regime: residuals fall along the stage schedule.
Line criterion6() {
    Line out;
    const SineType s = SineType::sigma_lattice(21.0);
    InterpolationProblem p(s, 400, kernel_f({1.0, 0.5}, 20.5), 0.75);
    const std::vector<std::size_t> stages{25, 50, 100, 200, 400};
    std::vector<double> res;
    for (std::size_t N : stages) res.push_back(p.residual_norm(N));
    // Below the quadrature floor, ordering is roundoff noise; two values at
    // the floor count as a tie, not a violation.
    const double floor = 1e-12;
    bool decreasing = true;
    for (std::size_t i = 1; i < res.size(); ++i) {
        const bool tied_out = res[i] <= floor && res[i - 1] <= floor;
        decreasing = decreasing && (res[i] < res[i - 1] || tied_out);
    }
    const double final_ratio = res.back() / res.front();
    out.pass = decreasing && final_ratio <= 0.3;
    std::snprintf(out.detail, sizeof out.detail,
                  "residuals %.3g -> %.3g -> %.3g -> %.3g -> %.3g, final/initial=%.2g (<=0.3)",
                  res[0], res[1], res[2], res[3], res[4], final_ratio);
    return out;
}

// 7. Divergent regime: interior remainders of the block witness grow like
// the predicted power of the shell radius.
Line criterion7() {
    Line out;
    const SineType s = SineType::sigma_lattice(21.0);
    const CounterexampleParams prm = choose_parameters(2.0, 0.25, 0.0);
    const std::vector<Shell> shells = select_shells(s, 3, prm);
    if (shells.size() < 3) {
        std::snprintf(out.detail, sizeof out.detail, "only %zu shells available", shells.size());
        return out;
    }
    const BlockWitness witness(prm, shells);
    QuadratureSpec spec;
    spec.abs_floor = 1e-12 * witness.norm_phi();
    std::vector<double> lr, la, as;
    for (const Shell& sh : shells) {
        const Contour c = build_contour(s.zeros(), sh.N);
        const double A = interior_remainder_norm(witness, s, c, 0.25, spec);
        as.push_back(A);
        lr.push_back(std::log(sh.R));
        la.push_back(std::log(A));
    }
    const bool nondec = as[1] >= as[0] * (1.0 - 1e-9) && as[2] >= as[1] * (1.0 - 1e-9);
    const double ratio = as[2] / as[0];
    const double slope = oracles::fit_slope(lr, la);
    const double target = 1.0 - 0.25 - 0.0 - prm.kappa;  // 0.0625
    out.pass = nondec && ratio >= 1.1 && std::abs(slope - target) <= 0.1;
    std::snprintf(out.detail, sizeof out.detail,
                  "A={%.4g,%.4g,%.4g} nondecreasing=%d A3/A1=%.3g (>=1.1) slope=%.4g "
                  "(target %.4g +/- 0.1)",
                  as[0], as[1], as[2], nondec ? 1 : 0, ratio, slope, target);
    return out;
}

// 8. The Taylor blocks' norms grow no faster than the admissible power law.
Line criterion8() {
    Line out;
    const SineType s = SineType::sigma_lattice(21.0);
    std::vector<double> lr, ln;
    for (double R : {3.0, 7.0, 15.0}) {
        const TaylorBlock b = build_block(s, R, 0.25);
        lr.push_back(std::log(R));
        ln.push_back(b.log_norm_sq(2.0));
    }
    const double slope = oracles::fit_slope(lr, ln);
    const double bound = 2.0 - 1.0 + 0.25 - 0.0 + 0.3;  // 1.55
    out.pass = slope <= bound;
    std::snprintf(out.detail, sizeof out.detail,
                  "d log||S_R||^2 / d log R = %.4g (<= %.3g)", slope, bound);
    return out;
}

// 9. Quadrature ground truth: monomials against the Gamma closed form, the
// kernel series against its Gaussian closed form.
Line criterion9() {
    Line out;
    double worst_mono = 0.0;
    for (double a : {1.0, 2.0}) {
        QuadratureSpec spec;
        spec.truncation_radius = (a == 1.0) ? 110.0 : 9.0;
        spec.angular_nodes = 8;
        spec.self_check_tol = 1e-10;
        spec.eps_tail = std::numeric_limits<double>::infinity();
        const ModifiedWeight mw{RadialWeight::power(a), 0.0};
        for (int n = 0; n <= 40; ++n) {
            const NormalizedFunction u{
                [n, a](complex z) -> complex {
                    const double r = std::abs(z);
                    if (r == 0.0) return n == 0 ? complex{1.0, 0.0} : complex{0.0, 0.0};
                    return std::polar(std::exp(n * std::log(r) - std::pow(r, a)),
                                      n * std::arg(z));
                },
                spec.truncation_radius};
            const double got = weighted_norm(u, mw, spec);
            const double want = std::exp(0.5 * log_monomial_norm(n, a));
            worst_mono = std::max(worst_mono, std::abs(got - want) / want);
        }
    }

    // The kernel clause is scored at the space's own scale e^{-|z|^2-|w|^2}:
    // the series carries summation noise ~eps * e^{2|w||z|}, so wherever the
    // closed form sits exponentially below the largest term no pointwise
    // relative digit is representable in doubles. Where the sum is well
    // conditioned the full relative bound is demanded as well.
    double worst_norm = 0.0, worst_rel = 0.0;
    int conditioned = 0;
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> uni(-6.0, 6.0);
    int done = 0;
    while (done < 40) {
        const complex w{uni(rng), uni(rng)}, z{uni(rng), uni(rng)};
        if (std::abs(w) > 6.0 || std::abs(z) > 6.0) continue;
        ++done;
        const KernelFunction k(w, 2.0, 6.0);
        const LogComplex got = k.eval_log(z);
        const LogComplex want = kernel_closed_form_a2(w, z);
        const double shift = std::norm(z) + std::norm(w);
        const complex gn = LogComplex::make(got.logmag - shift, got.phase).to_complex();
        const complex wn = LogComplex::make(want.logmag - shift, want.phase).to_complex();
        worst_norm = std::max(worst_norm, std::abs(gn - wn));
        const double cond_log =
            2.0 * (std::abs(w) * std::abs(z) - (std::conj(w) * z).real());
        if (cond_log <= 12.0) {
            ++conditioned;
            const complex g = got.to_complex(), t = want.to_complex();
            worst_rel = std::max(worst_rel, std::abs(g - t) / std::abs(t));
        }
    }
    out.pass = worst_mono <= 1e-8 && worst_norm <= 1e-8 && worst_rel <= 1e-8 &&
               conditioned >= 5;
    std::snprintf(out.detail, sizeof out.detail,
                  "monomials: max rel=%.3g | kernel: normalized max=%.3g, rel max=%.3g "
                  "on %d conditioned pts (all <=1e-8)",
                  worst_mono, worst_norm, worst_rel, conditioned);
    return out;
}

// 10. The weighted boundary energy of a fixed finite-norm element drains
// along the contour schedule.
Line criterion10() {
    Line out;
    const SineType s = SineType::sigma_lattice(16.0);
    const auto f = kernel_f({1.0, 0.5}, 16.0);
    const NormalizedFunction u{[f](complex z) { return normalized_value(f(z), std::norm(z)); },
                               12.0};
    const std::vector<std::size_t> stages{25, 50, 100, 200, 400};
    std::vector<double> energy;
    for (std::size_t N : stages)
        energy.push_back(boundary_energy(u, s.weight(), build_contour(s.zeros(), N)));
    int violations = 0;
    for (std::size_t i = 1; i < energy.size(); ++i)
        if (energy[i] >= energy[i - 1]) ++violations;
    out.pass = violations <= 1 && energy.back() < energy.front();
    std::snprintf(out.detail, sizeof out.detail,
                  "R rho(R) x boundary energy: %.3g %.3g %.3g %.3g %.3g (violations=%d<=1)",
                  energy[0], energy[1], energy[2], energy[3], energy[4], violations);
    return out;
}

const char* kNames[10] = {
    "sine-type certification",   "biorthogonality",
    "norm growth dichotomy",     "cauchy identity",
    "contour geometry",          "convergent regime",
    "divergent regime",          "block norm bound",
    "quadrature ground truth",   "boundary energy trend",
};

using Criterion = Line (*)();
const Criterion kChecks[10] = {criterion1, criterion2, criterion3, criterion4, criterion5,
                               criterion6, criterion7, criterion8, criterion9, criterion10};

}  // namespace

int main(int argc, char** argv) {
    set_max_threads(0);
    int lo = 1, hi = 10;
    if (argc > 1) {
        const int k = std::atoi(argv[1]);
        if (k < 1 || k > 10) {
            std::fprintf(stderr, "usage: %s [1..10]\n", argv[0]);
            return 2;
        }
        lo = hi = k;
    }
    bool all = true;
    for (int k = lo; k <= hi; ++k) {
        const auto t0 = std::chrono::steady_clock::now();
        Line r;
        try {
            r = kChecks[k - 1]();
        } catch (const std::exception& e) {
            std::snprintf(r.detail, sizeof r.detail, "exception: %s", e.what());
            r.pass = false;
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("[%s] %2d %-26s %s (%.1fs)\n", r.pass ? "PASS" : "FAIL", k, kNames[k - 1],
                    r.detail, secs);
        std::fflush(stdout);
        all = all && r.pass;
    }
    return all ? 0 : 1;
}
