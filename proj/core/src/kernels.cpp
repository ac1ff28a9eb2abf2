#include "focklab/kernels.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace focklab {

double log_monomial_norm(int n, double a) {
    if (n < 0) throw std::invalid_argument("log_monomial_norm: n must be >= 0");
    if (!(a > 0.0 && a <= 2.0)) throw std::invalid_argument("log_monomial_norm: need 0 < a <= 2");
    const double s = (2.0 * n + 2.0) / a;
    return std::log(2.0 * std::numbers::pi / a) - s * std::log(2.0) + std::lgamma(s);
}

KernelFunction::KernelFunction(complex w, double a, double z_cap, int n_max)
    : w_(w), a_(a), cap_(z_cap) {
    if (!(a > 0.0 && a <= 2.0)) throw std::invalid_argument("KernelFunction: need 0 < a <= 2");
    if (!(z_cap > 0.0)) throw std::invalid_argument("KernelFunction: z_cap must be positive");
    if (n_max > 0) {
        n_max_ = n_max;
        return;
    }
    // Term n at the worst case |z| = z_cap has log size n log(z_cap |w|) - log m_n.
    // Track the running peak while scanning n upward; cut once the terms sit
    // 16 decades under it. Term decay is super-geometric past the saddle, so
    // the scan terminates quickly.
    const double lzw = std::log(cap_ * std::max(std::abs(w_), 1e-300));
    double peak = -std::numeric_limits<double>::infinity();
    int n = 0;
    for (; n < 100000; ++n) {
        const double t = n * lzw - log_monomial_norm(n, a_);
        peak = std::max(peak, t);
        if (t < peak + std::log(1e-16)) break;
    }
    n_max_ = n + 1;
}

LogComplex KernelFunction::eval_log(complex z) const {
    if (!(std::abs(z) <= cap_ * (1.0 + 1e-12)))
        throw std::range_error("KernelFunction::eval_log: |z| beyond the validated cap");
    const LogComplex lz = LogComplex::from_complex(z);
    const LogComplex lw = conj(LogComplex::from_complex(w_));
    std::vector<LogComplex> terms(n_max_ + 1);
    // The constant term never vanishes; splitting it off also keeps the
    // n * logmag products below free of 0 * (-inf).
    terms[0] = LogComplex::make(-log_monomial_norm(0, a_), 0.0);
    for (int n = 1; n <= n_max_; ++n) {
        if (lz.is_zero() || lw.is_zero()) {
            terms[n] = LogComplex::zero();
            continue;
        }
        terms[n] = LogComplex::make(n * (lz.logmag + lw.logmag) - log_monomial_norm(n, a_),
                                    n * (lz.phase + lw.phase));
    }
    return log_sum(terms);
}

complex KernelFunction::eval_normalized(complex z) const {
    const LogComplex L = eval_log(z);
    if (L.is_zero()) return {0.0, 0.0};
    return LogComplex::make(L.logmag - std::pow(std::abs(z), a_), L.phase).to_complex_or_zero();
}

LogComplex kernel_closed_form_a2(complex w, complex z) {
    const complex e = 2.0 * std::conj(w) * z;
    return LogComplex::make(std::log(2.0 / std::numbers::pi) + e.real(), e.imag());
}

}  // namespace focklab
