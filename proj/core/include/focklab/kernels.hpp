#pragma once

#include "focklab/log_complex.hpp"
#include "focklab/types.hpp"

namespace focklab {

// log of ||z^n||^2 under the weight r^a:
// 2 pi integral r^{2n+1} e^{-2 r^a} dr = (2 pi / a) 2^{-(2n+2)/a} Gamma((2n+2)/a).
double log_monomial_norm(int n, double a);

// Reproducing kernel at node w for the weight r^a, realized as the monomial
// series sum_n z^n conj(w)^n / ||z^n||^2. The truncation index is fixed at
// construction so that every dropped term is below 1e-16 of the peak term
// uniformly over |z| <= z_cap.
class KernelFunction {
public:
    KernelFunction(complex w, double a, double z_cap = 8.0, int n_max = 0);

    complex node() const { return w_; }
    double exponent() const { return a_; }
    int n_max() const { return n_max_; }
    double z_cap() const { return cap_; }

    LogComplex eval_log(complex z) const;
    // e^{-phi(|z|)} k_w(z); the form quadratures consume.
    complex eval_normalized(complex z) const;

private:
    complex w_;
    double a_;
    double cap_;
    int n_max_;
};

// Closed form for a = 2: k_w(z) = (2/pi) e^{2 conj(w) z}.
LogComplex kernel_closed_form_a2(complex w, complex z);

}  // namespace focklab
