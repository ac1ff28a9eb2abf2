#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "focklab/contours.hpp"
#include "focklab/genfun.hpp"
#include "focklab/quadrature.hpp"
#include "focklab/types.hpp"
#include "focklab/weights.hpp"

namespace focklab {

// Indicator of the contour interior. Points radially within 1e-6 * R of the
// curve are rejected: the indicator is not trustworthy there and neither is
// any identity that multiplies by it.
int chi(const Contour& c, complex z);

// One interpolation run: a generating function S with its node set, a data
// function f (in log form), and the norm tilt beta. Construction caches the
// local expansion of S at the first k_max nodes; the first expansion
// coefficient doubles as S'(lambda_k), so the Lagrange elements built here
// are biorthogonal to the nodes by construction, not just approximately.
class InterpolationProblem {
public:
    InterpolationProblem(SineType s, std::size_t k_max,
                         std::function<LogComplex(complex)> f_log, double beta);

    const SineType& sine() const { return s_; }
    const ZeroSet& zeros() const { return s_.zeros(); }
    std::size_t k_max() const { return k_max_; }
    double beta() const { return beta_; }
    ModifiedWeight modified_weight() const { return {s_.weight(), beta_}; }

    LogComplex f_log(complex z) const { return f_(z); }
    complex f_normalized(complex z) const;  // f(z) e^{-phi(|z|)}

    // S'(lambda_k) and c_k = f(lambda_k) / S'(lambda_k).
    LogComplex sprime(std::size_t k) const;
    LogComplex coefficient(std::size_t k) const;

    // Lagrange element f_k(z) = S(z) / (S'(lambda_k) (z - lambda_k)); within
    // 1e-3 rho(lambda_k) of the node the removable form via the local
    // expansion takes over, so f_k(lambda_j) is exactly the Kronecker delta.
    LogComplex lagrange_term(std::size_t k, complex z) const;

    // Sigma_N(z) = sum_{k<N} c_k f_k(z), assembled as S(z) times the pairwise
    // sum of c_k/(z - lambda_k); a node-adjacent term is split off and
    // evaluated through its expansion.
    LogComplex partial_sum(std::size_t N, complex z) const;
    complex partial_sum_normalized(std::size_t N, complex z) const;

    // I_N(z) = (1/(2 pi i)) * integral over the contour of
    // f(zeta) / (S(zeta) (z - zeta)) d zeta. For z inside,
    // S(z) I_N(z) = Sigma_N(z) - f(z); for z outside the f/S residue drops
    // out and S(z) I_N(z) = Sigma_N(z). Requires d(z, curve) >= 1e-3 rho(R).
    LogComplex cauchy_remainder(const Contour& c, complex z,
                                ContourIntOptions opt = {}) const;

    // || f - Sigma_N ||_{phi_beta} over |z| <= |lambda_{N-1}| + 10 rho, with
    // the tail beyond the truncation bounded a posteriori from samples on the
    // truncation circle (valid for beta > 0, where the tail weight decays).
    double residual_norm(std::size_t N, const QuadratureSpec* custom = nullptr) const;

private:
    SineType s_;
    std::size_t k_max_;
    std::function<LogComplex(complex)> f_;
    double beta_;
    std::vector<LocalExpansion> exps_;  // per node; coeff[0] = S'(lambda_k)
    std::vector<LogComplex> coef_;      // c_k in log form
    std::vector<complex> coef_c_;       // c_k flushed to complex for fast sums
    mutable double f_norm_cache_ = -1.0;  // ||f||_{phi_beta}, for noise floors
};

// Cumulative squared norms ||f_k||^2_{phi} over |z| <= radii[i] for one
// Lagrange element, computed once per annulus between consecutive radii at a
// single fixed resolution. Meant for growth-trend plots (log-log slopes),
// not for tight norm values.
std::vector<double> flambda_partial_norms(const SineType& s, std::size_t k,
                                          const std::vector<double>& radii, double beta = 0.0,
                                          int radial_order = 12, int angular = 0);

// R rho(R) times the integral of |u|^2 |d zeta| over the contour, by
// trapezoid sampling. Finite-norm functions must sink this energy as R grows;
// the quantity is the bridge between boundary size and interior norm.
double boundary_energy(const NormalizedFunction& u, const RadialWeight& w, const Contour& c,
                       int samples = 4096);

}  // namespace focklab
