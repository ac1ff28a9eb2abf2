#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "focklab/contours.hpp"
#include "focklab/genfun.hpp"
#include "focklab/quadrature.hpp"
#include "focklab/types.hpp"

namespace focklab {

// Exponent bookkeeping for the divergence construction. eps widens the
// Taylor windows just enough that each block still carries the full size of
// S on its own annulus; kappa sits strictly between the exponent that keeps
// the witness in the space and the one that makes the interior remainders
// grow, which is the whole point of the construction.
struct CounterexampleParams {
    double a = 2.0;
    double beta = 0.25;
    double gamma = 0.0;
    double eps = 0.0;
    double kappa = 0.0;
};

// eps = (a/2 - 2 beta)/2; kappa = midpoint of the admissible interval
// (1 - a/4 + eps/2 - gamma, 1 - beta - gamma), which is nonempty exactly
// when beta < a/4.
CounterexampleParams choose_parameters(double a, double beta, double gamma);

// Taylor coefficients of S restricted to the window |n - a R^a| < R^{a/2+eps}
// around the radius R where those degrees are active.
struct TaylorBlock {
    double R = 0.0;
    int n_lo = 0;
    int n_hi = -1;
    std::vector<LogComplex> s_n;   // coefficient of z^n for n in [n_lo, n_hi]
    double annulus_defect = 0.0;   // max |S - S_R| e^{-phi} sampled on ||z|-R| < 0.8 rho(R)

    LogComplex eval_log(complex z) const;
    // log ||S_R||^2 in the plain phi norm, exactly, via monomial
    // orthogonality: sum_n |s_n|^2 ||z^n||^2.
    double log_norm_sq(double a) const;
};

TaylorBlock build_block(const SineType& s, double R, double eps);

struct Shell {
    double R = 0.0;
    std::size_t N = 0;  // zeros with modulus <= R (the shell is complete)
    TaylorBlock block;
};

// Walks the doubling schedule 3, 7, 15, ... (each candidate nudged outward
// until its window keeps a degree >= the enclosed node count, so the block
// cannot be interpolated away) and accepts a shell only while the
// cross-shell smallness bound
//   e^{-phi(|z|)} |sum_{m != k} R_m^{-kappa} S_{R_m}(z)| <= |z|^{-(gamma+1)}
// keeps holding on every accepted shell's annulus. Stops early, returning
// fewer shells, when the node truncation can no longer support the Taylor
// window of the next candidate.
std::vector<Shell> select_shells(const SineType& s, int shells_wanted,
                                 const CounterexampleParams& p);

// f = sum_k R_k^{-kappa} S_{R_k}. Disjoint Taylor windows make its norm a
// plain coefficient sum, so the norm here is exact, not quadrature.
class BlockWitness {
public:
    BlockWitness(CounterexampleParams p, std::vector<Shell> shells);

    const CounterexampleParams& params() const { return p_; }
    const std::vector<Shell>& shells() const { return shells_; }

    LogComplex eval_log(complex z) const;
    double norm_phi() const;                    // || f ||_phi
    std::vector<double> shell_norm_sq() const;  // R_k^{-2 kappa} ||S_{R_k}||^2 per shell

    void write_csv(std::ostream& os) const;  // shell,R,n,logmag,phase (R^-kappa included)

private:
    CounterexampleParams p_;
    std::vector<Shell> shells_;
};

// A_k = || Sigma_{N}(f) - f ||_{phi_beta} over the interior of the contour,
// with N the contour's target count and f the witness.
double interior_remainder_norm(const BlockWitness& bw, const SineType& s, const Contour& c,
                               double beta, const QuadratureSpec& spec);

}  // namespace focklab
