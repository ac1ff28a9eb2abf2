#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <limits>
#include <vector>

#include "focklab/lattice.hpp"
#include "focklab/log_complex.hpp"
#include "focklab/types.hpp"
#include "focklab/weights.hpp"

namespace focklab {

enum class SineKind { SigmaLattice, SigmaOverLinear, Custom };

// Scale of the critical square lattice for the r^2 weight: sqrt(pi/2), the
// spacing at which |sigma(z)| e^{-|z|^2} is lattice-periodic.
double critical_omega();

// Truncated Taylor data of S at one of its zeros:
// S(center + h) = sum_{j>=1} coeff[j-1] * h^j. Used for the removable form of
// S(z)/(z - center) when z sits too close to the zero for direct division.
struct LocalExpansion {
    complex center;
    std::vector<LogComplex> coeff;  // c_1, c_2, ...

    // S(center + h) / h = c_1 + c_2 h + ...; finite at h = 0.
    LogComplex eval_over_linear(complex h) const;
};

// A generating function with simple zeros exactly on its ZeroSet, evaluated
// in log scale. Two built-in realizations for the Gaussian-type weight r^2 on
// the critical square lattice (scale omega = sqrt(pi/2)): the lattice sigma
// function itself and sigma with one zero divided out. Arbitrary evaluation
// rules can be wrapped via custom() and vetted with certify_sinetype.
class SineType {
public:
    // Weierstrass sigma for omega*(Z + iZ); zeros truncated at r_max.
    static SineType sigma_lattice(double r_max);
    // sigma(z)/(z - lambda_rm); default removes the origin.
    static SineType sigma_over_linear(double r_max, complex removed = {0.0, 0.0});
    static SineType custom(ZeroSet zeros, double gamma_nominal,
                           std::function<LogComplex(complex)> eval);

    SineKind kind() const { return kind_; }
    const ZeroSet& zeros() const { return zeros_; }
    const RadialWeight& weight() const { return zeros_.weight(); }
    double gamma_nominal() const { return gamma_; }
    double omega() const { return omega_; }

    LogComplex eval_log(complex z) const;

    // S'(lambda_k) and the local Taylor coefficients c_1..c_order around
    // lambda_k, both by trapezoid Cauchy integrals on the circle
    // |zeta - lambda_k| = 0.1 rho(lambda_k). The trapezoid rule is spectrally
    // accurate for these analytic integrands, so modest node counts suffice.
    LogComplex derivative_at_zero(std::size_t k, int nodes = 64) const;
    LocalExpansion local_expansion(std::size_t k, int nodes = 64, int order = 6) const;

private:
    SineType(SineKind k, ZeroSet zs, double gamma, double omega)
        : kind_(k), zeros_(std::move(zs)), gamma_(gamma), omega_(omega) {}

    SineKind kind_;
    ZeroSet zeros_;
    double gamma_;
    double omega_;  // lattice scale; 0 for custom rules
    complex removed_ = {0.0, 0.0};
    std::function<LogComplex(complex)> custom_eval_;
};

// Sampling grid for certification: `annuli` concentric annuli covering
// [r_min, r_max], each probed on `radial` radii times `angular` angles.
// Points with d(z, zeros) < exclusion * rho(z) are skipped (the certified
// ratio divides by the distance to the zero set).
struct AnnularGrid {
    double r_min = 1.0;
    double r_max = 10.0;
    int annuli = 9;
    int radial = 4;
    int angular = 128;
    double exclusion = 1e-3;
};

struct AnnulusStats {
    double inner = 0.0, outer = 0.0;
    double q_min = 0.0, q_max = 0.0;
    std::size_t n_samples = 0;
};

struct CertifyReport {
    double c_min = 0.0, c_max = 0.0;
    std::vector<AnnulusStats> table;
    std::size_t n_excluded = 0;

    double ratio() const { return c_max / c_min; }
    // Least-squares slope of log(per-annulus q_max) against log(mid radius);
    // near 0 when the comparability constants do not drift with radius.
    double cmax_log_slope() const;
    void write_csv(std::ostream& os) const;  // annulus_inner,annulus_outer,q_min,q_max,n_samples
};

// Measures Q(z) = |S(z)| e^{-phi(|z|)} rho(z) (1+|z|)^gamma / d(z, zeros)
// over the grid. A genuine generating function keeps Q within fixed bounds;
// a wrong gamma shows up as a radial trend in the per-annulus extremes.
// gamma_claim overrides the exponent being tested (NaN = use the nominal
// one), which is how a deliberately wrong claim is made to fail.
CertifyReport certify_sinetype(const SineType& s, const AnnularGrid& grid,
                               double gamma_claim = std::numeric_limits<double>::quiet_NaN());

// Taylor coefficients s_n of S for n in [n_lo, n_hi], from FFT samples of S
// on a circle whose radius balances r^{-n} e^{phi(r)} at the window midpoint.
// Every coefficient is validated by re-extraction on a second radius; windows
// that fail validation are split and recomputed at their own saddle radii.
std::vector<LogComplex> taylor_coeffs(const SineType& s, int n_lo, int n_hi);

}  // namespace focklab
