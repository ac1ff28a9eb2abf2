#pragma once

#include "focklab/types.hpp"

namespace focklab {

enum class WeightKind { Power, LogSquare };

// Radial weight phi(|z|) together with the induced density
// rho = (laplacian phi)^{-1/2}. Two families:
//   power:      phi(r) = r^a with 0 < a <= 2,   rho(r) = r^{1-a/2} / a
//   log_square: phi(r) = (log r)^2 for r >= 2, extended below 2 by the
//               second-order Taylor polynomial at 2 clamped at 0, so that phi
//               stays C^2-matched at the joint and nondecreasing;
//               rho(r) = r / sqrt(2) for r >= 2.
class RadialWeight {
public:
    static RadialWeight power(double a);
    static RadialWeight log_square();

    WeightKind kind() const { return kind_; }
    double exponent() const;  // a; only meaningful for the power family

    double phi(double r) const;
    double laplacian(double r) const;  // radial laplacian phi'' + phi'/r, r > 0
    // rho(r) for r > 0; rho(0) is the limit value (0 except for power a = 2,
    // where rho is identically 1/2). Negative r is a domain error.
    double rho(double r) const;

private:
    explicit RadialWeight(WeightKind k, double a) : kind_(k), a_(a) {}
    WeightKind kind_;
    double a_;
};

inline double phi_of(const RadialWeight& w, complex z) { return w.phi(std::abs(z)); }
inline double rho_of(const RadialWeight& w, complex z) { return w.rho(std::abs(z)); }

// phi_beta(r) = phi(r) + beta * log(1 + r).
struct ModifiedWeight {
    RadialWeight base;
    double beta = 0.0;
    double phi_beta(double r) const;
};

// d_rho(z, w) = |z - w| / min(rho(z), rho(w)). Distinct points with a
// vanishing minimum are infinitely separated; coincident points are at 0.
double d_rho(const RadialWeight& w, complex z, complex v);

}  // namespace focklab
