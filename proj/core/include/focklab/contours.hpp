#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "focklab/lattice.hpp"
#include "focklab/types.hpp"

namespace focklab {

// One smooth radial bump riding on the unit circle profile, centered at
// `theta` with sign +1 (outward, keeps a point inside) or -1 (inward).
struct Bump {
    double theta = 0.0;
    int sign = 1;
};

// Closed curve R * r(theta) e^{i theta} separating the first N points of a
// zero set from the rest. r(theta) is 1 plus disjoint C-infinity bumps of
// relative height and angular half-width `amplitude` (both delta*rho(R)/R),
// so the curve stays inside the annulus |[z| - R| < rho(R) and |r'| stays
// below a fixed constant no matter how many bumps are present.
class Contour {
public:
    // Plain circle; used for reference integrals and as a trivial contour.
    static Contour circle(double radius, double rho_at_radius);

    double scale_radius() const { return radius_; }       // R
    double rho_at_scale() const { return rho_; }          // rho(R)
    double delta() const { return delta_; }
    double amplitude() const { return amp_; }             // bump height = angular half-width
    const std::vector<Bump>& bumps() const { return bumps_; }
    std::size_t n_target() const { return n_target_; }    // points meant to be inside
    double K_bound() const { return k_bound_; }           // analytic sup |r'|
    double epsilon_sep() const { return eps_sep_; }       // verified d_rho(zeros, curve)

    double radius_at(double theta) const;        // profile r(theta)
    double radius_deriv_at(double theta) const;  // r'(theta)
    complex point_at(double theta) const;        // R r(theta) e^{i theta}

    // Even-odd test against the cached polygon; points with a modulus clear
    // of the bump annulus are decided by radius alone.
    bool inside(complex z) const;
    const std::vector<complex>& polygon() const { return poly_; }

    void write_csv(std::ostream& os, int samples = 2048) const;  // theta,r,r_prime

private:
    Contour() = default;
    void build_polygon(std::size_t vertices);

    double radius_ = 0.0;
    double rho_ = 0.0;
    double delta_ = 0.0;
    double amp_ = 0.0;
    std::vector<Bump> bumps_;
    std::size_t n_target_ = 0;
    double k_bound_ = 0.0;
    double eps_sep_ = 0.0;
    std::vector<complex> poly_;

    friend Contour build_contour(const ZeroSet& zs, std::size_t N);
};

struct ContourReport {
    double K_emp = 0.0;          // max |r'| over a dense theta grid
    double eps_emp = 0.0;        // min d_rho between nearby zeros and curve samples
    std::size_t inside_count = 0;
    bool inside_matches = false; // inside_count == requested N
    bool annulus_ok = false;
};

// Builds the separating curve for the first N points (0-based indices
// 0..N-1 inside), choosing delta adaptively: start at 0.2 * separation and
// halve until the bumps are disjoint and the verified zero-curve separation
// clears 0.05. Throws if no delta works.
Contour build_contour(const ZeroSet& zs, std::size_t N);

// Independent geometric audit of a built contour (polygon ray-crossing for
// the inside count rather than the radial comparison the builder uses).
ContourReport verify_contour(const Contour& c, const ZeroSet& zs, std::size_t N);

}  // namespace focklab
