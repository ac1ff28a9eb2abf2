#include "focklab/weights.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace focklab {

namespace {
// Joint of the log-square weight and its Taylor data there.
constexpr double kJoint = 2.0;
const double kLn2 = std::log(2.0);
const double kV0 = kLn2 * kLn2;            // phi(2)
const double kD1 = kLn2;                   // phi'(2)  = 2 log 2 / 2
const double kD2 = 0.5 * (1.0 - kLn2);     // phi''(2) = (2 - 2 log 2) / 4
}  // namespace

RadialWeight RadialWeight::power(double a) {
    if (!(a > 0.0) || !(a <= 2.0))
        throw std::invalid_argument("RadialWeight::power: need 0 < a <= 2");
    return RadialWeight(WeightKind::Power, a);
}

RadialWeight RadialWeight::log_square() { return RadialWeight(WeightKind::LogSquare, 0.0); }

double RadialWeight::exponent() const {
    if (kind_ != WeightKind::Power)
        throw std::logic_error("RadialWeight::exponent: not a power weight");
    return a_;
}

double RadialWeight::phi(double r) const {
    if (!(r >= 0.0)) throw std::domain_error("RadialWeight::phi: r must be >= 0");
    if (kind_ == WeightKind::Power) return std::pow(r, a_);
    if (r >= kJoint) {
        const double l = std::log(r);
        return l * l;
    }
    const double d = r - kJoint;
    return std::max(0.0, kV0 + kD1 * d + 0.5 * kD2 * d * d);
}

double RadialWeight::laplacian(double r) const {
    if (!(r > 0.0)) throw std::domain_error("RadialWeight::laplacian: r must be > 0");
    if (kind_ == WeightKind::Power) return a_ * a_ * std::pow(r, a_ - 2.0);
    if (r >= kJoint) return 2.0 / (r * r);
    // Below the joint the unclamped extension polynomial is used; its radial
    // laplacian stays positive on (0, 2) and matches 2/r^2 at the joint.
    return kD2 + (kD1 + kD2 * (r - kJoint)) / r;
}

double RadialWeight::rho(double r) const {
    if (!(r >= 0.0)) throw std::domain_error("RadialWeight::rho: r must be >= 0");
    if (r == 0.0) {
        if (kind_ == WeightKind::Power && a_ == 2.0) return 0.5;
        return 0.0;
    }
    if (kind_ == WeightKind::Power) return std::pow(r, 1.0 - 0.5 * a_) / a_;
    if (r >= kJoint) return r / std::sqrt(2.0);
    return 1.0 / std::sqrt(laplacian(r));
}

double ModifiedWeight::phi_beta(double r) const { return base.phi(r) + beta * std::log1p(r); }

double d_rho(const RadialWeight& w, complex z, complex v) {
    const double dist = std::abs(z - v);
    if (dist == 0.0) return 0.0;
    const double m = std::min(w.rho(std::abs(z)), w.rho(std::abs(v)));
    if (m == 0.0) return std::numeric_limits<double>::infinity();
    return dist / m;
}

}  // namespace focklab
