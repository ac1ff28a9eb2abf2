#include "focklab/contours.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

#include "focklab/weights.hpp"

namespace focklab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kPolyVertices = 10000;

// Bump profile: 0.99 e^{1 - 1/(1-t^2)} on |t| < 1, zero outside. Strictly
// between 0 and 1, above 1/2 on [-1/2, 1/2], and flat to all orders at the
// support edges, so the assembled curve is C-infinity.
double psi(double t) {
    const double t2 = t * t;
    if (t2 >= 1.0) return 0.0;
    return 0.99 * std::exp(1.0 - 1.0 / (1.0 - t2));
}

double psi_deriv(double t) {
    const double t2 = t * t;
    if (t2 >= 1.0) return 0.0;
    const double d = 1.0 - t2;
    return psi(t) * (-2.0 * t / (d * d));
}

double max_abs_psi_deriv() {
    static const double m = [] {
        double best = 0.0;
        for (int i = 1; i < 100000; ++i) best = std::max(best, std::abs(psi_deriv(i * 1e-5)));
        return best;
    }();
    return m;
}

// Signed angular difference wrapped into (-pi, pi].
double ang_diff(double a, double b) { return std::remainder(a - b, 2.0 * kPi); }

double arg_02pi(complex z) {
    double a = std::arg(z);
    if (a < 0.0) a += 2.0 * kPi;
    return a;
}

}  // namespace

double Contour::radius_at(double theta) const {
    double r = 1.0;
    for (const auto& b : bumps_) {
        const double t = ang_diff(theta, b.theta) / amp_;
        if (std::abs(t) < 1.0) r += b.sign * amp_ * psi(t);
    }
    return r;
}

double Contour::radius_deriv_at(double theta) const {
    double d = 0.0;
    for (const auto& b : bumps_) {
        const double t = ang_diff(theta, b.theta) / amp_;
        if (std::abs(t) < 1.0) d += b.sign * psi_deriv(t);
    }
    return d;
}

complex Contour::point_at(double theta) const {
    return std::polar(radius_ * radius_at(theta), theta);
}

void Contour::build_polygon(std::size_t vertices) {
    poly_.resize(vertices);
    for (std::size_t i = 0; i < vertices; ++i) {
        const double th = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(vertices);
        poly_[i] = point_at(th);
    }
}

bool Contour::inside(complex z) const {
    const double m = std::abs(z);
    const double band = radius_ * (amp_ + 1e-12);
    if (m < radius_ - band) return true;
    if (m > radius_ + band) return false;
    bool in = false;
    const std::size_t n = poly_.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const bool cross = (poly_[i].imag() > z.imag()) != (poly_[j].imag() > z.imag());
        if (cross &&
            z.real() < (poly_[j].real() - poly_[i].real()) * (z.imag() - poly_[i].imag()) /
                               (poly_[j].imag() - poly_[i].imag()) +
                           poly_[i].real())
            in = !in;
    }
    return in;
}

Contour Contour::circle(double radius, double rho_at_radius) {
    if (!(radius > 0.0) || !(rho_at_radius > 0.0))
        throw std::invalid_argument("Contour::circle: radius and rho must be positive");
    Contour c;
    c.radius_ = radius;
    c.rho_ = rho_at_radius;
    c.build_polygon(kPolyVertices);
    return c;
}

void Contour::write_csv(std::ostream& os, int samples) const {
    os << "theta,r,r_prime\n";
    char buf[120];
    for (int i = 0; i < samples; ++i) {
        const double th = 2.0 * kPi * i / samples;
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", th, radius_at(th),
                      radius_deriv_at(th));
        os << buf;
    }
}

namespace {

// Zero-curve separation, sampled: min over zeros within 3 rho of the annulus
// of the min over polygon vertices of d_rho(zero, vertex).
double sampled_separation(const Contour& c, const ZeroSet& zs) {
    const double R = c.scale_radius();
    const double rho = c.rho_at_scale();
    const RadialWeight& w = zs.weight();
    double eps = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < zs.size(); ++k) {
        const double m = zs.modulus(k);
        if (m < R - 4.0 * rho || m > R + 4.0 * rho) continue;
        const complex lam = zs.point(k);
        double best = std::numeric_limits<double>::infinity();
        for (const complex& v : c.polygon()) best = std::min(best, d_rho(w, lam, v));
        eps = std::min(eps, best);
    }
    return eps;
}

std::size_t radial_inside_count(const Contour& c, const ZeroSet& zs) {
    const double R = c.scale_radius();
    const double band = R * c.amplitude();
    std::size_t cnt = 0;
    for (std::size_t k = 0; k < zs.size(); ++k) {
        const double m = zs.modulus(k);
        if (m < R - band) {
            ++cnt;
        } else if (m <= R + band) {
            if (m < R * c.radius_at(arg_02pi(zs.point(k)))) ++cnt;
        }
    }
    return cnt;
}

}  // namespace

Contour build_contour(const ZeroSet& zs, std::size_t N) {
    if (N < 1 || N >= zs.size())
        throw std::invalid_argument("build_contour: need 1 <= N < size (a point beyond N must exist)");
    const RadialWeight& w = zs.weight();
    const double R = zs.modulus(N - 1);
    if (!(R > 0.0)) throw std::invalid_argument("build_contour: N-th point sits at the origin");
    const double rho = w.rho(R);

    double delta = 0.2 * zs.separation();
    const double delta_min = delta / 4096.0;
    std::string why = "no candidate tried";
    while (delta >= delta_min) {
        const double amp = delta * rho / R;

        // Points whose modulus is within delta*rho/4 of R get a bump at
        // their angle: outward for indices < N, inward for the rest.
        std::vector<Bump> bumps;
        for (std::size_t k = 0; k < zs.size(); ++k) {
            if (std::abs(zs.modulus(k) - R) < delta * rho / 4.0)
                bumps.push_back({arg_02pi(zs.point(k)), k < N ? 1 : -1});
        }
        std::sort(bumps.begin(), bumps.end(),
                  [](const Bump& a, const Bump& b) { return a.theta < b.theta; });

        bool disjoint = true;
        for (std::size_t i = 0; i + 1 < bumps.size() && disjoint; ++i)
            disjoint = bumps[i + 1].theta - bumps[i].theta > 2.0 * amp;
        if (disjoint && bumps.size() > 1)
            disjoint = 2.0 * kPi - (bumps.back().theta - bumps.front().theta) > 2.0 * amp;
        if (!disjoint) {
            why = "overlapping bump supports";
            delta *= 0.5;
            continue;
        }

        Contour c;
        c.radius_ = R;
        c.rho_ = rho;
        c.delta_ = delta;
        c.amp_ = amp;
        c.bumps_ = std::move(bumps);
        c.n_target_ = N;
        c.k_bound_ = max_abs_psi_deriv();
        c.build_polygon(kPolyVertices);

        if (radial_inside_count(c, zs) != N) {
            why = "inside count missed N";
            delta *= 0.5;
            continue;
        }
        const double eps = sampled_separation(c, zs);
        if (!(eps >= 0.05)) {
            why = "zero-curve separation below 0.05";
            delta *= 0.5;
            continue;
        }
        c.eps_sep_ = eps;
        return c;
    }
    throw std::runtime_error("build_contour: delta search failed for N=" + std::to_string(N) +
                             " (" + why + ")");
}

ContourReport verify_contour(const Contour& c, const ZeroSet& zs, std::size_t N) {
    ContourReport rep;
    const double R = c.scale_radius();
    const double rho = c.rho_at_scale();

    const int dense = 10000;
    double kmax = 0.0, dev = 0.0;
    for (int i = 0; i < dense; ++i) {
        const double th = 2.0 * kPi * i / dense;
        kmax = std::max(kmax, std::abs(c.radius_deriv_at(th)));
        dev = std::max(dev, std::abs(R * c.radius_at(th) - R));
    }
    rep.K_emp = kmax;
    rep.annulus_ok = dev < rho;

    rep.eps_emp = sampled_separation(c, zs);

    std::size_t cnt = 0;
    const double band = R * c.amplitude();
    for (std::size_t k = 0; k < zs.size(); ++k) {
        const double m = zs.modulus(k);
        if (m < R - band)
            ++cnt;
        else if (m <= R + band && c.inside(zs.point(k)))
            ++cnt;
    }
    rep.inside_count = cnt;
    rep.inside_matches = cnt == N;
    return rep;
}

}  // namespace focklab
