#include "support/oracles.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace oracles {

namespace {
constexpr double kPi = std::numbers::pi;
}

complex sigma_product(complex z, double omega, double cut) {
    if (z == complex{0.0, 0.0}) return {0.0, 0.0};
    const int span = static_cast<int>(std::ceil(cut / omega)) + 1;
    complex logp = std::log(z);
    for (int m = -span; m <= span; ++m)
        for (int n = -span; n <= span; ++n) {
            if (m == 0 && n == 0) continue;
            const complex W(omega * m, omega * n);
            if (std::abs(W) > cut) continue;
            logp += std::log(1.0 - z / W) + z / W + z * z / (2.0 * W * W);
        }
    return std::exp(logp);
}

double laplacian_fd(const std::function<double(double)>& phi, double r, double h) {
    const complex z(r, 0.0);
    const auto f = [&](complex v) { return phi(std::abs(v)); };
    return (f(z + complex{h, 0}) + f(z - complex{h, 0}) + f(z + complex{0, h}) +
            f(z - complex{0, h}) - 4.0 * f(z)) /
           (h * h);
}

std::vector<complex> brute_lattice(double omega, double r_max) {
    std::vector<complex> out;
    const int span = static_cast<int>(std::ceil(r_max / omega)) + 1;
    for (int m = -span; m <= span; ++m)
        for (int n = -span; n <= span; ++n) {
            const complex p(omega * m, omega * n);
            if (std::abs(p) <= r_max) out.push_back(p);
        }
    return out;
}

double brute_min_drho(const focklab::RadialWeight& w, std::span<const complex> pts) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            best = std::min(best, focklab::d_rho(w, pts[i], pts[j]));
    return best;
}

complex inner_product_disc(const std::function<complex(complex)>& uf,
                           const std::function<complex(complex)>& ug, double R,
                           int radial_panels, int order, int angular) {
    if (radial_panels < 1 || order < 2 || angular < 4)
        throw std::invalid_argument("inner_product_disc: grid too small");
    // Gauss-Legendre nodes on [-1, 1] by Newton on the Legendre recurrence.
    std::vector<double> x(order), wt(order);
    for (int i = 0; i < order; ++i) {
        double t = std::cos(kPi * (i + 0.75) / (order + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= order; ++k) {
                const double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double dp = order * (t * p1 - p0) / (t * t - 1.0);
            const double step = p1 / dp;
            t -= step;
            if (std::abs(step) < 1e-15) break;
        }
        double p0 = 1.0, p1 = t;
        for (int k = 2; k <= order; ++k) {
            const double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        const double dp = order * (t * p1 - p0) / (t * t - 1.0);
        x[i] = t;
        wt[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }

    complex total{0.0, 0.0};
    const double dr = R / radial_panels;
    for (int p = 0; p < radial_panels; ++p) {
        const double lo = p * dr;
        for (int i = 0; i < order; ++i) {
            const double r = lo + 0.5 * dr * (x[i] + 1.0);
            const double rw = 0.5 * dr * wt[i] * r;  // r dr
            complex ring{0.0, 0.0};
            for (int j = 0; j < angular; ++j) {
                const double th = 2.0 * kPi * j / angular;
                const complex z = std::polar(r, th);
                ring += uf(z) * std::conj(ug(z));
            }
            total += rw * (2.0 * kPi / angular) * ring;
        }
    }
    return total;
}

double fit_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("fit_slope: need matching samples");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= x.size();
    my /= y.size();
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        num += (x[i] - mx) * (y[i] - my);
        den += (x[i] - mx) * (x[i] - mx);
    }
    return num / den;
}

}  // namespace oracles
