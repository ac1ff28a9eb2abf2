#include "focklab/genfun.hpp"

#include <fftw3.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "focklab/util.hpp"

namespace focklab {

namespace {

constexpr double kPi = std::numbers::pi;

double lattice_scale() {
    static const double om = std::sqrt(kPi / 2.0);
    return om;
}

// theta_1(v) = 2 sum_k (-1)^k e^{-pi(k+1/2)^2} sin((2k+1)v) at the square
// lattice nome e^{-pi}. After reduction to the fundamental cell |Im v| stays
// below pi/2 + eps, where the k-th term is of size e^{-pi(k^2 - 1/4)}; nine
// terms land at ~1e-27 relative. At v = 0 every sin vanishes exactly, which
// is what makes lattice points come out as exact zeros downstream.
const std::array<double, 9>& theta_weights() {
    static const std::array<double, 9> w = [] {
        std::array<double, 9> a{};
        for (int k = 0; k < 9; ++k) a[k] = std::exp(-kPi * (k + 0.5) * (k + 0.5));
        return a;
    }();
    return w;
}

complex theta1(complex v) {
    const auto& w = theta_weights();
    complex acc = 0.0;
    for (int k = 0; k < 9; ++k) {
        const complex t = w[k] * std::sin(static_cast<double>(2 * k + 1) * v);
        acc += (k % 2 == 0) ? t : -t;
    }
    return 2.0 * acc;
}

double theta1_prime0() {
    static const double d = [] {
        const auto& w = theta_weights();
        double acc = 0.0;
        for (int k = 0; k < 9; ++k) {
            const double t = static_cast<double>(2 * k + 1) * w[k];
            acc += (k % 2 == 0) ? t : -t;
        }
        return 2.0 * acc;
    }();
    return d;
}

// sigma on the fundamental cell, via
// sigma(z) = (omega/pi) e^{z^2} theta_1(pi z / omega) / theta_1'(0).
LogComplex sigma_cell(complex z0) {
    const double om = lattice_scale();
    const complex th = theta1(kPi / om * z0);
    if (th == complex{}) return LogComplex::zero();
    const complex z0sq = z0 * z0;
    return LogComplex::make(std::log(om / kPi) + z0sq.real() + std::log(std::abs(th / theta1_prime0())),
                            z0sq.imag() + std::arg(th));
}

// Full-plane sigma by quasi-periodic reduction: with Omega = omega(m + i n),
//   sigma(z0 + Omega) = (-1)^{m+n+mn} e^{H (z0 + Omega/2)} sigma(z0),
//   H = 2 eta1 (m - i n),  eta1 = pi/(2 omega),  H Omega/2 = (pi/2)(m^2+n^2).
// The componentwise subtraction z - omega*m reproduces the exact doubles the
// lattice generator stored, so z0 is exactly 0 at lattice points.
LogComplex log_sigma(complex z) {
    const double om = lattice_scale();
    const long long m = std::llround(z.real() / om);
    const long long n = std::llround(z.imag() / om);
    const complex z0(z.real() - om * static_cast<double>(m),
                     z.imag() - om * static_cast<double>(n));
    const LogComplex cell = sigma_cell(z0);
    if (cell.is_zero()) return cell;
    const double eta1 = kPi / (2.0 * om);
    const complex Hz0 = 2.0 * eta1 * complex(static_cast<double>(m), -static_cast<double>(n)) * z0;
    const double quad = 0.5 * kPi * (static_cast<double>(m) * static_cast<double>(m) +
                                     static_cast<double>(n) * static_cast<double>(n));
    const long long parity = ((m + n + m * n) % 2 + 2) % 2;
    return LogComplex::make(cell.logmag + Hz0.real() + quad,
                            cell.phase + Hz0.imag() + kPi * static_cast<double>(parity));
}

// sigma'(Omega) at a lattice point, from differentiating the quasi-periodic
// relation at z0 = 0 and sigma'(0) = 1.
LogComplex sigma_prime_at(long long m, long long n) {
    const double quad = 0.5 * kPi * (static_cast<double>(m) * static_cast<double>(m) +
                                     static_cast<double>(n) * static_cast<double>(n));
    const long long parity = ((m + n + m * n) % 2 + 2) % 2;
    return LogComplex::make(quad, kPi * static_cast<double>(parity));
}

}  // namespace

double critical_omega() { return lattice_scale(); }

SineType SineType::sigma_lattice(double r_max) {
    auto zs = ZeroSet::square_lattice(RadialWeight::power(2.0), lattice_scale(), r_max);
    return SineType(SineKind::SigmaLattice, std::move(zs), 0.0, lattice_scale());
}

SineType SineType::sigma_over_linear(double r_max, complex removed) {
    auto zs = ZeroSet::square_lattice(RadialWeight::power(2.0), lattice_scale(), r_max);
    const std::size_t idx = zs.nearest(removed);
    if (std::abs(zs.point(idx) - removed) != 0.0)
        throw std::invalid_argument("sigma_over_linear: removed point must be a lattice point");
    SineType s(SineKind::SigmaOverLinear, zs.remove_zero(idx), 1.0, lattice_scale());
    s.removed_ = zs.point(idx);
    return s;
}

SineType SineType::custom(ZeroSet zeros, double gamma_nominal,
                          std::function<LogComplex(complex)> eval) {
    SineType s(SineKind::Custom, std::move(zeros), gamma_nominal, 0.0);
    s.custom_eval_ = std::move(eval);
    return s;
}

LogComplex SineType::eval_log(complex z) const {
    if (kind_ == SineKind::Custom) return custom_eval_(z);
    if (!(std::abs(z) <= zeros_.truncation_radius() * (1.0 + 1e-12)))
        throw std::runtime_error("SineType::eval_log: point outside the zero-set truncation radius");
    if (kind_ == SineKind::SigmaLattice) return log_sigma(z);
    const complex d = z - removed_;
    if (d == complex{}) {
        const double om = lattice_scale();
        return sigma_prime_at(std::llround(removed_.real() / om),
                              std::llround(removed_.imag() / om));
    }
    return log_sigma(z) / LogComplex::from_complex(d);
}

namespace {

// Shared Cauchy-ring extraction: coefficients c_1..c_order of S around its
// k-th zero from `nodes` trapezoid samples on |zeta - lambda| = 0.1 rho.
std::vector<LogComplex> ring_coeffs(const SineType& s, std::size_t k, int nodes, int order) {
    if (order < 1 || order >= nodes / 2)
        throw std::invalid_argument("local expansion: need 1 <= order < nodes/2");
    const complex lam = s.zeros().point(k);
    const double rho = s.weight().rho(std::abs(lam));
    const double rc = 0.1 * rho;
    if (!(rc > 0.0)) throw std::runtime_error("local expansion: density vanishes at the zero");
    if (s.zeros().size() >= 2 && !(rc < 0.5 * s.zeros().nearest_other(k)))
        throw std::runtime_error("local expansion: integration circle reaches the neighboring zero");

    std::vector<LogComplex> vals(nodes);
    double smax = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < nodes; ++j) {
        const double th = 2.0 * kPi * j / nodes;
        vals[j] = s.eval_log(lam + std::polar(rc, th));
        smax = std::max(smax, vals[j].logmag);
    }
    if (std::isinf(smax))
        throw std::runtime_error("local expansion: function vanishes on the sampling circle");

    std::vector<LogComplex> out(order);
    std::vector<double> re(nodes), im(nodes);
    for (int p = 1; p <= order; ++p) {
        for (int j = 0; j < nodes; ++j) {
            if (vals[j].is_zero()) {
                re[j] = im[j] = 0.0;
                continue;
            }
            const double mag = std::exp(vals[j].logmag - smax);
            const double ang = vals[j].phase - p * (2.0 * kPi * j / nodes);
            re[j] = mag * std::cos(ang);
            im[j] = mag * std::sin(ang);
        }
        const complex acc(pairwise_sum(re), pairwise_sum(im));
        if (acc == complex{})
            out[p - 1] = LogComplex::zero();
        else
            out[p - 1] = LogComplex::make(smax + std::log(std::abs(acc)) - std::log(static_cast<double>(nodes)) - p * std::log(rc),
                                          std::arg(acc));
    }
    return out;
}

}  // namespace

LogComplex SineType::derivative_at_zero(std::size_t k, int nodes) const {
    return ring_coeffs(*this, k, nodes, 1)[0];
}

LocalExpansion SineType::local_expansion(std::size_t k, int nodes, int order) const {
    return LocalExpansion{zeros_.point(k), ring_coeffs(*this, k, nodes, order)};
}

LogComplex LocalExpansion::eval_over_linear(complex h) const {
    std::vector<LogComplex> terms(coeff.size());
    LogComplex hp = LogComplex::one();
    const LogComplex lh = LogComplex::from_complex(h);
    for (std::size_t j = 0; j < coeff.size(); ++j) {
        terms[j] = coeff[j] * hp;
        hp = hp * lh;
    }
    return log_sum(terms);
}

CertifyReport certify_sinetype(const SineType& s, const AnnularGrid& grid, double gamma_claim) {
    if (!(grid.r_min > 0.0) || !(grid.r_max > grid.r_min) || grid.annuli < 1 ||
        grid.radial < 1 || grid.angular < 1)
        throw std::invalid_argument("certify_sinetype: malformed grid");
    const RadialWeight& w = s.weight();
    const double gam = std::isnan(gamma_claim) ? s.gamma_nominal() : gamma_claim;
    CertifyReport rep;
    rep.c_min = std::numeric_limits<double>::infinity();
    rep.c_max = 0.0;
    const double dr = (grid.r_max - grid.r_min) / grid.annuli;
    for (int ia = 0; ia < grid.annuli; ++ia) {
        AnnulusStats st;
        st.inner = grid.r_min + ia * dr;
        st.outer = st.inner + dr;
        st.q_min = std::numeric_limits<double>::infinity();
        st.q_max = 0.0;
        for (int ir = 0; ir < grid.radial; ++ir) {
            const double r = st.inner + (ir + 0.5) * dr / grid.radial;
            const double rho = w.rho(r);
            const double scale = -w.phi(r) + std::log(rho) + gam * std::log1p(r);
            for (int jt = 0; jt < grid.angular; ++jt) {
                const double th = (jt + 0.5) * 2.0 * kPi / grid.angular;
                const complex z = std::polar(r, th);
                const double d = s.zeros().dist_to(z);
                if (d < grid.exclusion * rho) {
                    ++rep.n_excluded;
                    continue;
                }
                const LogComplex L = s.eval_log(z);
                const double q = L.is_zero() ? 0.0 : std::exp(L.logmag + scale - std::log(d));
                st.q_min = std::min(st.q_min, q);
                st.q_max = std::max(st.q_max, q);
                ++st.n_samples;
            }
        }
        if (st.n_samples == 0) st.q_min = st.q_max = 0.0;
        rep.c_min = std::min(rep.c_min, st.n_samples ? st.q_min : rep.c_min);
        rep.c_max = std::max(rep.c_max, st.q_max);
        rep.table.push_back(st);
    }
    if (std::isinf(rep.c_min)) rep.c_min = 0.0;
    return rep;
}

double CertifyReport::cmax_log_slope() const {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    for (const auto& st : table) {
        if (st.n_samples == 0 || !(st.q_max > 0.0)) continue;
        const double x = std::log(0.5 * (st.inner + st.outer));
        const double y = std::log(st.q_max);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++n;
    }
    if (n < 2) return 0.0;
    const double den = n * sxx - sx * sx;
    return den != 0.0 ? (n * sxy - sx * sy) / den : 0.0;
}

void CertifyReport::write_csv(std::ostream& os) const {
    os << "annulus_inner,annulus_outer,q_min,q_max,n_samples\n";
    char buf[160];
    for (const auto& st : table) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%zu\n",
                      st.inner, st.outer, st.q_min, st.q_max, st.n_samples);
        os << buf;
    }
}

namespace {

struct Extraction {
    std::vector<LogComplex> coeff;  // per n in [n_lo, n_hi]
    std::vector<double> relmag;     // |F_n| / max over the full spectrum
};

int next_pow2(int n) {
    int m = 1;
    while (m < n) m <<= 1;
    return m;
}

Extraction extract_window(const SineType& s, double r, int n_lo, int n_hi) {
    const double phir = s.weight().phi(r);
    const int M = next_pow2(std::max(4 * (n_hi + 1), 64));
    std::vector<complex> in(M), out(M);
    fftw_plan plan = fftw_plan_dft_1d(M, reinterpret_cast<fftw_complex*>(in.data()),
                                      reinterpret_cast<fftw_complex*>(out.data()),
                                      FFTW_FORWARD, FFTW_ESTIMATE);
    for (int j = 0; j < M; ++j) {
        const LogComplex L = s.eval_log(std::polar(r, 2.0 * kPi * j / M));
        in[j] = L.is_zero() ? complex{} : std::polar(std::exp(L.logmag - phir), L.phase);
    }
    fftw_execute(plan);
    fftw_destroy_plan(plan);

    double fmax = 0.0;
    for (int n = 0; n < M; ++n) fmax = std::max(fmax, std::abs(out[n]));
    Extraction ex;
    const double lr = std::log(r);
    for (int n = n_lo; n <= n_hi; ++n) {
        const double f = std::abs(out[n]);
        ex.relmag.push_back(fmax > 0.0 ? f / fmax : 0.0);
        if (f == 0.0)
            ex.coeff.push_back(LogComplex::zero());
        else
            ex.coeff.push_back(LogComplex::make(phir - n * lr + std::log(f / M), std::arg(out[n])));
    }
    return ex;
}

void taylor_window(const SineType& s, int n_lo, int n_hi, std::vector<LogComplex>& out,
                   int base, int depth) {
    if (depth > 16)
        throw std::runtime_error("taylor_coeffs: window failed to stabilize under splitting");
    const double a = s.weight().exponent();
    const double n_mid = 0.5 * (n_lo + n_hi);
    // Radius balancing r^{-n} e^{phi(r)} at the window midpoint; coefficients
    // within ~sqrt(a * n_mid) of the midpoint come out at comparable scale.
    const double r1 = std::pow(std::max(n_mid, 1.0) / a, 1.0 / a);
    const double r2 = 1.17 * r1;
    const Extraction e1 = extract_window(s, r1, n_lo, n_hi);
    const Extraction e2 = extract_window(s, r2, n_lo, n_hi);

    constexpr double kFloor = 1e-12;  // relative spectral floor: treat as zero
    constexpr double kTol = 1e-6;     // cross-radius agreement
    bool all_ok = true;
    for (int i = 0; i <= n_hi - n_lo && all_ok; ++i) {
        const bool big1 = e1.relmag[i] > kFloor;
        const bool big2 = e2.relmag[i] > kFloor;
        if (!big1 && !big2) continue;
        if (big1 != big2) {
            all_ok = false;
            break;
        }
        const double dm = std::abs(e1.coeff[i].logmag - e2.coeff[i].logmag);
        const double dp = std::abs(std::remainder(e1.coeff[i].phase - e2.coeff[i].phase, 2.0 * kPi));
        if (!(dm <= kTol && dp <= kTol)) all_ok = false;
    }
    if (all_ok) {
        for (int i = 0; i <= n_hi - n_lo; ++i) out[base + i] = e1.coeff[i];
        return;
    }
    if (n_lo == n_hi)
        throw std::runtime_error("taylor_coeffs: coefficient failed cross-radius validation");
    const int mid = (n_lo + n_hi) / 2;
    taylor_window(s, n_lo, mid, out, base, depth + 1);
    taylor_window(s, mid + 1, n_hi, out, base + (mid + 1 - n_lo), depth + 1);
}

}  // namespace

std::vector<LogComplex> taylor_coeffs(const SineType& s, int n_lo, int n_hi) {
    if (n_lo < 0 || n_hi < n_lo) throw std::invalid_argument("taylor_coeffs: bad index window");
    if (s.weight().kind() != WeightKind::Power)
        throw std::logic_error("taylor_coeffs: saddle radius selection needs a power weight");
    std::vector<LogComplex> out(n_hi - n_lo + 1);
    taylor_window(s, n_lo, n_hi, out, 0, 0);
    return out;
}

}  // namespace focklab
