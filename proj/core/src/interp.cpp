#include "focklab/interp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "focklab/util.hpp"

namespace focklab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kNoSpecial = static_cast<std::size_t>(-1);

// Relative distance below which S(z)/(z - lambda_k) switches to the local
// expansion. Plain division is still accurate well below this, so the two
// branches agree to many digits across the switch.
constexpr double kRemovableCut = 1e-3;

}  // namespace

int chi(const Contour& c, complex z) {
    const double R = c.scale_radius();
    const double gap = std::abs(std::abs(z) - R * c.radius_at(std::arg(z)));
    if (gap < 1e-6 * R)
        throw std::invalid_argument("chi: point within 1e-6 R of the curve");
    return c.inside(z) ? 1 : 0;
}

InterpolationProblem::InterpolationProblem(SineType s, std::size_t k_max,
                                           std::function<LogComplex(complex)> f_log, double beta)
    : s_(std::move(s)), k_max_(k_max), f_(std::move(f_log)), beta_(beta) {
    if (k_max_ == 0 || k_max_ > s_.zeros().size())
        throw std::invalid_argument("InterpolationProblem: k_max outside [1, #nodes]");
    if (!f_) throw std::invalid_argument("InterpolationProblem: empty data function");
    exps_.reserve(k_max_);
    coef_.reserve(k_max_);
    coef_c_.reserve(k_max_);
    for (std::size_t k = 0; k < k_max_; ++k) {
        exps_.push_back(s_.local_expansion(k));
        const LogComplex ck = f_(s_.zeros().point(k)) / exps_[k].coeff[0];
        coef_.push_back(ck);
        coef_c_.push_back(ck.to_complex_or_zero());
    }
}

complex InterpolationProblem::f_normalized(complex z) const {
    const LogComplex v = f_(z);
    return LogComplex::make(v.logmag - s_.weight().phi(std::abs(z)), v.phase)
        .to_complex_or_zero();
}

LogComplex InterpolationProblem::sprime(std::size_t k) const {
    if (k >= k_max_) throw std::out_of_range("sprime: node index beyond k_max");
    return exps_[k].coeff[0];
}

LogComplex InterpolationProblem::coefficient(std::size_t k) const {
    if (k >= k_max_) throw std::out_of_range("coefficient: node index beyond k_max");
    return coef_[k];
}

LogComplex InterpolationProblem::lagrange_term(std::size_t k, complex z) const {
    if (k >= k_max_) throw std::out_of_range("lagrange_term: node index beyond k_max");
    const complex lam = exps_[k].center;
    const complex h = z - lam;
    if (std::abs(h) < kRemovableCut * s_.weight().rho(std::abs(lam)))
        return exps_[k].eval_over_linear(h) / exps_[k].coeff[0];
    return s_.eval_log(z) / (exps_[k].coeff[0] * LogComplex::from_complex(h));
}

LogComplex InterpolationProblem::partial_sum(std::size_t N, complex z) const {
    if (N > k_max_) throw std::invalid_argument("partial_sum: N beyond cached k_max");
    if (N == 0) return LogComplex::zero();

    // A node hugging z makes 1/(z - lambda) blow up while S(z) vanishes; that
    // one term goes through the removable form, the rest through division.
    std::size_t special = kNoSpecial;
    const ZeroSet& zs = s_.zeros();
    const std::size_t j = zs.nearest(z);
    if (j < N && std::abs(z - zs.point(j)) < kRemovableCut * s_.weight().rho(zs.modulus(j)))
        special = j;

    std::vector<double> re(N, 0.0), im(N, 0.0);
    for (std::size_t k = 0; k < N; ++k) {
        if (k == special) continue;
        const complex t = coef_c_[k] / (z - zs.point(k));
        re[k] = t.real();
        im[k] = t.imag();
    }
    const complex total(pairwise_sum(re), pairwise_sum(im));
    LogComplex out = s_.eval_log(z) * LogComplex::from_complex(total);
    if (special != kNoSpecial)
        out = out + coef_[special] * exps_[special].eval_over_linear(z - zs.point(special));
    return out;
}

complex InterpolationProblem::partial_sum_normalized(std::size_t N, complex z) const {
    const LogComplex v = partial_sum(N, z);
    return LogComplex::make(v.logmag - s_.weight().phi(std::abs(z)), v.phase)
        .to_complex_or_zero();
}

LogComplex InterpolationProblem::cauchy_remainder(const Contour& c, complex z,
                                                  ContourIntOptions opt) const {
    const double R = c.scale_radius();
    const double rho = c.rho_at_scale();
    const double gap = std::abs(std::abs(z) - R * c.radius_at(std::arg(z)));
    if (gap < 1e-3 * rho)
        throw std::invalid_argument("cauchy_remainder: z within 1e-3 rho of the curve");
    // The integrand has a pole at z; grade panels toward it when it is close
    // enough to matter.
    if (gap < 4.0 * rho) opt.near_points.push_back(z);
    auto h = [this, z](complex zeta) {
        return f_(zeta) / (s_.eval_log(zeta) * LogComplex::from_complex(z - zeta));
    };
    return contour_integral(h, c, opt);
}

double InterpolationProblem::residual_norm(std::size_t N, const QuadratureSpec* custom) const {
    if (N == 0 || N > k_max_) throw std::invalid_argument("residual_norm: N outside [1, k_max]");
    const RadialWeight& w = s_.weight();
    const double RN = s_.zeros().modulus(N - 1);
    QuadratureSpec spec;
    if (custom) {
        spec = *custom;
    } else {
        spec.truncation_radius = RN + 10.0 * w.rho(RN);
        // The residual has a genuine slowly-decaying tail; it is estimated
        // analytically below instead of being required to vanish pointwise.
        spec.eps_tail = std::numeric_limits<double>::infinity();
    }
    const double T = spec.truncation_radius;

    if (f_norm_cache_ < 0.0) {
        QuadratureSpec fs = spec;
        fs.abs_floor = 0.0;
        NormalizedFunction uf{[this](complex z) { return f_normalized(z); }, 0.0};
        f_norm_cache_ = weighted_norm(uf, modified_weight(), fs);
    }
    const double floor = std::max(spec.abs_floor, 1e-12 * std::max(f_norm_cache_, 1.0));
    spec.abs_floor = floor;

    NormalizedFunction ur{
        [this, N](complex z) { return f_normalized(z) - partial_sum_normalized(N, z); }, 0.0};
    const double v = weighted_norm(ur, modified_weight(), spec);

    // A posteriori tail bound: sample |u| on the truncation circle, extend by
    // the 1/r envelope the partial sum obeys there, and integrate the weight.
    double u_edge = 0.0;
    for (int i = 0; i < 128; ++i)
        u_edge = std::max(u_edge, std::abs(ur.u(std::polar(T, 2.0 * kPi * (i + 0.5) / 128.0))));
    if (v > floor) {
        double tail;
        if (beta_ > 0.0)
            tail = u_edge * std::pow(T, 1.0 - beta_) / std::sqrt(2.0 * beta_);
        else
            tail = std::numeric_limits<double>::infinity();
        if (u_edge <= floor) tail = 0.0;  // edge already at noise level
        if (tail > 0.75 * v)
            throw std::runtime_error(
                "residual_norm: tail beyond the truncation is not dominated (estimate " +
                std::to_string(tail) + " vs value " + std::to_string(v) + ")");
    }
    return v;
}

namespace {

// Same panel policy as the disc norm: width rho/panels relative to the local
// density scale, but starting from an inner radius.
std::vector<double> edges_between(const RadialWeight& w, double lo, double hi, int per_rho) {
    std::vector<double> e{lo};
    double r = lo;
    while (r < hi) {
        const double width = std::max(w.rho(std::max(r, 1.0)) / per_rho, 1e-3);
        r = std::min(r + width, hi);
        e.push_back(r);
    }
    return e;
}

}  // namespace

std::vector<double> flambda_partial_norms(const SineType& s, std::size_t k,
                                          const std::vector<double>& radii, double beta,
                                          int radial_order, int angular) {
    if (k >= s.zeros().size())
        throw std::invalid_argument("flambda_partial_norms: node index out of range");
    for (std::size_t i = 0; i < radii.size(); ++i)
        if (radii[i] <= 0.0 || (i > 0 && radii[i] <= radii[i - 1]))
            throw std::invalid_argument("flambda_partial_norms: radii must increase");

    const RadialWeight& w = s.weight();
    const LocalExpansion ex = s.local_expansion(k);
    const LogComplex sp = ex.coeff[0];
    const complex lam = ex.center;
    const double rho_lam = w.rho(std::abs(lam));
    auto u = [&](complex z) -> complex {
        const complex h = z - lam;
        const LogComplex t = std::abs(h) < kRemovableCut * rho_lam
                                 ? ex.eval_over_linear(h) / sp
                                 : s.eval_log(z) / (sp * LogComplex::from_complex(h));
        return LogComplex::make(t.logmag - w.phi(std::abs(z)), t.phase).to_complex_or_zero();
    };

    std::vector<double> gx, gw;
    gauss_legendre(radial_order, gx, gw);
    std::vector<double> out;
    out.reserve(radii.size());
    double lo = 0.0, total = 0.0;
    for (const double hi : radii) {
        int M = angular;
        if (M <= 0) {
            M = w.kind() == WeightKind::Power
                    ? std::max(64, static_cast<int>(std::ceil(
                                       3.0 * w.exponent() * std::pow(hi, w.exponent()))) +
                                   32)
                    : 256;
        }
        const std::vector<double> edges = edges_between(w, lo, hi, 2);
        const std::size_t P = edges.size() - 1;
        std::vector<double> acc(P * radial_order, 0.0);
        parallel_for(P, [&](std::size_t p) {
            for (int i = 0; i < radial_order; ++i) {
                const double half = 0.5 * (edges[p + 1] - edges[p]);
                const double r = 0.5 * (edges[p + 1] + edges[p]) + half * gx[i];
                std::vector<double> ang(M);
                for (int j = 0; j < M; ++j) {
                    const complex z = std::polar(r, 2.0 * kPi * (j + 0.5) / M);
                    ang[j] = std::norm(u(z));
                }
                const double mean = pairwise_sum(ang) / M;
                acc[p * radial_order + i] =
                    half * gw[i] * mean * r * std::exp(-2.0 * beta * std::log1p(r));
            }
        });
        total += 2.0 * kPi * pairwise_sum(acc);
        out.push_back(total);
        lo = hi;
    }
    return out;
}

double boundary_energy(const NormalizedFunction& u, const RadialWeight& w, const Contour& c,
                       int samples) {
    if (samples < 8) throw std::invalid_argument("boundary_energy: too few samples");
    const double R = c.scale_radius();
    std::vector<double> vals(samples);
    parallel_for(static_cast<std::size_t>(samples), [&](std::size_t j) {
        const double th = 2.0 * kPi * (j + 0.5) / samples;
        const double r = c.radius_at(th);
        const double rp = c.radius_deriv_at(th);
        vals[j] = std::norm(u.u(c.point_at(th))) * std::sqrt(r * r + rp * rp);
    });
    return R * w.rho(R) * (2.0 * kPi / samples) * pairwise_sum(vals);
}

}  // namespace focklab
