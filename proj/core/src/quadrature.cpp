#include "focklab/quadrature.hpp"

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
}  // namespace

// Newton iteration on the Legendre recurrence; nodes symmetric about 0.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= 1e-15) break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
}

namespace {

// Radial panel boundaries on [0, R], width rho(r)/panels_per_rho (the scale
// all features live at), floored near the origin where rho may vanish.
std::vector<double> radial_edges(const RadialWeight& w, double R, int panels_per_rho) {
    std::vector<double> e{0.0};
    double r = 0.0;
    while (r < R) {
        const double width = std::max(w.rho(std::max(r, 1.0)) / panels_per_rho, 1e-3);
        r = std::min(r + width, R);
        e.push_back(r);
    }
    return e;
}

int auto_angular(const RadialWeight& w, double R) {
    // Active Taylor degree on |z| = R is about a R^a for power weights; the
    // squared modulus doubles it and a margin covers the saddle width.
    if (w.kind() == WeightKind::Power) {
        const double a = w.exponent();
        return std::max(64, static_cast<int>(std::ceil(3.0 * a * std::pow(R, a))) + 32);
    }
    return 256;
}

// One full-disc pass at fixed resolution. Deterministic: radial nodes in
// ascending order, pairwise sums within panels and angles.
double norm_sq_disc(const NormalizedFunction& u, const ModifiedWeight& mw,
                    const QuadratureSpec& spec, int order, int M) {
    const auto edges = radial_edges(mw.base, spec.truncation_radius, spec.panels_per_rho);
    std::vector<double> gx, gw;
    gauss_legendre(order, gx, gw);
    const std::size_t P = edges.size() - 1;
    std::vector<double> rads(P * order), rws(P * order);
    for (std::size_t p = 0; p < P; ++p) {
        const double mid = 0.5 * (edges[p] + edges[p + 1]);
        const double half = 0.5 * (edges[p + 1] - edges[p]);
        for (int i = 0; i < order; ++i) {
            rads[p * order + i] = mid + half * gx[i];
            rws[p * order + i] = half * gw[i];
        }
    }

    std::vector<double> ang(P * order);
    parallel_for(P * order, [&](std::size_t idx) {
        const double r = rads[idx];
        std::vector<double> vals(M);
        for (int j = 0; j < M; ++j) {
            const complex z = std::polar(r, 2.0 * kPi * j / M);
            vals[j] = std::norm(u.u(z));
        }
        ang[idx] = pairwise_sum(vals) / M;
    });

    std::vector<double> pv(P);
    std::vector<double> t(order);
    for (std::size_t p = 0; p < P; ++p) {
        for (int i = 0; i < order; ++i) {
            const std::size_t idx = p * order + i;
            const double r = rads[idx];
            t[i] = rws[idx] * r * std::exp(-2.0 * mw.beta * std::log1p(r)) * ang[idx];
        }
        pv[p] = pairwise_sum(t);
    }
    return 2.0 * kPi * pairwise_sum(pv);
}

// Interior-of-contour pass: trapezoid in theta (the profile is smooth and
// periodic), Gauss-Legendre panels radially out to R r(theta).
double norm_sq_region(const NormalizedFunction& u, const ModifiedWeight& mw, const Contour& c,
                      const QuadratureSpec& spec, int order, int M) {
    std::vector<double> gx, gw;
    gauss_legendre(order, gx, gw);
    std::vector<double> F(M);
    parallel_for(M, [&](std::size_t j) {
        const double th = 2.0 * kPi * (static_cast<double>(j) + 0.5) / M;
        const double rout = c.scale_radius() * c.radius_at(th);
        const auto edges = radial_edges(mw.base, rout, spec.panels_per_rho);
        const std::size_t P = edges.size() - 1;
        std::vector<double> pv(P), t(order);
        for (std::size_t p = 0; p < P; ++p) {
            const double mid = 0.5 * (edges[p] + edges[p + 1]);
            const double half = 0.5 * (edges[p + 1] - edges[p]);
            for (int i = 0; i < order; ++i) {
                const double r = mid + half * gx[i];
                const complex z = std::polar(r, th);
                t[i] = half * gw[i] * r * std::exp(-2.0 * mw.beta * std::log1p(r)) *
                       std::norm(u.u(z));
            }
            pv[p] = pairwise_sum(t);
        }
        F[j] = pairwise_sum(pv);
    });
    return 2.0 * kPi / M * pairwise_sum(F);
}

void check_tail(const NormalizedFunction& u, const QuadratureSpec& spec) {
    if (!std::isfinite(spec.eps_tail)) return;
    const double R = spec.truncation_radius;
    double worst = 0.0;
    for (int j = 0; j < 128; ++j)
        worst = std::max(worst, std::abs(u.u(std::polar(R, 2.0 * kPi * j / 128.0))));
    if (!(worst <= spec.eps_tail))
        throw std::runtime_error("weighted_norm: |u| = " + std::to_string(worst) +
                                 " on the truncation circle exceeds the tail tolerance");
}

template <typename Eval>
NormResult refine_norm(const QuadratureSpec& spec, Eval&& one_pass) {
    NormResult res;
    double prev = std::sqrt(one_pass(spec.radial_order, 1));
    for (int d = 1; d <= spec.max_doublings; ++d) {
        const double cur = std::sqrt(one_pass(spec.radial_order << d, 1 << d));
        // A value pinned under the absolute floor is "zero at tolerance"; the
        // relative test is meaningless there (pure cancellation noise).
        const bool at_floor = cur <= spec.abs_floor && prev <= spec.abs_floor;
        if (at_floor || std::abs(cur - prev) <= spec.self_check_tol * std::max(cur, spec.abs_floor)) {
            res.value = cur;
            res.coarse = prev;
            res.doublings = d;
            return res;
        }
        prev = cur;
    }
    throw std::runtime_error("weighted_norm: node doubling did not settle (last = " +
                             std::to_string(prev) + ")");
}

}  // namespace

NormResult weighted_norm_detailed(const NormalizedFunction& u, const ModifiedWeight& mw,
                                  const QuadratureSpec& spec) {
    if (!(spec.truncation_radius > 0.0))
        throw std::invalid_argument("weighted_norm: truncation radius must be positive");
    if (spec.truncation_radius < u.r_eff)
        throw std::invalid_argument("weighted_norm: truncation radius below the function's r_eff");
    check_tail(u, spec);
    const int M0 = spec.angular_nodes > 0 ? spec.angular_nodes
                                          : auto_angular(mw.base, spec.truncation_radius);
    return refine_norm(spec, [&](int order, int mscale) {
        return norm_sq_disc(u, mw, spec, order, M0 * mscale);
    });
}

double weighted_norm(const NormalizedFunction& u, const ModifiedWeight& mw,
                     const QuadratureSpec& spec) {
    return weighted_norm_detailed(u, mw, spec).value;
}

NormResult region_norm_detailed(const NormalizedFunction& u, const ModifiedWeight& mw,
                                const Contour& c, const QuadratureSpec& spec) {
    // The boundary bumps have angular width comparable to the contour
    // amplitude, so the trapezoid rule only starts converging once the
    // angular grid resolves their flanks.  Seed the refinement ladder at
    // that density instead of wasting doublings on getting there.
    int M0 = auto_angular(mw.base, c.scale_radius() * (1.0 + c.amplitude()));
    if (c.amplitude() > 0.0)
        M0 = std::max(M0, static_cast<int>(std::ceil(24.0 / c.amplitude())));
    if (spec.angular_nodes > 0) M0 = spec.angular_nodes;
    return refine_norm(spec, [&](int order, int mscale) {
        return norm_sq_region(u, mw, c, spec, order, M0 * mscale);
    });
}

double region_norm(const NormalizedFunction& u, const ModifiedWeight& mw, const Contour& c,
                   const QuadratureSpec& spec) {
    return region_norm_detailed(u, mw, c, spec).value;
}

namespace {

double wrap_02pi(double a) {
    a = std::fmod(a, 2.0 * kPi);
    if (a < 0.0) a += 2.0 * kPi;
    return a;
}

std::vector<double> contour_panel_edges(const Contour& c, const ContourIntOptions& opt) {
    const int base = opt.base_panels > 0
                         ? opt.base_panels
                         : std::max<int>(64, static_cast<int>(6 * (c.n_target() + 20) / opt.order));
    std::vector<double> edges;
    edges.reserve(base + 8 * (c.bumps().size() + opt.near_points.size()));
    for (int i = 0; i < base; ++i)
        edges.push_back(wrap_02pi(opt.theta_origin + 2.0 * kPi * i / base));
    const double base_w = 2.0 * kPi / base;
    for (const auto& b : c.bumps()) {
        edges.push_back(wrap_02pi(b.theta - c.amplitude()));
        edges.push_back(wrap_02pi(b.theta + c.amplitude()));
    }
    // Geometrically graded edges toward poles sitting near the curve, so each
    // panel stays at least as far from the pole as it is wide.
    for (const complex& p : opt.near_points) {
        const double thp = wrap_02pi(std::arg(p));
        const double d = std::abs(p - c.point_at(thp));
        double h = std::max(d / c.scale_radius(), 1e-9);
        while (h < base_w) {
            edges.push_back(wrap_02pi(thp - h));
            edges.push_back(wrap_02pi(thp + h));
            h *= 2.0;
        }
        edges.push_back(thp);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end(),
                            [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                edges.end());
    return edges;
}

struct ContourPass {
    LogComplex value;
    double scale_log;  // log of integral of |h| |dzeta|: floor reference
};

ContourPass contour_pass(const std::function<LogComplex(complex)>& h, const Contour& c,
                         const std::vector<double>& edges, int order) {
    std::vector<double> gx, gw;
    gauss_legendre(order, gx, gw);
    const std::size_t P = edges.size();
    const std::size_t n = P * order;
    std::vector<LogComplex> terms(n);
    parallel_for(P, [&](std::size_t p) {
        const double a = edges[p];
        const double b = p + 1 < P ? edges[p + 1] : edges[0] + 2.0 * kPi;
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (int i = 0; i < order; ++i) {
            const double th = mid + half * gx[i];
            const double r = c.radius_at(th);
            const double rp = c.radius_deriv_at(th);
            const complex dz = c.scale_radius() * (rp + complex(0.0, 1.0) * r) *
                               std::polar(1.0, th);
            terms[p * order + i] =
                h(c.point_at(th)) * LogComplex::from_complex(dz * (half * gw[i]));
        }
    });
    ContourPass out;
    out.value = log_sum(terms) / LogComplex::make(std::log(2.0 * kPi), 0.5 * kPi);
    double mx = -std::numeric_limits<double>::infinity();
    for (const auto& t : terms) mx = std::max(mx, t.logmag);
    if (std::isinf(mx)) {
        out.scale_log = -std::numeric_limits<double>::infinity();
    } else {
        std::vector<double> mags(n);
        for (std::size_t i = 0; i < n; ++i)
            mags[i] = terms[i].is_zero() ? 0.0 : std::exp(terms[i].logmag - mx);
        out.scale_log = mx + std::log(pairwise_sum(mags)) - std::log(2.0 * kPi);
    }
    return out;
}

std::vector<double> halve_panels(const std::vector<double>& edges) {
    std::vector<double> out;
    out.reserve(edges.size() * 2);
    for (std::size_t p = 0; p < edges.size(); ++p) {
        const double a = edges[p];
        const double b = p + 1 < edges.size() ? edges[p + 1] : edges[0] + 2.0 * kPi;
        out.push_back(a);
        out.push_back(0.5 * (a + b));
    }
    return out;
}

}  // namespace

LogComplex contour_integral(const std::function<LogComplex(complex)>& h, const Contour& c,
                            const ContourIntOptions& opt) {
    std::vector<double> edges = contour_panel_edges(c, opt);
    ContourPass prev = contour_pass(h, c, edges, opt.order);
    const double ltol = std::log(opt.tol);
    for (int d = 1; d <= opt.max_doublings; ++d) {
        edges = halve_panels(edges);
        const ContourPass cur = contour_pass(h, c, edges, opt.order);
        const LogComplex diff = prev.value - cur.value;
        const double ref = std::max(cur.value.logmag, cur.scale_log);
        if (diff.is_zero() || diff.logmag <= ltol + ref) return cur.value;
        prev = cur;
    }
    throw std::runtime_error("contour_integral: panel doubling did not reach the tolerance");
}

SubmeanReport submeanvalue_check(const std::vector<NormalizedFunction>& family,
                                 const RadialWeight& w, double delta,
                                 const std::vector<complex>& points, int disc_radial,
                                 int disc_angular) {
    if (family.size() != points.size())
        throw std::invalid_argument("submeanvalue_check: family and points must pair up");
    if (!(delta > 0.0)) throw std::invalid_argument("submeanvalue_check: delta must be positive");
    SubmeanReport rep;
    rep.ratios.resize(family.size());
    std::vector<double> gx, gw;
    gauss_legendre(disc_radial, gx, gw);
    for (std::size_t i = 0; i < family.size(); ++i) {
        const complex z = points[i];
        const double rho = w.rho(std::abs(z));
        const double rad = delta * rho;
        std::vector<double> sv(disc_radial);
        std::vector<double> av(disc_angular);
        for (int ir = 0; ir < disc_radial; ++ir) {
            const double s = 0.5 * rad * (1.0 + gx[ir]);
            for (int ja = 0; ja < disc_angular; ++ja) {
                const complex p = z + std::polar(s, 2.0 * kPi * ja / disc_angular);
                av[ja] = std::norm(family[i].u(p));
            }
            sv[ir] = 0.5 * rad * gw[ir] * s * pairwise_sum(av) / disc_angular;
        }
        const double disc = 2.0 * kPi * pairwise_sum(sv);
        const double num = std::norm(family[i].u(z)) * rho * rho;
        rep.ratios[i] = num == 0.0 ? 0.0 : num / disc;
        if (rep.ratios[i] > rep.max_ratio) {
            rep.max_ratio = rep.ratios[i];
            rep.argmax = i;
        }
    }
    return rep;
}

}  // namespace focklab
