#pragma once

#include <functional>
#include <vector>

#include "focklab/contours.hpp"
#include "focklab/log_complex.hpp"
#include "focklab/types.hpp"
#include "focklab/weights.hpp"

namespace focklab {

// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

// Entire g carried in e^{-phi}-normalized form: u(z) = g(z) e^{-phi(|z|)}.
// r_eff is the radius beyond which |u| has decayed to tail level; norms must
// truncate at or beyond it.
struct NormalizedFunction {
    std::function<complex(complex)> u;
    double r_eff = 0.0;
};

struct QuadratureSpec {
    double truncation_radius = 0.0;
    int panels_per_rho = 2;        // radial panel density relative to rho(r)
    int radial_order = 12;         // Gauss-Legendre nodes per panel
    int angular_nodes = 0;         // equispaced trapezoid count; 0 = automatic
    double eps_tail = 1e-9;        // max |u| allowed on the truncation circle; inf disables
    double self_check_tol = 1e-6;  // relative change allowed when doubling nodes
    double abs_floor = 0.0;        // below this scale the self check turns absolute
    int max_doublings = 4;
};

struct NormResult {
    double value = 0.0;   // the finer of the two converged evaluations
    double coarse = 0.0;  // the evaluation one doubling below
    int doublings = 0;    // doubling rounds consumed
};

// sqrt( integral |u|^2 (1+r)^{-2 beta} dm ) over |z| <= truncation radius,
// u normalized by the base weight of mw. Composite Gauss-Legendre radially
// (panel width rho/panels_per_rho), equispaced trapezoid in angle; validated
// by doubling both node counts until the change passes self_check_tol.
double weighted_norm(const NormalizedFunction& u, const ModifiedWeight& mw,
                     const QuadratureSpec& spec);
NormResult weighted_norm_detailed(const NormalizedFunction& u, const ModifiedWeight& mw,
                                  const QuadratureSpec& spec);

// Same norm but over the interior of a contour: per angle the radial
// integral runs to R r(theta). The curve is smooth, so the outer trapezoid
// in theta keeps spectral accuracy.
NormResult region_norm_detailed(const NormalizedFunction& u, const ModifiedWeight& mw,
                                const Contour& c, const QuadratureSpec& spec);
double region_norm(const NormalizedFunction& u, const ModifiedWeight& mw, const Contour& c,
                   const QuadratureSpec& spec);

struct ContourIntOptions {
    double tol = 1e-8;                  // relative agreement target under doubling
    int order = 12;                     // Gauss-Legendre nodes per theta panel
    int base_panels = 0;                // 0 = automatic from the contour
    int max_doublings = 5;
    double theta_origin = 0.0;          // shifts all panel boundaries (invariance checks)
    std::vector<complex> near_points;   // poles near the curve: panels grade toward them
};

// (1/(2 pi i)) times the integral of h over the contour, h supplied in log
// form. Panels follow theta with edges aligned to bump supports and graded
// toward any near_points; each refinement halves every panel.
LogComplex contour_integral(const std::function<LogComplex(complex)>& h, const Contour& c,
                            const ContourIntOptions& opt = {});

// Empirical constant for the pointwise-by-disc-mean bound
// |u(z)|^2 rho(z)^2 <= C * integral over D(z, delta rho(z)) of |u|^2 dm.
// Pairs (family[i], points[i]) are evaluated; the max ratio estimates C.
struct SubmeanReport {
    double max_ratio = 0.0;
    std::size_t argmax = 0;
    std::vector<double> ratios;
};
SubmeanReport submeanvalue_check(const std::vector<NormalizedFunction>& family,
                                 const RadialWeight& w, double delta,
                                 const std::vector<complex>& points, int disc_radial = 24,
                                 int disc_angular = 64);

}  // namespace focklab
