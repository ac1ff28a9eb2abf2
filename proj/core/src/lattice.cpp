#include "focklab/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace focklab {

namespace {

double arg_02pi(double y, double x) {
    double a = std::atan2(y, x);
    if (a < 0.0) a += 2.0 * std::numbers::pi;
    return a;
}

struct CanonicalLess {
    bool operator()(const complex& p, const complex& q) const {
        const double mp = std::abs(p), mq = std::abs(q);
        if (mp != mq) return mp < mq;
        const double ap = arg_02pi(p.imag(), p.real()), aq = arg_02pi(q.imag(), q.real());
        if (ap != aq) return ap < aq;
        return p.real() < q.real();
    }
};

}  // namespace

ZeroSet::ZeroSet(std::vector<complex> points, RadialWeight weight, double truncation_radius)
    : pts_(std::move(points)), weight_(weight), truncation_radius_(truncation_radius) {
    if (!(truncation_radius_ > 0.0))
        throw std::invalid_argument("ZeroSet: truncation radius must be positive");
    std::sort(pts_.begin(), pts_.end(), CanonicalLess{});
    build_grid();
}

ZeroSet ZeroSet::square_lattice(const RadialWeight& w, double omega, double r_max) {
    if (!(omega > 0.0)) throw std::invalid_argument("square_lattice: omega must be positive");
    if (!(r_max >= omega)) throw std::invalid_argument("square_lattice: r_max too small");
    const long long mmax = static_cast<long long>(std::floor(r_max / omega)) + 1;

    // Integer sort keys make the canonical order independent of rounding:
    // modulus ties are exact ties of m^2+n^2.
    struct Entry {
        long long norm2;
        double arg;
        long long m, n;
    };
    std::vector<Entry> entries;
    for (long long m = -mmax; m <= mmax; ++m) {
        for (long long n = -mmax; n <= mmax; ++n) {
            const long long norm2 = m * m + n * n;
            const double mod = omega * std::sqrt(static_cast<double>(norm2));
            if (mod > r_max) continue;
            entries.push_back({norm2, arg_02pi(static_cast<double>(n), static_cast<double>(m)), m, n});
        }
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (a.norm2 != b.norm2) return a.norm2 < b.norm2;
        if (a.arg != b.arg) return a.arg < b.arg;
        return a.m < b.m;
    });
    std::vector<complex> pts;
    pts.reserve(entries.size());
    for (const auto& e : entries)
        pts.emplace_back(omega * static_cast<double>(e.m), omega * static_cast<double>(e.n));

    ZeroSet zs(std::vector<complex>{}, w, r_max);
    zs.pts_ = std::move(pts);  // already canonically ordered; skip the re-sort
    zs.build_grid();
    return zs;
}

complex ZeroSet::point(std::size_t k) const {
    if (k >= pts_.size()) throw std::out_of_range("ZeroSet::point: index out of range");
    return pts_[k];
}

double ZeroSet::modulus(std::size_t k) const { return std::abs(point(k)); }

std::size_t ZeroSet::count_within(double r) const {
    auto it = std::upper_bound(pts_.begin(), pts_.end(), r,
                               [](double rr, const complex& p) { return rr < std::abs(p); });
    return static_cast<std::size_t>(it - pts_.begin());
}

void ZeroSet::build_grid() {
    cells_.clear();
    nx_ = ny_ = 0;
    if (pts_.empty()) return;
    double xmin = pts_[0].real(), xmax = xmin, ymin = pts_[0].imag(), ymax = ymin;
    for (const auto& p : pts_) {
        xmin = std::min(xmin, p.real());
        xmax = std::max(xmax, p.real());
        ymin = std::min(ymin, p.imag());
        ymax = std::max(ymax, p.imag());
    }
    const double span = std::max({xmax - xmin, ymax - ymin, 1e-12});
    const int target = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(pts_.size()))));
    cell_ = span / std::max(1, target);
    x0_ = xmin;
    y0_ = ymin;
    nx_ = static_cast<int>(std::floor((xmax - xmin) / cell_)) + 1;
    ny_ = static_cast<int>(std::floor((ymax - ymin) / cell_)) + 1;
    cells_.assign(static_cast<std::size_t>(nx_) * ny_, {});
    for (std::size_t k = 0; k < pts_.size(); ++k) {
        const int ix = static_cast<int>(std::floor((pts_[k].real() - x0_) / cell_));
        const int iy = static_cast<int>(std::floor((pts_[k].imag() - y0_) / cell_));
        cells_[static_cast<std::size_t>(iy) * nx_ + ix].push_back(k);
    }
}

std::size_t ZeroSet::scan_nearest(complex z, std::size_t skip) const {
    constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
    if (cells_.empty() || pts_.size() < 16) {
        std::size_t best = npos;
        double bd = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < pts_.size(); ++k) {
            if (k == skip) continue;
            const double d = std::abs(z - pts_[k]);
            if (d < bd) { bd = d; best = k; }
        }
        return best;
    }
    const int cx = std::clamp(static_cast<int>(std::floor((z.real() - x0_) / cell_)), 0, nx_ - 1);
    const int cy = std::clamp(static_cast<int>(std::floor((z.imag() - y0_) / cell_)), 0, ny_ - 1);
    std::size_t best = npos;
    double bd = std::numeric_limits<double>::infinity();
    const int rmax = std::max(nx_, ny_);
    for (int ring = 0; ring <= rmax; ++ring) {
        // Once a candidate is known, rings beyond bd/cell_ + 1 cannot improve.
        if (best != npos && static_cast<double>(ring - 1) * cell_ > bd) break;
        for (int iy = cy - ring; iy <= cy + ring; ++iy) {
            if (iy < 0 || iy >= ny_) continue;
            for (int ix = cx - ring; ix <= cx + ring; ++ix) {
                if (ix < 0 || ix >= nx_) continue;
                if (std::max(std::abs(ix - cx), std::abs(iy - cy)) != ring) continue;
                for (std::size_t k : cells_[static_cast<std::size_t>(iy) * nx_ + ix]) {
                    if (k == skip) continue;
                    const double d = std::abs(z - pts_[k]);
                    if (d < bd) { bd = d; best = k; }
                }
            }
        }
    }
    return best;
}

std::size_t ZeroSet::nearest(complex z) const {
    if (pts_.empty()) throw std::logic_error("ZeroSet::nearest: empty set");
    return scan_nearest(z, std::numeric_limits<std::size_t>::max());
}

double ZeroSet::dist_to(complex z) const { return std::abs(z - pts_[nearest(z)]); }

double ZeroSet::nearest_other(std::size_t k) const {
    if (k >= pts_.size()) throw std::out_of_range("ZeroSet::nearest_other: index out of range");
    if (pts_.size() < 2) throw std::logic_error("ZeroSet::nearest_other: need at least 2 points");
    return std::abs(pts_[k] - pts_[scan_nearest(pts_[k], k)]);
}

double ZeroSet::separation() const {
    if (pts_.size() < 2) throw std::invalid_argument("ZeroSet::separation: need at least 2 points");

    // Pass 1: Euclidean nearest neighbor of every point gives an upper bound
    // on the minimal d_rho. Pass 2: for each point, examine all points within
    // best * rho(point); any pair at smaller d_rho must appear this way.
    std::vector<double> rho(pts_.size());
    for (std::size_t k = 0; k < pts_.size(); ++k) rho[k] = weight_.rho(std::abs(pts_[k]));

    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < pts_.size(); ++k) {
        const std::size_t bj = scan_nearest(pts_[k], k);
        const double bd = std::abs(pts_[k] - pts_[bj]);
        if (bd == 0.0) return 0.0;
        const double m = std::min(rho[k], rho[bj]);
        best = std::min(best, m > 0.0 ? bd / m : std::numeric_limits<double>::infinity());
    }

    // Pass 2: exact min over all pairs within reach of the bound.
    double result = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < pts_.size(); ++k) {
        const double reach = best * rho[k];
        if (!(reach > 0.0) || std::isinf(reach)) continue;
        const int cx = std::clamp(static_cast<int>(std::floor((pts_[k].real() - x0_) / cell_)), 0, nx_ - 1);
        const int cy = std::clamp(static_cast<int>(std::floor((pts_[k].imag() - y0_) / cell_)), 0, ny_ - 1);
        const int ring_reach = static_cast<int>(std::ceil(reach / cell_)) + 1;
        for (int iy = cy - ring_reach; iy <= cy + ring_reach; ++iy) {
            if (iy < 0 || iy >= ny_) continue;
            for (int ix = cx - ring_reach; ix <= cx + ring_reach; ++ix) {
                if (ix < 0 || ix >= nx_) continue;
                for (std::size_t j : cells_[static_cast<std::size_t>(iy) * nx_ + ix]) {
                    if (j <= k) continue;
                    const double dist = std::abs(pts_[k] - pts_[j]);
                    const double m = std::min(rho[k], rho[j]);
                    const double d = (dist == 0.0) ? 0.0
                                   : (m == 0.0 ? std::numeric_limits<double>::infinity() : dist / m);
                    result = std::min(result, d);
                }
            }
        }
    }
    return std::min(result, best);
}

ZeroSet ZeroSet::remove_zero(std::size_t k) const {
    if (k >= pts_.size()) throw std::out_of_range("ZeroSet::remove_zero: index out of range");
    std::vector<complex> pts = pts_;
    pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(k));
    ZeroSet zs(std::vector<complex>{}, weight_, truncation_radius_);
    zs.pts_ = std::move(pts);  // order preserved
    zs.build_grid();
    return zs;
}

ZeroSet ZeroSet::insert(complex p) const {
    std::vector<complex> pts = pts_;
    pts.insert(std::upper_bound(pts.begin(), pts.end(), p, CanonicalLess{}), p);
    ZeroSet zs(std::vector<complex>{}, weight_, truncation_radius_);
    zs.pts_ = std::move(pts);
    zs.build_grid();
    return zs;
}

void ZeroSet::write_csv(std::ostream& os) const {
    os << "index,re,im\n";
    char buf[96];
    for (std::size_t k = 0; k < pts_.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", k, pts_[k].real(), pts_[k].imag());
        os << buf;
    }
}

ZeroSet ZeroSet::read_csv(std::istream& is, RadialWeight w, double truncation_radius) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("ZeroSet::read_csv: empty input");
    std::vector<complex> pts;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::string tok;
        double re = 0, im = 0;
        if (!std::getline(ss, tok, ',')) continue;
        if (!std::getline(ss, tok, ',')) throw std::runtime_error("ZeroSet::read_csv: bad row");
        re = std::stod(tok);
        if (!std::getline(ss, tok, ',')) throw std::runtime_error("ZeroSet::read_csv: bad row");
        im = std::stod(tok);
        pts.emplace_back(re, im);
    }
    return ZeroSet(std::move(pts), w, truncation_radius);
}

}  // namespace focklab
