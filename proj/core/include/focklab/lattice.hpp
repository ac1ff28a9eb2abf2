#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "focklab/types.hpp"
#include "focklab/weights.hpp"

namespace focklab {

// Finite ordered set of prospective interpolation nodes. Points are kept in
// canonical order: ascending modulus, ties by ascending argument in [0,2*pi),
// then by real part. The set carries the weight it lives under and the radius
// up to which it is complete.
class ZeroSet {
public:
    ZeroSet(std::vector<complex> points, RadialWeight weight, double truncation_radius);

    // All lattice points omega*(m + i n) with modulus <= r_max. Generated from
    // the integer coordinates so that regeneration gives a bit-identical
    // sequence and so that stored coordinates are exactly fl(omega*m).
    static ZeroSet square_lattice(const RadialWeight& w, double omega, double r_max);

    std::size_t size() const { return pts_.size(); }
    complex point(std::size_t k) const;
    double modulus(std::size_t k) const;
    const std::vector<complex>& points() const { return pts_; }
    const RadialWeight& weight() const { return weight_; }
    double truncation_radius() const { return truncation_radius_; }

    // Number of points with modulus <= r (points are sorted by modulus).
    std::size_t count_within(double r) const;

    // Minimum pairwise d_rho distance. Grid-accelerated but exact.
    double separation() const;

    // Euclidean distance to the nearest point / its index.
    double dist_to(complex z) const;
    std::size_t nearest(complex z) const;
    // Euclidean distance from point k to the closest other point.
    double nearest_other(std::size_t k) const;

    ZeroSet remove_zero(std::size_t k) const;
    ZeroSet insert(complex p) const;

    void write_csv(std::ostream& os) const;  // columns: index,re,im
    static ZeroSet read_csv(std::istream& is, RadialWeight w, double truncation_radius);

private:
    void build_grid();
    std::size_t scan_nearest(complex z, std::size_t skip) const;

    std::vector<complex> pts_;
    RadialWeight weight_;
    double truncation_radius_;

    // flat uniform grid over the bounding square for neighbor queries
    double cell_ = 0.0, x0_ = 0.0, y0_ = 0.0;
    int nx_ = 0, ny_ = 0;
    std::vector<std::vector<std::size_t>> cells_;
};

}  // namespace focklab
