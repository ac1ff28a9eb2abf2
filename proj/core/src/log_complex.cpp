#include "focklab/log_complex.hpp"

#include <vector>

#include "focklab/util.hpp"

namespace focklab {

LogComplex log_sum(std::span<const LogComplex> terms) {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& t : terms)
        if (!t.is_zero()) m = std::max(m, t.logmag);
    if (std::isinf(m)) return LogComplex::zero();

    // Pairwise accumulation of the shifted terms keeps long sums stable.
    std::vector<double> re, im;
    re.reserve(terms.size());
    im.reserve(terms.size());
    for (const auto& t : terms) {
        if (t.is_zero()) continue;
        const complex v = std::polar(std::exp(t.logmag - m), t.phase);
        re.push_back(v.real());
        im.push_back(v.imag());
    }
    const complex s(pairwise_sum(re), pairwise_sum(im));
    if (s.real() == 0.0 && s.imag() == 0.0) return LogComplex::zero();
    return LogComplex::make(m + std::log(std::abs(s)), std::arg(s));
}

}  // namespace focklab
