#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>

#include "focklab/types.hpp"

namespace focklab {

// Nonzero complex value stored as (log magnitude, phase). The generating
// functions here grow like e^{phi(|z|)} with phi(15) = 225 already past
// double range, so products and quotients are carried in log scale and only
// O(1)-sized results are converted back. logmag = -inf encodes an exact zero.
struct LogComplex {
    double logmag = -std::numeric_limits<double>::infinity();
    double phase = 0.0;  // kept in [0, 2*pi)

    static LogComplex zero() { return {}; }
    static LogComplex one() { return {0.0, 0.0}; }

    static double wrap_phase(double ph) {
        ph = std::fmod(ph, 2.0 * std::numbers::pi);
        if (ph < 0.0) ph += 2.0 * std::numbers::pi;
        return ph;
    }

    static LogComplex make(double lm, double ph) {
        LogComplex r;
        if (std::isinf(lm) && lm < 0.0) return r;
        r.logmag = lm;
        r.phase = wrap_phase(ph);
        return r;
    }

    static LogComplex from_complex(complex v) {
        if (v.real() == 0.0 && v.imag() == 0.0) return zero();
        return make(std::log(std::abs(v)), std::arg(v));
    }

    bool is_zero() const { return std::isinf(logmag) && logmag < 0.0; }

    // Guarded conversion; |logmag| <= 700 keeps exp() finite and normal-ish.
    complex to_complex() const {
        if (is_zero()) return {0.0, 0.0};
        if (!(std::abs(logmag) <= 700.0))
            throw std::range_error("LogComplex::to_complex: logmag outside representable range");
        return std::polar(std::exp(logmag), phase);
    }

    // Like to_complex, but deep underflow flushes to 0 instead of throwing;
    // overflow still throws.
    complex to_complex_or_zero() const {
        if (is_zero() || logmag < -700.0) return {0.0, 0.0};
        if (!(logmag <= 700.0))
            throw std::range_error("LogComplex::to_complex_or_zero: magnitude overflows");
        return std::polar(std::exp(logmag), phase);
    }

    complex unit() const { return is_zero() ? complex{0.0, 0.0} : std::polar(1.0, phase); }
};

inline LogComplex operator*(LogComplex a, LogComplex b) {
    if (a.is_zero() || b.is_zero()) return LogComplex::zero();
    return LogComplex::make(a.logmag + b.logmag, a.phase + b.phase);
}

inline LogComplex operator/(LogComplex a, LogComplex b) {
    if (b.is_zero()) throw std::domain_error("LogComplex: division by zero");
    if (a.is_zero()) return a;
    return LogComplex::make(a.logmag - b.logmag, a.phase - b.phase);
}

inline LogComplex operator-(LogComplex a) {
    if (a.is_zero()) return a;
    return LogComplex::make(a.logmag, a.phase + std::numbers::pi);
}

inline LogComplex pow(LogComplex a, double e) {
    if (a.is_zero()) return a;
    return LogComplex::make(a.logmag * e, a.phase * e);
}

inline LogComplex conj(LogComplex a) {
    if (a.is_zero()) return a;
    return LogComplex::make(a.logmag, -a.phase);
}

inline LogComplex operator+(LogComplex a, LogComplex b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const double m = std::max(a.logmag, b.logmag);
    const complex s = std::polar(std::exp(a.logmag - m), a.phase) +
                      std::polar(std::exp(b.logmag - m), b.phase);
    if (s.real() == 0.0 && s.imag() == 0.0) return LogComplex::zero();
    return LogComplex::make(m + std::log(std::abs(s)), std::arg(s));
}

inline LogComplex operator-(LogComplex a, LogComplex b) { return a + (-b); }

// Shift-by-max sum of many terms; deterministic for a fixed order.
LogComplex log_sum(std::span<const LogComplex> terms);

}  // namespace focklab
