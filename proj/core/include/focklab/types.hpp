#pragma once

#include <complex>

namespace focklab {

using complex = std::complex<double>;

// Embedded in every CSV the tools emit.
inline constexpr const char* kVersionTag = "focklab 0.1.0";

}  // namespace focklab
