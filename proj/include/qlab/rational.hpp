#pragma once
#include <boost/rational.hpp>
#include <cmath>
#include <cstdint>
#include <string>

#include "qlab/errors.hpp"

namespace qlab {

// Exact probabilities and error rates. Counts stay small (enumeration sizes
// are capped well below 2^63), so a 64-bit rational is sufficient.
using Rat = boost::rational<long long>;

inline double to_double(const Rat& r) {
    return boost::rational_cast<double>(r);
}

inline std::string to_string(const Rat& r) {
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

// Smallest rational with the given denominator that is >= x. Used when a
// measured floating-point error rate has to enter exact rebalancing as a
// sound upper bound.
inline Rat rational_upper(double x, long long den = 1000000) {
    if (den <= 0) throw precondition_error("rational_upper: denominator must be positive");
    return Rat(static_cast<long long>(std::ceil(x * static_cast<double>(den))), den);
}

}  // namespace qlab
