#pragma once

#include <functional>

namespace tolspace::special {

// Error function.
//
// |x| < 3: the positive-term series
//     erf(x) = 2/sqrt(pi) * exp(-x^2) * sum_n 2^n x^(2n+1) / (1*3*...*(2n+1)),
// which has no cancellation.  |x| >= 3: erfc from its continued fraction
//     erfc(x) = exp(-x^2)/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
// evaluated with the modified Lentz method.  Absolute error stays below 1e-15
// on the real line; the tests pin it against high-precision reference values.
double erf(double x);
double erfc(double x);

struct Maximum {
    double argmax;
    double value;
};

/// Golden-section search for the maximum of a unimodal function on [lo, hi].
Maximum golden_section_maximize(const std::function<double(double)>& fn, double lo, double hi,
                                double tol = 1e-10);

} // namespace tolspace::special
