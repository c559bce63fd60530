#include "tolspace/special.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "tolspace/error.hpp"

namespace tolspace::special {
namespace {

constexpr double kSeriesLimit = 3.0;

double erf_series(double x) {
    const double x2 = x * x;
    double term = x;
    double sum = x;
    for (int n = 1; n < 500; ++n) {
        term *= 2.0 * x2 / (2.0 * n + 1.0);
        sum += term;
        if (term < sum * 1e-17) break;
    }
    return 2.0 / std::sqrt(std::numbers::pi) * std::exp(-x2) * sum;
}

// x >= kSeriesLimit.
double erfc_continued_fraction(double x) {
    constexpr double tiny = 1e-300;
    double f = x;
    double c = x;
    double d = 0.0;
    for (int n = 1; n < 2000; ++n) {
        const double a = 0.5 * n;
        d = x + a * d;
        if (std::abs(d) < tiny) d = tiny;
        c = x + a / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return std::exp(-x * x) / std::sqrt(std::numbers::pi) / f;
}

} // namespace

double erf(double x) {
    if (std::isnan(x)) return x;
    if (x < 0.0) return -erf(-x);
    if (x < kSeriesLimit) return erf_series(x);
    if (x > 27.0) return 1.0;
    return 1.0 - erfc_continued_fraction(x);
}

double erfc(double x) {
    if (std::isnan(x)) return x;
    if (x < 0.0) return 2.0 - erfc(-x);
    if (x < kSeriesLimit) return 1.0 - erf_series(x);
    if (x > 27.0) return 0.0;
    return erfc_continued_fraction(x);
}

Maximum golden_section_maximize(const std::function<double(double)>& fn, double lo, double hi,
                                double tol) {
    if (!(lo < hi)) throw ValidationError("golden-section search needs lo < hi");
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = fn(c);
    double fd = fn(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = fn(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = fn(d);
        }
    }
    const double x = 0.5 * (a + b);
    return {x, fn(x)};
}

} // namespace tolspace::special
