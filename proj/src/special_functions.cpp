#include "ecprbg/special_functions.hpp"

#include <cmath>
#include <stdexcept>

namespace ecprbg {

namespace {

constexpr double kEps = 1e-15;
constexpr int kMaxIter = 1000000;
constexpr double kTiny = 1e-300;

// Lower regularized gamma by its power series; converges fast for x < a + 1.
double gamma_series_lower(double a, double x) {
    if (x == 0.0) return 0.0;
    double ap = a;
    double term = 1.0 / a;
    double sum = term;
    for (int i = 0; i < kMaxIter; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * kEps)
            return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    throw std::runtime_error("igam series failed to converge");
}

// Upper regularized gamma by modified Lentz continued fraction; for x >= a + 1.
double gamma_cf_upper(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIter; ++i) {
        const double an = -double(i) * (double(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEps)
            return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    throw std::runtime_error("igamc continued fraction failed to converge");
}

}  // namespace

double igamc(double a, double x) {
    if (!(a > 0.0) || x < 0.0)
        throw std::invalid_argument("igamc requires a > 0 and x >= 0");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_series_lower(a, x);
    return gamma_cf_upper(a, x);
}

double igam(double a, double x) {
    if (!(a > 0.0) || x < 0.0)
        throw std::invalid_argument("igam requires a > 0 and x >= 0");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_series_lower(a, x);
    return 1.0 - gamma_cf_upper(a, x);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace ecprbg
