#pragma once

namespace ecprbg {

/// Upper regularized incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a),
/// for a > 0, x >= 0. Series expansion below x < a + 1, Lentz continued
/// fraction above. Accurate to ~1e-13 relative over the ranges the test
/// battery uses.
double igamc(double a, double x);

/// Lower regularized incomplete gamma P(a, x) = 1 - Q(a, x).
double igam(double a, double x);

/// Standard normal CDF.
double normal_cdf(double x);

}  // namespace ecprbg
