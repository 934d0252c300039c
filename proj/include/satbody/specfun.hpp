#pragma once

#include <cmath>
#include <limits>

#include "satbody/errors.hpp"

// Small special-function kit: regularized incomplete gamma and beta,
// log-binomial, normal CDF. Series/continued-fraction evaluation in the
// usual regions; all positive-term sums, so accuracy is near machine level.

namespace satbody {

/// Regularized lower incomplete gamma P(s, x), series branch (x < s + 1).
inline double gamma_p_series(double s, double x) {
    if (x <= 0.0) return 0.0;
    double term = 1.0 / s;
    double sum = term;
    double comp = 0.0; // Kahan correction
    for (int n = 1; n < 10000000; ++n) {
        term *= x / (s + n);
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if (term < sum * 1e-17) {
            return sum * std::exp(s * std::log(x) - x - std::lgamma(s));
        }
    }
    throw NumericalError("gamma_p_series: no convergence");
}

/// Regularized upper incomplete gamma Q(s, x), continued fraction (x >= s + 1).
inline double gamma_q_contfrac(double s, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - s;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000000; ++i) {
        const double an = -static_cast<double>(i) * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) {
            return h * std::exp(s * std::log(x) - x - std::lgamma(s));
        }
    }
    throw NumericalError("gamma_q_contfrac: no convergence");
}

/// Regularized upper incomplete gamma Q(s, x) = Gamma(s, x) / Gamma(s).
inline double regularized_gamma_q(double s, double x) {
    if (!(s > 0.0) || x < 0.0)
        throw PreconditionError("regularized_gamma_q: need s > 0, x >= 0");
    if (x == 0.0) return 1.0;
    if (x < s + 1.0) return 1.0 - gamma_p_series(s, x);
    return gamma_q_contfrac(s, x);
}

namespace detail {

// Lentz continued fraction for the incomplete beta, valid for
// x < (a + 1) / (a + b + 2).
inline double betacf(double a, double b, double x) {
    const double tiny = 1e-300;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 10000; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-15) return h;
    }
    throw NumericalError("betacf: no convergence");
}

} // namespace detail

/// Regularized incomplete beta I_x(a, b) = P(Beta(a, b) <= x).
inline double regularized_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0))
        throw PreconditionError("regularized_beta: need a, b > 0");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double front = std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                                  a * std::log(x) + b * std::log1p(-x));
    if (x < (a + 1.0) / (a + b + 2.0))
        return front * detail::betacf(a, b, x) / a;
    return 1.0 - front * detail::betacf(b, a, 1.0 - x) / b;
}

/// log of the binomial coefficient C(n, k) via lgamma.
inline double log_binomial(double n, double k) {
    if (k < 0.0 || k > n) return -std::numeric_limits<double>::infinity();
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

inline double std_normal_cdf(double x) {
    return 0.5 * std::erfc(-x / 1.4142135623730950488);
}

/// log(e^a + e^b) without overflow/underflow.
inline double log_sum_exp(double a, double b) {
    if (a == -std::numeric_limits<double>::infinity()) return b;
    if (b == -std::numeric_limits<double>::infinity()) return a;
    const double hi = std::max(a, b);
    return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

} // namespace satbody
