#include "covert/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "covert/errors.hpp"

namespace covert {

Probability::Probability(double v) : value_(v) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw DomainError("probability out of [0, 1]: " + std::to_string(v));
    }
}

namespace specfun {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kHalfLog2Pi = 0.91893853320467274178032973640562;

// lnGamma(x) - [(x - 1/2) ln x - x + ln(2 pi)/2] for x >= 10 (asymptotic series).
double stirling_tail(double x) {
    const double r = 1.0 / x;
    const double r2 = r * r;
    return r * (1.0 / 12.0 +
                r2 * (-1.0 / 360.0 +
                      r2 * (1.0 / 1260.0 +
                            r2 * (-1.0 / 1680.0 +
                                  r2 * (1.0 / 1188.0 + r2 * (-691.0 / 360360.0 + r2 * (1.0 / 156.0)))))));
}

// ln(1 + t) - t, accurate for small |t|.
double log1pmx(double t) {
    if (std::abs(t) >= 0.5) return std::log1p(t) - t;
    double power = t;
    double sum = 0.0;
    for (int k = 2; k < 400; ++k) {
        power *= -t;
        const double term = power / k;
        sum += term;
        if (std::abs(term) <= kEps * 1e-2 * std::abs(sum)) break;
    }
    // power alternates sign starting at -t^2, i.e. sum = -t^2/2 + t^3/3 - ...
    return sum;
}

// a ln x - x - ln Gamma(a); the log of the common incomplete-gamma prefactor.
double log_gamma_prefix(double a, double x) {
    if (a < 10.0) return a * std::log(x) - x - ln_gamma(a);
    const double t = (x - a) / a;
    return a * log1pmx(t) + 0.5 * std::log(a) - kHalfLog2Pi - stirling_tail(a);
}

int max_iterations(double a) {
    return 100000 + static_cast<int>(50.0 * std::sqrt(a));
}

// sum_{n>=0} x^n / (a (a+1) ... (a+n))
double lower_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    const int limit = max_iterations(a);
    for (int n = 1; n < limit; ++n) {
        term *= x / (a + n);
        sum += term;
        if (term <= sum * kEps * 0.5) return sum;
    }
    throw NumericError("incomplete gamma series did not converge (a=" + std::to_string(a) +
                       ", x=" + std::to_string(x) + ")");
}

// Continued fraction for Gamma(a, x) e^x x^-a, modified Lentz.
double upper_fraction(double a, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    const int limit = max_iterations(a);
    for (int i = 1; i < limit; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) <= kEps) return h;
    }
    throw NumericError("incomplete gamma continued fraction did not converge (a=" +
                       std::to_string(a) + ", x=" + std::to_string(x) + ")");
}

void check_gamma_args(double a, double x) {
    detail::require(a > 0.0 && std::isfinite(a), "incomplete gamma: shape must be positive");
    detail::require(x >= 0.0, "incomplete gamma: argument must be nonnegative");
}

double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

// Lower-tail standard normal quantile, Acklam's rational approximation
// polished by two Halley steps against erfc. Valid for 0 < p <= 0.5.
double normal_lower_quantile(double p) {
    static constexpr std::array<double, 6> a{-3.969683028665376e+01, 2.209460984245205e+02,
                                             -2.759285104469687e+02, 1.383577518672690e+02,
                                             -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr std::array<double, 5> b{-5.447609879822406e+01, 1.615858368580409e+02,
                                             -1.556989798598866e+02, 6.680131188771972e+01,
                                             -1.328068155288572e+01};
    static constexpr std::array<double, 6> c{-7.784894002430293e-03, -3.223964580411365e-01,
                                             -2.400758277161838e+00, -2.549732539343734e+00,
                                             4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr std::array<double, 4> d{7.784695709041462e-03, 3.224671290700398e-01,
                                             2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    double x;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    }
    const double sqrt2pi = std::sqrt(2.0 * std::numbers::pi);
    for (int step = 0; step < 2; ++step) {
        const double e = 0.5 * std::erfc(-x / std::numbers::sqrt2) - p;
        const double u = e * sqrt2pi * std::exp(0.5 * x * x);
        x -= u / (1.0 + 0.5 * x * u);
    }
    return x;
}

}  // namespace

double ln_gamma(double x) {
    detail::require(x > 0.0 && !std::isnan(x), "ln_gamma: argument must be positive");
    if (std::isinf(x)) return x;
    if (x >= 10.0) {
        return (x - 0.5) * std::log(x) - x + kHalfLog2Pi + stirling_tail(x);
    }
    // Shift into the asymptotic regime: Gamma(x) = Gamma(x + n) / (x (x+1) ... (x+n-1)).
    double shifted = x;
    double product = 1.0;
    while (shifted < 10.0) {
        product *= shifted;
        shifted += 1.0;
    }
    return (shifted - 0.5) * std::log(shifted) - shifted + kHalfLog2Pi + stirling_tail(shifted) -
           std::log(product);
}

Probability reg_lower_gamma(double a, double x) {
    check_gamma_args(a, x);
    if (x == 0.0) return Probability(0.0);
    if (std::isinf(x)) return Probability(1.0);
    const double log_prefix = log_gamma_prefix(a, x);
    if (x < a + 1.0) {
        return Probability(clamp01(std::exp(log_prefix) * lower_series(a, x)));
    }
    return Probability(clamp01(1.0 - std::exp(log_prefix) * upper_fraction(a, x)));
}

double reg_upper_gamma(double a, double x) {
    check_gamma_args(a, x);
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    const double log_prefix = log_gamma_prefix(a, x);
    if (x < a + 1.0) {
        return clamp01(1.0 - std::exp(log_prefix) * lower_series(a, x));
    }
    return clamp01(std::exp(log_prefix) * upper_fraction(a, x));
}

double q_function(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double q_inv(Probability p) {
    const double v = p.value();
    detail::require(v > 0.0 && v < 1.0, "q_inv: probability must lie strictly inside (0, 1)");
    // Q^{-1}(p) = -Phi^{-1}(p); the upper half uses the exact complement 1 - p.
    if (v <= 0.5) return -normal_lower_quantile(v);
    return normal_lower_quantile(1.0 - v);
}

double exp_scaled_e1(double x) {
    detail::require(x > 0.0 && !std::isnan(x), "exp_scaled_e1: argument must be positive");
    if (std::isinf(x)) return 0.0;
    if (x < 1.0) {
        // E1(x) = -gamma - ln x - sum_{k>=1} (-x)^k / (k k!)
        double term = 1.0;
        double sum = 0.0;
        for (int k = 1; k < 200; ++k) {
            term *= -x / k;
            const double contrib = term / k;
            sum += contrib;
            if (std::abs(contrib) <= kEps * std::abs(sum)) break;
        }
        const double e1 = -std::numbers::egamma - std::log(x) - sum;
        return std::exp(x) * e1;
    }
    // e^x E1(x) = 1/(x+1- 1/(x+3- 4/(x+5- ...))), modified Lentz.
    constexpr double tiny = 1e-300;
    double b = x + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        const double an = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        const double del = c * d;
        h *= del;
        if (std::abs(del - 1.0) <= kEps) return h;
    }
    throw NumericError("exp_scaled_e1: continued fraction did not converge at x=" +
                       std::to_string(x));
}

double erlang_log_pdf(double h, std::int64_t m, double lambda) {
    detail::require(h >= 0.0, "erlang_pdf: h must be nonnegative");
    detail::require(m >= 1, "erlang_pdf: M must be at least 1");
    detail::require(lambda > 0.0 && std::isfinite(lambda), "erlang_pdf: lambda must be positive");
    const auto shape = static_cast<double>(m);
    if (h == 0.0) {
        return m == 1 ? std::log(lambda) : -std::numeric_limits<double>::infinity();
    }
    return shape * std::log(lambda) + (shape - 1.0) * std::log(h) - lambda * h - ln_gamma(shape);
}

double erlang_pdf(double h, std::int64_t m, double lambda) {
    return std::exp(erlang_log_pdf(h, m, lambda));
}

}  // namespace specfun
}  // namespace covert
