#pragma once

#include <cstdint>

namespace covert {

/// A probability in [0, 1]. Construction validates the range.
class Probability {
public:
    Probability() = default;
    explicit Probability(double v);

    [[nodiscard]] double value() const noexcept { return value_; }
    operator double() const noexcept { return value_; }  // NOLINT(google-explicit-constructor)

private:
    double value_ = 0.0;
};

namespace specfun {

/// ln Gamma(x) for x > 0.
double ln_gamma(double x);

/// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a).
///
/// Series expansion below x = a + 1, Lentz continued fraction for the
/// complement above it. The common prefactor x^a e^-x / Gamma(a) is formed
/// through a log1p-based expansion so shapes up to 1e6 keep full accuracy.
Probability reg_lower_gamma(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x), computed without
/// cancellation. Internal helper for tail probabilities.
double reg_upper_gamma(double a, double x);

/// Gaussian tail Q(x) = P[N(0,1) > x].
double q_function(double x);

/// Inverse of q_function on (0, 1).
double q_inv(Probability p);

/// e^x * E1(x) for x > 0. Stays finite for x up to 1e8 and beyond.
double exp_scaled_e1(double x);

/// Erlang(M, lambda) density, evaluated in log space.
double erlang_pdf(double h, std::int64_t m, double lambda);

/// log of erlang_pdf; -inf where the density is zero.
double erlang_log_pdf(double h, std::int64_t m, double lambda);

}  // namespace specfun
}  // namespace covert
