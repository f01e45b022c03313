#include "covert/covertness.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "covert/errors.hpp"

namespace covert::covertness {
namespace {

constexpr double kQuadratureTolerance = 1e-12;
constexpr double kAcceptedRelativeError = 1e-10;
constexpr unsigned kMaxDepth = 20;

}  // namespace

double kl_per_use(double power, double gain) {
    detail::require(power >= 0.0 && gain >= 0.0, "kl_per_use: arguments must be nonnegative");
    const double x = power * gain;
    if (x == 0.0) return 0.0;
    if (x < 0.1) {
        // sum_{k>=2} (-1)^k (k-1)/k x^k
        double power_k = -x;
        double sum = 0.0;
        for (int k = 2; k < 60; ++k) {
            power_k *= -x;
            const double term = power_k * (k - 1) / k;
            sum += term;
            if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
        }
        return sum;
    }
    return std::log1p(x) - x / (1.0 + x);
}

double pinsker_lower_bound(std::int64_t blocklength, double kl) {
    detail::require(blocklength >= 1, "pinsker_lower_bound: blocklength must be at least 1");
    detail::require(kl >= 0.0, "pinsker_lower_bound: divergence must be nonnegative");
    return 1.0 - std::sqrt(static_cast<double>(blocklength) * kl / 2.0);
}

double expected_kl(double power, std::int64_t antennas, double lambda) {
    detail::require(power > 0.0 && std::isfinite(power), "expected_kl: power must be positive");
    detail::require(antennas >= 1, "expected_kl: M must be at least 1");
    detail::require(lambda > 0.0 && std::isfinite(lambda), "expected_kl: lambda must be positive");

    // Integrate in t = lambda h against the unit-rate Erlang density, split at
    // the knee of the divergence (t = lambda / P) and at the density mode.
    const auto m = static_cast<double>(antennas);
    const double upper = m + 40.0 * std::sqrt(m);
    const double scaled_power = power / lambda;
    auto integrand = [&](double t) {
        if (t <= 0.0) return 0.0;  // kl vanishes at t = 0
        return kl_per_use(scaled_power, t) * std::exp(specfun::erlang_log_pdf(t, antennas, 1.0));
    };

    std::vector<double> cuts{0.0, upper};
    for (double c : {0.1 / scaled_power, 1.0 / scaled_power, 10.0 / scaled_power, m - 1.0, m}) {
        if (c > 0.0 && c < upper) cuts.push_back(c);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    double value = 0.0;
    double error = 0.0;
    double l1 = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double piece_error = 0.0;
        double piece_l1 = 0.0;
        // Each piece is mapped onto [0, 1]: the adaptive stopping rule compares
        // an unscaled local error estimate, so very narrow pieces never converge.
        const double a = cuts[i];
        const double width = cuts[i + 1] - cuts[i];
        auto unit = [&](double u) { return width * integrand(a + width * u); };
        value += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
            unit, 0.0, 1.0, kMaxDepth, kQuadratureTolerance, &piece_error, &piece_l1);
        error += piece_error;
        l1 += piece_l1;
    }
    if (!std::isfinite(value) || error > kAcceptedRelativeError * l1) {
        throw NumericError("expected_kl: quadrature did not converge (P=" + std::to_string(power) +
                           ", M=" + std::to_string(antennas) + ", error=" +
                           std::to_string(error) + ")");
    }
    return value;
}

double f_closed_form(double power, double lambda) {
    detail::require(power > 0.0 && std::isfinite(power), "f_closed_form: power must be positive");
    detail::require(lambda > 0.0 && std::isfinite(lambda), "f_closed_form: lambda must be positive");
    const double z = lambda / power;
    if (z >= 100.0) {
        // Asymptotic form of (1 + z) e^z E1(z) - 1 = sum_{k>=1} (-1)^{k+1} k k! / z^{k+1};
        // avoids cancelling against 1 at small power.
        double factorial = 1.0;
        double zpow = z;
        double sum = 0.0;
        for (int k = 1; k < 60; ++k) {
            factorial *= k;
            zpow *= z;
            const double term = (k % 2 == 1 ? 1.0 : -1.0) * k * factorial / zpow;
            sum += term;
            if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
        }
        return sum;
    }
    return -1.0 + (1.0 + z) * specfun::exp_scaled_e1(z);
}

CovertnessBudget make_budget(Probability epsilon, double expected_kl_per_use) {
    detail::require(expected_kl_per_use >= 0.0, "make_budget: divergence must be nonnegative");
    CovertnessBudget b;
    b.epsilon = epsilon;
    b.kl_cap = 2.0 * epsilon.value() * epsilon.value();
    b.expected_kl_per_use = expected_kl_per_use;
    b.blocklength_cap = expected_kl_per_use > 0.0 ? b.kl_cap / expected_kl_per_use
                                                  : std::numeric_limits<double>::infinity();
    return b;
}

}  // namespace covert::covertness
