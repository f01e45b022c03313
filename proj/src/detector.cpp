#include "covert/detector.hpp"

#include <cmath>

#include "covert/errors.hpp"

namespace covert::detector {
namespace {

void check_inputs(double power, double gain, std::int64_t blocklength) {
    detail::require(power > 0.0 && std::isfinite(power), "detector: power must be positive");
    detail::require(gain > 0.0 && std::isfinite(gain), "detector: channel gain must be positive");
    detail::require(blocklength >= 1, "detector: blocklength must be at least 1");
}

}  // namespace

const char* to_string(ThresholdRule rule) noexcept {
    return rule == ThresholdRule::as_derived ? "as-derived" : "min-error";
}

double optimal_threshold(double power, double gain, std::int64_t blocklength) {
    check_inputs(power, gain, blocklength);
    return 0.5 * static_cast<double>(blocklength) * (1.0 / power + gain) *
           std::log1p(power * gain);
}

double min_error_threshold(double power, double gain, std::int64_t blocklength) {
    check_inputs(power, gain, blocklength);
    return static_cast<double>(blocklength) * (1.0 / power + gain) * std::log1p(power * gain);
}

double threshold(ThresholdRule rule, double power, double gain, std::int64_t blocklength) {
    return rule == ThresholdRule::as_derived ? optimal_threshold(power, gain, blocklength)
                                             : min_error_threshold(power, gain, blocklength);
}

double decision_statistic(std::span<const cdouble> samples, std::span<const cdouble> h) {
    const std::size_t m = h.size();
    detail::require(m > 0 && samples.size() % m == 0,
                    "decision_statistic: observation rows do not match channel length");
    double energy = 0.0;
    for (std::size_t col = 0; col < samples.size(); col += m) {
        // conj(h)^T y, real and imaginary parts accumulated separately
        double re = 0.0;
        double im = 0.0;
        for (std::size_t row = 0; row < m; ++row) {
            const cdouble y = samples[col + row];
            re += h[row].real() * y.real() + h[row].imag() * y.imag();
            im += h[row].real() * y.imag() - h[row].imag() * y.real();
        }
        energy += re * re + im * im;
    }
    return energy;
}

double decision_statistic(const ObservationMatrix& y, std::span<const cdouble> h) {
    detail::require(static_cast<std::int64_t>(h.size()) == y.rows(),
                    "decision_statistic: observation rows do not match channel length");
    return decision_statistic(y.data(), h);
}

Hypothesis decide(const ObservationMatrix& y, std::span<const cdouble> h, double power,
                  ThresholdRule rule) {
    double gain = 0.0;
    for (const auto& c : h) gain += std::norm(c);
    const double theta = threshold(rule, power, gain, y.cols());
    return decide_statistic(decision_statistic(y, h), theta);
}

Probability analytic_pfa(double theta, double gain, std::int64_t blocklength) {
    detail::require(theta > 0.0, "analytic_pfa: threshold must be positive");
    detail::require(gain > 0.0, "analytic_pfa: channel gain must be positive");
    detail::require(blocklength >= 1, "analytic_pfa: blocklength must be at least 1");
    return Probability(specfun::reg_upper_gamma(static_cast<double>(blocklength), theta / gain));
}

Probability analytic_pmd(double theta, double gain, double power, std::int64_t blocklength) {
    detail::require(theta > 0.0, "analytic_pmd: threshold must be positive");
    detail::require(gain > 0.0, "analytic_pmd: channel gain must be positive");
    detail::require(power > 0.0, "analytic_pmd: power must be positive");
    detail::require(blocklength >= 1, "analytic_pmd: blocklength must be at least 1");
    const double scale = gain * (gain * power + 1.0);
    return specfun::reg_lower_gamma(static_cast<double>(blocklength), theta / scale);
}

DetectionErrors errors_at_threshold(double theta, double power, double gain,
                                    std::int64_t blocklength) {
    DetectionErrors e;
    e.p_fa = analytic_pfa(theta, gain, blocklength);
    e.p_md = analytic_pmd(theta, gain, power, blocklength);
    e.total = e.p_fa.value() + e.p_md.value();
    return e;
}

DetectionErrors total_error_at_optimum(double power, double gain, std::int64_t blocklength,
                                       ThresholdRule rule) {
    return errors_at_threshold(threshold(rule, power, gain, blocklength), power, gain,
                               blocklength);
}

}  // namespace covert::detector
