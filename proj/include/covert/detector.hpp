#pragma once

#include <cstdint>
#include <span>

#include "covert/model.hpp"
#include "covert/specfun.hpp"

namespace covert::detector {

struct DetectionErrors {
    Probability p_fa;
    Probability p_md;
    double total = 0.0;
};

/// Which threshold the energy-combining detector compares against.
///
/// `as_derived` is the closed-form likelihood-ratio threshold
/// (L/2)(1/P + g) ln(1 + P g). `min_error` is L (1/P + g) ln(1 + P g), the
/// point where the H0 and H1 densities of the statistic cross, which is the
/// exact minimizer of P_FA + P_MD under the Gamma(L, g) / Gamma(L, g(gP+1))
/// laws of the statistic.
enum class ThresholdRule { as_derived, min_error };

const char* to_string(ThresholdRule rule) noexcept;

/// (L/2)(1/P + g) ln(P g + 1). Throws DomainError for nonpositive inputs.
double optimal_threshold(double power, double gain, std::int64_t blocklength);

/// L (1/P + g) ln(P g + 1); see ThresholdRule::min_error.
double min_error_threshold(double power, double gain, std::int64_t blocklength);

double threshold(ThresholdRule rule, double power, double gain, std::int64_t blocklength);

/// || h^H Y ||^2, maximal-ratio combination of the antenna streams.
double decision_statistic(const ObservationMatrix& y, std::span<const cdouble> h);

/// Same statistic over a raw column-major M x L buffer.
double decision_statistic(std::span<const cdouble> samples, std::span<const cdouble> h);

/// H1 iff statistic > threshold; ties go to H0.
inline Hypothesis decide_statistic(double statistic, double theta) noexcept {
    return statistic > theta ? Hypothesis::h1 : Hypothesis::h0;
}

Hypothesis decide(const ObservationMatrix& y, std::span<const cdouble> h, double power,
                  ThresholdRule rule = ThresholdRule::as_derived);

/// P[statistic > theta | H0]; upper tail of Gamma(L, scale g).
Probability analytic_pfa(double theta, double gain, std::int64_t blocklength);

/// P[statistic <= theta | H1]; lower tail of Gamma(L, scale g (g P + 1)).
Probability analytic_pmd(double theta, double gain, double power, std::int64_t blocklength);

DetectionErrors errors_at_threshold(double theta, double power, double gain,
                                    std::int64_t blocklength);

/// Error pair at the threshold chosen by `rule` (as_derived by default).
DetectionErrors total_error_at_optimum(double power, double gain, std::int64_t blocklength,
                                       ThresholdRule rule = ThresholdRule::as_derived);

}  // namespace covert::detector
