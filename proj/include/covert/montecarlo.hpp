#pragma once

#include <cstdint>
#include <utility>

#include "covert/detector.hpp"
#include "covert/model.hpp"

namespace covert::montecarlo {

struct TrialReport {
    std::int64_t trials = 0;
    double estimate = 0.0;
    double std_error = 0.0;
    std::uint64_t seed = 0;
};

/// Raw detection-error counts over a contiguous range of trial indices.
/// Counts from disjoint ranges merge by addition.
struct ErrorCounts {
    std::int64_t trials = 0;
    std::int64_t false_alarms = 0;
    std::int64_t misses = 0;

    ErrorCounts& operator+=(const ErrorCounts& other) noexcept {
        trials += other.trials;
        false_alarms += other.false_alarms;
        misses += other.misses;
        return *this;
    }
};

/// How each trial's decision statistic is produced.
///  - full_observation: synthesize the M x L matrix and combine it.
///  - sufficient_statistic: draw ||h^H Y||^2 directly from its Gamma law.
///    O(1) per trial; the full path is the reference it is checked against.
enum class SimulationPath { full_observation, sufficient_statistic };

struct RunOptions {
    detector::ThresholdRule rule = detector::ThresholdRule::as_derived;
    SimulationPath path = SimulationPath::full_observation;
    int workers = 1;
    // Multiplies the detector threshold. 1.0 except in negative-control runs.
    double threshold_scale = 1.0;
};

/// Binomial standard error sqrt(p (1 - p) / n).
double binomial_std_error(double p, std::int64_t trials);

/// H0 and H1 trials with indices [first_trial, first_trial + count); trial t
/// uses streams substream(trial_h0, t) and substream(trial_h1, t).
ErrorCounts count_detection_errors(const ChannelDraw& channel, double power,
                                   std::int64_t blocklength, double theta, std::uint64_t seed,
                                   std::int64_t first_trial, std::int64_t count,
                                   SimulationPath path = SimulationPath::full_observation);

/// Empirical (P_FA, P_MD) at the detector threshold for `channel`.
/// Requires trials >= 1000.
std::pair<TrialReport, TrialReport> empirical_error_probs(const ChannelDraw& channel,
                                                          double power, std::int64_t blocklength,
                                                          std::int64_t trials, std::uint64_t seed,
                                                          const RunOptions& opts = {});

/// Sample mean of kl_per_use(P, ||h||^2) over `draws` Rayleigh channels.
/// Requires draws >= 10^4.
TrialReport empirical_expected_kl(double power, std::int64_t antennas, double lambda,
                                  std::int64_t draws, std::uint64_t seed, int workers = 1);

/// Across-channel mean of the empirical total detection error P_FA + P_MD.
/// Throws DomainError unless L * g(P) <= 2 eps^2.
TrialReport verify_covertness(const SystemConfig& cfg, double power, std::int64_t blocklength,
                              std::int64_t channel_draws, std::int64_t trials_per_draw,
                              std::uint64_t seed, const RunOptions& opts = {});

}  // namespace covert::montecarlo
