#include "covert/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>
#include <vector>

#include "covert/covertness.hpp"
#include "covert/errors.hpp"

namespace covert::montecarlo {
namespace {

constexpr std::int64_t kTrialChunk = 1024;
constexpr std::int64_t kDrawChunk = 4096;

// Runs fn(chunk) for every chunk index. Chunk boundaries never depend on the
// worker count, so per-chunk results are identical however they are scheduled.
template <typename Fn>
void for_each_chunk(std::int64_t chunks, int workers, Fn&& fn) {
    const int threads = static_cast<int>(std::clamp<std::int64_t>(workers, 1, chunks));
    if (threads <= 1) {
        for (std::int64_t c = 0; c < chunks; ++c) fn(c);
        return;
    }
    std::atomic<std::int64_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (std::int64_t c = next++; c < chunks; c = next++) fn(c);
        });
    }
}

std::int64_t chunk_count(std::int64_t n, std::int64_t chunk) { return (n + chunk - 1) / chunk; }

// Mean and sum of squared deviations, merged pairwise in a fixed order.
struct Moments {
    std::int64_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++n;
        const double d = x - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (x - mean);
    }
    void merge(const Moments& o) {
        if (o.n == 0) return;
        if (n == 0) {
            *this = o;
            return;
        }
        const auto total = static_cast<double>(n + o.n);
        const double d = o.mean - mean;
        mean += d * static_cast<double>(o.n) / total;
        m2 += o.m2 + d * d * static_cast<double>(n) * static_cast<double>(o.n) / total;
        n += o.n;
    }
    [[nodiscard]] double std_error() const {
        if (n < 2) return 0.0;
        return std::sqrt(m2 / static_cast<double>(n - 1) / static_cast<double>(n));
    }
};

Moments merge_in_order(const std::vector<Moments>& parts) {
    Moments total;
    for (const auto& p : parts) total.merge(p);
    return total;
}

}  // namespace

double binomial_std_error(double p, std::int64_t trials) {
    detail::require(trials >= 1, "binomial_std_error: trials must be positive");
    return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

ErrorCounts count_detection_errors(const ChannelDraw& channel, double power,
                                   std::int64_t blocklength, double theta, std::uint64_t seed,
                                   std::int64_t first_trial, std::int64_t count,
                                   SimulationPath path) {
    detail::require(blocklength >= 1, "count_detection_errors: blocklength must be at least 1");
    detail::require(first_trial >= 0 && count >= 0, "count_detection_errors: invalid trial range");
    ErrorCounts counts;
    counts.trials = count;
    const auto h = channel.coefficients();
    const double gain = channel.gain();

    if (path == SimulationPath::sufficient_statistic) {
        std::gamma_distribution<double> shape(static_cast<double>(blocklength), 1.0);
        const double scale_h1 = gain * (gain * power + 1.0);
        for (std::int64_t t = first_trial; t < first_trial + count; ++t) {
            const auto index = static_cast<std::uint64_t>(t);
            RandomStream rng0(seed, substream(StreamTag::trial_h0, index));
            if (detector::decide_statistic(gain * shape(rng0), theta) == Hypothesis::h1) {
                ++counts.false_alarms;
            }
            shape.reset();
            RandomStream rng1(seed, substream(StreamTag::trial_h1, index));
            if (detector::decide_statistic(scale_h1 * shape(rng1), theta) == Hypothesis::h0) {
                ++counts.misses;
            }
            shape.reset();
        }
        return counts;
    }

    std::vector<cdouble> buffer(static_cast<std::size_t>(channel.antennas() * blocklength));
    for (std::int64_t t = first_trial; t < first_trial + count; ++t) {
        const auto index = static_cast<std::uint64_t>(t);
        RandomStream rng0(seed, substream(StreamTag::trial_h0, index));
        fill_observations(rng0, channel, power, Hypothesis::h0, buffer);
        if (detector::decide_statistic(detector::decision_statistic(buffer, h), theta) ==
            Hypothesis::h1) {
            ++counts.false_alarms;
        }
        RandomStream rng1(seed, substream(StreamTag::trial_h1, index));
        fill_observations(rng1, channel, power, Hypothesis::h1, buffer);
        if (detector::decide_statistic(detector::decision_statistic(buffer, h), theta) ==
            Hypothesis::h0) {
            ++counts.misses;
        }
    }
    return counts;
}

std::pair<TrialReport, TrialReport> empirical_error_probs(const ChannelDraw& channel,
                                                          double power, std::int64_t blocklength,
                                                          std::int64_t trials, std::uint64_t seed,
                                                          const RunOptions& opts) {
    detail::require(trials >= 1000, "empirical_error_probs: at least 1000 trials required");
    const double theta = opts.threshold_scale *
                         detector::threshold(opts.rule, power, channel.gain(), blocklength);

    const std::int64_t chunks = chunk_count(trials, kTrialChunk);
    std::vector<ErrorCounts> parts(static_cast<std::size_t>(chunks));
    for_each_chunk(chunks, opts.workers, [&](std::int64_t c) {
        const std::int64_t first = c * kTrialChunk;
        const std::int64_t n = std::min(kTrialChunk, trials - first);
        parts[static_cast<std::size_t>(c)] =
            count_detection_errors(channel, power, blocklength, theta, seed, first, n, opts.path);
    });
    ErrorCounts total;
    for (const auto& p : parts) total += p;

    const auto n = static_cast<double>(total.trials);
    const double pfa = static_cast<double>(total.false_alarms) / n;
    const double pmd = static_cast<double>(total.misses) / n;
    return {TrialReport{total.trials, pfa, binomial_std_error(pfa, total.trials), seed},
            TrialReport{total.trials, pmd, binomial_std_error(pmd, total.trials), seed}};
}

TrialReport empirical_expected_kl(double power, std::int64_t antennas, double lambda,
                                  std::int64_t draws, std::uint64_t seed, int workers) {
    detail::require(draws >= 10000, "empirical_expected_kl: at least 10^4 draws required");
    detail::require(power >= 0.0, "empirical_expected_kl: power must be nonnegative");
    const std::int64_t chunks = chunk_count(draws, kDrawChunk);
    std::vector<Moments> parts(static_cast<std::size_t>(chunks));
    for_each_chunk(chunks, workers, [&](std::int64_t c) {
        Moments m;
        const std::int64_t first = c * kDrawChunk;
        const std::int64_t last = std::min(draws, first + kDrawChunk);
        for (std::int64_t i = first; i < last; ++i) {
            RandomStream rng(seed, substream(StreamTag::gain, static_cast<std::uint64_t>(i)));
            m.add(covertness::kl_per_use(power, sample_gain(rng, antennas, lambda)));
        }
        parts[static_cast<std::size_t>(c)] = m;
    });
    const Moments total = merge_in_order(parts);
    return TrialReport{total.n, total.mean, total.std_error(), seed};
}

TrialReport verify_covertness(const SystemConfig& cfg, double power, std::int64_t blocklength,
                              std::int64_t channel_draws, std::int64_t trials_per_draw,
                              std::uint64_t seed, const RunOptions& opts) {
    cfg.validate();
    detail::require(blocklength >= 1, "verify_covertness: blocklength must be at least 1");
    detail::require(channel_draws >= 2 && trials_per_draw >= 1,
                    "verify_covertness: need at least 2 channel draws and 1 trial per draw");
    const double budget = 2.0 * cfg.epsilon.value() * cfg.epsilon.value();
    const double spend =
        static_cast<double>(blocklength) * covertness::expected_kl(power, cfg.antennas, cfg.lambda);
    detail::require(spend <= budget * (1.0 + 1e-12),
                    "verify_covertness: L * g(P) exceeds the covertness budget 2 eps^2");

    const std::int64_t chunks = chunk_count(channel_draws, 64);
    std::vector<Moments> parts(static_cast<std::size_t>(chunks));
    for_each_chunk(chunks, opts.workers, [&](std::int64_t c) {
        Moments m;
        const std::int64_t first = c * 64;
        const std::int64_t last = std::min(channel_draws, first + 64);
        for (std::int64_t d = first; d < last; ++d) {
            RandomStream rng(seed, substream(StreamTag::channel, static_cast<std::uint64_t>(d)));
            const ChannelDraw channel = sample_channel(rng, cfg.antennas, cfg.lambda);
            const double theta = opts.threshold_scale *
                                 detector::threshold(opts.rule, power, channel.gain(), blocklength);
            const ErrorCounts counts =
                count_detection_errors(channel, power, blocklength, theta, seed,
                                       d * trials_per_draw, trials_per_draw, opts.path);
            const auto n = static_cast<double>(counts.trials);
            m.add(static_cast<double>(counts.false_alarms) / n +
                  static_cast<double>(counts.misses) / n);
        }
        parts[static_cast<std::size_t>(c)] = m;
    });
    const Moments total = merge_in_order(parts);
    return TrialReport{channel_draws * trials_per_draw, total.mean, total.std_error(), seed};
}

}  // namespace covert::montecarlo
