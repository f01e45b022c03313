#include <doctest.h>

#include <cmath>

#include "covert/covertness.hpp"
#include "covert/errors.hpp"
#include "covert/montecarlo.hpp"
#include "covert/rate_opt.hpp"

using namespace covert;
using namespace covert::montecarlo;

namespace {

const ChannelDraw kChannel(std::vector<cdouble>{{0.9, -0.3}, {0.2, 0.5}});

}  // namespace

TEST_SUITE("montecarlo") {

TEST_CASE("binomial standard error") {
    CHECK(binomial_std_error(0.5, 100) == doctest::Approx(0.05).epsilon(1e-15));
    CHECK(binomial_std_error(0.0, 10) == 0.0);
    CHECK_THROWS_AS(binomial_std_error(0.5, 0), DomainError);
}

TEST_CASE("near-zero power is indistinguishable") {
    for (auto path : {SimulationPath::full_observation, SimulationPath::sufficient_statistic}) {
        RunOptions opts;
        opts.path = path;
        const auto [fa, md] = empirical_error_probs(kChannel, 1e-9, 20, 20000, 17, opts);
        const double se = std::hypot(fa.std_error, md.std_error);
        CHECK(std::abs(fa.estimate + md.estimate - 1.0) <= 4.0 * se + 1e-6);
    }
}

TEST_CASE("sufficient-statistic path agrees with the analytic errors") {
    for (auto rule : {detector::ThresholdRule::as_derived, detector::ThresholdRule::min_error}) {
        for (std::int64_t l : {1, 30, 400}) {
            RunOptions opts;
            opts.rule = rule;
            opts.path = SimulationPath::sufficient_statistic;
            const auto [fa, md] = empirical_error_probs(kChannel, 0.3, l, 50000, 5, opts);
            const auto exact = detector::total_error_at_optimum(0.3, kChannel.gain(), l, rule);
            INFO("L=" << l << " rule=" << detector::to_string(rule));
            CHECK(std::abs(fa.estimate - exact.p_fa.value()) <=
                  4.0 * std::max(fa.std_error, binomial_std_error(exact.p_fa, 50000)) + 1e-9);
            CHECK(std::abs(md.estimate - exact.p_md.value()) <=
                  4.0 * std::max(md.std_error, binomial_std_error(exact.p_md, 50000)) + 1e-9);
        }
    }
}

TEST_CASE("results depend only on the seed") {
    RunOptions one, three;
    three.workers = 3;
    const auto a = empirical_error_probs(kChannel, 0.5, 40, 5000, 99, one);
    const auto b = empirical_error_probs(kChannel, 0.5, 40, 5000, 99, one);
    const auto c = empirical_error_probs(kChannel, 0.5, 40, 5000, 99, three);
    const auto d = empirical_error_probs(kChannel, 0.5, 40, 5000, 100, one);
    CHECK(a.first.estimate == b.first.estimate);
    CHECK(a.second.estimate == b.second.estimate);
    CHECK(a.first.estimate == c.first.estimate);
    CHECK(a.second.estimate == c.second.estimate);
    CHECK(a.first.seed == 99);
    CHECK((a.first.estimate != d.first.estimate || a.second.estimate != d.second.estimate));

    const auto k1 = empirical_expected_kl(0.7, 3, 1.0, 50000, 4, 1);
    const auto k4 = empirical_expected_kl(0.7, 3, 1.0, 50000, 4, 4);
    CHECK(k1.estimate == k4.estimate);
    CHECK(k1.std_error == k4.std_error);

    SystemConfig cfg = SystemConfig::baseline(2, 1000, 0.3);
    const double p = *rate_opt::power_for_blocklength(100, cfg, 1e-3, 1e3);
    RunOptions s1, s2;
    s1.path = s2.path = SimulationPath::sufficient_statistic;
    s2.workers = 2;
    const auto v1 = verify_covertness(cfg, p, 100, 300, 100, 8, s1);
    const auto v2 = verify_covertness(cfg, p, 100, 300, 100, 8, s2);
    CHECK(v1.estimate == v2.estimate);
    CHECK(v1.std_error == v2.std_error);
}

TEST_CASE("trial ranges split and merge exactly") {
    const double theta = detector::optimal_threshold(0.5, kChannel.gain(), 25);
    for (auto path : {SimulationPath::full_observation, SimulationPath::sufficient_statistic}) {
        ErrorCounts parts = count_detection_errors(kChannel, 0.5, 25, theta, 3, 0, 700, path);
        parts += count_detection_errors(kChannel, 0.5, 25, theta, 3, 700, 1300, path);
        const ErrorCounts whole = count_detection_errors(kChannel, 0.5, 25, theta, 3, 0, 2000, path);
        CHECK(parts.trials == whole.trials);
        CHECK(parts.false_alarms == whole.false_alarms);
        CHECK(parts.misses == whole.misses);
    }
}

TEST_CASE("empirical divergence") {
    const auto zero = empirical_expected_kl(0.0, 4, 1.0, 10000, 1);
    CHECK(zero.estimate == 0.0);
    CHECK(zero.std_error == 0.0);
    const auto small = empirical_expected_kl(0.4, 2, 1.0, 20000, 1);
    const auto large = empirical_expected_kl(0.4, 2, 1.0, 80000, 2);
    CHECK(large.std_error / small.std_error == doctest::Approx(0.5).epsilon(0.1));
    CHECK(std::abs(large.estimate - covertness::expected_kl(0.4, 2, 1.0)) <= 4.0 * large.std_error);
    CHECK_THROWS_AS(empirical_expected_kl(0.4, 2, 1.0, 9999, 1), DomainError);
    CHECK_THROWS_AS(empirical_error_probs(kChannel, 0.4, 2, 999, 1), DomainError);
}

TEST_CASE("covertness verification") {
    const SystemConfig cfg = SystemConfig::baseline(2, 1000, 0.3);
    const double p = *rate_opt::power_for_blocklength(100, cfg, 1e-3, 1e3);
    CHECK_THROWS_AS(verify_covertness(cfg, p * 1.01, 100, 100, 100, 1), DomainError);
    CHECK_THROWS_AS(verify_covertness(cfg, p, 100, 1, 100, 1), DomainError);

    RunOptions fast;
    fast.path = SimulationPath::sufficient_statistic;
    for (auto rule : {detector::ThresholdRule::as_derived, detector::ThresholdRule::min_error}) {
        fast.rule = rule;
        const auto full_budget = verify_covertness(cfg, p, 100, 2000, 500, 21, fast);
        const auto half = verify_covertness(cfg, p, 50, 2000, 500, 21, fast);
        INFO("rule=" << detector::to_string(rule));
        CHECK(full_budget.trials == 1000000);
        CHECK(full_budget.estimate >= 0.7 - 3.0 * full_budget.std_error);
        CHECK(half.estimate >= 0.7 - 3.0 * half.std_error);
        // fewer observations cannot help the detector
        CHECK(half.estimate >= full_budget.estimate - 4.0 * std::hypot(half.std_error, full_budget.std_error));
    }
}

TEST_CASE("simulation paths agree on the covertness estimate") {
    const SystemConfig cfg = SystemConfig::baseline(2, 1000, 0.3);
    const double p = *rate_opt::power_for_blocklength(40, cfg, 1e-3, 1e3);
    RunOptions full, fast;
    full.rule = fast.rule = detector::ThresholdRule::min_error;
    fast.path = SimulationPath::sufficient_statistic;
    const auto a = verify_covertness(cfg, p, 40, 400, 500, 77, full);
    const auto b = verify_covertness(cfg, p, 40, 400, 500, 78, fast);
    CHECK(std::abs(a.estimate - b.estimate) <= 4.0 * std::hypot(a.std_error, b.std_error));
}

}  // TEST_SUITE
