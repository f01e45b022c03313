#include "covert/rate_opt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "covert/covertness.hpp"
#include "covert/errors.hpp"

namespace covert::rate_opt {
namespace {

constexpr double kBudgetSlack = 1e-12;

double kl_cap(const SystemConfig& cfg) {
    return 2.0 * cfg.epsilon.value() * cfg.epsilon.value();
}

double expected_kl(double power, const SystemConfig& cfg) {
    return covertness::expected_kl(power, cfg.antennas, cfg.lambda);
}

std::int64_t floor_cap(double cap, std::int64_t max_blocklength) {
    const double bounded = std::min(static_cast<double>(max_blocklength), cap);
    return static_cast<std::int64_t>(std::floor(bounded));
}

// Design point with g(P) already known.
DesignPoint evaluate(double power, std::int64_t blocklength, double kl, const SystemConfig& cfg) {
    DesignPoint dp;
    dp.power = power;
    dp.blocklength = blocklength;
    if (blocklength < 1) return dp;
    dp.rate = fbl_rate(power, cfg.gain_ab, blocklength, cfg.delta);
    const bool within_delay = blocklength <= cfg.max_blocklength;
    const bool within_budget =
        static_cast<double>(blocklength) * kl <= kl_cap(cfg) * (1.0 + kBudgetSlack);
    dp.feasible = within_delay && within_budget && dp.rate >= 0.0;
    if (dp.feasible) {
        dp.throughput = static_cast<double>(blocklength) * dp.rate * (1.0 - cfg.delta.value());
    }
    return dp;
}

DesignPoint evaluate_capped(double power, const SystemConfig& cfg) {
    const double kl = expected_kl(power, cfg);
    const double cap = kl > 0.0 ? kl_cap(cfg) / kl : std::numeric_limits<double>::infinity();
    return evaluate(power, floor_cap(cap, cfg.max_blocklength), kl, cfg);
}

// Continuous relaxation of the capped objective, maximized by golden section.
double relaxed_objective(double power, const SystemConfig& cfg) {
    const double kl = expected_kl(power, cfg);
    const double cap = kl > 0.0 ? kl_cap(cfg) / kl : std::numeric_limits<double>::infinity();
    const double blocklength = std::min(static_cast<double>(cfg.max_blocklength), cap);
    if (blocklength < 1.0) return 0.0;
    const double r = fbl_rate_relaxed(power, cfg.gain_ab, blocklength, cfg.delta);
    if (r < 0.0) return 0.0;
    return blocklength * r * (1.0 - cfg.delta.value());
}

double golden_section_max(double lo, double hi, double rel_tol, const SystemConfig& cfg) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    // Search in log-power; the bracket spans at most a few grid cells.
    double a = std::log(lo);
    double b = std::log(hi);
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = relaxed_objective(std::exp(c), cfg);
    double fd = relaxed_objective(std::exp(d), cfg);
    while (std::expm1(b - a) > rel_tol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = relaxed_objective(std::exp(c), cfg);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = relaxed_objective(std::exp(d), cfg);
        }
    }
    return std::exp(fc >= fd ? c : d);
}

bool better(const DesignPoint& candidate, const DesignPoint& incumbent) {
    return candidate.throughput > incumbent.throughput;
}

// When nothing is feasible, report the grid point closest to feasibility:
// the largest rate among points with a nonzero covert blocklength.
DesignPoint closest_infeasible(const std::vector<DesignPoint>& grid) {
    DesignPoint pick = grid.front();
    bool found = false;
    for (const auto& dp : grid) {
        if (dp.blocklength < 1) continue;
        if (!found || dp.rate > pick.rate) {
            pick = dp;
            found = true;
        }
    }
    pick.throughput = 0.0;
    pick.feasible = false;
    return pick;
}

void check_options(const SearchOptions& opts) {
    detail::require(opts.power_min > 0.0 && opts.power_max > opts.power_min,
                    "search bracket must satisfy 0 < power_min < power_max");
    detail::require(opts.grid_points >= 3, "power grid needs at least 3 points");
    detail::require(opts.golden_tolerance > 0.0, "golden-section tolerance must be positive");
}

}  // namespace

double fbl_rate_relaxed(double power, double gain_ab, double blocklength, Probability delta) {
    detail::require(power > 0.0 && std::isfinite(power), "fbl_rate: power must be positive");
    detail::require(gain_ab >= 0.0 && std::isfinite(gain_ab), "fbl_rate: gain must be nonnegative");
    detail::require(blocklength >= 1.0, "fbl_rate: blocklength must be at least 1");
    detail::require(delta.value() > 0.0 && delta.value() < 0.5, "fbl_rate: delta must lie in (0, 0.5)");
    const double snr = power * gain_ab;
    // 1 - (1 + snr)^-2 written without cancellation
    const double dispersion = snr * (2.0 + snr) / ((1.0 + snr) * (1.0 + snr));
    const double capacity = std::log1p(snr) / std::numbers::ln2;
    return capacity -
           std::sqrt(dispersion / blocklength) * specfun::q_inv(delta) / std::numbers::ln2;
}

double fbl_rate(double power, double gain_ab, std::int64_t blocklength, Probability delta) {
    detail::require(blocklength >= 1, "fbl_rate: blocklength must be at least 1");
    return fbl_rate_relaxed(power, gain_ab, static_cast<double>(blocklength), delta);
}

std::int64_t min_blocklength(double power, double gain_ab, Probability delta) {
    const double snr = power * gain_ab;
    detail::require(snr > 0.0 && std::isfinite(snr),
                    "min_blocklength: P_a * gain_ab must be positive (rate is never nonnegative)");
    detail::require(delta.value() > 0.0 && delta.value() < 0.5,
                    "min_blocklength: delta must lie in (0, 0.5)");
    const double q = specfun::q_inv(delta);
    const double dispersion = snr * (2.0 + snr) / ((1.0 + snr) * (1.0 + snr));
    const double log_term = std::log1p(snr);
    const double estimate = dispersion * q * q / (log_term * log_term);
    constexpr double kLargest = 9.0e18;
    if (!(estimate < kLargest)) return std::numeric_limits<std::int64_t>::max();

    auto length = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(estimate)));
    // The closed form is exact in real arithmetic; settle rounding at the boundary.
    while (length > 1 && fbl_rate(power, gain_ab, length - 1, delta) >= 0.0) --length;
    while (fbl_rate(power, gain_ab, length, delta) < 0.0) ++length;
    return length;
}

double blocklength_cap(double power, const SystemConfig& cfg) {
    const double kl = expected_kl(power, cfg);
    return kl > 0.0 ? kl_cap(cfg) / kl : std::numeric_limits<double>::infinity();
}

std::int64_t optimal_blocklength(double power, const SystemConfig& cfg) {
    return floor_cap(blocklength_cap(power, cfg), cfg.max_blocklength);
}

DesignPoint throughput(double power, std::int64_t blocklength, const SystemConfig& cfg) {
    detail::require(blocklength >= 0, "throughput: blocklength must be nonnegative");
    if (blocklength == 0) {
        DesignPoint dp;
        dp.power = power;
        return dp;
    }
    return evaluate(power, blocklength, expected_kl(power, cfg), cfg);
}

std::optional<double> power_for_blocklength(std::int64_t blocklength, const SystemConfig& cfg,
                                            double lo, double hi, double rel_tol) {
    detail::require(blocklength >= 1, "power_for_blocklength: blocklength must be at least 1");
    detail::require(lo > 0.0 && hi > lo, "power_for_blocklength: invalid bracket");
    const double target = kl_cap(cfg) / static_cast<double>(blocklength);
    if (expected_kl(lo, cfg) > target) return std::nullopt;
    if (expected_kl(hi, cfg) <= target) return hi;
    // g is strictly increasing in P: keep g(lo) <= target < g(hi).
    double a = std::log(lo);
    double b = std::log(hi);
    while (std::expm1(b - a) > rel_tol) {
        const double mid = 0.5 * (a + b);
        if (expected_kl(std::exp(mid), cfg) <= target) {
            a = mid;
        } else {
            b = mid;
        }
    }
    return std::exp(a);
}

std::vector<double> log_grid(double lo, double hi, int points) {
    detail::require(lo > 0.0 && hi >= lo && points >= 1, "log_grid: invalid range");
    std::vector<double> grid(static_cast<std::size_t>(points));
    if (points == 1) {
        grid[0] = lo;
        return grid;
    }
    const double a = std::log10(lo);
    const double step = (std::log10(hi) - a) / (points - 1);
    for (int i = 0; i < points; ++i) grid[static_cast<std::size_t>(i)] = std::pow(10.0, a + step * i);
    grid.back() = hi;
    return grid;
}

OptimizationResult optimize_power(const SystemConfig& cfg, const SearchOptions& opts) {
    cfg.validate();
    check_options(opts);

    const auto powers = log_grid(opts.power_min, opts.power_max, opts.grid_points);
    std::vector<DesignPoint> grid;
    grid.reserve(powers.size());
    OptimizationResult result;
    result.power_grid_trace.reserve(powers.size());
    std::size_t best_index = 0;
    for (std::size_t i = 0; i < powers.size(); ++i) {
        grid.push_back(evaluate_capped(powers[i], cfg));
        result.power_grid_trace.push_back({grid[i].power, grid[i].blocklength, grid[i].throughput});
        if (better(grid[i], grid[best_index])) best_index = i;
    }

    if (grid[best_index].throughput <= 0.0) {
        result.best = closest_infeasible(grid);
        result.covertness_binding =
            blocklength_cap(result.best.power, cfg) < static_cast<double>(cfg.max_blocklength);
        return result;
    }

    DesignPoint best = grid[best_index];
    const double lo = powers[best_index == 0 ? 0 : best_index - 1];
    const double hi = powers[std::min(best_index + 1, powers.size() - 1)];
    const double relaxed_power = golden_section_max(lo, hi, opts.golden_tolerance, cfg);
    if (auto dp = evaluate_capped(relaxed_power, cfg); better(dp, best)) best = dp;

    // Along each step of the floored cap the throughput rises with P, so the
    // best point for a given integer L sits where the budget is exactly met.
    const double relaxed_cap = std::min(static_cast<double>(cfg.max_blocklength),
                                        blocklength_cap(relaxed_power, cfg));
    const auto base = static_cast<std::int64_t>(std::floor(relaxed_cap));
    for (std::int64_t l = base - 1; l <= base + 2; ++l) {
        if (l < 1 || l > cfg.max_blocklength) continue;
        const auto corner = power_for_blocklength(l, cfg, opts.power_min, opts.power_max);
        if (!corner) continue;
        if (auto dp = evaluate_capped(*corner, cfg); better(dp, best)) best = dp;
    }

    result.best = best;
    result.covertness_binding =
        blocklength_cap(best.power, cfg) < static_cast<double>(cfg.max_blocklength);
    return result;
}

OptimizationResult optimize_fixed_blocklength(const SystemConfig& cfg,
                                              std::int64_t fixed_blocklength,
                                              const SearchOptions& opts) {
    cfg.validate();
    check_options(opts);
    detail::require(fixed_blocklength >= 1 && fixed_blocklength <= cfg.max_blocklength,
                    "optimize_fixed_blocklength: L must lie in [1, L_max]");

    // Budget root on a wide bracket, then clipped to the common power range.
    constexpr double kRootLo = 1e-6;
    constexpr double kRootHi = 1e6;
    const auto cap_power = power_for_blocklength(fixed_blocklength, cfg, kRootLo, kRootHi);

    OptimizationResult result;
    const auto powers = log_grid(opts.power_min, opts.power_max, opts.grid_points);
    result.power_grid_trace.reserve(powers.size());
    for (double p : powers) {
        const bool admissible = cap_power && p <= *cap_power;
        const DesignPoint dp =
            admissible ? throughput(p, fixed_blocklength, cfg) : DesignPoint{p, fixed_blocklength};
        result.power_grid_trace.push_back({p, fixed_blocklength, dp.throughput});
    }

    if (!cap_power) {
        result.best = DesignPoint{kRootLo, fixed_blocklength};
        result.best.rate = fbl_rate(kRootLo, cfg.gain_ab, fixed_blocklength, cfg.delta);
        result.covertness_binding = true;
        return result;
    }
    const double power = std::min(*cap_power, opts.power_max);
    // Throughput rises with P at fixed L, so the admissible maximum is the cap.
    result.best = throughput(power, fixed_blocklength, cfg);
    result.covertness_binding = *cap_power <= opts.power_max;
    return result;
}

std::vector<Figure1Row> sweep_figure1(const SystemConfig& base, const std::vector<double>& powers,
                                      const std::vector<Figure1Variant>& variants) {
    detail::require(!powers.empty(), "sweep_figure1: power grid is empty");
    detail::require(!variants.empty(), "sweep_figure1: no (L_max, epsilon) variants");
    base.validate();
    std::vector<SystemConfig> configs;
    for (const auto& v : variants) {
        SystemConfig cfg = base;
        cfg.max_blocklength = v.max_blocklength;
        cfg.epsilon = Probability(v.epsilon);
        cfg.validate();
        configs.push_back(cfg);
    }
    std::vector<Figure1Row> rows;
    rows.reserve(powers.size() * variants.size());
    for (std::size_t vi = 0; vi < variants.size(); ++vi) {
        for (double p : powers) {
            rows.push_back({p, variants[vi].max_blocklength, variants[vi].epsilon,
                            optimal_blocklength(p, configs[vi])});
        }
    }
    return rows;
}

const char* to_string(BlocklengthMode mode) noexcept {
    return mode == BlocklengthMode::optimal ? "optimal-L" : "fixed-L";
}

std::vector<Figure2Row> sweep_figure2(const SystemConfig& base,
                                      const std::vector<std::int64_t>& antennas,
                                      const std::vector<double>& epsilons,
                                      std::optional<std::int64_t> fixed_blocklength,
                                      const SearchOptions& opts) {
    detail::require(!antennas.empty(), "sweep_figure2: antenna list is empty");
    detail::require(!epsilons.empty(), "sweep_figure2: epsilon list is empty");
    base.validate();
    std::vector<Figure2Row> rows;
    for (double eps : epsilons) {
        for (std::int64_t m : antennas) {
            SystemConfig cfg = base;
            cfg.antennas = m;
            cfg.epsilon = Probability(eps);
            cfg.validate();
            const auto opt = optimize_power(cfg, opts);
            rows.push_back({m, eps, BlocklengthMode::optimal, opt.best.power, opt.best.blocklength,
                            opt.best.throughput});
            if (fixed_blocklength) {
                const auto fixed = optimize_fixed_blocklength(cfg, *fixed_blocklength, opts);
                rows.push_back({m, eps, BlocklengthMode::fixed, fixed.best.power,
                                fixed.best.blocklength, fixed.best.throughput});
            }
        }
    }
    return rows;
}

}  // namespace covert::rate_opt
