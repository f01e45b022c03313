#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "covert/model.hpp"

namespace covert::rate_opt {

/// One (power, blocklength) choice and what it delivers to the receiver.
struct DesignPoint {
    double power = 0.0;
    std::int64_t blocklength = 0;
    double rate = 0.0;        // bits per channel use; may be negative when infeasible
    double throughput = 0.0;  // L * rate * (1 - delta) when feasible, else 0
    bool feasible = false;
};

struct TracePoint {
    double power = 0.0;
    std::int64_t blocklength = 0;
    double throughput = 0.0;
};

struct OptimizationResult {
    DesignPoint best;
    std::vector<TracePoint> power_grid_trace;
    bool covertness_binding = false;  // 2 eps^2 / g(P*) < L_max at the optimum
};

/// Power search settings. Defaults: 200 log-spaced points on [1e-3, 1e3],
/// golden-section refinement to 1e-6 relative bracket width.
struct SearchOptions {
    double power_min = 1e-3;
    double power_max = 1e3;
    int grid_points = 200;
    double golden_tolerance = 1e-6;
};

/// Normal-approximation coding rate log2(1 + gamma) - sqrt(V / L) Q^{-1}(delta) / ln 2.
double fbl_rate(double power, double gain_ab, std::int64_t blocklength, Probability delta);

/// Same expression with a real-valued blocklength (continuous relaxation).
double fbl_rate_relaxed(double power, double gain_ab, double blocklength, Probability delta);

/// Smallest L with fbl_rate >= 0. Saturates at INT64_MAX when the floor is astronomically large.
std::int64_t min_blocklength(double power, double gain_ab, Probability delta);

/// 2 eps^2 / g(P), the real-valued covertness cap on L.
double blocklength_cap(double power, const SystemConfig& cfg);

/// floor(min(L_max, 2 eps^2 / g(P))).
std::int64_t optimal_blocklength(double power, const SystemConfig& cfg);

/// Design point at (P, L). Feasible iff 1 <= L <= L_max, L g(P) <= 2 eps^2 and rate >= 0.
DesignPoint throughput(double power, std::int64_t blocklength, const SystemConfig& cfg);

/// Largest power in [lo, hi] whose covertness cap still admits `blocklength`
/// symbols, by log-space bisection to `rel_tol`. std::nullopt when even `lo`
/// exceeds the budget; `hi` when the budget never binds.
std::optional<double> power_for_blocklength(std::int64_t blocklength, const SystemConfig& cfg,
                                            double lo, double hi, double rel_tol = 1e-10);

/// Jointly optimal (P, L): L follows the covertness/delay cap, P by grid
/// search plus golden-section refinement and exact integer-L corner checks.
OptimizationResult optimize_power(const SystemConfig& cfg, const SearchOptions& opts = {});

/// Best power with L pinned to `fixed_blocklength`.
OptimizationResult optimize_fixed_blocklength(const SystemConfig& cfg,
                                              std::int64_t fixed_blocklength,
                                              const SearchOptions& opts = {});

struct Figure1Variant {
    std::int64_t max_blocklength;
    double epsilon;
};

struct Figure1Row {
    double power;
    std::int64_t max_blocklength;
    double epsilon;
    std::int64_t optimal_blocklength;
};

std::vector<Figure1Row> sweep_figure1(const SystemConfig& base, const std::vector<double>& powers,
                                      const std::vector<Figure1Variant>& variants);

enum class BlocklengthMode { optimal, fixed };
const char* to_string(BlocklengthMode mode) noexcept;

struct Figure2Row {
    std::int64_t antennas;
    double epsilon;
    BlocklengthMode mode;
    double power;
    std::int64_t blocklength;
    double throughput;
};

/// Rows ordered by epsilon, then M, with the optimal-L row before the fixed-L row.
std::vector<Figure2Row> sweep_figure2(const SystemConfig& base,
                                      const std::vector<std::int64_t>& antennas,
                                      const std::vector<double>& epsilons,
                                      std::optional<std::int64_t> fixed_blocklength,
                                      const SearchOptions& opts = {});

/// Log-spaced grid of `points` values on [lo, hi] (inclusive).
std::vector<double> log_grid(double lo, double hi, int points);

}  // namespace covert::rate_opt
