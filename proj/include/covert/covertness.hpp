#pragma once

#include <cstdint>

#include "covert/specfun.hpp"

namespace covert::covertness {

/// KL budget bookkeeping for one transmit power.
struct CovertnessBudget {
    Probability epsilon;
    double kl_cap = 0.0;               // 2 eps^2
    double expected_kl_per_use = 0.0;  // g(P_a)
    double blocklength_cap = 0.0;      // kl_cap / g(P_a), +inf when g == 0
};

/// Per-symbol divergence D(P0 || P1) = ln(1 + gP) - gP / (1 + gP).
double kl_per_use(double power, double gain);

/// 1 - sqrt(L * kl / 2). Negative values mean the bound is vacuous and are
/// returned as-is.
double pinsker_lower_bound(std::int64_t blocklength, double kl_per_use);

/// g(P_a) = E[kl_per_use(P_a, h)] for h ~ Erlang(M, lambda), by adaptive
/// Gauss-Kronrod quadrature on [0, (M + 40 sqrt(M)) / lambda].
/// Throws NumericError when the quadrature error estimate misses 1e-10 relative.
double expected_kl(double power, std::int64_t antennas, double lambda);

/// Single-antenna closed form -[1 + (1 + lambda/P) e^{lambda/P} Ei(-lambda/P)].
double f_closed_form(double power, double lambda);

CovertnessBudget make_budget(Probability epsilon, double expected_kl_per_use);

}  // namespace covert::covertness
