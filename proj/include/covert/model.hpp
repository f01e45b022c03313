#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "covert/rng.hpp"
#include "covert/specfun.hpp"

namespace covert {

using cdouble = std::complex<double>;

/// Scenario parameters shared by every analytic and simulated computation.
struct SystemConfig {
    std::int64_t antennas = 1;          // M, adversary antenna count
    double lambda = 1.0;                // inverse mean of each |h_aw|^2 entry
    std::int64_t max_blocklength = 1;   // L_max, symbols per slot
    Probability delta{0.1};             // decoding error target, < 0.5
    Probability epsilon{0.1};           // covertness level
    double gain_ab = 1.0;               // |h_ab|^2

    /// Throws DomainError naming the first offending field.
    void validate() const;

    /// delta = 0.1, lambda = 1, |h_ab|^2 = 1 with the given M, L_max, epsilon.
    static SystemConfig baseline(std::int64_t antennas, std::int64_t max_blocklength,
                                 double epsilon);
};

enum class Hypothesis { h0, h1 };

/// One quasi-static realization of the transmitter-to-adversary channel.
class ChannelDraw {
public:
    explicit ChannelDraw(std::vector<cdouble> coefficients);

    [[nodiscard]] std::span<const cdouble> coefficients() const noexcept { return h_; }
    [[nodiscard]] double gain() const noexcept { return gain_; }
    [[nodiscard]] std::int64_t antennas() const noexcept {
        return static_cast<std::int64_t>(h_.size());
    }

private:
    std::vector<cdouble> h_;
    double gain_;
};

/// M x L matrix of adversary samples, column-major (one column per symbol).
class ObservationMatrix {
public:
    ObservationMatrix(std::int64_t rows, std::int64_t cols, Hypothesis truth);

    [[nodiscard]] std::int64_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::int64_t cols() const noexcept { return cols_; }
    [[nodiscard]] Hypothesis truth() const noexcept { return truth_; }

    [[nodiscard]] std::span<const cdouble> data() const noexcept { return data_; }
    [[nodiscard]] std::span<cdouble> data() noexcept { return data_; }
    [[nodiscard]] std::span<const cdouble> column(std::int64_t l) const noexcept {
        return std::span<const cdouble>(data_).subspan(static_cast<std::size_t>(l * rows_),
                                                       static_cast<std::size_t>(rows_));
    }
    cdouble& operator()(std::int64_t m, std::int64_t l) noexcept {
        return data_[static_cast<std::size_t>(l * rows_ + m)];
    }
    cdouble operator()(std::int64_t m, std::int64_t l) const noexcept {
        return data_[static_cast<std::size_t>(l * rows_ + m)];
    }

private:
    std::int64_t rows_;
    std::int64_t cols_;
    Hypothesis truth_;
    std::vector<cdouble> data_;
};

/// Circularly-symmetric CN(0, variance): real and imaginary parts each carry variance/2.
cdouble complex_gaussian(RandomStream& rng, double variance);

/// Rayleigh channel: M i.i.d. CN(0, 1/lambda) coefficients.
ChannelDraw sample_channel(RandomStream& rng, std::int64_t antennas, double lambda);

/// ||h||^2 of a fresh channel, consuming exactly the draws sample_channel
/// would (same stream, same value) without materializing the coefficients.
double sample_gain(RandomStream& rng, std::int64_t antennas, double lambda);

/// Adversary observations of L symbols under the given hypothesis.
ObservationMatrix generate_observations(RandomStream& rng, const ChannelDraw& channel,
                                        double power, std::int64_t blocklength,
                                        Hypothesis hypothesis);

/// In-place variant for hot loops; `out` holds M * L samples, column-major.
void fill_observations(RandomStream& rng, const ChannelDraw& channel, double power,
                       Hypothesis hypothesis, std::span<cdouble> out);

}  // namespace covert
