#include "covert/model.hpp"

#include <boost/random/normal_distribution.hpp>
#include <cmath>

#include "covert/errors.hpp"

namespace covert {

void SystemConfig::validate() const {
    detail::require(antennas >= 1, "M must be at least 1");
    detail::require(lambda > 0.0 && std::isfinite(lambda), "lambda must be positive and finite");
    detail::require(max_blocklength >= 1, "L_max must be at least 1");
    detail::require(delta.value() > 0.0 && delta.value() < 0.5, "delta must lie in (0, 0.5)");
    detail::require(epsilon.value() > 0.0 && epsilon.value() < 1.0, "epsilon must lie in (0, 1)");
    detail::require(gain_ab >= 0.0 && std::isfinite(gain_ab),
                    "gain_ab must be nonnegative and finite");
}

SystemConfig SystemConfig::baseline(std::int64_t antennas, std::int64_t max_blocklength,
                                    double epsilon) {
    SystemConfig cfg;
    cfg.antennas = antennas;
    cfg.lambda = 1.0;
    cfg.max_blocklength = max_blocklength;
    cfg.delta = Probability(0.1);
    cfg.epsilon = Probability(epsilon);
    cfg.gain_ab = 1.0;
    cfg.validate();
    return cfg;
}

ChannelDraw::ChannelDraw(std::vector<cdouble> coefficients) : h_(std::move(coefficients)) {
    detail::require(!h_.empty(), "channel needs at least one antenna");
    double g = 0.0;
    for (const auto& c : h_) g += std::norm(c);
    gain_ = g;
}

ObservationMatrix::ObservationMatrix(std::int64_t rows, std::int64_t cols, Hypothesis truth)
    : rows_(rows), cols_(cols), truth_(truth) {
    detail::require(rows >= 1 && cols >= 1, "observation matrix dimensions must be positive");
    data_.resize(static_cast<std::size_t>(rows * cols));
}

cdouble complex_gaussian(RandomStream& rng, double variance) {
    boost::random::normal_distribution<double> normal(0.0, std::sqrt(0.5 * variance));
    const double re = normal(rng);
    const double im = normal(rng);
    return {re, im};
}

ChannelDraw sample_channel(RandomStream& rng, std::int64_t antennas, double lambda) {
    detail::require(antennas >= 1, "sample_channel: M must be at least 1");
    detail::require(lambda > 0.0 && std::isfinite(lambda), "sample_channel: lambda must be positive");
    boost::random::normal_distribution<double> normal(0.0, std::sqrt(0.5 / lambda));
    std::vector<cdouble> h(static_cast<std::size_t>(antennas));
    for (auto& c : h) {
        const double re = normal(rng);
        const double im = normal(rng);
        c = {re, im};
    }
    return ChannelDraw(std::move(h));
}

double sample_gain(RandomStream& rng, std::int64_t antennas, double lambda) {
    detail::require(antennas >= 1, "sample_gain: M must be at least 1");
    detail::require(lambda > 0.0 && std::isfinite(lambda), "sample_gain: lambda must be positive");
    boost::random::normal_distribution<double> normal(0.0, std::sqrt(0.5 / lambda));
    double gain = 0.0;
    for (std::int64_t m = 0; m < antennas; ++m) {
        const double re = normal(rng);
        const double im = normal(rng);
        gain += std::norm(cdouble{re, im});
    }
    return gain;
}

void fill_observations(RandomStream& rng, const ChannelDraw& channel, double power,
                       Hypothesis hypothesis, std::span<cdouble> out) {
    detail::require(power >= 0.0 && std::isfinite(power), "observations: power must be nonnegative");
    const auto h = channel.coefficients();
    const std::size_t m = h.size();
    detail::require(!out.empty() && out.size() % m == 0, "observations: buffer size mismatch");

    boost::random::normal_distribution<double> noise(0.0, std::sqrt(0.5));
    const bool transmit = hypothesis == Hypothesis::h1;
    boost::random::normal_distribution<double> symbol(0.0, std::sqrt(0.5 * power));

    for (std::size_t col = 0; col < out.size(); col += m) {
        cdouble x{0.0, 0.0};
        if (transmit) {
            const double re = symbol(rng);
            const double im = symbol(rng);
            x = {re, im};
        }
        for (std::size_t row = 0; row < m; ++row) {
            const double re = noise(rng);
            const double im = noise(rng);
            // written out to keep the complex product inline
            out[col + row] = cdouble{re + h[row].real() * x.real() - h[row].imag() * x.imag(),
                                     im + h[row].real() * x.imag() + h[row].imag() * x.real()};
        }
    }
}

ObservationMatrix generate_observations(RandomStream& rng, const ChannelDraw& channel,
                                        double power, std::int64_t blocklength,
                                        Hypothesis hypothesis) {
    detail::require(blocklength >= 1, "observations: blocklength must be at least 1");
    ObservationMatrix y(channel.antennas(), blocklength, hypothesis);
    fill_observations(rng, channel, power, hypothesis, y.data());
    return y;
}

}  // namespace covert
