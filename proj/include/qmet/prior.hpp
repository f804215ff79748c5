#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <vector>

namespace qmet {

// Prior density of the shift parameter on [0, 2pi).
class PriorDistribution {
public:
    enum class Kind { Uniform2Pi, WrappedGaussian, Gridded };

    static PriorDistribution uniform_2pi();
    // Wrapped normal centered at pi (the center is irrelevant for every bound;
    // it is fixed so sampling is deterministic given sigma).
    static PriorDistribution wrapped_gaussian(double sigma);
    // Piecewise-linear density on uniformly spaced samples over [lo, hi),
    // required to integrate to 1 within 1e-6.
    static PriorDistribution gridded(double lo, double hi, std::vector<double> density);

    Kind kind() const { return kind_; }
    double sigma() const { return sigma_; }

    // Differential entropy H(Phi) in nats (ln 2pi exactly for the uniform prior).
    double entropy() const { return entropy_; }

    double sample(std::mt19937_64& rng) const;

    // Density evaluated on the n-point uniform grid over [0, 2pi).
    std::vector<double> grid_density(std::size_t n) const;

    std::string describe() const;

private:
    PriorDistribution() = default;

    Kind kind_ = Kind::Uniform2Pi;
    double sigma_ = 0.0;
    double lo_ = 0.0, hi_ = 0.0;
    std::vector<double> density_;
    std::vector<double> cdf_; // per-sample cumulative, for gridded sampling
    double entropy_ = 0.0;

    double density_at(double phi) const;
};

} // namespace qmet
