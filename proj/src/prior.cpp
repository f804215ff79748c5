#include "qmet/prior.hpp"

#include "qmet/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qmet {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_2pi(double x) {
    double y = std::fmod(x, kTwoPi);
    if (y < 0.0) y += kTwoPi;
    return y;
}

double wrapped_gaussian_density(double phi, double mu, double sigma) {
    const int wraps = std::max(1, int(std::ceil((8.0 * sigma + kTwoPi) / kTwoPi)));
    double p = 0.0;
    for (int k = -wraps; k <= wraps; ++k) {
        const double x = (phi - mu + kTwoPi * k) / sigma;
        p += std::exp(-0.5 * x * x);
    }
    return p / (sigma * std::sqrt(kTwoPi));
}

} // namespace

PriorDistribution PriorDistribution::uniform_2pi() {
    PriorDistribution p;
    p.kind_ = Kind::Uniform2Pi;
    p.entropy_ = std::log(kTwoPi);
    return p;
}

PriorDistribution PriorDistribution::wrapped_gaussian(double sigma) {
    if (!(sigma > 0.0)) throw BadParameters("wrapped_gaussian: sigma must be > 0");
    PriorDistribution p;
    p.kind_ = Kind::WrappedGaussian;
    p.sigma_ = sigma;
    // Periodic trapezoid rule is spectrally accurate for the smooth wrapped
    // density; scale the grid so narrow priors stay resolved.
    std::size_t n = 1 << 16;
    while (n < std::size_t(64.0 * kTwoPi / sigma) && n < (std::size_t{1} << 22)) n <<= 1;
    const double h = kTwoPi / double(n);
    double hsum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double rho = wrapped_gaussian_density(double(i) * h, std::numbers::pi, sigma);
        if (rho > 0.0) hsum -= rho * std::log(rho);
    }
    p.entropy_ = hsum * h;
    return p;
}

PriorDistribution PriorDistribution::gridded(double lo, double hi, std::vector<double> density) {
    if (!(hi > lo) || lo < 0.0 || hi > kTwoPi) throw BadParameters("gridded prior: support must lie within [0, 2pi)");
    if (density.size() < 2) throw BadParameters("gridded prior: need at least 2 samples");
    for (double d : density)
        if (!(d >= 0.0)) throw BadParameters("gridded prior: density must be >= 0");
    const double h = (hi - lo) / double(density.size() - 1);
    double integral = 0.0;
    for (std::size_t i = 0; i + 1 < density.size(); ++i) integral += 0.5 * (density[i] + density[i + 1]) * h;
    if (std::abs(integral - 1.0) > 1e-6) throw NotNormalized("gridded prior integrates to " + std::to_string(integral));

    PriorDistribution p;
    p.kind_ = Kind::Gridded;
    p.lo_ = lo;
    p.hi_ = hi;
    p.density_ = std::move(density);
    p.cdf_.resize(p.density_.size());
    p.cdf_[0] = 0.0;
    for (std::size_t i = 1; i < p.density_.size(); ++i)
        p.cdf_[i] = p.cdf_[i - 1] + 0.5 * (p.density_[i - 1] + p.density_[i]) * h;
    double hsum = 0.0;
    for (std::size_t i = 0; i + 1 < p.density_.size(); ++i) {
        const double a = p.density_[i], b = p.density_[i + 1];
        const double fa = a > 0.0 ? -a * std::log(a) : 0.0;
        const double fb = b > 0.0 ? -b * std::log(b) : 0.0;
        hsum += 0.5 * (fa + fb) * h;
    }
    p.entropy_ = hsum;
    return p;
}

double PriorDistribution::density_at(double phi) const {
    switch (kind_) {
        case Kind::Uniform2Pi:
            return 1.0 / kTwoPi;
        case Kind::WrappedGaussian:
            return wrapped_gaussian_density(phi, std::numbers::pi, sigma_);
        case Kind::Gridded: {
            if (phi < lo_ || phi >= hi_) return 0.0;
            const double h = (hi_ - lo_) / double(density_.size() - 1);
            const double t = (phi - lo_) / h;
            const std::size_t i = std::min(std::size_t(t), density_.size() - 2);
            const double f = t - double(i);
            return density_[i] * (1.0 - f) + density_[i + 1] * f;
        }
    }
    return 0.0;
}

double PriorDistribution::sample(std::mt19937_64& rng) const {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    switch (kind_) {
        case Kind::Uniform2Pi:
            return unit(rng) * kTwoPi;
        case Kind::WrappedGaussian: {
            std::normal_distribution<double> normal(std::numbers::pi, sigma_);
            return wrap_2pi(normal(rng));
        }
        case Kind::Gridded: {
            const double u = unit(rng) * cdf_.back();
            const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
            const std::size_t i = std::min<std::size_t>(std::max<std::ptrdiff_t>(it - cdf_.begin() - 1, 0), cdf_.size() - 2);
            const double span = cdf_[i + 1] - cdf_[i];
            const double f = span > 0.0 ? (u - cdf_[i]) / span : 0.5;
            const double h = (hi_ - lo_) / double(density_.size() - 1);
            return lo_ + (double(i) + f) * h;
        }
    }
    return 0.0;
}

std::vector<double> PriorDistribution::grid_density(std::size_t n) const {
    std::vector<double> d(n);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        d[i] = density_at(double(i) * kTwoPi / double(n));
        sum += d[i];
    }
    if (sum <= 0.0) throw NotNormalized("prior density vanishes on grid");
    for (double& x : d) x /= sum;
    return d;
}

std::string PriorDistribution::describe() const {
    switch (kind_) {
        case Kind::Uniform2Pi:
            return "uniform";
        case Kind::WrappedGaussian:
            return "gauss:" + std::to_string(sigma_);
        case Kind::Gridded:
            return "gridded[" + std::to_string(lo_) + "," + std::to_string(hi_) + ")";
    }
    return "?";
}

} // namespace qmet
