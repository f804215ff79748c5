#include "qmet/states.hpp"

#include "qmet/errors.hpp"

#include <algorithm>
#include <cmath>

namespace qmet {

PureState::PureState(std::vector<cplx> amplitudes, std::string basis_tag)
    : amps_(std::move(amplitudes)), basis_(std::move(basis_tag)) {
    if (amps_.empty()) throw BadParameters("PureState: dim must be >= 1");
    double norm = 0.0;
    for (const auto& a : amps_) norm += std::norm(a);
    if (std::abs(norm - 1.0) > 1e-10) throw NotNormalized("PureState: squared amplitudes sum to " + std::to_string(norm));
}

ComplexMatrix PureState::projector() const {
    ComplexMatrix m(dim());
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < dim(); ++j) m(i, j) = amps_[i] * std::conj(amps_[j]);
    return m;
}

DensityOperator::DensityOperator(ComplexMatrix matrix) : m_(std::move(matrix)) {
    if (m_.dim() == 0) throw BadParameters("DensityOperator: dim must be >= 1");
    if (!m_.is_hermitian(1e-12)) throw NotHermitian("DensityOperator: matrix not Hermitian");
    if (std::abs(m_.trace().real() - 1.0) > 1e-9 || std::abs(m_.trace().imag()) > 1e-9)
        throw NotNormalized("DensityOperator: trace != 1");
}

DensityOperator::DensityOperator(const PureState& psi) : m_(psi.projector()) {}

PureState ghz(int n) {
    if (n < 1) throw BadParameters("ghz: n must be >= 1");
    if (n > 20) throw SizeExceeded("ghz: n exceeds 20");
    std::vector<cplx> a(std::size_t{1} << n, 0.0);
    const double r = 1.0 / std::sqrt(2.0);
    a.front() = r;
    a.back() = r;
    return PureState(std::move(a));
}

PureState minmax_superposition(const SpectralGenerator& g) {
    const auto summary = summarize(g);
    if (summary.distinct_count < 2) throw DegenerateSpectrum("minmax_superposition: single distinct eigenvalue");
    // lowest basis label within each extreme eigenspace
    std::size_t lmin = g.dim(), lmax = g.dim();
    for (std::size_t b = 0; b < g.dim(); ++b) {
        if (lmin == g.dim() && std::abs(g.eigenvalue(b) - summary.min) <= 1e-9) lmin = b;
        if (lmax == g.dim() && std::abs(g.eigenvalue(b) - summary.max) <= 1e-9) lmax = b;
    }
    const double r = 1.0 / std::sqrt(2.0);
    std::vector<cplx> a(g.dim(), 0.0);
    if (g.computational_basis()) {
        a[lmin] += r;
        a[lmax] += r;
    } else {
        for (const auto& [i, v] : g.basis()[lmin].entries) a[i] += r * v;
        for (const auto& [i, v] : g.basis()[lmax].entries) a[i] += r * v;
    }
    double norm = 0.0;
    for (const auto& x : a) norm += std::norm(x);
    const double scale = 1.0 / std::sqrt(norm);
    for (auto& x : a) x *= scale;
    return PureState(std::move(a));
}

PureState coherent_number_state(double mean, double mass) {
    if (mean < 0.0) throw BadParameters("coherent_number_state: mean must be >= 0");
    if (!(mass > 0.0 && mass < 1.0)) throw BadParameters("coherent_number_state: mass must be in (0,1)");
    if (mean == 0.0) return PureState({cplx(1.0, 0.0)}, "number");

    const std::size_t hard_cap = std::size_t(mean + 40.0 * std::sqrt(mean) + 200.0);
    std::vector<double> p;
    p.reserve(std::min<std::size_t>(hard_cap + 1, 4096));
    double cum = 0.0;
    for (std::size_t k = 0; k <= hard_cap; ++k) {
        const double logp = -mean + double(k) * std::log(mean) - std::lgamma(double(k) + 1.0);
        p.push_back(std::exp(logp));
        cum += p.back();
        if (cum >= mass) break;
    }
    if (cum < mass) throw BadParameters("coherent_number_state: requested mass unreachable");
    std::vector<cplx> a(p.size());
    const double scale = 1.0 / std::sqrt(cum);
    for (std::size_t k = 0; k < p.size(); ++k) a[k] = scale * std::sqrt(p[k]);
    return PureState(std::move(a), "number");
}

PureState plus_product(int K) {
    if (K < 1) throw BadParameters("plus_product: K must be >= 1");
    if (K > 20) throw SizeExceeded("plus_product: K exceeds 20");
    const std::size_t d = std::size_t{1} << K;
    return PureState(std::vector<cplx>(d, cplx(1.0 / std::sqrt(double(d)), 0.0)));
}

PureState tensor(const std::vector<PureState>& states) {
    if (states.empty()) throw BadParameters("tensor: needs at least one factor");
    std::size_t d = 1;
    for (const auto& s : states) {
        if (d > (std::size_t{1} << 20) / s.dim()) throw SizeExceeded("tensor: product dim exceeds 2^20");
        d *= s.dim();
    }
    std::vector<cplx> a = {cplx(1.0, 0.0)};
    for (const auto& s : states) {
        std::vector<cplx> next(a.size() * s.dim());
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < s.dim(); ++j) next[i * s.dim() + j] = a[i] * s.amplitude(j);
        a = std::move(next);
    }
    return PureState(std::move(a), states.front().basis_tag());
}

DensityOperator mix(const std::vector<double>& weights, const std::vector<PureState>& states) {
    if (weights.size() != states.size() || weights.empty())
        throw BadParameters("mix: weights and states must match and be nonempty");
    double sum = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw NotNormalized("mix: negative weight");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw NotNormalized("mix: weights sum to " + std::to_string(sum));
    const std::size_t d = states.front().dim();
    ComplexMatrix m(d);
    for (std::size_t k = 0; k < states.size(); ++k) {
        if (states[k].dim() != d) throw DimensionMismatch("mix: states have mismatched dims");
        const auto& a = states[k].amplitudes();
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) m(i, j) += weights[k] * a[i] * std::conj(a[j]);
    }
    return DensityOperator(std::move(m));
}

} // namespace qmet
