#include "qmet/asymmetry.hpp"

#include "qmet/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qmet {

namespace {

void check_dims(std::size_t a, std::size_t b, const char* what) {
    if (a != b) throw DimensionMismatch(std::string(what) + ": state dim " + std::to_string(a) +
                                        " vs generator dim " + std::to_string(b));
}

// Clamp density-operator eigenvalues per the round-off rule and return the
// probability vector.
std::vector<double> clamped_spectrum(const std::vector<double>& vals) {
    std::vector<double> p;
    p.reserve(vals.size());
    for (double v : vals) {
        if (v < -1e-10) throw NegativeEigenvalue("density operator eigenvalue " + std::to_string(v));
        p.push_back(std::max(v, 0.0));
    }
    return p;
}

// <v_b|rho|v_b> for every basis label of G.
std::vector<double> basis_probabilities(const DensityOperator& rho, const SpectralGenerator& g) {
    const std::size_t d = g.dim();
    std::vector<double> p(d);
    const auto& m = rho.matrix();
    if (g.computational_basis()) {
        for (std::size_t b = 0; b < d; ++b) p[b] = m(b, b).real();
    } else {
        for (std::size_t b = 0; b < d; ++b) {
            cplx acc = 0.0;
            const auto& col = g.basis()[b].entries;
            for (const auto& [i, vi] : col)
                for (const auto& [j, vj] : col) acc += std::conj(vi) * m(i, j) * vj;
            p[b] = acc.real();
        }
    }
    return p;
}

// |<v_b|psi>|^2 for every basis label of G.
std::vector<double> basis_probabilities(const PureState& psi, const SpectralGenerator& g) {
    const std::size_t d = g.dim();
    std::vector<double> p(d);
    if (g.computational_basis()) {
        for (std::size_t b = 0; b < d; ++b) p[b] = std::norm(psi.amplitude(b));
    } else {
        for (std::size_t b = 0; b < d; ++b) {
            cplx acc = 0.0;
            for (const auto& [i, v] : g.basis()[b].entries) acc += std::conj(v) * psi.amplitude(i);
            p[b] = std::norm(acc);
        }
    }
    return p;
}

template <typename State>
std::vector<double> grouped_distribution(const State& s, const SpectralGenerator& g) {
    std::size_t ngroups = 0;
    const auto labels = eigenspace_labels(g, &ngroups);
    const auto pb = basis_probabilities(s, g);
    std::vector<double> p(ngroups, 0.0);
    for (std::size_t b = 0; b < g.dim(); ++b) p[labels[b]] += pb[b];
    for (double& x : p) x = std::max(x, 0.0);
    return p;
}

template <typename State>
double moments_variance(const State& s, const SpectralGenerator& g) {
    const auto pb = basis_probabilities(s, g);
    double m1 = 0.0, m2 = 0.0;
    for (std::size_t b = 0; b < g.dim(); ++b) {
        const double v = g.eigenvalue(b);
        m1 += pb[b] * v;
        m2 += pb[b] * v * v;
    }
    return std::sqrt(std::max(m2 - m1 * m1, 0.0));
}

} // namespace

std::vector<double> eigenvalue_distribution(const PureState& psi, const SpectralGenerator& g) {
    check_dims(psi.dim(), g.dim(), "eigenvalue_distribution");
    return grouped_distribution(psi, g);
}

std::vector<double> eigenvalue_distribution(const DensityOperator& rho, const SpectralGenerator& g) {
    check_dims(rho.dim(), g.dim(), "eigenvalue_distribution");
    return grouped_distribution(rho, g);
}

DensityOperator dephase(const DensityOperator& rho, const SpectralGenerator& g) {
    check_dims(rho.dim(), g.dim(), "dephase");
    const std::size_t d = g.dim();
    const auto labels = eigenspace_labels(g);

    if (g.computational_basis()) {
        ComplexMatrix out(d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                if (labels[i] == labels[j]) out(i, j) = rho.matrix()(i, j);
        return DensityOperator(std::move(out));
    }

    // rho' = V^dagger rho V, kill cross-eigenspace blocks, transform back.
    const auto& basis = g.basis();
    ComplexMatrix rp(d);
    for (std::size_t b = 0; b < d; ++b) {
        for (std::size_t c = 0; c < d; ++c) {
            if (labels[b] != labels[c]) continue;
            cplx acc = 0.0;
            for (const auto& [i, vi] : basis[b].entries)
                for (const auto& [j, vj] : basis[c].entries)
                    acc += std::conj(vi) * rho.matrix()(i, j) * vj;
            rp(b, c) = acc;
        }
    }
    ComplexMatrix out(d);
    for (std::size_t b = 0; b < d; ++b) {
        for (std::size_t c = 0; c < d; ++c) {
            const cplx x = rp(b, c);
            if (x == cplx{}) continue;
            for (const auto& [i, vi] : basis[b].entries)
                for (const auto& [j, vj] : basis[c].entries) out(i, j) += vi * x * std::conj(vj);
        }
    }
    // round-off symmetrization
    for (std::size_t i = 0; i < d; ++i) {
        out(i, i) = cplx(out(i, i).real(), 0.0);
        for (std::size_t j = i + 1; j < d; ++j) {
            const cplx avg = 0.5 * (out(i, j) + std::conj(out(j, i)));
            out(i, j) = avg;
            out(j, i) = std::conj(avg);
        }
    }
    return DensityOperator(std::move(out));
}

double vn_entropy(const DensityOperator& rho) {
    if (rho.dim() == 1) return 0.0;
    const auto eig = hermitian_eig(rho.matrix());
    return shannon_entropy(clamped_spectrum(eig.values));
}

double generator_entropy(const DensityOperator& rho, const SpectralGenerator& g) {
    return shannon_entropy(eigenvalue_distribution(rho, g));
}

double generator_entropy(const PureState& psi, const SpectralGenerator& g) {
    return shannon_entropy(eigenvalue_distribution(psi, g));
}

double g_asymmetry(const PureState& psi, const SpectralGenerator& g) {
    // Pure state: A_G = H(G|psi), S(psi) = 0.
    return generator_entropy(psi, g);
}

double g_asymmetry(const DensityOperator& rho, const SpectralGenerator& g) {
    check_dims(rho.dim(), g.dim(), "g_asymmetry");
    if (rho.dim() == 1) return 0.0;
    const auto eig = hermitian_eig(rho.matrix());
    const auto spectrum = clamped_spectrum(eig.values);
    const double s_rho = shannon_entropy(spectrum);
    if (s_rho < 1e-10) {
        // pure-state fast path: top eigenvector carries all the weight
        const std::size_t top = spectrum.size() - 1;
        std::vector<cplx> amps(rho.dim());
        double norm = 0.0;
        for (std::size_t i = 0; i < rho.dim(); ++i) {
            amps[i] = eig.vectors(i, top);
            norm += std::norm(amps[i]);
        }
        const double scale = 1.0 / std::sqrt(norm);
        for (auto& a : amps) a *= scale;
        return generator_entropy(PureState(std::move(amps)), g);
    }
    const double a = vn_entropy(dephase(rho, g)) - s_rho;
    if (a < -1e-9) throw Error("g_asymmetry: entropy decreased under dephasing");
    return std::max(a, 0.0);
}

double relative_entropy(const DensityOperator& sigma, const DensityOperator& tau) {
    check_dims(sigma.dim(), tau.dim(), "relative_entropy");
    const auto es = hermitian_eig(sigma.matrix());
    const auto et = hermitian_eig(tau.matrix());
    const auto ps = clamped_spectrum(es.values);
    const auto pt = clamped_spectrum(et.values);
    const std::size_t d = sigma.dim();

    double tr_s_ln_s = 0.0;
    for (double p : ps)
        if (p > 0.0) tr_s_ln_s += p * std::log(p);

    constexpr double kSupportTol = 1e-12;
    double tr_s_ln_t = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
        // <w_k| sigma |w_k>
        cplx acc = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            cplx row = 0.0;
            for (std::size_t j = 0; j < d; ++j) row += sigma.matrix()(i, j) * et.vectors(j, k);
            acc += std::conj(et.vectors(i, k)) * row;
        }
        const double w = std::max(acc.real(), 0.0);
        if (pt[k] <= kSupportTol) {
            if (w > 1e-10) return std::numeric_limits<double>::infinity();
            continue;
        }
        tr_s_ln_t += w * std::log(pt[k]);
    }
    return std::max(tr_s_ln_s - tr_s_ln_t, 0.0);
}

double generator_variance(const DensityOperator& rho, const SpectralGenerator& g) {
    check_dims(rho.dim(), g.dim(), "generator_variance");
    return moments_variance(rho, g);
}

double generator_variance(const PureState& psi, const SpectralGenerator& g) {
    check_dims(psi.dim(), g.dim(), "generator_variance");
    return moments_variance(psi, g);
}

} // namespace qmet
