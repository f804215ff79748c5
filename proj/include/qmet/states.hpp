#pragma once

#include "qmet/numerics.hpp"
#include "qmet/spectra.hpp"

#include <string>
#include <vector>

namespace qmet {

// Normalized complex amplitude vector over a labeled finite basis.
class PureState {
public:
    PureState(std::vector<cplx> amplitudes, std::string basis_tag = "computational");

    std::size_t dim() const { return amps_.size(); }
    const std::vector<cplx>& amplitudes() const { return amps_; }
    const cplx& amplitude(std::size_t i) const { return amps_[i]; }
    const std::string& basis_tag() const { return basis_; }

    ComplexMatrix projector() const; // |psi><psi|

private:
    std::vector<cplx> amps_;
    std::string basis_;
};

// Hermitian, unit-trace matrix.  Positivity is enforced where eigenvalues are
// actually computed (entropy and friends): eigenvalues in [-1e-10, 0) are
// treated as round-off, anything more negative raises NegativeEigenvalue.
class DensityOperator {
public:
    explicit DensityOperator(ComplexMatrix matrix);
    explicit DensityOperator(const PureState& psi);

    std::size_t dim() const { return m_.dim(); }
    const ComplexMatrix& matrix() const { return m_; }

private:
    ComplexMatrix m_;
};

// (|0..0> + |1..1>)/sqrt(2) on n qubits.
PureState ghz(int n);
// Equal superposition of the lowest-index eigenvectors of the extreme
// eigenvalues of G.  Throws DegenerateSpectrum if G has a single eigenvalue.
PureState minmax_superposition(const SpectralGenerator& g);
// Truncated coherent state on the number basis: amplitudes sqrt(Poisson_k(mean)),
// cutoff at cumulative probability >= mass, then renormalized.
PureState coherent_number_state(double mean, double mass = 1.0 - 1e-12);
// |+>^(x)K: uniform amplitudes 2^(-K/2).
PureState plus_product(int K);
// Kronecker product; factor 0 occupies the most significant digit of the index.
PureState tensor(const std::vector<PureState>& states);
// Convex combination of pure-state projectors; weights must sum to 1 (1e-9).
DensityOperator mix(const std::vector<double>& weights, const std::vector<PureState>& states);

} // namespace qmet
