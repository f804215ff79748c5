#pragma once

#include "qmet/spectra.hpp"
#include "qmet/states.hpp"

#include <vector>

namespace qmet {

// Eigenvalue distribution of G in the given state: p_g = tr[rho Pi_g],
// ordered by ascending group eigenvalue.
std::vector<double> eigenvalue_distribution(const PureState& psi, const SpectralGenerator& g);
std::vector<double> eigenvalue_distribution(const DensityOperator& rho, const SpectralGenerator& g);

// Dephasing map U_G(rho) = sum_g Pi_g rho Pi_g.  Block-diagonal in the
// eigenspaces of G, trace preserving, unital, idempotent.
DensityOperator dephase(const DensityOperator& rho, const SpectralGenerator& g);

// von Neumann entropy S(rho) = -tr[rho ln rho] in nats.
double vn_entropy(const DensityOperator& rho);

// H(G|rho) = -sum_g p_g ln p_g.
double generator_entropy(const DensityOperator& rho, const SpectralGenerator& g);
double generator_entropy(const PureState& psi, const SpectralGenerator& g);

// G-asymmetry A_G(rho) = S(U_G(rho)) - S(rho), clamped to >= 0.
// For pure states this equals H(G|psi).
double g_asymmetry(const DensityOperator& rho, const SpectralGenerator& g);
double g_asymmetry(const PureState& psi, const SpectralGenerator& g);

// Relative entropy D(sigma||tau) = tr[sigma(ln sigma - ln tau)], conventional
// orientation.  Returns +infinity when supp(sigma) is not within supp(tau).
double relative_entropy(const DensityOperator& sigma, const DensityOperator& tau);

// Root mean square deviation of G in the state.
double generator_variance(const DensityOperator& rho, const SpectralGenerator& g);
double generator_variance(const PureState& psi, const SpectralGenerator& g);

} // namespace qmet
