#pragma once

#include "qmet/prior.hpp"
#include "qmet/schedule.hpp"

#include <string>
#include <vector>

namespace qmet {

struct ResourceAccount {
    long qubits = 0;       // n
    long passes = 0;       // N, summed from the implemented schedule
    long passes_alt = 0; // alternative accounting M(2^(K+1)-1) for the multipass family, 0 otherwise
    double photons = 0.0;  // <N>
    long modes = 0;        // m
    long copies = 1;       // M
    long bits = 0;         // K
    long qubits_alt = 0; // alternative accounting n = M K(K-1)/2 for the roy preset, 0 otherwise
    std::vector<std::string> notes;
};

struct BoundReport {
    std::string preset;
    double mi_upper_asymmetry = 0.0;     // nats, cap on A_G
    double mi_upper_entropy = 0.0;       // nats, cap on H(G|rho)
    double error_lower = 0.0;            // radians, scheme closed form
    double error_lower_ag_cap = 0.0;     // radians, from the ln(M 2^K)-style cap
    double local_precision_lower = 0.0;  // radians, (2 DeltaG)^-1 when DeltaG is known
    ResourceAccount resources;
    std::vector<std::string> provenance;
};

// eps >= (2 pi e)^(-1/2) e^H(Phi) e^(-A_G)
double error_lower_bound(double asymmetry_nats, const PriorDistribution& prior);

// H(Phi:Phi_hat) >= H(Phi) - (1/2) ln(2 pi e eps^2).
// As printed the rate-distortion bound has eps inside the log; the eps^2
// reading is the only one under which the error bound follows from it for an
// rms error, and is what is implemented.
double rate_distortion_floor(const PriorDistribution& prior, double eps);

// P_phi >= 1/(2 DeltaG); throws ZeroVariance for DeltaG <= 0.
double local_precision_lower(double delta_g);

// Joint photon-number entropy cap for m modes at mean total photon number
// meanN: returns {m ln(1+meanN/m) + meanN ln(1+m/meanN), m + meanN}.
struct EntropyCap {
    double tight = 0.0;
    double cap = 0.0;
};
EntropyCap multimode_entropy_cap(long modes, double mean_n);

double prior_entropy(const PriorDistribution& prior);

// Closed-form scheme bounds.  Knobs used per preset:
//   quadratic_iterative / power_q_iterative / roy_iterative / linear_multipass: K, M (and q)
//   qubit_universal: n
//   optical_universal: modes, mean_n
struct SchemeQuery {
    std::string preset;
    int K = 0;
    int M = 1;
    int q = 2;
    long n = 0;
    long modes = 0;
    double mean_n = 0.0;
};
BoundReport scheme_bound(const SchemeQuery& query, const PriorDistribution& prior);

} // namespace qmet
