#pragma once

#include "qmet/bounds.hpp"
#include "qmet/prior.hpp"
#include "qmet/schedule.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qmet {

enum class Policy { Adaptive, Nonadaptive, Bitwise };

Policy policy_from_string(const std::string& s);
std::string policy_name(Policy p);

// Iterative estimation scheme: ordered two-level probe components (integer
// gaps) with M copies of each.
struct SchemeSpec {
    std::string preset = "none";
    std::vector<ComponentSchedule> components; // ascending gap order as built
    int K = 0;
    int M = 1;
    int q = 2;
    ResourceAccount resources;
    std::vector<std::string> notes;
};

SchemeSpec preset(const std::string& name, int K, int M, int q = 2);

struct TrialRecord {
    double phase = 0.0;         // phi in [0, 2pi)
    double estimate = 0.0;      // phi_hat in [0, 2pi)
    double wrapped_error = 0.0; // principal argument of e^{i(phi_hat - phi)}
    std::uint32_t n_outcomes = 0;
};

struct MiEstimate {
    double value = 0.0;
    double stderr_value = 0.0;
    int bins = 0;
};

struct EstimationReport {
    std::string preset, policy, prior;
    std::uint64_t trials = 0, seed = 0;
    std::size_t grid = 0;
    double eps = 0.0, eps_stderr = 0.0;         // rms wrapped error
    double eps_raw = 0.0, eps_raw_stderr = 0.0; // rms unwrapped error
    double holevo = 0.0, holevo_stderr = 0.0;   // |E e^{i d}|^-2 - 1
    double sharpness = 0.0;
    MiEstimate mi;
    double asymmetry_composite = 0.0; // exact A_G of the composite probe state
    double bound_error_lower = 0.0;   // from asymmetry_composite and the prior
    double bound_scheme = 0.0;        // preset closed form (0 when not applicable)
    double eps_exact = 0.0;           // canonical sampler only: exact eps(D)
    ResourceAccount resources;
    std::vector<std::string> notes;
    std::vector<TrialRecord> records; // populated when keep_records
};

struct SimulationOptions {
    std::uint64_t trials = 1000;
    std::uint64_t seed = 1;
    Policy policy = Policy::Adaptive;
    std::size_t grid = std::size_t{1} << 14; // power of two >= 2^10
    int threads = 0;                         // 0 = hardware concurrency
    int mi_bins = 0;                         // 0 = auto, -1 = skip
    bool keep_records = false;
    bool map_estimate = false; // posterior maximum instead of circular mean
};

// Bayesian gridded-posterior Monte Carlo of the scheme.  Deterministic given
// (seed, spec, prior, options); trials are independent and parallelized.
EstimationReport simulate(const SchemeSpec& spec, const PriorDistribution& prior, const SimulationOptions& opt);

// Exact rms wrapped error of the canonical phase measurement on the uniform
// superposition over D consecutive integer eigenvalues (Fejer kernel of order D).
double canonical_exact_error(std::uint64_t D);

// Samples estimates from the canonical conditional density via inverse CDF on
// a 2^16 grid; the report's eps_exact field carries canonical_exact_error(2^K).
EstimationReport canonical_sample(int K, const PriorDistribution& prior, std::uint64_t trials, std::uint64_t seed);

// Plug-in mutual information of the (phi, phi_hat) pairs from a B x B joint
// histogram over [0,2pi)^2 with Miller-Madow bias correction; jackknife
// standard error.  Requires B >= 8 and T >= 10 B^2.
MiEstimate mutual_information(const std::vector<TrialRecord>& records, int bins);

enum class FitModel { PowerLaw, Exponential, ExponentialSqrt };

FitModel fit_model_from_string(const std::string& s);
std::string fit_model_name(FitModel m);

struct ScanPoint {
    int K = 0;
    double n = 0.0;
    double eps = 0.0, eps_stderr = 0.0;
    double bound = 0.0;
};

struct ScanReport {
    std::string preset, fit_model;
    std::vector<ScanPoint> points;
    double slope = 0.0, intercept = 0.0, r_squared = 0.0;
    std::vector<double> residuals;
};

// Runs simulate (or canonical_sample for linear_multipass M=1) across a K
// range and fits ln(eps) against the model's abscissa (ln n, n, or sqrt(n)).
ScanReport scaling_scan(const std::string& preset_name, int k_lo, int k_hi, int M, int q,
                        const PriorDistribution& prior, const SimulationOptions& opt, FitModel model);

// Deterministic per-trial seed derivation (splitmix64 of master and index).
std::uint64_t child_seed(std::uint64_t master, std::uint64_t index);

double wrap_to_pi(double x);   // principal argument in (-pi, pi]
double wrap_to_2pi(double x);  // representative in [0, 2pi)

} // namespace qmet
