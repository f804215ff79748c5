#pragma once

#include "qmet/numerics.hpp"

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace qmet {

// One eigenbasis vector stored sparsely as (row, amplitude) pairs.
struct SparseColumn {
    std::vector<std::pair<std::size_t, cplx>> entries;
};

// A Hermitian shift generator given by its spectrum: an eigenvalue per basis
// label and either the computational basis (identity) or an explicit
// orthonormal basis.  Immutable after construction.
class SpectralGenerator {
public:
    // Computational eigenbasis.
    SpectralGenerator(std::vector<double> eigenvalues, std::string description);
    // Explicit eigenbasis; columns are checked for orthonormality (1e-10).
    SpectralGenerator(std::vector<double> eigenvalues, std::vector<SparseColumn> basis,
                      std::string description);

    std::size_t dim() const { return eigenvalues_.size(); }
    double eigenvalue(std::size_t label) const { return eigenvalues_[label]; }
    const std::vector<double>& eigenvalues() const { return eigenvalues_; }
    bool computational_basis() const { return basis_.empty(); }
    const std::vector<SparseColumn>& basis() const { return basis_; }
    bool integer_valued() const { return integer_valued_; }
    const std::string& description() const { return description_; }

    // Dense matrix sum_b g_b |v_b><v_b|; intended for small dims (tests, oracles).
    ComplexMatrix to_matrix() const;

private:
    std::vector<double> eigenvalues_;
    std::vector<SparseColumn> basis_; // empty = computational
    std::string description_;
    bool integer_valued_ = false;
};

struct EigenvalueSummary {
    std::size_t distinct_count = 0;
    double min = 0.0, max = 0.0, gap = 0.0;
    std::map<double, std::size_t> multiplicities;
};

// J_z = sigma_z^(1) + ... + sigma_z^(n); sigma_z|0> = +|0>, so the eigenvalue
// at basis index b is n - 2*popcount(b).
SpectralGenerator jz(int n);
SpectralGenerator jz_pow(int n, int q);
SpectralGenerator n_jz(int n);
// Tensor-product generators H, A with spectrum {0, +-2^(n-1)}; the extreme
// eigenvectors are (|0..0> +- |1..1>)/sqrt(2) for H and (|0..0> +- i|1..1>)/sqrt(2) for A.
SpectralGenerator roy_h(int n);
SpectralGenerator roy_a(int n);
SpectralGenerator number_function(int cutoff, const std::function<double(int)>& f);
// Sum of independent generators on a tensor-product space (first part most
// significant in the index); refuses product dimension > 2^20.
SpectralGenerator composite_sum(const std::vector<SpectralGenerator>& parts);
// The K-bit multipass generator: sum over k of 2^(k-1) (1+sigma_z)/2,
// eigenvalues 0 .. 2^K - 1 uniform over the 2^K-dim computational basis.
SpectralGenerator multipass(int K);

EigenvalueSummary summarize(const SpectralGenerator& g);

// Group index per basis label; groups are numbered by ascending eigenvalue.
// Integer-valued spectra are grouped by exact comparison after rounding,
// otherwise with tolerance 1e-9.
std::vector<std::size_t> eigenspace_labels(const SpectralGenerator& g, std::size_t* group_count = nullptr);
// Canonical eigenvalue of each group, ascending.
std::vector<double> group_eigenvalues(const SpectralGenerator& g);

} // namespace qmet
