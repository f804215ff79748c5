#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qmet {

using cplx = std::complex<double>;

// Dense square complex matrix, row-major.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim) : dim_(dim), a_(dim * dim) {}

    static ComplexMatrix identity(std::size_t dim);

    std::size_t dim() const { return dim_; }

    cplx& operator()(std::size_t i, std::size_t j) { return a_[i * dim_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * dim_ + j]; }

    std::span<const cplx> data() const { return a_; }

    double max_abs() const;
    double frobenius_norm() const;
    cplx trace() const;
    ComplexMatrix adjoint() const;

    // max|A - A^dagger| <= tol * max|A|
    bool is_hermitian(double tol = 1e-12) const;

    ComplexMatrix operator*(const ComplexMatrix& rhs) const;
    ComplexMatrix operator+(const ComplexMatrix& rhs) const;
    ComplexMatrix operator-(const ComplexMatrix& rhs) const;
    ComplexMatrix& operator*=(cplx s);
    ComplexMatrix& operator+=(const ComplexMatrix& rhs);

private:
    std::size_t dim_ = 0;
    std::vector<cplx> a_;
};

struct EigenDecomposition {
    std::vector<double> values; // ascending
    ComplexMatrix vectors;      // orthonormal columns, vectors(:,i) pairs with values[i]
};

// Cyclic Jacobi diagonalization of a complex Hermitian matrix.
// Throws NotHermitian if the symmetry tolerance is violated, NoConvergence
// if the sweep limit (64) is hit.
EigenDecomposition hermitian_eig(const ComplexMatrix& a);

// -sum p_i ln p_i in nats, with 0 ln 0 := 0.  Entries in [-1e-12, 0) are
// clamped to zero; the vector must sum to 1 within 1e-9 (NotNormalized).
double shannon_entropy(std::span<const double> p);

} // namespace qmet
