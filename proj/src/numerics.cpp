#include "qmet/numerics.hpp"

#include "qmet/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qmet {

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& x : a_) m = std::max(m, std::abs(x));
    return m;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& x : a_) s += std::norm(x);
    return std::sqrt(s);
}

cplx ComplexMatrix::trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
}

bool ComplexMatrix::is_hermitian(double tol) const {
    double worst = 0.0;
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = i; j < dim_; ++j)
            worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return worst <= tol * std::max(max_abs(), 1e-300);
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
    ComplexMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t k = 0; k < dim_; ++k) {
            const cplx aik = (*this)(i, k);
            if (aik == cplx{}) continue;
            for (std::size_t j = 0; j < dim_; ++j) out(i, j) += aik * rhs(k, j);
        }
    }
    return out;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& rhs) const {
    ComplexMatrix out = *this;
    out += rhs;
    return out;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& rhs) const {
    ComplexMatrix out = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] -= rhs.a_[i];
    return out;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
    for (auto& x : a_) x *= s;
    return *this;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += rhs.a_[i];
    return *this;
}

EigenDecomposition hermitian_eig(const ComplexMatrix& input) {
    const std::size_t n = input.dim();
    if (n == 0) throw BadParameters("hermitian_eig: empty matrix");
    if (!input.is_hermitian(1e-12)) throw NotHermitian("hermitian_eig: input not Hermitian within 1e-12 relative tolerance");

    ComplexMatrix a = input;
    // Symmetrize round-off so the iteration preserves Hermiticity exactly.
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = cplx(a(i, i).real(), 0.0);
        for (std::size_t j = i + 1; j < n; ++j) {
            cplx avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
            a(i, j) = avg;
            a(j, i) = std::conj(avg);
        }
    }

    ComplexMatrix v = ComplexMatrix::identity(n);
    const double thresh = 1e-13 * std::max(a.frobenius_norm(), 1e-300);
    constexpr int kMaxSweeps = 64;

    bool converged = (n == 1);
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double r = std::abs(apq);
                if (r <= thresh) continue;
                rotated = true;

                const double alpha = a(p, p).real();
                const double beta = a(q, q).real();
                const double theta = std::arg(apq);
                const double tau = (alpha - beta) / (2.0 * r);
                // small-magnitude root of t^2 - 2*tau*t - 1 = 0
                const double t = (tau >= 0.0 ? -1.0 : 1.0) / (std::abs(tau) + std::sqrt(tau * tau + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const cplx sf = s * std::polar(1.0, theta);   // s e^{i theta}
                const cplx sb = std::conj(sf);                // s e^{-i theta}

                // A <- U^dagger A U with U = I except
                // U(p,p)=c, U(p,q)=s e^{i theta}, U(q,p)=-s e^{-i theta}, U(q,q)=c.
                for (std::size_t i = 0; i < n; ++i) { // B = A U (columns p, q)
                    const cplx aip = a(i, p), aiq = a(i, q);
                    a(i, p) = c * aip - sb * aiq;
                    a(i, q) = sf * aip + c * aiq;
                }
                for (std::size_t j = 0; j < n; ++j) { // A = U^dagger B (rows p, q)
                    const cplx apj = a(p, j), aqj = a(q, j);
                    a(p, j) = c * apj - sf * aqj;
                    a(q, j) = sb * apj + c * aqj;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = cplx(a(p, p).real(), 0.0);
                a(q, q) = cplx(a(q, q).real(), 0.0);
                for (std::size_t i = 0; i < n; ++i) { // V <- V U
                    const cplx vip = v(i, p), viq = v(i, q);
                    v(i, p) = c * vip - sb * viq;
                    v(i, q) = sf * vip + c * viq;
                }
            }
        }
        if (!rotated) converged = true;
    }
    if (!converged) throw NoConvergence("hermitian_eig: Jacobi sweep limit (64) reached");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    EigenDecomposition d;
    d.values.resize(n);
    d.vectors = ComplexMatrix(n);
    for (std::size_t k = 0; k < n; ++k) {
        d.values[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) d.vectors(i, k) = v(i, order[k]);
    }
    return d;
}

double shannon_entropy(std::span<const double> p) {
    double sum = 0.0, h = 0.0;
    for (double x : p) {
        if (x < 0.0) {
            if (x < -1e-12) throw NotNormalized("shannon_entropy: negative probability");
            x = 0.0;
        }
        sum += x;
        if (x > 0.0) h -= x * std::log(x);
    }
    if (std::abs(sum - 1.0) > 1e-9) throw NotNormalized("shannon_entropy: probabilities sum to " + std::to_string(sum));
    return std::max(h, 0.0);
}

} // namespace qmet
