#include "qmet/spectra.hpp"

#include "qmet/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

namespace qmet {

namespace {

constexpr std::size_t kMaxDim = std::size_t{1} << 20;

bool all_integer(const std::vector<double>& vals) {
    for (double v : vals) {
        if (!std::isfinite(v)) throw BadParameters("generator eigenvalues must be finite");
        if (std::abs(v - std::round(v)) > 1e-9) return false;
    }
    return true;
}

void check_qubits(int n) {
    if (n < 1) throw BadParameters("qubit count must be >= 1");
    if (n > 20) throw SizeExceeded("qubit count exceeds 20");
}

void check_orthonormal(const std::vector<SparseColumn>& basis, std::size_t dim) {
    if (basis.size() != dim) throw BadParameters("explicit eigenbasis must have dim columns");
    // row -> columns touching it
    std::vector<std::vector<std::size_t>> by_row(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        double norm = 0.0;
        for (const auto& [i, v] : basis[j].entries) {
            if (i >= dim) throw BadParameters("eigenbasis entry out of range");
            norm += std::norm(v);
            by_row[i].push_back(j);
        }
        if (std::abs(norm - 1.0) > 1e-10) throw NotNormalized("eigenbasis column not unit norm");
    }
    // Pairwise overlaps only arise between columns sharing a row.
    std::map<std::pair<std::size_t, std::size_t>, cplx> overlaps;
    for (std::size_t j = 0; j < dim; ++j) {
        for (const auto& [i, v] : basis[j].entries) {
            for (std::size_t k : by_row[i]) {
                if (k <= j) continue;
                cplx w = 0.0;
                for (const auto& [ik, vk] : basis[k].entries)
                    if (ik == i) w = vk;
                overlaps[{j, k}] += std::conj(v) * w;
            }
        }
    }
    for (const auto& [jk, ip] : overlaps) {
        (void)jk;
        if (std::abs(ip) > 1e-10) throw BadParameters("explicit eigenbasis is not unitary to 1e-10");
    }
}

} // namespace

SpectralGenerator::SpectralGenerator(std::vector<double> eigenvalues, std::string description)
    : eigenvalues_(std::move(eigenvalues)), description_(std::move(description)) {
    if (eigenvalues_.empty()) throw BadParameters("generator needs dim >= 1");
    if (eigenvalues_.size() > kMaxDim) throw SizeExceeded("generator dim exceeds 2^20");
    integer_valued_ = all_integer(eigenvalues_);
}

SpectralGenerator::SpectralGenerator(std::vector<double> eigenvalues, std::vector<SparseColumn> basis,
                                     std::string description)
    : eigenvalues_(std::move(eigenvalues)), basis_(std::move(basis)), description_(std::move(description)) {
    if (eigenvalues_.empty()) throw BadParameters("generator needs dim >= 1");
    if (eigenvalues_.size() > kMaxDim) throw SizeExceeded("generator dim exceeds 2^20");
    check_orthonormal(basis_, eigenvalues_.size());
    integer_valued_ = all_integer(eigenvalues_);
}

ComplexMatrix SpectralGenerator::to_matrix() const {
    const std::size_t d = dim();
    ComplexMatrix m(d);
    if (computational_basis()) {
        for (std::size_t i = 0; i < d; ++i) m(i, i) = eigenvalues_[i];
        return m;
    }
    for (std::size_t b = 0; b < d; ++b) {
        const double g = eigenvalues_[b];
        for (const auto& [i, vi] : basis_[b].entries)
            for (const auto& [j, vj] : basis_[b].entries) m(i, j) += g * vi * std::conj(vj);
    }
    return m;
}

SpectralGenerator jz(int n) {
    check_qubits(n);
    const std::size_t d = std::size_t{1} << n;
    std::vector<double> vals(d);
    for (std::size_t b = 0; b < d; ++b) vals[b] = double(n) - 2.0 * std::popcount(b);
    return {std::move(vals), "jz:" + std::to_string(n)};
}

SpectralGenerator jz_pow(int n, int q) {
    check_qubits(n);
    if (q < 1) throw BadParameters("jz_pow: q must be >= 1");
    const std::size_t d = std::size_t{1} << n;
    std::vector<double> vals(d);
    for (std::size_t b = 0; b < d; ++b) {
        const double base = double(n) - 2.0 * std::popcount(b);
        double v = 1.0;
        for (int i = 0; i < q; ++i) v *= base;
        vals[b] = v;
    }
    return {std::move(vals), "jz_pow:" + std::to_string(n) + "," + std::to_string(q)};
}

SpectralGenerator n_jz(int n) {
    check_qubits(n);
    const std::size_t d = std::size_t{1} << n;
    std::vector<double> vals(d);
    for (std::size_t b = 0; b < d; ++b) vals[b] = double(n) * (double(n) - 2.0 * std::popcount(b));
    return {std::move(vals), "n_jz:" + std::to_string(n)};
}

namespace {

SpectralGenerator roy_impl(int n, bool imaginary, const std::string& name) {
    check_qubits(n);
    const std::size_t d = std::size_t{1} << n;
    const double ext = std::ldexp(1.0, n - 1); // 2^(n-1)
    const double r = 1.0 / std::sqrt(2.0);
    const cplx top = imaginary ? cplx(0.0, r) : cplx(r, 0.0);
    std::vector<double> vals(d, 0.0);
    std::vector<SparseColumn> basis(d);
    // label 0: (|0..0> + (i)|1..1>)/sqrt(2) with +2^(n-1)
    // label d-1: (|0..0> - (i)|1..1>)/sqrt(2) with -2^(n-1)
    if (n == 1) {
        basis[0].entries = {{0, r}, {1, top}};
        basis[1].entries = {{0, r}, {1, -top}};
        vals[0] = ext;
        vals[1] = -ext;
    } else {
        basis[0].entries = {{0, r}, {d - 1, top}};
        basis[d - 1].entries = {{0, r}, {d - 1, -top}};
        vals[0] = ext;
        vals[d - 1] = -ext;
        for (std::size_t b = 1; b + 1 < d; ++b) basis[b].entries = {{b, 1.0}};
    }
    return {std::move(vals), std::move(basis), name + ":" + std::to_string(n)};
}

} // namespace

SpectralGenerator roy_h(int n) { return roy_impl(n, false, "roy_h"); }
SpectralGenerator roy_a(int n) { return roy_impl(n, true, "roy_a"); }

SpectralGenerator number_function(int cutoff, const std::function<double(int)>& f) {
    if (cutoff < 1) throw BadParameters("number_function: cutoff must be >= 1");
    if (std::size_t(cutoff) + 1 > kMaxDim) throw SizeExceeded("number_function: cutoff exceeds 2^20");
    std::vector<double> vals(cutoff + 1);
    for (int k = 0; k <= cutoff; ++k) vals[k] = f(k);
    return {std::move(vals), "number_fn:" + std::to_string(cutoff)};
}

SpectralGenerator composite_sum(const std::vector<SpectralGenerator>& parts) {
    if (parts.empty()) throw BadParameters("composite_sum: needs at least one part");
    std::size_t d = 1;
    const bool comp = parts.front().computational_basis();
    for (const auto& p : parts) {
        if (p.computational_basis() != comp)
            throw BadParameters("composite_sum: all parts must share basis kind");
        if (d > kMaxDim / p.dim()) throw SizeExceeded("composite_sum: product dim exceeds 2^20");
        d *= p.dim();
    }
    // First part occupies the most significant digit of the composite index.
    std::vector<double> vals(d, 0.0);
    std::size_t stride = d;
    for (const auto& p : parts) {
        stride /= p.dim();
        for (std::size_t b = 0; b < d; ++b) vals[b] += p.eigenvalue((b / stride) % p.dim());
    }
    std::string desc = "sum(";
    for (std::size_t i = 0; i < parts.size(); ++i) desc += (i ? "," : "") + parts[i].description();
    desc += ")";
    if (comp) return {std::move(vals), std::move(desc)};

    std::vector<SparseColumn> basis(d);
    for (std::size_t b = 0; b < d; ++b) {
        std::vector<std::pair<std::size_t, cplx>> acc = {{0, 1.0}};
        std::size_t str = d;
        for (const auto& p : parts) {
            str /= p.dim();
            const auto& col = p.basis()[(b / str) % p.dim()];
            std::vector<std::pair<std::size_t, cplx>> next;
            next.reserve(acc.size() * col.entries.size());
            for (const auto& [i, v] : acc)
                for (const auto& [j, w] : col.entries) next.emplace_back(i + j * str, v * w);
            acc = std::move(next);
        }
        basis[b].entries = std::move(acc);
    }
    return {std::move(vals), std::move(basis), std::move(desc)};
}

SpectralGenerator multipass(int K) {
    check_qubits(K);
    const std::size_t d = std::size_t{1} << K;
    std::vector<double> vals(d);
    // component k (gap 2^(k-1)) sits at bit k-1; eigenvalue at index b is b itself
    for (std::size_t b = 0; b < d; ++b) vals[b] = double(b);
    return {std::move(vals), "multipass:" + std::to_string(K)};
}

namespace {

double canonical_value(double v, bool integer_valued) {
    return integer_valued ? std::round(v) : v;
}

} // namespace

EigenvalueSummary summarize(const SpectralGenerator& g) {
    EigenvalueSummary s;
    if (g.integer_valued()) {
        for (double v : g.eigenvalues()) ++s.multiplicities[std::round(v)];
    } else {
        std::vector<double> sorted = g.eigenvalues();
        std::sort(sorted.begin(), sorted.end());
        double rep = 0.0;
        for (double v : sorted) {
            if (s.multiplicities.empty() || v - rep > 1e-9) rep = v;
            ++s.multiplicities[rep];
        }
    }
    s.distinct_count = s.multiplicities.size();
    s.min = s.multiplicities.begin()->first;
    s.max = s.multiplicities.rbegin()->first;
    s.gap = s.max - s.min;
    return s;
}

std::vector<std::size_t> eigenspace_labels(const SpectralGenerator& g, std::size_t* group_count) {
    const auto groups = group_eigenvalues(g);
    std::vector<std::size_t> labels(g.dim());
    for (std::size_t b = 0; b < g.dim(); ++b) {
        const double v = canonical_value(g.eigenvalue(b), g.integer_valued());
        auto it = std::lower_bound(groups.begin(), groups.end(), v - 1e-9);
        labels[b] = std::size_t(it - groups.begin());
    }
    if (group_count) *group_count = groups.size();
    return labels;
}

std::vector<double> group_eigenvalues(const SpectralGenerator& g) {
    std::vector<double> sorted;
    sorted.reserve(g.dim());
    for (double v : g.eigenvalues()) sorted.push_back(canonical_value(v, g.integer_valued()));
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> groups;
    for (double v : sorted)
        if (groups.empty() || v - groups.back() > 1e-9) groups.push_back(v);
    return groups;
}

} // namespace qmet
