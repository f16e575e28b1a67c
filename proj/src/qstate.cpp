#include "qsrlab/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace qsrlab {

DiagonalState::DiagonalState(int num_bits, std::vector<Entry> weights)
    : num_bits_(num_bits), entries_(std::move(weights)) {
    if (num_bits < 0 || num_bits > 63) throw std::invalid_argument("DiagonalState: num_bits must be in [0, 63]");
    std::sort(entries_.begin(), entries_.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });

    // Merge duplicate basis strings, drop zeros, and check normalization.
    std::vector<Entry> merged;
    merged.reserve(entries_.size());
    Dyadic total;
    for (auto& e : entries_) {
        if (num_bits < 63 && (e.first >> num_bits) != 0)
            throw std::invalid_argument("DiagonalState: basis string wider than num_bits");
        if (!merged.empty() && merged.back().first == e.first) {
            merged.back().second += e.second;
        } else {
            merged.push_back(std::move(e));
        }
    }
    entries_.clear();
    for (auto& e : merged) {
        if (e.second.is_zero()) continue;
        if (e.second.sign() < 0) throw std::invalid_argument("DiagonalState: negative weight");
        total += e.second;
        entries_.push_back(std::move(e));
    }
    if (total != Dyadic(1)) throw std::invalid_argument("DiagonalState: weights must sum to 1 exactly");
}

DiagonalState DiagonalState::point_mass(int num_bits, std::uint64_t basis) {
    return DiagonalState(num_bits, {{basis, Dyadic(1)}});
}

DiagonalState DiagonalState::uniform(int num_bits) {
    std::vector<Entry> w;
    w.reserve(std::size_t{1} << num_bits);
    Dyadic p = Dyadic::pow2(-num_bits);
    for (std::uint64_t z = 0; z < (std::uint64_t{1} << num_bits); ++z) w.emplace_back(z, p);
    return DiagonalState(num_bits, std::move(w));
}

Dyadic DiagonalState::weight(std::uint64_t basis) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), basis,
                               [](const Entry& e, std::uint64_t key) { return e.first < key; });
    if (it == entries_.end() || it->first != basis) return Dyadic(0);
    return it->second;
}

void DiagonalState::store(std::ostream& out) const {
    if (num_bits_ < 1) throw std::invalid_argument("DiagonalState: store needs num_bits >= 1");
    for (const auto& [basis, w] : entries_) {
        std::string bits(static_cast<std::size_t>(num_bits_), '0');
        for (int i = 0; i < num_bits_; ++i)
            if ((basis >> (num_bits_ - 1 - i)) & 1u) bits[static_cast<std::size_t>(i)] = '1';
        out << bits << ' ' << w.to_caret() << '\n';
    }
}

DiagonalState DiagonalState::load(std::istream& in) {
    std::vector<Entry> entries;
    int num_bits = -1;
    std::string bits, weight;
    while (in >> bits >> weight) {
        if (num_bits < 0)
            num_bits = static_cast<int>(bits.size());
        else if (static_cast<int>(bits.size()) != num_bits)
            throw std::invalid_argument("DiagonalState: inconsistent string widths");
        std::uint64_t basis = 0;
        for (char c : bits) {
            if (c != '0' && c != '1') throw std::invalid_argument("DiagonalState: bad basis string");
            basis = (basis << 1) | static_cast<std::uint64_t>(c - '0');
        }
        entries.emplace_back(basis, Dyadic::parse(weight));
    }
    if (num_bits < 0) throw std::invalid_argument("DiagonalState: empty input");
    return DiagonalState(num_bits, std::move(entries));
}

DiagonalState tensor_diag(const DiagonalState& a, const DiagonalState& b) {
    int bits = a.num_bits() + b.num_bits();
    if (bits > 63) throw std::invalid_argument("tensor_diag: composite register too wide");
    std::vector<DiagonalState::Entry> w;
    w.reserve(a.support_size() * b.support_size());
    for (const auto& [u, wa] : a.entries())
        for (const auto& [v, wb] : b.entries())
            w.emplace_back((u << b.num_bits()) | v, wa * wb);
    return DiagonalState(bits, std::move(w));
}

Dyadic l1_distance(const DiagonalState& a, const DiagonalState& b) {
    if (a.num_bits() != b.num_bits()) throw std::invalid_argument("l1_distance: register size mismatch");
    const auto& ea = a.entries();
    const auto& eb = b.entries();
    Dyadic sum;
    std::size_t i = 0, j = 0;
    while (i < ea.size() || j < eb.size()) {
        if (j == eb.size() || (i < ea.size() && ea[i].first < eb[j].first)) {
            sum += ea[i].second;
            ++i;
        } else if (i == ea.size() || eb[j].first < ea[i].first) {
            sum += eb[j].second;
            ++j;
        } else {
            sum += (ea[i].second - eb[j].second).abs();
            ++i;
            ++j;
        }
    }
    return sum;
}

double shannon_entropy_bits(const DiagonalState& s) {
    double h = 0.0;
    for (const auto& [basis, w] : s.entries()) {
        double p = w.to_double();
        if (p > 0.0) h -= p * std::log2(p);
    }
    return h;
}

CMatrix::CMatrix(int dim) : dim_(dim), a_(static_cast<std::size_t>(dim) * dim) {
    if (dim < 1 || dim > 64) throw std::invalid_argument("CMatrix: dim must be in [1, 64]");
}

CMatrix CMatrix::identity(int dim) {
    CMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
    if (dim_ != o.dim_) throw std::invalid_argument("CMatrix: dimension mismatch");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
    if (dim_ != o.dim_) throw std::invalid_argument("CMatrix: dimension mismatch");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}

CMatrix& CMatrix::operator*=(double s) {
    for (auto& v : a_) v *= s;
    return *this;
}

std::complex<double> CMatrix::trace() const {
    std::complex<double> t = 0.0;
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double CMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& v : a_) s += std::norm(v);
    return std::sqrt(s);
}

double CMatrix::hermitian_defect() const {
    double worst = 0.0;
    for (int i = 0; i < dim_; ++i)
        for (int j = i; j < dim_; ++j)
            worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return worst;
}

CMatrix CMatrix::kron_from_left(const CMatrix& b) const {
    CMatrix out(b.dim_ * dim_);
    for (int br = 0; br < b.dim_; ++br)
        for (int bc = 0; bc < b.dim_; ++bc) {
            std::complex<double> f = b(br, bc);
            if (f == 0.0) continue;
            for (int r = 0; r < dim_; ++r)
                for (int c = 0; c < dim_; ++c)
                    out(br * dim_ + r, bc * dim_ + c) = f * (*this)(r, c);
        }
    return out;
}

namespace {

double offdiag_norm(const CMatrix& a) {
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

}  // namespace

std::vector<double> hermitian_eigenvalues(CMatrix a, double off_tol) {
    int n = a.dim();
    if (a.hermitian_defect() > 1e-9) throw std::invalid_argument("hermitian_eigenvalues: matrix is not Hermitian");
    std::vector<std::complex<double>> colp(n), colq(n), rowp(n), rowq(n);

    constexpr int kMaxSweeps = 60;
    int sweep = 0;
    while (offdiag_norm(a) > off_tol) {
        if (++sweep > kMaxSweeps) throw std::runtime_error("hermitian_eigenvalues: Jacobi did not converge");
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                std::complex<double> g = a(p, q);
                double mag = std::abs(g);
                if (mag == 0.0) continue;
                double alpha = a(p, p).real();
                double beta = a(q, q).real();
                double tau = (beta - alpha) / (2.0 * mag);
                double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                        : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                std::complex<double> phase = g / mag;
                std::complex<double> s = t * c * phase;

                // B = U^dag A U with U mixing coordinates p and q:
                // columns first, then rows of the partially updated matrix.
                for (int k = 0; k < n; ++k) {
                    colp[k] = a(k, p);
                    colq[k] = a(k, q);
                }
                for (int k = 0; k < n; ++k) {
                    a(k, p) = c * colp[k] - std::conj(s) * colq[k];
                    a(k, q) = s * colp[k] + c * colq[k];
                }
                for (int k = 0; k < n; ++k) {
                    rowp[k] = a(p, k);
                    rowq[k] = a(q, k);
                }
                for (int k = 0; k < n; ++k) {
                    a(p, k) = c * rowp[k] - s * rowq[k];
                    a(q, k) = std::conj(s) * rowp[k] + c * rowq[k];
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }

    std::vector<double> eig(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) eig[static_cast<std::size_t>(i)] = a(i, i).real();
    std::sort(eig.begin(), eig.end());
    return eig;
}

double trace_norm_hermitian(const CMatrix& a) {
    double s = 0.0;
    for (double v : hermitian_eigenvalues(a)) s += std::abs(v);
    return s;
}

DensityOperator::DensityOperator(CMatrix m) : m_(std::move(m)) {
    if (m_.hermitian_defect() > 1e-12) throw std::invalid_argument("DensityOperator: not Hermitian");
    if (std::abs(m_.trace() - std::complex<double>(1.0)) > 1e-12)
        throw std::invalid_argument("DensityOperator: trace must be 1");
    auto eig = hermitian_eigenvalues(m_);
    if (!eig.empty() && eig.front() < -1e-10)
        throw std::invalid_argument("DensityOperator: negative eigenvalue");
}

DensityOperator DensityOperator::fully_mixed(int dim) {
    CMatrix m = CMatrix::identity(dim);
    m *= 1.0 / dim;
    return DensityOperator(std::move(m));
}

DensityOperator DensityOperator::pure(std::span<const std::complex<double>> amplitudes) {
    int dim = static_cast<int>(amplitudes.size());
    double norm2 = 0.0;
    for (const auto& z : amplitudes) norm2 += std::norm(z);
    if (std::abs(norm2 - 1.0) > 1e-12) throw std::invalid_argument("DensityOperator: amplitudes not normalized");
    CMatrix m(dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c)
            m(r, c) = amplitudes[static_cast<std::size_t>(r)] * std::conj(amplitudes[static_cast<std::size_t>(c)]);
    return DensityOperator(std::move(m));
}

DensityOperator DensityOperator::diagonal(std::span<const double> probs) {
    CMatrix m(static_cast<int>(probs.size()));
    for (int i = 0; i < m.dim(); ++i) m(i, i) = probs[static_cast<std::size_t>(i)];
    return DensityOperator(std::move(m));
}

void DensityOperator::store(std::ostream& out) const {
    out << dim() << '\n';
    char buf[64];
    for (int r = 0; r < dim(); ++r) {
        for (int c = 0; c < dim(); ++c) {
            const auto& z = m_(r, c);
            std::snprintf(buf, sizeof buf, "%.17g %.17g", z.real(), z.imag());
            out << buf << (c + 1 < dim() ? " " : "");
        }
        out << '\n';
    }
}

DensityOperator DensityOperator::load(std::istream& in) {
    int dim = 0;
    if (!(in >> dim)) throw std::invalid_argument("DensityOperator: bad header");
    CMatrix m(dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) {
            double re = 0.0, im = 0.0;
            if (!(in >> re >> im)) throw std::invalid_argument("DensityOperator: truncated data");
            m(r, c) = {re, im};
        }
    return DensityOperator(std::move(m));
}

double trace_distance(const DensityOperator& a, const DensityOperator& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("trace_distance: dimension mismatch");
    return trace_norm_hermitian(a.matrix() - b.matrix());
}

double von_neumann_entropy_bits(const DensityOperator& rho) {
    double h = 0.0;
    for (double lambda : hermitian_eigenvalues(rho.matrix()))
        if (lambda > 1e-13) h -= lambda * std::log2(lambda);
    return h;
}

DensityOperator dense_embedding(const DiagonalState& s) {
    if (s.num_bits() > 6) throw std::invalid_argument("dense_embedding: num_bits <= 6 required");
    CMatrix m(1 << s.num_bits());
    for (const auto& [basis, w] : s.entries())
        m(static_cast<int>(basis), static_cast<int>(basis)) = w.to_double();
    return DensityOperator(std::move(m));
}

EntropyReport entropy(const DiagonalState& s) { return {shannon_entropy_bits(s), "diagonal weights"}; }

EntropyReport entropy(const DensityOperator& rho) { return {von_neumann_entropy_bits(rho), "dense spectrum"}; }

}  // namespace qsrlab
