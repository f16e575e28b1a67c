#pragma once

#include "qsrlab/dyadic.hpp"

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace qsrlab {

/// Probability distribution over computational-basis strings with exact
/// dyadic weights. Entries are sorted by basis string; absent strings have
/// weight zero; stored weights are strictly positive and sum to one exactly.
///
/// Composite registers concatenate left to right into the basis string, so
/// the first register occupies the most significant bits.
class DiagonalState {
public:
    using Entry = std::pair<std::uint64_t, Dyadic>;

    DiagonalState(int num_bits, std::vector<Entry> weights);

    static DiagonalState point_mass(int num_bits, std::uint64_t basis);
    static DiagonalState uniform(int num_bits);

    int num_bits() const { return num_bits_; }
    std::size_t support_size() const { return entries_.size(); }
    const std::vector<Entry>& entries() const { return entries_; }
    Dyadic weight(std::uint64_t basis) const;

    /// Lines of "bitstring numerator/2^k".
    void store(std::ostream& out) const;
    static DiagonalState load(std::istream& in);

    friend bool operator==(const DiagonalState&, const DiagonalState&) = default;

private:
    int num_bits_ = 0;
    std::vector<Entry> entries_;
};

/// Kronecker product; a takes the high bits of the composite string.
DiagonalState tensor_diag(const DiagonalState& a, const DiagonalState& b);

/// Sum of |a(z) - b(z)| over the union of supports. For commuting diagonal
/// states this equals the trace norm of the difference.
Dyadic l1_distance(const DiagonalState& a, const DiagonalState& b);

/// Shannon entropy of the weights, in bits.
double shannon_entropy_bits(const DiagonalState& s);

/// Dense complex matrix, row-major, for small dimensions (<= 64).
class CMatrix {
public:
    CMatrix() = default;
    explicit CMatrix(int dim);
    static CMatrix identity(int dim);

    int dim() const { return dim_; }
    std::complex<double>& operator()(int r, int c) { return a_[static_cast<std::size_t>(r) * dim_ + c]; }
    const std::complex<double>& operator()(int r, int c) const { return a_[static_cast<std::size_t>(r) * dim_ + c]; }

    CMatrix& operator+=(const CMatrix& o);
    CMatrix& operator-=(const CMatrix& o);
    CMatrix& operator*=(double s);
    friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
    friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }

    std::complex<double> trace() const;
    double frobenius_norm() const;
    double hermitian_defect() const;  // max_ij |a(i,j) - conj(a(j,i))|

    /// b (x) this, with b scaled in; b takes the high qubits.
    CMatrix kron_from_left(const CMatrix& b) const;

private:
    int dim_ = 0;
    std::vector<std::complex<double>> a_;
};

/// Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations, ascending.
/// Sweeps run until the off-diagonal Frobenius norm falls below off_tol.
std::vector<double> hermitian_eigenvalues(CMatrix a, double off_tol = 1e-13);

/// Sum of absolute eigenvalues, i.e. the trace norm of a Hermitian matrix.
double trace_norm_hermitian(const CMatrix& a);

/// Density operator: Hermitian (to 1e-12 entrywise), unit trace (to 1e-12),
/// eigenvalues >= -1e-10. Construction validates.
class DensityOperator {
public:
    explicit DensityOperator(CMatrix m);

    int dim() const { return m_.dim(); }
    const CMatrix& matrix() const { return m_; }

    static DensityOperator fully_mixed(int dim);
    static DensityOperator pure(std::span<const std::complex<double>> amplitudes);
    static DensityOperator diagonal(std::span<const double> probs);

    /// "dim" header, then row-major "re im" pairs at 17 significant digits.
    void store(std::ostream& out) const;
    static DensityOperator load(std::istream& in);

private:
    CMatrix m_;
};

/// Trace norm of the difference of two density operators.
double trace_distance(const DensityOperator& a, const DensityOperator& b);

/// Von Neumann entropy in bits, from the eigenvalue spectrum.
double von_neumann_entropy_bits(const DensityOperator& rho);

/// Dense matrix with the diagonal weights of a DiagonalState (num_bits <= 6).
DensityOperator dense_embedding(const DiagonalState& s);

struct EntropyReport {
    double shannon_bits = 0.0;
    std::string source;
};

EntropyReport entropy(const DiagonalState& s);
EntropyReport entropy(const DensityOperator& rho);

}  // namespace qsrlab
