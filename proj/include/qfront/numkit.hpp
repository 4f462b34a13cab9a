#pragma once

// Dense complex linear algebra for the 2^n-dimensional spaces used throughout
// the library. Matrices are row-major. Qubit 1 is the most significant bit of a
// computational-basis index: for n qubits, qubit q lives at bit (n - q).

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qfront/tolerances.hpp"

namespace qfront {

using Complex = std::complex<double>;

/// Raised for malformed inputs: dimension mismatches, non-Hermitian
/// operators, out-of-range qubit indices, invalid partitions.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ComplexVector {
public:
    ComplexVector() = default;
    explicit ComplexVector(std::size_t dim) : data_(dim) {}
    explicit ComplexVector(std::vector<Complex> entries) : data_(std::move(entries)) {}
    ComplexVector(std::initializer_list<Complex> entries) : data_(entries) {}

    std::size_t dim() const noexcept { return data_.size(); }
    Complex& operator[](std::size_t i) noexcept { return data_[i]; }
    const Complex& operator[](std::size_t i) const noexcept { return data_[i]; }

    std::span<Complex> entries() noexcept { return data_; }
    std::span<const Complex> entries() const noexcept { return data_; }

    auto begin() noexcept { return data_.begin(); }
    auto end() noexcept { return data_.end(); }
    auto begin() const noexcept { return data_.begin(); }
    auto end() const noexcept { return data_.end(); }

    bool all_finite() const noexcept;

    static ComplexVector basis(std::size_t dim, std::size_t index);

private:
    std::vector<Complex> data_;
};

class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> row_major);

    static ComplexMatrix identity(std::size_t dim);
    /// Builds a row-major matrix from nested rows; all rows must have equal length.
    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    Complex& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

    std::span<Complex> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
    std::span<const Complex> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }

    std::span<Complex> entries() noexcept { return data_; }
    std::span<const Complex> entries() const noexcept { return data_; }

    ComplexVector column(std::size_t c) const;
    void set_column(std::size_t c, const ComplexVector& v);

    ComplexMatrix adjoint() const;
    double max_abs() const noexcept;
    /// max_ij |M_ij - conj(M_ji)|; infinite for non-square matrices.
    double hermiticity_defect() const noexcept;
    bool all_finite() const noexcept;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

/// A dense operator validated as Hermitian on construction.
class HermitianOperator {
public:
    HermitianOperator() = default;
    explicit HermitianOperator(ComplexMatrix m, double tol = kDefaultTolerances.hermitian);

    std::size_t dim() const noexcept { return m_.rows(); }
    const ComplexMatrix& matrix() const noexcept { return m_; }

private:
    ComplexMatrix m_;
};

using Ket = ComplexVector;

// --- vector algebra -------------------------------------------------------

/// <a|b>, conjugate-linear in the first argument.
Complex inner(const ComplexVector& a, const ComplexVector& b);
double norm(const ComplexVector& v);
ComplexVector normalized(const ComplexVector& v);
/// a + s * b
ComplexVector axpy(const ComplexVector& a, Complex s, const ComplexVector& b);
/// Kronecker product a (x) b, with a on the high-order bits.
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);

// --- matrix algebra (OpenMP-parallel over rows) ---------------------------

ComplexVector matvec(const ComplexMatrix& m, const ComplexVector& v);
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
/// a^dagger * b
ComplexMatrix adjoint_matmul(const ComplexMatrix& a, const ComplexMatrix& b);
double frobenius_norm(const ComplexMatrix& m);
/// Largest entrywise |a - b|.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// <v|M|v>
Complex expectation(const ComplexMatrix& m, const ComplexVector& v);

/// Composite Simpson rule for samples on a uniform grid with spacing h; the
/// sample count must be odd and at least 3.
double simpson(std::span<const double> values, double h);

// --- eigensolvers ---------------------------------------------------------

struct Eigensystem {
    std::vector<double> values;  ///< ascending
    ComplexMatrix vectors;       ///< column j is the eigenvector of values[j]
};

/// Householder reduction to real tridiagonal form followed by implicit QL.
/// Throws ValidationError when the input is not Hermitian within
/// `tol * max|M|`.
Eigensystem hermitian_eigendecomposition(const ComplexMatrix& m, double tol = kDefaultTolerances.hermitian);
Eigensystem hermitian_eigendecomposition(const HermitianOperator& h);

// --- subspaces ------------------------------------------------------------

/// Orthonormalizes `vectors` in order (two passes of classical Gram-Schmidt
/// per vector). A vector whose norm after projection is below `tol` is dropped.
std::vector<ComplexVector> gram_schmidt_extend(std::span<const ComplexVector> vectors, double tol);

/// Orthonormal basis of span{v, Hv, H^2 v, ...}, built Arnoldi-style with full
/// reorthogonalization. Iteration stops once the new direction's
/// post-projection norm drops below `tol * |H q_j|`.
struct KrylovBasis {
    ComplexMatrix basis;       ///< dim x k, orthonormal columns; column 0 is v/|v|
    ComplexMatrix restricted;  ///< k x k, basis^dagger H basis (exactly Hermitian)
};
KrylovBasis krylov_basis(const ComplexMatrix& h, const ComplexVector& v, double tol);

// --- subsystems -----------------------------------------------------------

/// Bitmask over qubits: bit (q - 1) set means qubit q (1-based) is included.
using QubitMask = std::uint32_t;

QubitMask mask_from_qubits(std::span<const int> qubits, int n);
std::vector<int> qubits_from_mask(QubitMask mask, int n);
/// Number of qubits n with 2^n == dim; throws if dim is not a power of two.
int qubit_count(std::size_t dim);

/// Reduced density matrix on `keep` (1-based qubit indices, any order;
/// returned in ascending-qubit order with the lowest kept qubit as the most
/// significant bit). An empty `keep` traces out everything and yields [[<psi|psi>]].
ComplexMatrix partial_trace(const ComplexVector& psi, std::span<const int> keep, int n);
ComplexMatrix partial_trace(const ComplexVector& psi, QubitMask keep, int n);

/// Tr rho^2 for a density matrix.
double purity(const ComplexMatrix& rho);

/// Tr rho_S^2 for the reduction of psi onto the qubits in `keep`, without
/// forming rho_S. Uses whichever of the two Gram matrices is smaller.
double subsystem_purity(const ComplexVector& psi, QubitMask keep, int n);

/// Global basis-index offset of every local index of the qubits in `mask`
/// (lowest qubit number is the most significant local bit). Any basis index
/// splits uniquely as offsets(mask)[a] | offsets(~mask)[b].
std::vector<std::size_t> subsystem_offsets(QubitMask mask, int n);

/// Reshape psi into the (2^|keep|) x (2^(n-|keep|)) matrix M with
/// psi = sum_ab M_ab |a>_keep |b>_rest.
ComplexMatrix bipartition_matrix(const ComplexVector& psi, QubitMask keep, int n);

// --- serial reference kernels ---------------------------------------------
//
// Straight-line single-threaded implementations kept to cross-check the
// parallel kernels above in tests and benchmarks.

namespace reference {

ComplexVector matvec(const ComplexMatrix& m, const ComplexVector& v);
/// Cyclic complex Jacobi rotations; O(d^3) per sweep.
Eigensystem jacobi_eigendecomposition(const ComplexMatrix& m, double tol = kDefaultTolerances.hermitian);
/// rho_ij = sum over basis states that agree with (i, j) on the traced qubits.
ComplexMatrix partial_trace(const ComplexVector& psi, QubitMask keep, int n);
double subsystem_purity(const ComplexVector& psi, QubitMask keep, int n);

}  // namespace reference

}  // namespace qfront
