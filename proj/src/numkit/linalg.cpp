#include <algorithm>
#include <cmath>
#include <limits>

#include "qfront/numkit.hpp"

namespace qfront {

namespace {

// Below this many complex multiply-adds the OpenMP fork costs more than it saves.
constexpr std::size_t kParallelWork = 1u << 14;

}  // namespace

bool ComplexVector::all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(),
                       [](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

ComplexVector ComplexVector::basis(std::size_t dim, std::size_t index) {
    if (index >= dim) {
        throw ValidationError("basis index " + std::to_string(index) + " out of range for dimension " +
                              std::to_string(dim));
    }
    ComplexVector v(dim);
    v[index] = 1.0;
    return v;
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
    if (data_.size() != rows * cols) {
        throw ValidationError("matrix data has " + std::to_string(data_.size()) + " entries, expected " +
                              std::to_string(rows * cols));
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    std::vector<Complex> data;
    data.reserve(r * c);
    for (const auto& row : rows) {
        if (row.size() != c) {
            throw ValidationError("ragged rows in matrix literal");
        }
        data.insert(data.end(), row.begin(), row.end());
    }
    return ComplexMatrix(r, c, std::move(data));
}

ComplexVector ComplexMatrix::column(std::size_t c) const {
    ComplexVector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        v[r] = (*this)(r, c);
    }
    return v;
}

void ComplexMatrix::set_column(std::size_t c, const ComplexVector& v) {
    if (v.dim() != rows_) {
        throw ValidationError("column length mismatch");
    }
    for (std::size_t r = 0; r < rows_; ++r) {
        (*this)(r, c) = v[r];
    }
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            out(c, r) = std::conj((*this)(r, c));
        }
    }
    return out;
}

double ComplexMatrix::max_abs() const noexcept {
    double m = 0.0;
    for (const auto& z : data_) {
        m = std::max(m, std::abs(z));
    }
    return m;
}

double ComplexMatrix::hermiticity_defect() const noexcept {
    if (!is_square()) {
        return std::numeric_limits<double>::infinity();
    }
    double d = 0.0;
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = r; c < cols_; ++c) {
            d = std::max(d, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
        }
    }
    return d;
}

bool ComplexMatrix::all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(),
                       [](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

HermitianOperator::HermitianOperator(ComplexMatrix m, double tol) : m_(std::move(m)) {
    if (!m_.is_square()) {
        throw ValidationError("Hermitian operator must be square, got " + std::to_string(m_.rows()) + "x" +
                              std::to_string(m_.cols()));
    }
    if (!m_.all_finite()) {
        throw ValidationError("operator has non-finite entries");
    }
    const double defect = m_.hermiticity_defect();
    if (defect > tol * m_.max_abs()) {
        throw ValidationError("operator is not Hermitian: max|M - M^dagger| = " + std::to_string(defect));
    }
}

Complex inner(const ComplexVector& a, const ComplexVector& b) {
    if (a.dim() != b.dim()) {
        throw ValidationError("inner product of vectors with dimensions " + std::to_string(a.dim()) + " and " +
                              std::to_string(b.dim()));
    }
    Complex s{};
    for (std::size_t i = 0; i < a.dim(); ++i) {
        s += std::conj(a[i]) * b[i];
    }
    return s;
}

double norm(const ComplexVector& v) {
    double s = 0.0;
    for (const auto& z : v) {
        s += std::norm(z);
    }
    return std::sqrt(s);
}

ComplexVector normalized(const ComplexVector& v) {
    const double n = norm(v);
    if (n == 0.0) {
        throw ValidationError("cannot normalize the zero vector");
    }
    ComplexVector out = v;
    for (auto& z : out) {
        z /= n;
    }
    return out;
}

ComplexVector axpy(const ComplexVector& a, Complex s, const ComplexVector& b) {
    if (a.dim() != b.dim()) {
        throw ValidationError("axpy dimension mismatch");
    }
    ComplexVector out = a;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        out[i] += s * b[i];
    }
    return out;
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
    ComplexVector out(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < b.dim(); ++j) {
            out[i * b.dim() + j] = a[i] * b[j];
        }
    }
    return out;
}

ComplexVector matvec(const ComplexMatrix& m, const ComplexVector& v) {
    if (m.cols() != v.dim()) {
        throw ValidationError("matvec: matrix has " + std::to_string(m.cols()) + " columns, vector has dimension " +
                              std::to_string(v.dim()));
    }
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    ComplexVector out(rows);
    const Complex* x = v.entries().data();
#pragma omp parallel for schedule(static) if (rows * cols > kParallelWork)
    for (std::size_t r = 0; r < rows; ++r) {
        const Complex* a = m.row(r).data();
        Complex s{};
        for (std::size_t c = 0; c < cols; ++c) {
            s += a[c] * x[c];
        }
        out[r] = s;
    }
    return out;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        throw ValidationError("matmul: inner dimensions differ");
    }
    const std::size_t n = a.rows();
    const std::size_t k = a.cols();
    const std::size_t m = b.cols();
    ComplexMatrix out(n, m);
#pragma omp parallel for schedule(static) if (n * k * m > kParallelWork)
    for (std::size_t i = 0; i < n; ++i) {
        Complex* o = out.row(i).data();
        for (std::size_t l = 0; l < k; ++l) {
            const Complex ail = a(i, l);
            if (ail == Complex{}) {
                continue;
            }
            const Complex* brow = b.row(l).data();
            for (std::size_t j = 0; j < m; ++j) {
                o[j] += ail * brow[j];
            }
        }
    }
    return out;
}

ComplexMatrix adjoint_matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows()) {
        throw ValidationError("adjoint_matmul: row counts differ");
    }
    const std::size_t n = a.cols();
    const std::size_t k = a.rows();
    const std::size_t m = b.cols();
    ComplexMatrix out(n, m);
#pragma omp parallel for schedule(static) if (n * k * m > kParallelWork)
    for (std::size_t i = 0; i < n; ++i) {
        Complex* o = out.row(i).data();
        for (std::size_t l = 0; l < k; ++l) {
            const Complex ali = std::conj(a(l, i));
            const Complex* brow = b.row(l).data();
            for (std::size_t j = 0; j < m; ++j) {
                o[j] += ali * brow[j];
            }
        }
    }
    return out;
}

double frobenius_norm(const ComplexMatrix& m) {
    double s = 0.0;
    for (const auto& z : m.entries()) {
        s += std::norm(z);
    }
    return std::sqrt(s);
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ValidationError("max_abs_diff: shape mismatch");
    }
    double d = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i) {
        d = std::max(d, std::abs(a.entries()[i] - b.entries()[i]));
    }
    return d;
}

Complex expectation(const ComplexMatrix& m, const ComplexVector& v) {
    return inner(v, matvec(m, v));
}

double simpson(std::span<const double> values, double h) {
    const std::size_t n = values.size();
    if (n < 3 || n % 2 == 0) {
        throw ValidationError("Simpson's rule needs an odd number (>= 3) of samples, got " + std::to_string(n));
    }
    double s = values.front() + values.back();
    for (std::size_t i = 1; i + 1 < n; ++i) {
        s += (i % 2 == 1 ? 4.0 : 2.0) * values[i];
    }
    return s * h / 3.0;
}

std::vector<ComplexVector> gram_schmidt_extend(std::span<const ComplexVector> vectors, double tol) {
    std::vector<ComplexVector> out;
    if (vectors.empty()) {
        return out;
    }
    const std::size_t dim = vectors.front().dim();
    for (const auto& v : vectors) {
        if (v.dim() != dim) {
            throw ValidationError("gram_schmidt_extend: vectors have different dimensions");
        }
        ComplexVector r = v;
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& q : out) {
                const Complex c = inner(q, r);
                for (std::size_t i = 0; i < dim; ++i) {
                    r[i] -= c * q[i];
                }
            }
        }
        const double nr = norm(r);
        if (nr < tol) {
            continue;
        }
        for (auto& z : r) {
            z /= nr;
        }
        out.push_back(std::move(r));
    }
    return out;
}

KrylovBasis krylov_basis(const ComplexMatrix& h, const ComplexVector& v, double tol) {
    if (!h.is_square() || h.cols() != v.dim()) {
        throw ValidationError("krylov_basis: operator and vector dimensions differ");
    }
    const std::size_t dim = v.dim();
    std::vector<ComplexVector> q{normalized(v)};
    std::vector<ComplexVector> hq;
    while (true) {
        ComplexVector w = matvec(h, q.back());
        const double wnorm = norm(w);
        hq.push_back(w);
        if (q.size() == dim) {
            break;
        }
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& b : q) {
                const Complex c = inner(b, w);
                for (std::size_t i = 0; i < dim; ++i) {
                    w[i] -= c * b[i];
                }
            }
        }
        const double beta = norm(w);
        if (beta <= tol * wnorm || beta == 0.0) {
            break;
        }
        for (auto& z : w) {
            z /= beta;
        }
        q.push_back(std::move(w));
    }

    const std::size_t k = q.size();
    KrylovBasis out{ComplexMatrix(dim, k), ComplexMatrix(k, k)};
    for (std::size_t j = 0; j < k; ++j) {
        out.basis.set_column(j, q[j]);
    }
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            out.restricted(i, j) = inner(q[i], hq[j]);
        }
    }
    for (std::size_t i = 0; i < k; ++i) {
        out.restricted(i, i) = out.restricted(i, i).real();
        for (std::size_t j = i + 1; j < k; ++j) {
            const Complex avg = 0.5 * (out.restricted(i, j) + std::conj(out.restricted(j, i)));
            out.restricted(i, j) = avg;
            out.restricted(j, i) = std::conj(avg);
        }
    }
    return out;
}

}  // namespace qfront
