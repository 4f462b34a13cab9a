#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "qfront/numkit.hpp"

namespace qfront {

namespace {

void require_hermitian(const ComplexMatrix& m, double tol) {
    if (!m.is_square()) {
        throw ValidationError("eigendecomposition needs a square matrix");
    }
    if (!m.all_finite()) {
        throw ValidationError("eigendecomposition input has non-finite entries");
    }
    const double defect = m.hermiticity_defect();
    if (defect > tol * m.max_abs()) {
        throw ValidationError("eigendecomposition input is not Hermitian: max|M - M^dagger| = " +
                              std::to_string(defect) + " exceeds " + std::to_string(tol) + " * max|M|");
    }
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
    const std::size_t n = m.rows();
    ComplexMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = m(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex z = 0.5 * (m(i, j) + std::conj(m(j, i)));
            a(i, j) = z;
            a(j, i) = std::conj(z);
        }
    }
    return a;
}

// Implicit QL on a real symmetric tridiagonal matrix (diag d, off-diagonal e
// with e[i] coupling i and i+1). Rotations are applied to the rows of zt, which
// holds the eigenvector estimates as rows.
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e, ComplexMatrix& zt) {
    const std::size_t n = d.size();
    const double eps = std::numeric_limits<double>::epsilon();
    const std::size_t cols = zt.cols();
    double f = 0.0;
    double tst1 = 0.0;
    for (std::size_t l = 0; l < n; ++l) {
        tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
        std::size_t m = l;
        while (m < n) {
            if (std::abs(e[m]) <= eps * tst1) {
                break;
            }
            ++m;
        }
        if (m > l) {
            int iter = 0;
            do {
                if (++iter > 200) {
                    throw std::runtime_error("tridiagonal QL failed to converge");
                }
                double g = d[l];
                double p = (d[l + 1] - g) / (2.0 * e[l]);
                double r = std::hypot(p, 1.0);
                if (p < 0) {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                const double dl1 = d[l + 1];
                double h = g - d[l];
                for (std::size_t i = l + 2; i < n; ++i) {
                    d[i] -= h;
                }
                f += h;

                p = d[m];
                double c = 1.0;
                double c2 = c;
                double c3 = c;
                const double el1 = e[l + 1];
                double s = 0.0;
                double s2 = 0.0;
                for (std::size_t ii = m; ii-- > l;) {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[ii];
                    h = c * p;
                    r = std::hypot(p, e[ii]);
                    e[ii + 1] = s * r;
                    s = e[ii] / r;
                    c = p / r;
                    p = c * d[ii] - s * g;
                    d[ii + 1] = h + s * (c * g + s * d[ii]);

                    Complex* zi = zt.row(ii).data();
                    Complex* zi1 = zt.row(ii + 1).data();
                    for (std::size_t k = 0; k < cols; ++k) {
                        const Complex hk = zi1[k];
                        zi1[k] = s * zi[k] + c * hk;
                        zi[k] = c * zi[k] - s * hk;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
            } while (std::abs(e[l]) > eps * tst1);
        }
        d[l] += f;
        e[l] = 0.0;
    }
}

Eigensystem sorted_system(std::vector<double> values, const ComplexMatrix& vectors_as_rows) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    Eigensystem out{std::vector<double>(n), ComplexMatrix(vectors_as_rows.cols(), n)};
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = values[order[j]];
        const auto src = vectors_as_rows.row(order[j]);
        for (std::size_t r = 0; r < src.size(); ++r) {
            out.vectors(r, j) = src[r];
        }
    }
    return out;
}

}  // namespace

Eigensystem hermitian_eigendecomposition(const ComplexMatrix& m, double tol) {
    require_hermitian(m, tol);
    const std::size_t n = m.rows();
    if (n == 0) {
        return {};
    }
    ComplexMatrix a = hermitian_part(m);
    // Transformation accumulated with rows as basis vectors: qt = Q^T, so the
    // reflector updates touch contiguous memory.
    ComplexMatrix qt = ComplexMatrix::identity(n);
    std::vector<Complex> v(n);
    std::vector<Complex> w(n);

    for (std::size_t k = 0; k + 2 < n; ++k) {
        double xnorm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) {
            xnorm2 += std::norm(a(i, k));
        }
        const double xnorm = std::sqrt(xnorm2);
        const Complex x0 = a(k + 1, k);
        if (xnorm == 0.0 || xnorm2 - std::norm(x0) == 0.0) {
            continue;  // already tridiagonal in this column
        }
        const Complex phase = std::abs(x0) == 0.0 ? Complex(1.0) : x0 / std::abs(x0);
        const Complex alpha = -phase * xnorm;

        double vnorm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) {
            v[i] = a(i, k);
        }
        v[k + 1] -= alpha;
        for (std::size_t i = k + 1; i < n; ++i) {
            vnorm2 += std::norm(v[i]);
        }
        const double vnorm = std::sqrt(vnorm2);
        for (std::size_t i = k + 1; i < n; ++i) {
            v[i] /= vnorm;
        }

        // p = A v on the trailing block, then w = p - (v^dagger p) v.
#pragma omp parallel for schedule(static) if ((n - k) * (n - k) > (1u << 14))
        for (std::size_t i = k + 1; i < n; ++i) {
            const Complex* ai = a.row(i).data();
            Complex s{};
            for (std::size_t j = k + 1; j < n; ++j) {
                s += ai[j] * v[j];
            }
            w[i] = s;
        }
        double kappa = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) {
            kappa += (std::conj(v[i]) * w[i]).real();
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            w[i] -= kappa * v[i];
        }
        // A <- A - 2 (v w^dagger + w v^dagger)
#pragma omp parallel for schedule(static) if ((n - k) * (n - k) > (1u << 14))
        for (std::size_t i = k + 1; i < n; ++i) {
            Complex* ai = a.row(i).data();
            const Complex vi = v[i];
            const Complex wi = w[i];
            for (std::size_t j = k + 1; j < n; ++j) {
                ai[j] -= 2.0 * (vi * std::conj(w[j]) + wi * std::conj(v[j]));
            }
        }
        a(k + 1, k) = alpha;
        a(k, k + 1) = std::conj(alpha);
        for (std::size_t i = k + 2; i < n; ++i) {
            a(i, k) = 0.0;
            a(k, i) = 0.0;
        }

        // Q <- Q (I - 2 v v^dagger); with rows of qt holding columns of Q:
        // qt_j <- qt_j - 2 v_j^* sum_i v_i qt_i  (j, i >= k+1)
        std::vector<Complex> acc(n);
        for (std::size_t i = k + 1; i < n; ++i) {
            const Complex vi = v[i];
            const Complex* qi = qt.row(i).data();
            for (std::size_t c = 0; c < n; ++c) {
                acc[c] += vi * qi[c];
            }
        }
#pragma omp parallel for schedule(static) if ((n - k) * n > (1u << 14))
        for (std::size_t j = k + 1; j < n; ++j) {
            const Complex s = 2.0 * std::conj(v[j]);
            Complex* qj = qt.row(j).data();
            for (std::size_t c = 0; c < n; ++c) {
                qj[c] -= s * acc[c];
            }
        }
    }

    // Tridiagonal with complex off-diagonal e_i = a(i+1, i). A diagonal phase
    // similarity makes it real: column i of Q is scaled by phi_i.
    std::vector<double> d(n);
    std::vector<double> e(n, 0.0);
    Complex phi = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        d[i] = a(i, i).real();
        if (i > 0) {
            const Complex sub = a(i, i - 1);
            const double mag = std::abs(sub);
            if (mag > 0.0) {
                phi *= sub / mag;
            }
            e[i - 1] = mag;
        }
        for (auto& z : qt.row(i)) {
            z *= phi;
        }
    }

    tridiagonal_ql(d, e, qt);
    return sorted_system(std::move(d), qt);
}

Eigensystem hermitian_eigendecomposition(const HermitianOperator& h) {
    return hermitian_eigendecomposition(h.matrix());
}

namespace reference {

Eigensystem jacobi_eigendecomposition(const ComplexMatrix& m, double tol) {
    require_hermitian(m, tol);
    const std::size_t n = m.rows();
    ComplexMatrix a = hermitian_part(m);
    ComplexMatrix v = ComplexMatrix::identity(n);
    const double scale = std::max(frobenius_norm(a), std::numeric_limits<double>::min());

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                off += std::norm(a(p, q));
            }
        }
        if (std::sqrt(off) <= 1e-15 * scale) {
            break;
        }
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag <= 1e-300) {
                    continue;
                }
                const Complex eiphi = apq / mag;
                const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                // J = diag phase (on q) followed by a real rotation.
                const Complex jpp = c;
                const Complex jpq = s;
                const Complex jqp = -s * std::conj(eiphi);
                const Complex jqq = c * std::conj(eiphi);
                for (std::size_t r = 0; r < n; ++r) {
                    const Complex ap = a(r, p);
                    const Complex aq = a(r, q);
                    a(r, p) = ap * jpp + aq * jqp;
                    a(r, q) = ap * jpq + aq * jqq;
                }
                for (std::size_t col = 0; col < n; ++col) {
                    const Complex ap = a(p, col);
                    const Complex aq = a(q, col);
                    a(p, col) = std::conj(jpp) * ap + std::conj(jqp) * aq;
                    a(q, col) = std::conj(jpq) * ap + std::conj(jqq) * aq;
                }
                for (std::size_t r = 0; r < n; ++r) {
                    const Complex vp = v(r, p);
                    const Complex vq = v(r, q);
                    v(r, p) = vp * jpp + vq * jqp;
                    v(r, q) = vp * jpq + vq * jqq;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }

    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) {
        values[i] = a(i, i).real();
    }
    ComplexMatrix vt(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            vt(c, r) = v(r, c);
        }
    }
    return sorted_system(std::move(values), vt);
}

}  // namespace reference

}  // namespace qfront
