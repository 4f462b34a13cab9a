#include <bit>
#include <cmath>

#include "qfront/numkit.hpp"

namespace qfront {

namespace {

void require_state(const ComplexVector& psi, int n) {
    if (n < 0 || n > 30) {
        throw ValidationError("qubit count " + std::to_string(n) + " out of range");
    }
    if (psi.dim() != (std::size_t{1} << n)) {
        throw ValidationError("state has dimension " + std::to_string(psi.dim()) + ", expected 2^" +
                              std::to_string(n));
    }
}

void require_mask(QubitMask mask, int n) {
    if (n < 32 && (mask >> n) != 0) {
        throw ValidationError("qubit mask selects qubits beyond n = " + std::to_string(n));
    }
}

QubitMask full_mask(int n) {
    return n >= 32 ? ~QubitMask{0} : (QubitMask{1} << n) - 1;
}

}  // namespace

std::vector<std::size_t> subsystem_offsets(QubitMask mask, int n) {
    require_mask(mask, n);
    const auto qubits = qubits_from_mask(mask, n);
    const std::size_t k = qubits.size();
    std::vector<std::size_t> off(std::size_t{1} << k, 0);
    for (std::size_t a = 0; a < off.size(); ++a) {
        std::size_t g = 0;
        for (std::size_t j = 0; j < k; ++j) {
            if ((a >> (k - 1 - j)) & 1u) {
                g |= std::size_t{1} << (n - qubits[j]);
            }
        }
        off[a] = g;
    }
    return off;
}

QubitMask mask_from_qubits(std::span<const int> qubits, int n) {
    QubitMask mask = 0;
    for (const int q : qubits) {
        if (q < 1 || q > n) {
            throw ValidationError("qubit index " + std::to_string(q) + " out of range 1.." + std::to_string(n));
        }
        const QubitMask bit = QubitMask{1} << (q - 1);
        if (mask & bit) {
            throw ValidationError("qubit " + std::to_string(q) + " listed twice");
        }
        mask |= bit;
    }
    return mask;
}

std::vector<int> qubits_from_mask(QubitMask mask, int n) {
    std::vector<int> out;
    for (int q = 1; q <= n; ++q) {
        if ((mask >> (q - 1)) & 1u) {
            out.push_back(q);
        }
    }
    return out;
}

int qubit_count(std::size_t dim) {
    if (dim == 0 || !std::has_single_bit(dim)) {
        throw ValidationError("dimension " + std::to_string(dim) + " is not a power of two");
    }
    return std::countr_zero(dim);
}

ComplexMatrix bipartition_matrix(const ComplexVector& psi, QubitMask keep, int n) {
    require_state(psi, n);
    require_mask(keep, n);
    const auto rows = subsystem_offsets(keep, n);
    const auto cols = subsystem_offsets(full_mask(n) & ~keep, n);
    ComplexMatrix m(rows.size(), cols.size());
    for (std::size_t a = 0; a < rows.size(); ++a) {
        for (std::size_t b = 0; b < cols.size(); ++b) {
            m(a, b) = psi[rows[a] | cols[b]];
        }
    }
    return m;
}

ComplexMatrix partial_trace(const ComplexVector& psi, QubitMask keep, int n) {
    const ComplexMatrix m = bipartition_matrix(psi, keep, n);
    const std::size_t d = m.rows();
    const std::size_t r = m.cols();
    ComplexMatrix rho(d, d);
#pragma omp parallel for schedule(dynamic) if (d * d * r > (1u << 16))
    for (std::size_t i = 0; i < d; ++i) {
        const Complex* mi = m.row(i).data();
        for (std::size_t j = i; j < d; ++j) {
            const Complex* mj = m.row(j).data();
            Complex s{};
            for (std::size_t b = 0; b < r; ++b) {
                s += mi[b] * std::conj(mj[b]);
            }
            rho(i, j) = s;
            rho(j, i) = std::conj(s);
        }
    }
    return rho;
}

ComplexMatrix partial_trace(const ComplexVector& psi, std::span<const int> keep, int n) {
    return partial_trace(psi, mask_from_qubits(keep, n), n);
}

double purity(const ComplexMatrix& rho) {
    double s = 0.0;
    for (const auto& z : rho.entries()) {
        s += std::norm(z);
    }
    return s;
}

double subsystem_purity(const ComplexVector& psi, QubitMask keep, int n) {
    // rho_S = M M^dagger and M^dagger M share their nonzero spectrum; use the
    // smaller Gram matrix.
    const int k = std::popcount(keep);
    const QubitMask side = (2 * k <= n) ? keep : (full_mask(n) & ~keep);
    const ComplexMatrix m = bipartition_matrix(psi, side, n);
    const std::size_t d = m.rows();
    const std::size_t r = m.cols();
    double total = 0.0;
#pragma omp parallel for schedule(dynamic) reduction(+ : total) if (d * d * r > (1u << 16))
    for (std::size_t i = 0; i < d; ++i) {
        const Complex* mi = m.row(i).data();
        for (std::size_t j = i; j < d; ++j) {
            const Complex* mj = m.row(j).data();
            Complex s{};
            for (std::size_t b = 0; b < r; ++b) {
                s += mi[b] * std::conj(mj[b]);
            }
            total += (i == j ? 1.0 : 2.0) * std::norm(s);
        }
    }
    return total;
}

namespace reference {

ComplexVector matvec(const ComplexMatrix& m, const ComplexVector& v) {
    if (m.cols() != v.dim()) {
        throw ValidationError("reference::matvec dimension mismatch");
    }
    ComplexVector out(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Complex s{};
        for (std::size_t c = 0; c < m.cols(); ++c) {
            s += m(r, c) * v[c];
        }
        out[r] = s;
    }
    return out;
}

ComplexMatrix partial_trace(const ComplexVector& psi, QubitMask keep, int n) {
    require_state(psi, n);
    require_mask(keep, n);
    const auto kept = qubits_from_mask(keep, n);
    const std::size_t k = kept.size();
    std::size_t traced_bits = 0;
    for (int q = 1; q <= n; ++q) {
        if (!((keep >> (q - 1)) & 1u)) {
            traced_bits |= std::size_t{1} << (n - q);
        }
    }
    auto local = [&](std::size_t global) {
        std::size_t a = 0;
        for (std::size_t j = 0; j < k; ++j) {
            a = (a << 1) | ((global >> (n - kept[j])) & 1u);
        }
        return a;
    };
    ComplexMatrix rho(std::size_t{1} << k, std::size_t{1} << k);
    for (std::size_t i = 0; i < psi.dim(); ++i) {
        for (std::size_t j = 0; j < psi.dim(); ++j) {
            if ((i & traced_bits) == (j & traced_bits)) {
                rho(local(i), local(j)) += psi[i] * std::conj(psi[j]);
            }
        }
    }
    return rho;
}

double subsystem_purity(const ComplexVector& psi, QubitMask keep, int n) {
    return purity(reference::partial_trace(psi, keep, n));
}

}  // namespace reference

}  // namespace qfront
