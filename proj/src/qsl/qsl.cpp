#include "qfront/qsl.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace qfront::qsl {

CyclicFrame cyclic_frame(const HermitianOperator& h, const Ket& psi0, double tol) {
    if (psi0.dim() != h.dim()) {
        throw ValidationError("cyclic_frame: state and operator dimensions differ");
    }
    KrylovBasis kb = krylov_basis(h.matrix(), psi0, tol);
    const Eigensystem es = hermitian_eigendecomposition(kb.restricted);
    CyclicFrame f;
    f.dim_k = kb.basis.cols();
    f.basis = std::move(kb.basis);
    f.restricted_h = std::move(kb.restricted);
    f.restricted_spectrum = es.values;
    f.e_min_k = es.values.front();
    return f;
}

QslReport qsl_bounds(const HermitianOperator& h, const Ket& psi0, double tol) {
    const CyclicFrame frame = cyclic_frame(h, psi0, tol);
    QslReport r;
    r.dim_k = frame.dim_k;
    r.delta_h = dynamics::fs_speed(h, psi0);
    // Column 0 of the frame is psi0 itself.
    r.e_ml = frame.restricted_h(0, 0).real() - frame.e_min_k;
    r.degenerate = frame.dim_k == 1 || !(r.delta_h > 0.0) || !(r.e_ml > 0.0);
    if (r.degenerate) {
        const double inf = std::numeric_limits<double>::infinity();
        r.tau_mt = r.delta_h > 0.0 ? std::numbers::pi / (2.0 * r.delta_h) : inf;
        r.tau_ml = r.e_ml > 0.0 ? std::numbers::pi / (2.0 * r.e_ml) : inf;
        r.tau_qsl = inf;
        return r;
    }
    r.tau_mt = std::numbers::pi / (2.0 * r.delta_h);
    r.tau_ml = std::numbers::pi / (2.0 * r.e_ml);
    r.tau_qsl = std::max(r.tau_mt, r.tau_ml);
    return r;
}

QslReport qsl_report(const HermitianOperator& h, const Ket& psi0, const dynamics::ChargingEvent& event, double tol) {
    if (!(event.time > 0.0)) {
        throw ValidationError("qsl_report: charging time must be positive");
    }
    QslReport r = qsl_bounds(h, psi0, tol);
    r.t_charge = event.time;
    if (!r.degenerate) {
        r.eta = r.tau_qsl / event.time;
    }
    return r;
}

}  // namespace qfront::qsl
