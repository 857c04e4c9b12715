#include "ingham/pencil.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "ingham/error.hpp"

namespace ingham {

namespace {

double off_norm2(const HermitianMatrix& a) {
    double s = 0.0;
    for (Eigen::Index c = 0; c < a.cols(); ++c)
        for (Eigen::Index r = 0; r < a.rows(); ++r)
            if (r != c) s += std::norm(a(r, c));
    return s;
}

} // namespace

EigenDecomposition jacobi_eigen(const HermitianMatrix& input, double rel_tol, int max_sweeps) {
    if (input.rows() != input.cols()) throw StructuralError("jacobi_eigen needs a square matrix");
    const Eigen::Index n = input.rows();
    HermitianMatrix a = 0.5 * (input + input.adjoint());
    HermitianMatrix v = HermitianMatrix::Identity(n, n);

    const double scale = a.norm();
    const double target = rel_tol * scale;
    int sweep = 0;
    while (sweep < max_sweeps && std::sqrt(off_norm2(a)) > target) {
        ++sweep;
        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag == 0.0) continue;
                const cplx phase = apq / mag;  // e^{i phi}
                const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // U = diag(1, e^{-i phi}) * [[c, s], [-s, c]] acting on (p, q)
                const cplx upp = c;
                const cplx upq = s;
                const cplx uqp = -s * std::conj(phase);
                const cplx uqq = c * std::conj(phase);

                for (Eigen::Index r = 0; r < n; ++r) {
                    const cplx arp = a(r, p), arq = a(r, q);
                    a(r, p) = arp * upp + arq * uqp;
                    a(r, q) = arp * upq + arq * uqq;
                }
                for (Eigen::Index col = 0; col < n; ++col) {
                    const cplx apc = a(p, col), aqc = a(q, col);
                    a(p, col) = std::conj(upp) * apc + std::conj(uqp) * aqc;
                    a(q, col) = std::conj(upq) * apc + std::conj(uqq) * aqc;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();

                for (Eigen::Index r = 0; r < n; ++r) {
                    const cplx vrp = v(r, p), vrq = v(r, q);
                    v(r, p) = vrp * upp + vrq * uqp;
                    v(r, q) = vrp * upq + vrq * uqq;
                }
            }
        }
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index x, Eigen::Index y) { return a(x, x).real() < a(y, y).real(); });

    EigenDecomposition out;
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        out.vectors.col(k) = v.col(order[k]);
    }
    out.sweeps = sweep;
    return out;
}

EigenDecomposition hermitian_pencil_eig(const HermitianMatrix& S, const HermitianMatrix& Q) {
    if (S.rows() != S.cols() || Q.rows() != Q.cols() || S.rows() != Q.rows())
        throw StructuralError("pencil matrices must be square and of equal size");
    const Eigen::LLT<HermitianMatrix> llt(0.5 * (Q + Q.adjoint()));
    if (llt.info() != Eigen::Success)
        throw ValidationError("q_not_positive_definite", "Q not positive definite (Cholesky failed)");
    const auto L = llt.matrixL();
    const HermitianMatrix Y = L.solve(S);                 // L^{-1} S
    const HermitianMatrix C = L.solve(Y.adjoint());       // L^{-1} S L^{-*}
    auto eig = jacobi_eigen(0.5 * (C + C.adjoint()));
    eig.vectors = llt.matrixU().solve(eig.vectors);       // L^{-*} y
    return eig;
}

} // namespace ingham
