#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "exmean/types.hpp"

namespace exmean {

/// Full spectral decomposition of a Hermitian matrix.
/// Eigenvalues are sorted non-increasing; column i of eigenvectors pairs
/// with eigenvalues[i].
template <typename Scalar>
struct EigenDecomposition {
    RealVector eigenvalues;
    Matrix<Scalar> eigenvectors;

    /// lambda_m - lambda_{m+1} with 1-based m; the quantity controlling
    /// uniqueness and stability of the Grassmann projection.
    double eigengap(Eigen::Index m) const {
        if (m < 1 || m >= eigenvalues.size())
            throw std::invalid_argument("eigengap: need 1 <= m < d+1");
        return eigenvalues[m - 1] - eigenvalues[m];
    }
};

struct JacobiOptions {
    double relative_tolerance = 1e-13;  // off-diagonal Frobenius mass vs ||A||_F
    int max_sweeps = 100;
};

namespace detail {

inline double abs2(double x) { return x * x; }
inline double abs2(const Complex& x) { return std::norm(x); }

}  // namespace detail

/// Cyclic Jacobi eigensolver for Hermitian (or real symmetric) matrices.
///
/// Each (p,q) step factors out the phase of a_pq and applies the classic
/// symmetric 2x2 rotation, which keeps one code path for both scalar
/// fields; real input never leaves real arithmetic. Sweeps run in a fixed
/// order with no randomization, so identical input bits give identical
/// output bits.
template <typename Scalar>
EigenDecomposition<Scalar> eigendecompose(const HermitianMatrix<Scalar>& input,
                                          const JacobiOptions& opts = {}) {
    Matrix<Scalar> a = input.entries();
    const Eigen::Index n = a.rows();
    Matrix<Scalar> v = Matrix<Scalar>::Identity(n, n);

    const double fro = a.norm();
    const double off_target = opts.relative_tolerance * fro;

    auto off_diagonal_norm = [&]() {
        double sum = 0.0;
        for (Eigen::Index p = 0; p < n; ++p)
            for (Eigen::Index q = p + 1; q < n; ++q) sum += detail::abs2(a(p, q));
        return std::sqrt(2.0 * sum);
    };

    double off = off_diagonal_norm();
    int sweep = 0;
    while (off > off_target && sweep < opts.max_sweeps) {
        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const double apq_abs = std::sqrt(detail::abs2(a(p, q)));
                if (apq_abs <= 1e-18 * std::max(fro, 1e-300)) continue;

                // Phase so that conj(phi)*a_pq is real and positive.
                const Scalar phi = a(p, q) / Scalar(apq_abs);

                const double app = std::real(a(p, p));
                const double aqq = std::real(a(q, q));
                const double tau = (aqq - app) / (2.0 * apq_abs);
                const double t = (tau >= 0.0)
                                     ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                     : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // A <- J^* A J and V <- V J with J = [[c, s], [-conj(phi)s, conj(phi)c]]
                // on the (p,q) plane.
                const Scalar phic = Eigen::numext::conj(phi);
                const Vector<Scalar> colp = a.col(p), colq = a.col(q);
                a.col(p) = c * colp - (phic * s) * colq;
                a.col(q) = s * colp + (phic * c) * colq;
                const Matrix<Scalar> rowp = a.row(p), rowq = a.row(q);
                a.row(p) = c * rowp - (phi * s) * rowq;
                a.row(q) = s * rowp + (phi * c) * rowq;
                const Vector<Scalar> vp = v.col(p), vq = v.col(q);
                v.col(p) = c * vp - (phic * s) * vq;
                v.col(q) = s * vp + (phic * c) * vq;

                // Clean the annihilated pair; rounding would otherwise leave
                // O(eps) debris that the convergence test keeps chasing.
                a(p, q) = Scalar(0);
                a(q, p) = Scalar(0);
            }
        }
        ++sweep;
        off = off_diagonal_norm();
    }

    if (off > off_target)
        throw std::runtime_error(
            "eigendecompose: Jacobi sweeps did not converge, off-diagonal norm " +
            std::to_string(off) + " after " + std::to_string(sweep) + " sweeps");

    // Stable sort keeps Jacobi output order among ties.
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    RealVector diag(n);
    for (Eigen::Index i = 0; i < n; ++i) diag[i] = std::real(a(i, i));
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index i, Eigen::Index j) { return diag[i] > diag[j]; });

    EigenDecomposition<Scalar> out;
    out.eigenvalues.resize(n);
    out.eigenvectors.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        out.eigenvalues[i] = diag[order[static_cast<std::size_t>(i)]];
        out.eigenvectors.col(i) = v.col(order[static_cast<std::size_t>(i)]);
    }
    return out;
}

}  // namespace exmean
