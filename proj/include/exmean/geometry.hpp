#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <optional>
#include <stdexcept>

#include "exmean/jacobi.hpp"
#include "exmean/types.hpp"

namespace exmean {

/// Veronese-Whitney embedding: U maps to (1/sqrt(m)) sum_i u_i u_i^*,
/// the scaled orthogonal projector onto U. Frobenius norm of the image
/// is 1 and the image does not depend on the frame chosen for U.
template <typename Scalar>
HermitianMatrix<Scalar> veronese_whitney_embed(const Subspace<Scalar>& u) {
    const double m = static_cast<double>(u.dim());
    Matrix<Scalar> p = u.frame() * u.frame().adjoint() / Scalar(std::sqrt(m));
    return HermitianMatrix<Scalar>(std::move(p));
}

/// Extrinsic (chordal) metric d(U,V) = ||iota(U) - iota(V)||_F, range [0, sqrt(2)].
template <typename Scalar>
double extrinsic_distance(const Subspace<Scalar>& u, const Subspace<Scalar>& v) {
    if (u.ambient_dim() != v.ambient_dim() || u.dim() != v.dim())
        throw std::invalid_argument("extrinsic_distance: dimension mismatch");
    return (veronese_whitney_embed(u).entries() - veronese_whitney_embed(v).entries())
        .norm();
}

/// Same metric through the cross-Gram matrix:
/// d^2 = 2 (1 - (1/m) sum_{i,j} |v_j^* u_i|^2). Cheaper, and the
/// independent route used to cross-check the embedding form.
template <typename Scalar>
double extrinsic_distance_crossgram(const Subspace<Scalar>& u, const Subspace<Scalar>& v) {
    if (u.ambient_dim() != v.ambient_dim() || u.dim() != v.dim())
        throw std::invalid_argument("extrinsic_distance: dimension mismatch");
    const double m = static_cast<double>(u.dim());
    const double overlap = (v.frame().adjoint() * u.frame()).squaredNorm();
    return std::sqrt(std::max(0.0, 2.0 * (1.0 - overlap / m)));
}

template <typename Scalar>
bool same_span(const Subspace<Scalar>& u, const Subspace<Scalar>& v, double tol = 1e-9) {
    return extrinsic_distance(u, v) < tol;
}

/// Nearest-point projection onto S^k: x/||x||, or the whole sphere for
/// x at (numerically) the origin, reported as nullopt.
inline std::optional<UnitVector> project_to_sphere(const EuclideanPoint& p) {
    const double norm = p.norm();
    if (norm <= 1e-12) return std::nullopt;
    return UnitVector(p.coords() / norm);
}

/// Result of projecting a Hermitian matrix onto the Grassmannian.
/// subspace is empty when the eigengap at m is below the uniqueness
/// threshold; the gap and full decomposition are always reported.
template <typename Scalar>
struct GrassmannProjection {
    std::optional<Subspace<Scalar>> subspace;
    double eigengap = 0.0;
    EigenDecomposition<Scalar> decomposition;

    bool unique() const { return subspace.has_value(); }
};

/// Projection onto Gr(m, ...): the span of eigenvectors of the m largest
/// eigenvalues, unique iff lambda_m - lambda_{m+1} clears the gap
/// threshold 1e-10 * max(1, ||A||_F).
template <typename Scalar>
GrassmannProjection<Scalar> project_to_grassmann(const HermitianMatrix<Scalar>& a,
                                                 Eigen::Index m) {
    if (m < 1 || m >= a.size())
        throw std::invalid_argument("project_to_grassmann: need 1 <= m < d+1");
    GrassmannProjection<Scalar> out;
    out.decomposition = eigendecompose(a);
    out.eigengap = out.decomposition.eigengap(m);
    const double threshold = 1e-10 * std::max(1.0, a.frobenius_norm());
    if (out.eigengap > threshold)
        out.subspace = Subspace<Scalar>(out.decomposition.eigenvectors.leftCols(m));
    return out;
}

/// Angle between unit vectors through atan2 of the transverse norm and
/// the dot product; accurate near 0 and pi where acos is not.
inline double angle_between(const RealVector& x, const RealVector& y) {
    if (x.size() != y.size())
        throw std::invalid_argument("angle_between: dimension mismatch");
    const double dot = x.dot(y);
    const RealVector transverse = x - dot * y;
    return std::atan2(transverse.norm(), dot);
}

inline double angle_between(const UnitVector& x, const UnitVector& y) {
    return angle_between(x.coords(), y.coords());
}

}  // namespace exmean
