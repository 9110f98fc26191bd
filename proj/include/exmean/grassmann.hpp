#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "exmean/geometry.hpp"
#include "exmean/types.hpp"

namespace exmean {

struct GrassmannDiagnostics {
    double eigengap = 0.0;       // lambda_m - lambda_{m+1} of Z_bar
    double gap_threshold = 0.0;  // sqrt(2 (1 - ||Z_bar||_F^2 + 1/(alpha n)) / (alpha n))
    RealVector spectrum;         // full eigenvalue vector of Z_bar, descending
    std::optional<double> trivial_bound_exponential;
};

/// Confidence region on Gr(m, ...): an open extrinsic-metric ball around
/// the extrinsic sample mean when the eigengap condition holds, otherwise
/// the trivial whole-manifold region (the closed ball of radius sqrt(2)).
template <typename Scalar>
struct GrassmannConfidenceRegion {
    enum class Kind { ball, full_space };

    Kind kind = Kind::full_space;
    std::optional<Subspace<Scalar>> center;  // mu_hat; absent when the
                                             // projection itself is non-unique
    double radius = std::sqrt(2.0);          // extrinsic metric d
    GrassmannDiagnostics diagnostics;

    bool trivial() const { return kind == Kind::full_space; }
};

/// (1/n) sum iota(U_i); Hermitian with trace sqrt(m) and ||.||_F <= 1.
template <typename Scalar>
HermitianMatrix<Scalar> grassmann_euclidean_mean(const std::vector<Subspace<Scalar>>& data) {
    if (data.empty()) throw std::invalid_argument("grassmann_euclidean_mean: empty data");
    const Eigen::Index d1 = data.front().ambient_dim();
    const Eigen::Index m = data.front().dim();
    Matrix<Scalar> sum = Matrix<Scalar>::Zero(d1, d1);
    for (const auto& u : data) {
        if (u.ambient_dim() != d1 || u.dim() != m)
            throw std::invalid_argument("grassmann_euclidean_mean: mixed dimensions");
        sum += veronese_whitney_embed(u).entries();
    }
    return HermitianMatrix<Scalar>(sum / Scalar(static_cast<double>(data.size())));
}

template <typename Scalar>
GrassmannProjection<Scalar> extrinsic_mean_grassmann(const std::vector<Subspace<Scalar>>& data) {
    return project_to_grassmann(grassmann_euclidean_mean(data), data.front().dim());
}

/// Region from an already-computed Euclidean mean matrix.
///
/// With A = 1 - ||Z_bar||_F^2 + 1/(alpha n) and hat-gap g, the gap
/// condition is g >= sqrt(2A/(alpha n)); when it holds the radius is
///   delta_n = sqrt(2) sqrt(A) / (sqrt(alpha n) g - sqrt(A)).
/// Near the threshold delta_n may exceed sqrt(2); the ball then already
/// contains the whole manifold and membership is everywhere true.
template <typename Scalar>
GrassmannConfidenceRegion<Scalar> grassmann_region_from_mean(
    const HermitianMatrix<Scalar>& mean, Eigen::Index m, const ConfidenceConfig& cfg) {
    const double a = cfg.a();
    const double fro2 = mean.entries().squaredNorm();
    const double shifted_variance = std::max(0.0, 1.0 - fro2 + 1.0 / a);

    GrassmannConfidenceRegion<Scalar> region;
    const auto projection = project_to_grassmann(mean, m);
    region.diagnostics.eigengap = projection.eigengap;
    region.diagnostics.gap_threshold = std::sqrt(2.0 * shifted_variance / a);
    region.diagnostics.spectrum = projection.decomposition.eigenvalues;
    if (projection.unique()) region.center = *projection.subspace;

    if (projection.eigengap >= region.diagnostics.gap_threshold && projection.unique()) {
        const double root = std::sqrt(shifted_variance);
        region.kind = GrassmannConfidenceRegion<Scalar>::Kind::ball;
        region.radius = std::sqrt(2.0) * root / (std::sqrt(a) * projection.eigengap - root);
    }
    return region;
}

template <typename Scalar>
GrassmannConfidenceRegion<Scalar> grassmann_confidence_region(
    const std::vector<Subspace<Scalar>>& data, const ConfidenceConfig& cfg) {
    return grassmann_region_from_mean(grassmann_euclidean_mean(data), data.front().dim(),
                                      cfg);
}

template <typename Scalar>
bool membership(const GrassmannConfidenceRegion<Scalar>& region, const Subspace<Scalar>& u) {
    if (region.trivial()) return true;
    return extrinsic_distance(*region.center, u) < region.radius;
}

/// Uniqueness of the projection on the whole ball B_eps(A):
/// lambda_m - lambda_{m+1} >= sqrt(2) eps.
template <typename Scalar>
bool uniqueness_radius_check(const HermitianMatrix<Scalar>& a, Eigen::Index m, double eps) {
    if (eps <= 0.0) throw std::invalid_argument("uniqueness_radius_check: eps must be > 0");
    return eigendecompose(a).eigengap(m) >= std::sqrt(2.0) * eps;
}

/// Radius of the projected ball: pi(B_eps(A)) is contained in the
/// delta-ball around pi(A) with delta = sqrt(2) eps / (gap - eps),
/// provided gap >= sqrt(2) eps > 0.
template <typename Scalar>
double projected_ball_radius(const HermitianMatrix<Scalar>& a, Eigen::Index m, double eps) {
    if (eps <= 0.0) throw std::invalid_argument("projected_ball_radius: eps must be > 0");
    const double gap = eigendecompose(a).eigengap(m);
    if (gap < std::sqrt(2.0) * eps)
        throw std::invalid_argument(
            "projected_ball_radius: gap condition lambda_m - lambda_{m+1} >= sqrt(2) eps "
            "violated");
    return std::sqrt(2.0) * eps / (gap - eps);
}

/// Exponential bound on the probability of the trivial region, for a
/// hypothesized spectral gap of E Z and hypothesized ||E Z||_F:
///   exp(-(1/2)(sqrt(n) gap/sqrt(2) - sqrt((1 + 1/(alpha n))/alpha) - sqrt(1 - ||EZ||))^2),
/// vacuous (= 1) when the squared argument is not positive.
inline double grassmann_trivial_bound(double sigma_gap, double hypothesized_mean_norm,
                                      const ConfidenceConfig& cfg) {
    const double n = static_cast<double>(cfg.n);
    const double arg = std::sqrt(n) * sigma_gap / std::sqrt(2.0) -
                       std::sqrt((1.0 + 1.0 / cfg.a()) / cfg.alpha) -
                       std::sqrt(std::max(0.0, 1.0 - hypothesized_mean_norm));
    if (arg <= 0.0) return 1.0;
    return std::clamp(std::exp(-0.5 * arg * arg), 0.0, 1.0);
}

}  // namespace exmean
