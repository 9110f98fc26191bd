#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "exmean/types.hpp"

namespace exmean {

/// Z_bar = (1/n) sum Z_i; always lies in the closed unit ball.
inline EuclideanPoint euclidean_mean(const std::vector<UnitVector>& data) {
    if (data.empty()) throw std::invalid_argument("euclidean_mean: empty data");
    RealVector sum = RealVector::Zero(data.front().dim());
    for (const auto& z : data) {
        if (z.dim() != sum.size())
            throw std::invalid_argument("euclidean_mean: mixed dimensions");
        sum += z.coords();
    }
    return EuclideanPoint(sum / static_cast<double>(data.size()));
}

/// Level-alpha test of "the Euclidean population mean equals q":
/// q is accepted iff ||p - q||^2 < (1 - ||q||^2) / (alpha n).
inline bool chebyshev_test(const EuclideanPoint& p, const EuclideanPoint& q,
                           const ConfidenceConfig& cfg) {
    if (p.dim() != q.dim())
        throw std::invalid_argument("chebyshev_test: dimension mismatch");
    const double qn2 = q.coords().squaredNorm();
    if (qn2 > 1.0 + 2e-9)  // ||q|| <= 1 + 1e-9
        throw std::invalid_argument("chebyshev_test: ||q|| exceeds 1");
    return (p.coords() - q.coords()).squaredNorm() < (1.0 - qn2) / cfg.a();
}

/// Open ball whose projection equals the projection of the Chebyshev
/// acceptance set C(p, a).
struct EuclideanConfidenceBall {
    EuclideanPoint center;
    double radius;
    bool covers_origin;
};

/// radius^2 = (1/a)(1 - ||p||^2 + 1/a); the ball covers the origin iff
/// ||p||^2 < 1/a, in which case the projected region is everything.
inline EuclideanConfidenceBall confidence_ball(const EuclideanPoint& p,
                                               const ConfidenceConfig& cfg) {
    const double pn2 = p.coords().squaredNorm();
    if (pn2 > 1.0 + 2e-9)
        throw std::invalid_argument("confidence_ball: ||p|| exceeds 1");
    const double a = cfg.a();
    const double eps2 = std::max(0.0, (1.0 - pn2 + 1.0 / a) / a);
    return EuclideanConfidenceBall{p, std::sqrt(eps2), pn2 < 1.0 / a};
}

/// Largest angle between p and any point of C(p, a): arcsin(eps/||p||)
/// when ||p||^2 >= 1/a, otherwise the projection covers the whole sphere
/// (reported as nullopt).
inline std::optional<double> max_projection_angle(const EuclideanPoint& p,
                                                  const ConfidenceConfig& cfg) {
    const double a = cfg.a();
    const double pn2 = p.coords().squaredNorm();
    if (pn2 < 1.0 / a) return std::nullopt;
    const double eps = confidence_ball(p, cfg).radius;
    const double ratio = std::min(1.0, eps / std::sqrt(pn2));
    return std::asin(ratio);
}

/// Radius of the Hoeffding-type ball
///   (1/sqrt(n)) (sqrt(-2 (1+||EZ||)^2 log alpha) + sqrt(1-||EZ||^2)).
/// Depends on the unknown mean norm, so this is a diagnostic for a
/// hypothesized value, not a data-driven set.
inline double hoeffding_radius(double mean_norm, const ConfidenceConfig& cfg) {
    if (mean_norm < 0.0 || mean_norm > 1.0)
        throw std::invalid_argument("hoeffding_radius: mean_norm outside [0,1]");
    const double n = static_cast<double>(cfg.n);
    const double first = std::sqrt(-2.0 * (1.0 + mean_norm) * (1.0 + mean_norm) *
                                   std::log(cfg.alpha));
    const double second = std::sqrt(std::max(0.0, 1.0 - mean_norm * mean_norm));
    return (first + second) / std::sqrt(n);
}

}  // namespace exmean
