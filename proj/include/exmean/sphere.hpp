#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "exmean/euclidean.hpp"
#include "exmean/geometry.hpp"
#include "exmean/types.hpp"

namespace exmean {

struct SphereDiagnostics {
    double mean_norm = 0.0;
    double threshold = 0.0;  // 1/(alpha n)
    std::optional<double> trivial_bound_exponential;
    bool asymptotic = false;  // set for the CLT-based region, which has no
                              // finite-n coverage contract
};

/// Confidence region on S^k: either an open cone (geodesic ball) around
/// the extrinsic sample mean, or the trivial whole-sphere region.
struct SphereConfidenceRegion {
    enum class Kind { cone, full_sphere };

    Kind kind = Kind::full_sphere;
    std::optional<UnitVector> center;  // mu_hat, present iff cone
    double angular_radius = 0.0;       // radians, present iff cone
    SphereDiagnostics diagnostics;

    bool trivial() const { return kind == Kind::full_sphere; }
};

/// mu_hat = Z_bar/||Z_bar||, or the whole sphere (nullopt) when Z_bar = 0.
inline std::optional<UnitVector> extrinsic_mean_sphere(const std::vector<UnitVector>& data) {
    return project_to_sphere(euclidean_mean(data));
}

/// Region from an already-computed Euclidean mean vector. Cone radius
///   arcsin sqrt((1 - ||Z_bar||^2 + 1/(alpha n)) / (alpha n ||Z_bar||^2))
/// when ||Z_bar||^2 >= 1/(alpha n); the whole sphere otherwise.
inline SphereConfidenceRegion sphere_region_from_mean(const EuclideanPoint& mean,
                                                      const ConfidenceConfig& cfg) {
    const double a = cfg.a();
    const double mn2 = mean.coords().squaredNorm();

    SphereConfidenceRegion region;
    region.diagnostics.mean_norm = std::sqrt(mn2);
    region.diagnostics.threshold = 1.0 / a;

    if (mn2 >= 1.0 / a) {
        const double sin2 = (1.0 - mn2 + 1.0 / a) / (a * mn2);
        region.kind = SphereConfidenceRegion::Kind::cone;
        region.center = *project_to_sphere(mean);
        region.angular_radius = std::asin(std::sqrt(std::clamp(sin2, 0.0, 1.0)));
    }
    return region;
}

inline SphereConfidenceRegion sphere_confidence_region(const std::vector<UnitVector>& data,
                                                       const ConfidenceConfig& cfg) {
    return sphere_region_from_mean(euclidean_mean(data), cfg);
}

/// Strict membership: angle(x, center) < angular_radius; everything is a
/// member of the trivial region.
inline bool membership(const SphereConfidenceRegion& region, const UnitVector& x) {
    if (region.trivial()) return true;
    if (x.dim() != region.center->dim())
        throw std::invalid_argument("membership: dimension mismatch");
    return angle_between(x, *region.center) < region.angular_radius;
}

/// Upper bound exp(-(n/2)(||EZ|| - 1/(alpha n))^2) on the probability of
/// the trivial region, for a hypothesized mean norm; vacuous (= 1) unless
/// the hypothesized norm exceeds 1/(alpha n).
inline double trivial_set_probability_bound(double hypothesized_mean_norm,
                                            const ConfidenceConfig& cfg) {
    const double threshold = 1.0 / cfg.a();
    if (hypothesized_mean_norm <= threshold) return 1.0;
    const double gap = hypothesized_mean_norm - threshold;
    const double value =
        std::exp(-0.5 * static_cast<double>(cfg.n) * gap * gap);
    return std::clamp(value, 0.0, 1.0);
}

/// Standard normal quantile by bisection on erfc; absolute error < 1e-12.
inline double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("normal_quantile: p outside (0,1)");
    auto cdf = [](double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); };
    double lo = -40.0, hi = 40.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (cdf(mid) < p ? lo : hi) = mid;
        if (hi - lo < 1e-13) break;
    }
    return 0.5 * (lo + hi);
}

/// CLT-based asymptotic cone
///   angle(x, mu_hat) < q_{1-alpha/2} sqrt((1/n sum sin^2 angle(Z_i, Z_bar)) / (n ||Z_bar||^2)).
/// Marked asymptotic in the diagnostics; coverage holds only as n grows.
inline SphereConfidenceRegion clt_asymptotic_region(const std::vector<UnitVector>& data,
                                                    const ConfidenceConfig& cfg) {
    const EuclideanPoint mean = euclidean_mean(data);
    const auto center = project_to_sphere(mean);
    if (!center)
        throw std::invalid_argument("clt_asymptotic_region: Z_bar = 0, region undefined");

    const double n = static_cast<double>(data.size());
    double sin2_sum = 0.0;
    for (const auto& z : data) {
        const double s = std::sin(angle_between(z.coords(), center->coords()));
        sin2_sum += s * s;
    }
    const double mn2 = mean.coords().squaredNorm();

    SphereConfidenceRegion region;
    region.kind = SphereConfidenceRegion::Kind::cone;
    region.center = *center;
    region.angular_radius =
        normal_quantile(1.0 - cfg.alpha / 2.0) * std::sqrt((sin2_sum / n) / (n * mn2));
    region.diagnostics.mean_norm = std::sqrt(mn2);
    region.diagnostics.threshold = 1.0 / cfg.a();
    region.diagnostics.asymptotic = true;
    return region;
}

}  // namespace exmean
