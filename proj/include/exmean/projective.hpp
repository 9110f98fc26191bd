#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "exmean/geometry.hpp"
#include "exmean/rng.hpp"
#include "exmean/types.hpp"

namespace exmean {

/// A point of RP^m as a 1-dimensional real subspace of R^{m+1}, stored
/// through a unit representative. Any nonzero scalar multiple of a
/// representative names the same point.
class HomogeneousPoint {
public:
    explicit HomogeneousPoint(RealVector representative) {
        if (representative.size() < 2)
            throw std::invalid_argument("HomogeneousPoint: need dimension >= 2");
        const double norm = representative.norm();
        if (!(norm > 0.0) || !representative.allFinite())
            throw std::invalid_argument("HomogeneousPoint: invalid representative");
        ray_.emplace(Matrix<double>(representative / norm));
    }

    const RealSubspace& ray() const { return *ray_; }
    RealVector representative() const { return ray_->frame().col(0); }
    Eigen::Index affine_dim() const { return ray_->ambient_dim() - 1; }  // m

private:
    std::optional<RealSubspace> ray_;
};

/// x in R^m maps to [x : 1].
inline HomogeneousPoint embed_affine(const RealVector& x) {
    if (!x.allFinite()) throw std::invalid_argument("embed_affine: non-finite input");
    RealVector rep(x.size() + 1);
    rep.head(x.size()) = x;
    rep[x.size()] = 1.0;
    return HomogeneousPoint(rep);
}

/// Inverse of embed_affine where defined; points with |X_{m+1}| <= 1e-9
/// lie on the hyperplane at infinity and have no affine representative.
inline RealVector dehomogenize(const HomogeneousPoint& p) {
    const RealVector& rep = p.representative();
    const double last = rep[rep.size() - 1];
    if (std::abs(last) <= 1e-9)
        throw std::domain_error("dehomogenize: mean on the hyperplane at infinity");
    return rep.head(rep.size() - 1) / last;
}

enum class ConicClass { ellipse, parabola, hyperbola, degenerate };

inline const char* to_string(ConicClass c) {
    switch (c) {
        case ConicClass::ellipse: return "ellipse";
        case ConicClass::parabola: return "parabola";
        case ConicClass::hyperbola: return "hyperbola";
        case ConicClass::degenerate: return "degenerate";
    }
    return "degenerate";
}

/// The confidence region {x : d([x:1], [z:1]) < delta} described as the
/// positivity set of a quadratic form in homogeneous coordinates:
///   Q = 2 zt zt^T - (2 - delta^2)(||z||^2 + 1) I,  zt = (z, 1),
/// so x is a member iff (x,1)^T Q (x,1) > 0. For m = 2 the boundary is a
/// conic, classified by the discriminant of the quadratic part.
struct QuadricRegion {
    Eigen::Index m = 0;
    RealVector z;  // inhomogeneous mean representative
    double delta = 0.0;
    RealMatrix Q;  // (m+1) x (m+1) symmetric
    std::optional<ConicClass> conic_class;  // present iff m == 2
};

inline double quadric_value(const QuadricRegion& region, const RealVector& x) {
    if (x.size() != region.m)
        throw std::invalid_argument("quadric_value: dimension mismatch");
    RealVector xt(region.m + 1);
    xt.head(region.m) = x;
    xt[region.m] = 1.0;
    return xt.dot(region.Q * xt);
}

inline bool quadric_membership(const QuadricRegion& region, const RealVector& x) {
    return quadric_value(region, x) > 0.0;
}

namespace detail {

inline ConicClass classify_conic(const RealMatrix& q) {
    const double scale = q.norm();
    const double tol2 = 1e-12 * std::max(1.0, scale * scale);
    const double det2 = q(0, 0) * q(1, 1) - q(0, 1) * q(1, 0);
    if (det2 > tol2) return ConicClass::ellipse;
    if (det2 < -tol2) return ConicClass::hyperbola;
    const double tol3 = 1e-12 * std::max(1.0, scale * scale * scale);
    return std::abs(q.determinant()) <= tol3 ? ConicClass::degenerate
                                             : ConicClass::parabola;
}

}  // namespace detail

inline QuadricRegion quadric_region(const HomogeneousPoint& mean, double delta) {
    if (!(delta > 0.0) || delta > std::sqrt(2.0) + 1e-12)
        throw std::invalid_argument("quadric_region: delta outside (0, sqrt(2)]");
    QuadricRegion region;
    region.m = mean.affine_dim();
    region.z = dehomogenize(mean);
    region.delta = delta;

    RealVector zt(region.m + 1);
    zt.head(region.m) = region.z;
    zt[region.m] = 1.0;
    const double c = (2.0 - delta * delta) * (region.z.squaredNorm() + 1.0);
    region.Q = 2.0 * zt * zt.transpose() -
               c * RealMatrix::Identity(region.m + 1, region.m + 1);
    if (region.m == 2) region.conic_class = detail::classify_conic(region.Q);
    return region;
}

/// Extrinsic distance between [x:1] and the region's mean ray, the
/// independent membership route: d^2 = 2 - 2 (x.z + 1)^2 / ((||x||^2+1)(||z||^2+1)).
inline double projective_distance_to_mean(const QuadricRegion& region, const RealVector& x) {
    if (x.size() != region.m)
        throw std::invalid_argument("projective_distance_to_mean: dimension mismatch");
    const double cross = x.dot(region.z) + 1.0;
    const double d2 = 2.0 - 2.0 * cross * cross /
                                ((x.squaredNorm() + 1.0) * (region.z.squaredNorm() + 1.0));
    return std::sqrt(std::max(0.0, d2));
}

/// 100 points (10 + g1, 10 + g2), g standard normal, embedded as [x:1].
/// Point i uses the counter generator's stream i, so the dataset is
/// reproducible bit for bit from the seed alone.
inline std::vector<HomogeneousPoint> synthesize_section5_data(std::uint64_t seed) {
    std::vector<HomogeneousPoint> points;
    points.reserve(100);
    CounterRng root(seed);
    for (int i = 0; i < 100; ++i) {
        CounterRng rng = root.stream(static_cast<std::uint64_t>(i));
        double g1, g2;
        rng.gaussian_pair(g1, g2);
        RealVector x(2);
        x << 10.0 + g1, 10.0 + g2;
        points.push_back(embed_affine(x));
    }
    return points;
}

}  // namespace exmean
