#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "exmean/geometry.hpp"
#include "exmean/rng.hpp"
#include "exmean/types.hpp"

namespace exmean {

namespace detail {

/// Adaptive Simpson quadrature; plenty for the smooth angular densities
/// the samplers integrate.
inline double simpson_recurse(const std::function<double(double)>& f, double a, double b,
                              double fa, double fm, double fb, double whole, double tol,
                              int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_recurse(f, a, b, fa, fm, fb, whole, tol, 48);
}

/// Orthonormal basis of the orthogonal complement of a unit vector,
/// via the full Householder Q factor.
template <typename Scalar>
Matrix<Scalar> complement_basis(const Vector<Scalar>& unit) {
    const Eigen::Index d = unit.size();
    Matrix<Scalar> q = Eigen::HouseholderQR<Matrix<Scalar>>(Matrix<Scalar>(unit))
                           .householderQ() *
                       Matrix<Scalar>::Identity(d, d);
    return q.rightCols(d - 1);
}

template <typename Scalar>
Vector<Scalar> gaussian_vector(CounterRng& rng, Eigen::Index n) {
    Vector<Scalar> g(n);
    if constexpr (is_complex_v<Scalar>) {
        for (Eigen::Index i = 0; i < n; ++i) {
            double g0, g1;
            rng.gaussian_pair(g0, g1);
            g[i] = Complex(g0, g1);
        }
    } else {
        for (Eigen::Index i = 0; i < n; ++i) g[i] = rng.gaussian();
    }
    return g;
}

}  // namespace detail

enum class SamplerKind {
    point_mass,
    spherical_cap_uniform,
    antipodal_mixture,
    langevin_like_rejection,
    subspace_perturbation,
    subspace_uniform_pair,
};

inline const char* to_string(SamplerKind k) {
    switch (k) {
        case SamplerKind::point_mass: return "point_mass";
        case SamplerKind::spherical_cap_uniform: return "spherical_cap_uniform";
        case SamplerKind::antipodal_mixture: return "antipodal_mixture";
        case SamplerKind::langevin_like_rejection: return "langevin_like_rejection";
        case SamplerKind::subspace_perturbation: return "subspace_perturbation";
        case SamplerKind::subspace_uniform_pair: return "subspace_uniform_pair";
    }
    return "unknown";
}

/// Distribution on S^k with an analytically controlled Euclidean mean.
/// All kinds are rotationally symmetric about an axis, so the mean is
/// axis * (mean resultant); the resultant comes from a closed form or
/// 1-D quadrature of the angular density.
class SphereSampler {
public:
    static SphereSampler point_mass(UnitVector atom) {
        SphereSampler s(SamplerKind::point_mass, std::move(atom));
        s.resultant_ = 1.0;
        return s;
    }

    static SphereSampler antipodal_mixture(UnitVector axis) {
        SphereSampler s(SamplerKind::antipodal_mixture, std::move(axis));
        s.resultant_ = 0.0;
        return s;
    }

    /// Uniform distribution on the cap {x : <x, axis> >= cap_cos}.
    static SphereSampler spherical_cap(UnitVector axis, double cap_cos) {
        if (!(cap_cos > -1.0 && cap_cos < 1.0))
            throw std::invalid_argument("spherical_cap: cap_cos must lie in (-1,1)");
        SphereSampler s(SamplerKind::spherical_cap_uniform, std::move(axis));
        s.cap_cos_ = cap_cos;
        const double k = static_cast<double>(s.sphere_dim());
        const double c = std::acos(cap_cos);
        // E cos(theta) with theta-density sin^{k-1} on [0, c]: the numerator
        // integrates in closed form to sin^k(c)/k.
        const double denom = detail::integrate(
            [k](double th) { return std::pow(std::sin(th), k - 1.0); }, 0.0, c);
        s.resultant_ = std::pow(std::sin(c), k) / (k * denom);
        return s;
    }

    /// Rotationally symmetric concentrated family with angular density
    /// proportional to exp(kappa cos theta) sin^{k-1} theta, drawn by
    /// rejection from a uniform proposal in t = cos theta. Needs k >= 2.
    static SphereSampler langevin(UnitVector axis, double kappa) {
        if (!(kappa > 0.0)) throw std::invalid_argument("langevin: kappa must be > 0");
        SphereSampler s(SamplerKind::langevin_like_rejection, std::move(axis));
        if (s.sphere_dim() < 2)
            throw std::invalid_argument("langevin: needs sphere dimension k >= 2");
        s.kappa_ = kappa;
        const double k = static_cast<double>(s.sphere_dim());
        auto weight = [kappa, k](double th) {
            return std::exp(kappa * (std::cos(th) - 1.0)) * std::pow(std::sin(th), k - 1.0);
        };
        const double denom = detail::integrate(weight, 0.0, std::numbers::pi);
        const double num = detail::integrate(
            [&](double th) { return std::cos(th) * weight(th); }, 0.0, std::numbers::pi);
        s.resultant_ = num / denom;
        // Envelope max of exp(kappa(t-1)) (1-t^2)^{(k-2)/2} over [-1,1].
        const double e = k - 2.0;
        const double tstar =
            (e == 0.0) ? 1.0 : (-e + std::sqrt(e * e + 4.0 * kappa * kappa)) / (2.0 * kappa);
        s.envelope_max_ = std::exp(kappa * (tstar - 1.0)) * std::pow(1.0 - tstar * tstar, e / 2.0);
        return s;
    }

    SamplerKind kind() const { return kind_; }
    Eigen::Index ambient_dim() const { return axis_.dim(); }
    Eigen::Index sphere_dim() const { return axis_.dim() - 1; }  // k

    EuclideanPoint known_euclidean_mean() const {
        return EuclideanPoint(resultant_ * axis_.coords());
    }

    /// Extrinsic population mean; absent when E Z = 0 and the mean set is
    /// the whole sphere.
    std::optional<UnitVector> known_extrinsic_mean() const {
        if (resultant_ <= 0.0) return std::nullopt;
        return axis_;
    }

    UnitVector draw(CounterRng& rng) const {
        switch (kind_) {
            case SamplerKind::point_mass:
                return axis_;
            case SamplerKind::antipodal_mixture:
                return UnitVector((rng.next_u64() & 1u) ? axis_.coords()
                                                        : RealVector(-axis_.coords()));
            case SamplerKind::spherical_cap_uniform:
                return draw_symmetric(rng, [this](CounterRng& r) { return draw_cap_cos(r); });
            case SamplerKind::langevin_like_rejection:
                return draw_symmetric(rng,
                                      [this](CounterRng& r) { return draw_langevin_cos(r); });
            default:
                throw std::logic_error("SphereSampler: not a sphere kind");
        }
    }

private:
    SphereSampler(SamplerKind kind, UnitVector axis)
        : kind_(kind), axis_(std::move(axis)), basis_(detail::complement_basis<double>(axis_.coords())) {}

    double draw_cap_cos(CounterRng& rng) const {
        const double k = static_cast<double>(sphere_dim());
        if (sphere_dim() == 2) return cap_cos_ + rng.uniform() * (1.0 - cap_cos_);
        if (sphere_dim() == 1) return std::cos(std::acos(cap_cos_) * rng.uniform());
        // Rejection with a uniform proposal; density in t is (1-t^2)^{(k-2)/2}.
        const double e = (k - 2.0) / 2.0;
        const double tpeak = cap_cos_ > 0.0 ? cap_cos_ : 0.0;
        const double max_w = std::pow(1.0 - tpeak * tpeak, e);
        for (;;) {
            const double t = cap_cos_ + rng.uniform() * (1.0 - cap_cos_);
            if (rng.uniform() * max_w <= std::pow(1.0 - t * t, e)) return t;
        }
    }

    double draw_langevin_cos(CounterRng& rng) const {
        const double e = (static_cast<double>(sphere_dim()) - 2.0) / 2.0;
        for (;;) {
            const double t = -1.0 + 2.0 * rng.uniform();
            const double w = std::exp(kappa_ * (t - 1.0)) * std::pow(1.0 - t * t, e);
            if (rng.uniform() * envelope_max_ <= w) return t;
        }
    }

    template <typename DrawCos>
    UnitVector draw_symmetric(CounterRng& rng, DrawCos&& draw_cos) const {
        const double t = draw_cos(rng);
        const double s = std::sqrt(std::max(0.0, 1.0 - t * t));
        if (sphere_dim() == 1) {
            const double sign = (rng.next_u64() & 1u) ? 1.0 : -1.0;
            return UnitVector(t * axis_.coords() + sign * s * basis_.col(0));
        }
        RealVector dir = detail::gaussian_vector<double>(rng, sphere_dim());
        dir /= dir.norm();
        return UnitVector(t * axis_.coords() + s * (basis_ * dir));
    }

    SamplerKind kind_;
    UnitVector axis_;
    RealMatrix basis_;  // orthonormal basis of axis^perp
    double cap_cos_ = 0.0;
    double kappa_ = 0.0;
    double envelope_max_ = 1.0;
    double resultant_ = 0.0;
};

/// Distribution on Gr(m, ...) built so that the extrinsic population
/// mean is known exactly by symmetry.
template <typename Scalar>
class GrassmannSampler {
public:
    /// Lines v = cos(s) u0 + sin(s) w with w uniform on the unit sphere
    /// of u0^perp; the Euclidean mean is the analytic mixture
    /// cos^2(s) P0 + sin^2(s) (I - P0)/(d) with d = ambient - 1.
    static GrassmannSampler line_perturbation(Vector<Scalar> axis, double angle) {
        if (!(angle >= 0.0 && angle < std::numbers::pi / 2.0))
            throw std::invalid_argument("line_perturbation: angle outside [0, pi/2)");
        GrassmannSampler s;
        s.kind_ = angle == 0.0 ? SamplerKind::point_mass : SamplerKind::subspace_perturbation;
        s.axis_ = axis / axis.norm();
        s.basis_ = detail::complement_basis<Scalar>(s.axis_);
        s.angle_ = angle;
        s.m_ = 1;
        s.d1_ = axis.size();
        return s;
    }

    /// Frames Q(U0 + sigma G) with G Gaussian; the drawn subspace's law is
    /// invariant under the stabilizer of U0, so the extrinsic population
    /// mean is U0 itself. The Euclidean mean has no closed form and is
    /// precomputed on demand.
    static GrassmannSampler frame_perturbation(Subspace<Scalar> base, double sigma) {
        if (!(sigma >= 0.0)) throw std::invalid_argument("frame_perturbation: sigma < 0");
        GrassmannSampler s;
        s.kind_ = sigma == 0.0 ? SamplerKind::point_mass : SamplerKind::subspace_perturbation;
        s.base_.emplace(std::move(base));
        s.sigma_ = sigma;
        s.m_ = s.base_->dim();
        s.d1_ = s.base_->ambient_dim();
        return s;
    }

    /// Uniform mixture over {span(e1), span(e2)}; the Euclidean mean has
    /// equal top eigenvalues, so the projection is non-unique.
    static GrassmannSampler uniform_pair(Eigen::Index ambient_dim) {
        if (ambient_dim < 2)
            throw std::invalid_argument("uniform_pair: need ambient dimension >= 2");
        GrassmannSampler s;
        s.kind_ = SamplerKind::subspace_uniform_pair;
        s.m_ = 1;
        s.d1_ = ambient_dim;
        return s;
    }

    SamplerKind kind() const { return kind_; }
    Eigen::Index subspace_dim() const { return m_; }
    Eigen::Index ambient_dim() const { return d1_; }

    Subspace<Scalar> draw(CounterRng& rng) const {
        switch (kind_) {
            case SamplerKind::subspace_uniform_pair: {
                Matrix<Scalar> f = Matrix<Scalar>::Zero(d1_, 1);
                f((rng.next_u64() & 1u) ? 1 : 0, 0) = Scalar(1);
                return Subspace<Scalar>(std::move(f));
            }
            case SamplerKind::point_mass:
            case SamplerKind::subspace_perturbation:
                break;
            default:
                throw std::logic_error("GrassmannSampler: not a Grassmann kind");
        }
        if (base_) {  // frame mode
            if (sigma_ == 0.0) return *base_;
            Matrix<Scalar> g(d1_, m_);
            for (Eigen::Index j = 0; j < m_; ++j)
                g.col(j) = detail::gaussian_vector<Scalar>(rng, d1_);
            Matrix<Scalar> perturbed = base_->frame() + Scalar(sigma_) * g;
            Matrix<Scalar> q = Eigen::HouseholderQR<Matrix<Scalar>>(perturbed).householderQ() *
                               Matrix<Scalar>::Identity(d1_, m_);
            return Subspace<Scalar>(std::move(q));
        }
        // line mode
        if (angle_ == 0.0) return Subspace<Scalar>(Matrix<Scalar>(axis_));
        Vector<Scalar> w = detail::gaussian_vector<Scalar>(rng, d1_ - 1);
        w /= w.norm();
        Vector<Scalar> v =
            Scalar(std::cos(angle_)) * axis_ + Scalar(std::sin(angle_)) * (basis_ * w);
        return Subspace<Scalar>(Matrix<Scalar>(v / v.norm()));
    }

    bool euclidean_mean_is_analytic() const {
        return kind_ == SamplerKind::subspace_uniform_pair || !base_.has_value();
    }

    /// Euclidean population mean of iota(U); analytic for line and pair
    /// kinds, otherwise estimated once from `prerun_draws` internal draws
    /// (fixed internal seed, accurate to a few 1e-4 per entry).
    HermitianMatrix<Scalar> known_euclidean_mean(long prerun_draws = 500000) const {
        if (kind_ == SamplerKind::subspace_uniform_pair) {
            Matrix<Scalar> mean = Matrix<Scalar>::Zero(d1_, d1_);
            mean(0, 0) = Scalar(0.5);
            mean(1, 1) = Scalar(0.5);
            return HermitianMatrix<Scalar>(std::move(mean));
        }
        if (!base_) {
            const double c2 = std::cos(angle_) * std::cos(angle_);
            const double rest = (1.0 - c2) / static_cast<double>(d1_ - 1);
            Matrix<Scalar> p0 = axis_ * axis_.adjoint();
            Matrix<Scalar> mean =
                Scalar(c2 - rest) * p0 + Scalar(rest) * Matrix<Scalar>::Identity(d1_, d1_);
            return HermitianMatrix<Scalar>(std::move(mean));
        }
        CounterRng rng(0x9D5AB5E11A0Full);
        Matrix<Scalar> sum = Matrix<Scalar>::Zero(d1_, d1_);
        for (long i = 0; i < prerun_draws; ++i) {
            CounterRng stream = rng.stream(static_cast<std::uint64_t>(i));
            const Subspace<Scalar> u = draw(stream);
            sum += (u.frame() * u.frame().adjoint()) / Scalar(std::sqrt(double(m_)));
        }
        return HermitianMatrix<Scalar>(sum / Scalar(static_cast<double>(prerun_draws)));
    }

    /// Extrinsic population mean; absent for the non-uniquely projected
    /// pair mixture.
    std::optional<Subspace<Scalar>> known_extrinsic_mean() const {
        if (kind_ == SamplerKind::subspace_uniform_pair) return std::nullopt;
        if (base_) return *base_;
        return Subspace<Scalar>(Matrix<Scalar>(axis_));
    }

private:
    GrassmannSampler() = default;

    SamplerKind kind_ = SamplerKind::point_mass;
    Eigen::Index m_ = 1, d1_ = 2;
    // line mode
    Vector<Scalar> axis_;
    Matrix<Scalar> basis_;
    double angle_ = 0.0;
    // frame mode
    std::optional<Subspace<Scalar>> base_;
    double sigma_ = 0.0;
};

}  // namespace exmean
