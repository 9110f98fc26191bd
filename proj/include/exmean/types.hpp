#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace exmean {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RealVector = Vector<double>;
using RealMatrix = Matrix<double>;
using Complex = std::complex<double>;

template <typename Scalar>
inline constexpr bool is_complex_v = std::is_same_v<Scalar, Complex>;

template <typename Scalar>
constexpr const char* scalar_field_name() {
    return is_complex_v<Scalar> ? "complex" : "real";
}

/// Confidence level and sample size; a = alpha*n is the scale parameter
/// entering every radius formula.
struct ConfidenceConfig {
    double alpha;
    long n;

    ConfidenceConfig(double alpha_, long n_) : alpha(alpha_), n(n_) {
        if (!(alpha > 0.0 && alpha < 1.0))
            throw std::invalid_argument("ConfidenceConfig: alpha must lie in (0,1)");
        if (n < 1) throw std::invalid_argument("ConfidenceConfig: n must be >= 1");
    }

    double a() const { return alpha * static_cast<double>(n); }
};

/// A point on the unit sphere S^k in R^{k+1}.
/// Inputs within 1e-6 of unit norm are renormalized, others rejected.
class UnitVector {
public:
    explicit UnitVector(RealVector coords) : coords_(std::move(coords)) {
        if (coords_.size() == 0) throw std::invalid_argument("UnitVector: empty vector");
        if (!coords_.allFinite()) throw std::invalid_argument("UnitVector: non-finite entry");
        const double norm = coords_.norm();
        if (std::abs(norm - 1.0) > 1e-6)
            throw std::invalid_argument("UnitVector: norm " + std::to_string(norm) +
                                        " too far from 1");
        coords_ /= norm;
    }

    const RealVector& coords() const { return coords_; }
    Eigen::Index dim() const { return coords_.size(); }  // k+1

private:
    RealVector coords_;
};

/// A point of the ambient Euclidean space (means, test points q).
class EuclideanPoint {
public:
    explicit EuclideanPoint(RealVector coords) : coords_(std::move(coords)) {
        if (coords_.size() == 0) throw std::invalid_argument("EuclideanPoint: empty vector");
        if (!coords_.allFinite())
            throw std::invalid_argument("EuclideanPoint: non-finite entry");
    }

    const RealVector& coords() const { return coords_; }
    Eigen::Index dim() const { return coords_.size(); }
    double norm() const { return coords_.norm(); }

private:
    RealVector coords_;
};

/// Element of Herm(d+1) (Sym(d+1) when Scalar is double).
/// Construction symmetrizes, so A == A* holds exactly up to rounding.
template <typename Scalar>
class HermitianMatrix {
public:
    explicit HermitianMatrix(Matrix<Scalar> entries) : entries_(std::move(entries)) {
        if (entries_.rows() != entries_.cols())
            throw std::invalid_argument("HermitianMatrix: matrix must be square");
        if (!entries_.allFinite())
            throw std::invalid_argument("HermitianMatrix: non-finite entry");
        entries_ = ((entries_ + entries_.adjoint()) / Scalar(2)).eval();
    }

    const Matrix<Scalar>& entries() const { return entries_; }
    Eigen::Index size() const { return entries_.rows(); }  // d+1
    double frobenius_norm() const { return entries_.norm(); }
    double trace_real() const { return Eigen::numext::real(entries_.trace()); }

private:
    Matrix<Scalar> entries_;
};

/// An m-dimensional subspace of C^{d+1} (or R^{d+1}), stored as an
/// orthonormal frame. Two values with the same column span compare equal
/// under same_span() regardless of the frame chosen.
template <typename Scalar>
class Subspace {
public:
    explicit Subspace(Matrix<Scalar> frame) : frame_(std::move(frame)) {
        const Eigen::Index d1 = frame_.rows(), m = frame_.cols();
        if (m < 1 || m >= d1)
            throw std::invalid_argument("Subspace: need 1 <= m < d+1");
        if (!frame_.allFinite()) throw std::invalid_argument("Subspace: non-finite entry");
        const double defect =
            (frame_.adjoint() * frame_ - Matrix<Scalar>::Identity(m, m)).norm();
        if (defect > 1e-9)
            throw std::invalid_argument("Subspace: frame not orthonormal (defect " +
                                        std::to_string(defect) + ")");
    }

    const Matrix<Scalar>& frame() const { return frame_; }
    Eigen::Index ambient_dim() const { return frame_.rows(); }  // d+1
    Eigen::Index dim() const { return frame_.cols(); }          // m

private:
    Matrix<Scalar> frame_;
};

using RealSubspace = Subspace<double>;
using ComplexSubspace = Subspace<Complex>;

}  // namespace exmean
