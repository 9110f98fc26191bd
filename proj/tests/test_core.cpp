#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstring>

#include "exmean/exmean.hpp"
#include "support/generators.hpp"

using namespace exmean;
using testsupport::random_hermitian;
using testsupport::random_matrix;
using testsupport::random_subspace;
using testsupport::random_unit_vector;
using testsupport::random_unitary;
using Catch::Approx;

TEST_CASE("UnitVector renormalizes near-unit input and rejects the rest") {
    RealVector v(3);
    v << 1.0 + 5e-7, 0, 0;
    CHECK(UnitVector(v).coords().norm() == Approx(1.0).margin(1e-12));
    v << 1.001, 0, 0;
    CHECK_THROWS_AS(UnitVector(v), std::invalid_argument);
    v << 0, 0, 0;
    CHECK_THROWS_AS(UnitVector(v), std::invalid_argument);
}

TEST_CASE("HermitianMatrix symmetrizes at construction") {
    Matrix<Complex> a(2, 2);
    a << Complex(1, 0), Complex(2, 1), Complex(0, 0), Complex(3, 0);
    HermitianMatrix<Complex> h(a);
    CHECK((h.entries() - h.entries().adjoint()).norm() < 1e-15);
    CHECK(h.entries()(0, 1) == Complex(1, 0.5));
}

TEST_CASE("Subspace validates the frame") {
    Matrix<double> good(3, 1);
    good << 1, 0, 0;
    CHECK_NOTHROW(Subspace<double>(good));
    Matrix<double> skew(3, 1);
    skew << 1, 1, 0;
    CHECK_THROWS_AS(Subspace<double>(skew), std::invalid_argument);
    CHECK_THROWS_AS(Subspace<double>(Matrix<double>::Identity(2, 2)),
                    std::invalid_argument);  // m = d+1
}

TEST_CASE("ConfidenceConfig validates and exposes a = alpha n") {
    CHECK(ConfidenceConfig(0.05, 100).a() == Approx(5.0));
    CHECK_THROWS_AS(ConfidenceConfig(0.0, 10), std::invalid_argument);
    CHECK_THROWS_AS(ConfidenceConfig(1.0, 10), std::invalid_argument);
    CHECK_THROWS_AS(ConfidenceConfig(0.1, 0), std::invalid_argument);
}

TEST_CASE("eigendecompose orders a diagonal matrix") {
    RealMatrix a(3, 3);
    a.setZero();
    a.diagonal() << 3, 1, 2;
    const auto dec = eigendecompose(HermitianMatrix<double>(a));
    CHECK(dec.eigenvalues[0] == Approx(3.0));
    CHECK(dec.eigenvalues[1] == Approx(2.0));
    CHECK(dec.eigenvalues[2] == Approx(1.0));
    // eigenvectors are signed coordinate vectors
    for (Eigen::Index i = 0; i < 3; ++i)
        CHECK(dec.eigenvectors.col(i).cwiseAbs().maxCoeff() == Approx(1.0).margin(1e-12));
}

TEST_CASE("eigendecompose handles the embedded plane in C^3") {
    Matrix<Complex> f = Matrix<Complex>::Zero(3, 2);
    f(0, 0) = 1;
    f(1, 1) = 1;
    const auto emb = veronese_whitney_embed(Subspace<Complex>(f));
    const auto dec = eigendecompose(emb);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CHECK(dec.eigenvalues[0] == Approx(inv_sqrt2));
    CHECK(dec.eigenvalues[1] == Approx(inv_sqrt2));
    CHECK(dec.eigenvalues[2] == Approx(0.0).margin(1e-12));
}

TEST_CASE("eigendecompose reconstruction and unitarity on random input") {
    CounterRng rng(11);
    for (int rep = 0; rep < 200; ++rep) {
        const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng.next_u64() % 11);
        if (rep % 2 == 0) {
            auto a = random_hermitian<double>(rng, n);
            const auto dec = eigendecompose(a);
            const RealMatrix recon = dec.eigenvectors * dec.eigenvalues.asDiagonal() *
                                     dec.eigenvectors.adjoint();
            REQUIRE((recon - a.entries()).norm() < 1e-9 * std::max(1.0, a.frobenius_norm()));
            REQUIRE((dec.eigenvectors.adjoint() * dec.eigenvectors -
                     RealMatrix::Identity(n, n))
                        .norm() < 1e-9);
        } else {
            auto a = random_hermitian<Complex>(rng, n);
            const auto dec = eigendecompose(a);
            const Matrix<Complex> recon = dec.eigenvectors *
                                          dec.eigenvalues.cast<Complex>().asDiagonal() *
                                          dec.eigenvectors.adjoint();
            REQUIRE((recon - a.entries()).norm() < 1e-9 * std::max(1.0, a.frobenius_norm()));
            REQUIRE((dec.eigenvectors.adjoint() * dec.eigenvectors -
                     Matrix<Complex>::Identity(n, n))
                        .norm() < 1e-9);
        }
    }
}

TEST_CASE("eigendecompose is bitwise deterministic") {
    CounterRng rng(12);
    const auto a = random_hermitian<Complex>(rng, 7);
    const auto d1 = eigendecompose(a);
    const auto d2 = eigendecompose(a);
    CHECK(std::memcmp(d1.eigenvalues.data(), d2.eigenvalues.data(),
                      sizeof(double) * 7) == 0);
    CHECK(std::memcmp(d1.eigenvectors.data(), d2.eigenvectors.data(),
                      sizeof(Complex) * 49) == 0);
}

TEST_CASE("veronese_whitney_embed on coordinate subspaces") {
    Matrix<Complex> e1 = Matrix<Complex>::Zero(2, 1);
    e1(0, 0) = 1;
    const auto p = veronese_whitney_embed(Subspace<Complex>(e1));
    CHECK(p.entries()(0, 0) == Complex(1, 0));
    CHECK(std::abs(p.entries()(1, 1)) == Approx(0.0).margin(1e-15));

    Matrix<Complex> f = Matrix<Complex>::Zero(3, 2);
    f(0, 0) = 1;
    f(1, 1) = 1;
    const auto q = veronese_whitney_embed(Subspace<Complex>(f));
    CHECK(std::abs(q.entries()(0, 0) - Complex(1.0 / std::sqrt(2.0), 0)) < 1e-15);
    CHECK(q.frobenius_norm() == Approx(1.0).margin(1e-12));
}

TEST_CASE("embedding is invariant under the choice of frame") {
    CounterRng rng(21);
    for (int rep = 0; rep < 50; ++rep) {
        const auto u = random_subspace<Complex>(rng, 5, 2);
        const Matrix<Complex> rot = random_unitary<Complex>(rng, 2);
        const Subspace<Complex> v(Matrix<Complex>(u.frame() * rot));
        CHECK((veronese_whitney_embed(u).entries() - veronese_whitney_embed(v).entries())
                  .norm() < 1e-12);
        CHECK(same_span(u, v));
    }
}

TEST_CASE("extrinsic_distance basics and both formulas agree") {
    Matrix<double> e1 = Matrix<double>::Zero(2, 1), e2 = Matrix<double>::Zero(2, 1);
    e1(0, 0) = 1;
    e2(1, 0) = 1;
    const Subspace<double> u(e1), v(e2);
    CHECK(extrinsic_distance(u, u) == Approx(0.0).margin(1e-15));
    CHECK(extrinsic_distance(u, v) == Approx(std::sqrt(2.0)));

    CounterRng rng(22);
    for (int rep = 0; rep < 100; ++rep) {
        const Eigen::Index d1 = 3 + static_cast<Eigen::Index>(rng.next_u64() % 3);
        const Eigen::Index m = 1 + static_cast<Eigen::Index>(rng.next_u64() % (d1 - 1));
        const auto a = random_subspace<Complex>(rng, d1, m);
        const auto b = random_subspace<Complex>(rng, d1, m);
        const double dist = extrinsic_distance(a, b);
        CHECK(dist == Approx(extrinsic_distance_crossgram(a, b)).margin(1e-9));
        CHECK(dist <= std::sqrt(2.0) + 1e-12);
    }

    Matrix<double> e13 = Matrix<double>::Zero(3, 1);
    e13(0, 0) = 1;
    CHECK_THROWS_AS(extrinsic_distance(u, Subspace<double>(e13)), std::invalid_argument);
}

TEST_CASE("metric chain: squared distance equals 2(1 - <iota(U), iota(V)>)") {
    // For m = 1 the inner product equals the literal squared Frobenius
    // norm of the product iota(U) iota(V); for m >= 2 the inner-product
    // form is the one consistent with the cross-Gram expansion.
    CounterRng rng(23);
    for (int rep = 0; rep < 60; ++rep) {
        const Eigen::Index d1 = 4;
        const Eigen::Index m = 1 + static_cast<Eigen::Index>(rng.next_u64() % 3);
        const auto u = random_subspace<Complex>(rng, d1, m);
        const auto v = random_subspace<Complex>(rng, d1, m);
        const auto iu = veronese_whitney_embed(u).entries();
        const auto iv = veronese_whitney_embed(v).entries();
        const double d2 = (iu - iv).squaredNorm();
        const double inner = (iu * iv.adjoint()).trace().real();
        CHECK(d2 == Approx(2.0 * (1.0 - inner)).margin(1e-9));
        if (m == 1)
            CHECK(d2 == Approx(2.0 * (1.0 - (iu * iv).squaredNorm())).margin(1e-9));
    }
}

TEST_CASE("project_to_sphere normalizes and flags the origin") {
    RealVector v(3);
    v << 0, 0, 2;
    CHECK(project_to_sphere(EuclideanPoint(v))->coords()[2] == Approx(1.0));
    v << 0, 0, 0;
    CHECK_FALSE(project_to_sphere(EuclideanPoint(v)).has_value());
    RealVector w(2);
    w << 3, 4;
    const auto p = project_to_sphere(EuclideanPoint(w));
    CHECK(p->coords()[0] == Approx(0.6));
    CHECK(p->coords()[1] == Approx(0.8));

    // scaling invariance of the argmin
    CounterRng rng(31);
    for (int rep = 0; rep < 20; ++rep) {
        RealVector x = detail::gaussian_vector<double>(rng, 4);
        const double c = 0.1 + 5.0 * rng.uniform();
        const auto a = project_to_sphere(EuclideanPoint(x));
        const auto b = project_to_sphere(EuclideanPoint(RealVector(c * x)));
        CHECK((a->coords() - b->coords()).norm() < 1e-12);
    }
}

TEST_CASE("project_to_grassmann picks the top eigenspace and flags ties") {
    RealMatrix a = RealMatrix::Zero(3, 3);
    a.diagonal() << 2, 1, 0;
    const auto proj = project_to_grassmann(HermitianMatrix<double>(a), 1);
    REQUIRE(proj.unique());
    CHECK(std::abs(proj.subspace->frame()(0, 0)) == Approx(1.0));

    const auto tied = project_to_grassmann(
        HermitianMatrix<double>(RealMatrix(RealMatrix::Identity(3, 3))), 1);
    CHECK_FALSE(tied.unique());
    CHECK(tied.eigengap == Approx(0.0).margin(1e-12));

    CHECK_THROWS_AS(project_to_grassmann(HermitianMatrix<double>(a), 3),
                    std::invalid_argument);
}

TEST_CASE("projection of a perturbed embedding stays within the Davis-Kahan bound") {
    CounterRng rng(32);
    for (int rep = 0; rep < 50; ++rep) {
        const auto u = random_subspace<Complex>(rng, 4, 2);
        const auto base = veronese_whitney_embed(u);
        const auto noise = random_hermitian<Complex>(rng, 4, 0.01);
        const HermitianMatrix<Complex> perturbed(
            Matrix<Complex>(base.entries() + noise.entries()));
        const auto proj = project_to_grassmann(perturbed, 2);
        REQUIRE(proj.unique());
        // sigma_m of the perturbed matrix, lambda_{m+1} = 0 of the embedding
        const double sigma_m = eigendecompose(perturbed).eigenvalues[1];
        const double dist = extrinsic_distance(*proj.subspace, u);
        CHECK(sigma_m * dist <= std::sqrt(2.0) * noise.frobenius_norm() + 1e-9);
    }
}

TEST_CASE("angle_between endpoints") {
    RealVector x(2), y(2);
    x << 1, 0;
    y << 0, 1;
    CHECK(angle_between(x, y) == Approx(std::numbers::pi / 2));
    CHECK(angle_between(x, x) == Approx(0.0).margin(1e-12));
    CHECK(angle_between(x, RealVector(-x)) == Approx(std::numbers::pi));
}

TEST_CASE("Wielandt-Hoffman inequality on random Hermitian pairs") {
    CounterRng rng(33);
    for (int rep = 0; rep < 300; ++rep) {
        const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng.next_u64() % 7);
        const bool complex_case = rep % 2 == 1;
        double slack;
        if (complex_case) {
            const auto a = random_hermitian<Complex>(rng, n);
            const auto e = random_hermitian<Complex>(rng, n, 0.5);
            const auto la = eigendecompose(a).eigenvalues;
            const auto ls = eigendecompose(HermitianMatrix<Complex>(
                                               Matrix<Complex>(a.entries() + e.entries())))
                                .eigenvalues;
            slack = e.entries().squaredNorm() - (la - ls).squaredNorm();
        } else {
            const auto a = random_hermitian<double>(rng, n);
            const auto e = random_hermitian<double>(rng, n, 0.5);
            const auto la = eigendecompose(a).eigenvalues;
            const auto ls = eigendecompose(HermitianMatrix<double>(
                                               RealMatrix(a.entries() + e.entries())))
                                .eigenvalues;
            slack = e.entries().squaredNorm() - (la - ls).squaredNorm();
        }
        REQUIRE(slack >= -1e-9);
    }
}

TEST_CASE("Davis-Kahan consequence on random Hermitian pairs") {
    CounterRng rng(34);
    int checked = 0;
    while (checked < 200) {
        const Eigen::Index n = 3 + static_cast<Eigen::Index>(rng.next_u64() % 4);
        const Eigen::Index m = 1 + static_cast<Eigen::Index>(rng.next_u64() % (n - 1));
        const auto a = random_hermitian<Complex>(rng, n);
        const auto e = random_hermitian<Complex>(rng, n, 0.3);
        const auto pa = project_to_grassmann(a, m);
        const HermitianMatrix<Complex> ape(Matrix<Complex>(a.entries() + e.entries()));
        const auto pb = project_to_grassmann(ape, m);
        if (!pa.unique() || !pb.unique()) continue;
        const double sigma_m = pb.decomposition.eigenvalues[m - 1];
        const double lambda_m1 = pa.decomposition.eigenvalues[m];
        if (sigma_m <= lambda_m1) continue;
        const double dist = extrinsic_distance(*pa.subspace, *pb.subspace);
        REQUIRE((sigma_m - lambda_m1) * dist <= std::sqrt(2.0) * e.frobenius_norm() + 1e-9);
        ++checked;
    }
}
