#include <catch_amalgamated.hpp>

#include <cmath>
#include <map>
#include <set>

#include "exmean/exmean.hpp"
#include "support/generators.hpp"

using namespace exmean;
using Catch::Approx;

namespace {

RealVector rv(std::initializer_list<double> values) {
    RealVector v(static_cast<Eigen::Index>(values.size()));
    Eigen::Index i = 0;
    for (double x : values) v[i++] = x;
    return v;
}

}  // namespace

TEST_CASE("embed_affine and dehomogenize are inverse") {
    const auto origin = embed_affine(rv({0, 0}));
    CHECK(std::abs(origin.representative()[2]) == Approx(1.0));

    const auto p = embed_affine(rv({3, 4}));
    const double scale = 1.0 / std::sqrt(26.0);
    CHECK(p.representative()[0] == Approx(3 * scale));
    CHECK(p.representative()[2] == Approx(scale));
    CHECK((dehomogenize(p) - rv({3, 4})).norm() < 1e-12);

    CounterRng rng(71);
    for (int rep = 0; rep < 50; ++rep) {
        RealVector x = 20.0 * detail::gaussian_vector<double>(rng, 3);
        CHECK((dehomogenize(embed_affine(x)) - x).norm() < 1e-10 * std::max(1.0, x.norm()));
    }
}

TEST_CASE("dehomogenize rejects points at infinity and ignores representative sign") {
    CHECK_THROWS_AS(dehomogenize(HomogeneousPoint(rv({1, 0, 0}))), std::domain_error);
    const auto plus = dehomogenize(HomogeneousPoint(rv({3, 4, 1})));
    const auto minus = dehomogenize(HomogeneousPoint(rv({-3, -4, -1})));
    CHECK((plus - minus).norm() < 1e-12);
    CHECK((plus - rv({3, 4})).norm() < 1e-12);
}

TEST_CASE("homogeneous points are scale invariant") {
    CounterRng rng(72);
    for (int rep = 0; rep < 30; ++rep) {
        RealVector raw = detail::gaussian_vector<double>(rng, 3);
        raw[2] += 2.0;
        double c = (rng.uniform() - 0.5) * 10.0;
        if (std::abs(c) < 0.1) c = 0.5;
        const HomogeneousPoint a(raw), b{RealVector(c * raw)};
        CHECK(extrinsic_distance(a.ray(), b.ray()) < 1e-12);
        CHECK((dehomogenize(a) - dehomogenize(b)).norm() < 1e-10);
    }
}

TEST_CASE("quadric_region at the origin with delta 1 is the unit disk") {
    const auto region = quadric_region(embed_affine(rv({0, 0})), 1.0);
    REQUIRE(region.conic_class.has_value());
    CHECK(*region.conic_class == ConicClass::ellipse);
    CHECK(quadric_membership(region, rv({0.99, 0})));
    CHECK_FALSE(quadric_membership(region, rv({1.01, 0})));
    CHECK(quadric_membership(region, rv({0.5, 0.5})));
    CHECK_FALSE(quadric_membership(region, rv({0.8, 0.8})));
}

TEST_CASE("quadric membership agrees with the extrinsic distance threshold") {
    CounterRng rng(73);
    for (int rep = 0; rep < 20; ++rep) {
        RealVector z = 5.0 * detail::gaussian_vector<double>(rng, 2);
        const double delta = 0.05 + 1.3 * rng.uniform();
        const auto region = quadric_region(embed_affine(z), delta);
        CHECK(quadric_membership(region, z));  // d = 0 < delta

        for (int i = 0; i < 500; ++i) {
            const RealVector x = 15.0 * detail::gaussian_vector<double>(rng, 2);
            const double d = projective_distance_to_mean(region, x);
            if (std::abs(d * d - delta * delta) < 1e-9) continue;  // boundary band
            CHECK(quadric_membership(region, x) == (d < delta));
        }
    }
}

TEST_CASE("quadric value matches the displayed inequality form") {
    CounterRng rng(74);
    for (int rep = 0; rep < 200; ++rep) {
        RealVector z = 4.0 * detail::gaussian_vector<double>(rng, 2);
        const double delta = 0.1 + 1.2 * rng.uniform();
        const auto region = quadric_region(embed_affine(z), delta);
        const RealVector x = 10.0 * detail::gaussian_vector<double>(rng, 2);
        const double c = 2.0 - delta * delta;
        const double lhs = c * (z.squaredNorm() + 1.0);
        const double rhs = 2.0 * std::pow(x.dot(z) + 1.0, 2) -
                           c * x.squaredNorm() * (z.squaredNorm() + 1.0);
        // x~^T Q x~ > 0 is exactly rhs - lhs > 0
        CHECK(quadric_value(region, x) == Approx(rhs - lhs).margin(1e-12 * std::abs(lhs)));
    }
}

TEST_CASE("reference mean and radius give a hyperbolic boundary") {
    const auto region = quadric_region(embed_affine(rv({10.0447, 9.8422})), 0.3713);
    REQUIRE(region.conic_class.has_value());
    CHECK(*region.conic_class == ConicClass::hyperbola);
    CHECK(quadric_membership(region, rv({10.0447, 9.8422})));
}

TEST_CASE("near-maximal delta covers every representable point") {
    const auto region = quadric_region(embed_affine(rv({1, 2})), std::sqrt(2.0));
    CounterRng rng(75);
    for (int i = 0; i < 200; ++i) {
        const RealVector x = 20.0 * detail::gaussian_vector<double>(rng, 2);
        if (std::abs(x.dot(region.z) + 1.0) < 1e-6) continue;  // the measure-zero slice
        CHECK(quadric_membership(region, x));
    }
    CHECK_THROWS_AS(quadric_region(embed_affine(rv({1, 2})), 1.5), std::invalid_argument);
    CHECK_THROWS_AS(quadric_region(embed_affine(rv({1, 2})), 0.0), std::invalid_argument);
}

TEST_CASE("synthesize_section5_data is deterministic and well placed") {
    const auto a = synthesize_section5_data(7);
    const auto b = synthesize_section5_data(7);
    const auto c = synthesize_section5_data(8);
    REQUIRE(a.size() == 100);
    bool identical = true, distinct = false;
    for (std::size_t i = 0; i < 100; ++i) {
        if ((a[i].representative() - b[i].representative()).norm() != 0.0) identical = false;
        if ((a[i].representative() - c[i].representative()).norm() > 1e-12) distinct = true;
    }
    CHECK(identical);
    CHECK(distinct);

    for (const auto& p : a) {
        const RealVector x = dehomogenize(p);  // never at infinity by construction
        CHECK(x[0] > 5.0);
        CHECK(x[0] < 15.0);
        CHECK(x[1] > 5.0);
        CHECK(x[1] < 15.0);
    }
}

TEST_CASE("synthesized dataset reproduces the reference mean matrix and radius") {
    const auto points = synthesize_section5_data(7);
    std::vector<RealSubspace> rays;
    for (const auto& p : points) rays.push_back(p.ray());
    const auto mean = grassmann_euclidean_mean(rays);

    RealMatrix reference(3, 3);
    reference << 0.5075, 0.4917, 0.0503, 0.4917, 0.4875, 0.0492, 0.0503, 0.0492, 0.005;
    CHECK((mean.entries() - reference).cwiseAbs().maxCoeff() < 0.02);

    const auto region = grassmann_region_from_mean(mean, 1, ConfidenceConfig(0.05, 100));
    REQUIRE(region.kind == GrassmannConfidenceRegion<double>::Kind::ball);
    CHECK(region.radius == Approx(0.3713).margin(0.04));
}

// --- svg ----------------------------------------------------------------------

TEST_CASE("marching squares traces the unit circle") {
    const auto region = quadric_region(embed_affine(rv({0, 0})), 1.0);
    const Viewport vp{-1.6, 1.6, -1.6, 1.6};
    const auto segments = contour_segments(region, vp);
    REQUIRE(!segments.empty());

    const double cell = (vp.xmax - vp.xmin) / 512.0;
    for (const auto& s : segments) {
        CHECK(std::abs(std::hypot(s.x0, s.y0) - 1.0) < 2.0 * cell);
        CHECK(std::abs(std::hypot(s.x1, s.y1) - 1.0) < 2.0 * cell);
    }

    // Closed contour: every vertex should appear an even number of times.
    std::map<std::pair<long, long>, int> degree;
    auto key = [&](double x, double y) {
        return std::make_pair(std::lround(x * 1e7), std::lround(y * 1e7));
    };
    for (const auto& s : segments) {
        ++degree[key(s.x0, s.y0)];
        ++degree[key(s.x1, s.y1)];
    }
    for (const auto& [vertex, count] : degree) CHECK(count % 2 == 0);
}

TEST_CASE("render_region_svg is deterministic and honours empty data") {
    const auto region = quadric_region(embed_affine(rv({0, 0})), 1.0);
    const Viewport vp{-2, 2, -2, 2};
    const auto with_points =
        render_region_svg(region, {rv({0.5, 0.2}), rv({-0.4, 0.1})}, vp);
    CHECK(with_points == render_region_svg(region, {rv({0.5, 0.2}), rv({-0.4, 0.1})}, vp));
    CHECK(with_points.find("<circle") != std::string::npos);
    CHECK(with_points.find("<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\"") !=
          std::string::npos);

    const auto empty = render_region_svg(region, {}, vp);
    CHECK(empty.find("<circle") == std::string::npos);  // boundary and mean only
    CHECK(empty.find("<path") != std::string::npos);
}

TEST_CASE("render rejects non-planar regions") {
    const auto region = quadric_region(embed_affine(rv({1, 2, 3})), 0.5);
    CHECK_FALSE(region.conic_class.has_value());
    CHECK_THROWS_AS(render_region_svg(region, {}, Viewport{-1, 1, -1, 1}),
                    std::invalid_argument);
}
