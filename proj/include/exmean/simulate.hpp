#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "exmean/grassmann.hpp"
#include "exmean/rng.hpp"
#include "exmean/samplers.hpp"
#include "exmean/sphere.hpp"
#include "exmean/types.hpp"

namespace exmean {

struct ExperimentReport {
    std::string experiment;  // "coverage" or "rate"
    std::string manifold;    // "sphere", "grassmann_real", "grassmann_complex"
    std::string sampler;
    std::uint64_t seed = 0;
    int threads = 1;
    double alpha = 0.0;
    long n = 0;  // sample size (coverage experiments)
    long replicates = 0;

    double coverage_frequency = 0.0;
    double trivial_frequency = 0.0;
    double median_radius = std::numeric_limits<double>::quiet_NaN();
    double radius_q05 = std::numeric_limits<double>::quiet_NaN();
    double radius_q95 = std::numeric_limits<double>::quiet_NaN();
    std::optional<double> rate_slope;

    struct PerN {
        long n = 0;
        long replicates = 0;
        double median_radius = 0.0;
        double trivial_frequency = 0.0;
    };
    std::vector<PerN> per_n;  // rate experiments only
};

namespace detail {

struct ReplicateOutcome {
    bool covered = false;
    bool trivial = false;
    double radius = std::numeric_limits<double>::quiet_NaN();
};

/// One replicate of the sphere pipeline: draw n, average, build region.
struct SpherePipeline {
    const SphereSampler& sampler;
    ConfidenceConfig cfg;
    std::optional<UnitVector> population_mean;  // resolved once

    explicit SpherePipeline(const SphereSampler& s, const ConfidenceConfig& c)
        : sampler(s), cfg(c), population_mean(s.known_extrinsic_mean()) {}

    ReplicateOutcome operator()(CounterRng stream) const {
        RealVector sum = RealVector::Zero(sampler.ambient_dim());
        for (long i = 0; i < cfg.n; ++i) sum += sampler.draw(stream).coords();
        const auto region =
            sphere_region_from_mean(EuclideanPoint(sum / double(cfg.n)), cfg);
        ReplicateOutcome out;
        out.trivial = region.trivial();
        if (!out.trivial) out.radius = region.angular_radius;
        // A whole-manifold population mean set is covered exactly by the
        // trivial region.
        out.covered = population_mean ? membership(region, *population_mean)
                                      : region.trivial();
        return out;
    }
};

template <typename Scalar>
struct GrassmannPipeline {
    const GrassmannSampler<Scalar>& sampler;
    ConfidenceConfig cfg;
    std::optional<Subspace<Scalar>> population_mean;

    explicit GrassmannPipeline(const GrassmannSampler<Scalar>& s, const ConfidenceConfig& c)
        : sampler(s), cfg(c), population_mean(s.known_extrinsic_mean()) {}

    ReplicateOutcome operator()(CounterRng stream) const {
        const Eigen::Index d1 = sampler.ambient_dim();
        const double root_m = std::sqrt(static_cast<double>(sampler.subspace_dim()));
        Matrix<Scalar> sum = Matrix<Scalar>::Zero(d1, d1);
        for (long i = 0; i < cfg.n; ++i) {
            const Subspace<Scalar> u = sampler.draw(stream);
            sum.template selfadjointView<Eigen::Lower>().rankUpdate(u.frame(), 1.0);
        }
        Matrix<Scalar> mean =
            Matrix<Scalar>(sum.template selfadjointView<Eigen::Lower>()) /
            Scalar(root_m * static_cast<double>(cfg.n));
        const auto region = grassmann_region_from_mean(HermitianMatrix<Scalar>(std::move(mean)),
                                                       sampler.subspace_dim(), cfg);
        ReplicateOutcome out;
        out.trivial = region.trivial();
        if (!out.trivial) out.radius = region.radius;
        out.covered = population_mean ? membership(region, *population_mean)
                                      : region.trivial();
        return out;
    }
};

/// Runs fn over replicate indices [0, R) on `threads` workers. Replicate
/// r always consumes stream(r) of the root generator and results land in
/// slot r, so the outcome vector does not depend on the thread count.
template <typename Fn>
std::vector<ReplicateOutcome> run_replicates(Fn&& fn, long replicates, std::uint64_t seed,
                                             int threads) {
    std::vector<ReplicateOutcome> outcomes(static_cast<std::size_t>(replicates));
    const CounterRng root(seed);
    const int workers = std::max(1, threads);

    auto work = [&](long begin, long end) {
        for (long r = begin; r < end; ++r)
            outcomes[static_cast<std::size_t>(r)] =
                fn(root.stream(static_cast<std::uint64_t>(r)));
    };

    if (workers == 1) {
        work(0, replicates);
    } else {
        std::vector<std::thread> pool;
        const long chunk = (replicates + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const long begin = w * chunk;
            const long end = std::min(replicates, begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(work, begin, end);
        }
        for (auto& t : pool) t.join();
    }
    return outcomes;
}

/// Type-7 quantile of a sorted sample.
inline double sorted_quantile(const std::vector<double>& sorted, double p) {
    if (sorted.empty()) return std::numeric_limits<double>::quiet_NaN();
    const double h = p * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(h);
    if (lo + 1 >= sorted.size()) return sorted.back();
    return sorted[lo] + (h - lo) * (sorted[lo + 1] - sorted[lo]);
}

/// Sequential reduction in replicate order; bit-identical for any thread
/// count because the outcomes vector already is.
inline void aggregate(const std::vector<ReplicateOutcome>& outcomes, ExperimentReport& report) {
    long covered = 0, trivial = 0;
    std::vector<double> radii;
    radii.reserve(outcomes.size());
    for (const auto& o : outcomes) {
        covered += o.covered ? 1 : 0;
        trivial += o.trivial ? 1 : 0;
        if (!o.trivial) radii.push_back(o.radius);
    }
    const double total = static_cast<double>(outcomes.size());
    report.replicates = static_cast<long>(outcomes.size());
    report.coverage_frequency = covered / total;
    report.trivial_frequency = trivial / total;
    std::sort(radii.begin(), radii.end());
    report.median_radius = sorted_quantile(radii, 0.5);
    report.radius_q05 = sorted_quantile(radii, 0.05);
    report.radius_q95 = sorted_quantile(radii, 0.95);
}

template <typename Pipeline>
ExperimentReport coverage_experiment(const Pipeline& pipeline, const ConfidenceConfig& cfg,
                                     long replicates, int threads, std::uint64_t seed) {
    if (replicates < 100)
        throw std::invalid_argument("coverage experiment: need at least 100 replicates");
    ExperimentReport report;
    report.experiment = "coverage";
    report.seed = seed;
    report.threads = std::max(1, threads);
    report.alpha = cfg.alpha;
    report.n = cfg.n;
    aggregate(run_replicates(pipeline, replicates, seed, threads), report);
    return report;
}

template <typename MakePipeline>
ExperimentReport rate_experiment(MakePipeline&& make_pipeline, double alpha,
                                 const std::vector<long>& n_grid, long replicates_per_n,
                                 int threads, std::uint64_t seed) {
    if (n_grid.size() < 2)
        throw std::invalid_argument("rate experiment: n_grid needs at least two sizes");
    std::vector<long> grid = n_grid;
    std::sort(grid.begin(), grid.end());
    if (grid.front() < 1) throw std::invalid_argument("rate experiment: n must be >= 1");
    if (grid.back() < 100 * grid.front())
        throw std::invalid_argument("rate experiment: n_grid must span at least two decades");
    if (replicates_per_n < 2)
        throw std::invalid_argument("rate experiment: need at least 2 replicates per n");

    ExperimentReport report;
    report.experiment = "rate";
    report.seed = seed;
    report.threads = std::max(1, threads);
    report.alpha = alpha;

    std::vector<double> log_n, log_median;
    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
        const ConfidenceConfig cfg(alpha, grid[gi]);
        const auto pipeline = make_pipeline(cfg);
        const std::uint64_t sub_seed = CounterRng(seed).stream(gi).next_u64();
        auto outcomes = run_replicates(pipeline, replicates_per_n, sub_seed, threads);

        std::vector<double> radii;
        long trivial = 0;
        for (const auto& o : outcomes) {
            if (o.trivial)
                ++trivial;
            else
                radii.push_back(o.radius);
        }
        if (radii.empty())
            throw std::runtime_error("rate experiment: all replicates trivial at n = " +
                                     std::to_string(grid[gi]) +
                                     "; use larger n or more concentrated data");
        std::sort(radii.begin(), radii.end());

        ExperimentReport::PerN row;
        row.n = grid[gi];
        row.replicates = replicates_per_n;
        row.median_radius = sorted_quantile(radii, 0.5);
        row.trivial_frequency =
            static_cast<double>(trivial) / static_cast<double>(replicates_per_n);
        report.per_n.push_back(row);
        log_n.push_back(std::log(static_cast<double>(grid[gi])));
        log_median.push_back(std::log(row.median_radius));
    }

    // Least-squares slope of log(median radius) on log(n).
    const double k = static_cast<double>(log_n.size());
    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < log_n.size(); ++i) {
        mean_x += log_n[i];
        mean_y += log_median[i];
    }
    mean_x /= k;
    mean_y /= k;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < log_n.size(); ++i) {
        sxy += (log_n[i] - mean_x) * (log_median[i] - mean_y);
        sxx += (log_n[i] - mean_x) * (log_n[i] - mean_x);
    }
    report.rate_slope = sxy / sxx;
    report.replicates = replicates_per_n * static_cast<long>(grid.size());
    report.median_radius = report.per_n.back().median_radius;
    report.n = grid.back();
    return report;
}

}  // namespace detail

/// Coverage of the known extrinsic mean set over independent replicates.
/// Streams are indexed by replicate, so reports are identical for any
/// parallelism degree.
inline ExperimentReport run_coverage_experiment(const SphereSampler& sampler,
                                                const ConfidenceConfig& cfg, long replicates,
                                                int threads = 1, std::uint64_t seed = 1) {
    auto report = detail::coverage_experiment(detail::SpherePipeline(sampler, cfg), cfg,
                                              replicates, threads, seed);
    report.manifold = "sphere";
    report.sampler = to_string(sampler.kind());
    return report;
}

template <typename Scalar>
ExperimentReport run_coverage_experiment(const GrassmannSampler<Scalar>& sampler,
                                         const ConfidenceConfig& cfg, long replicates,
                                         int threads = 1, std::uint64_t seed = 1) {
    auto report = detail::coverage_experiment(detail::GrassmannPipeline<Scalar>(sampler, cfg),
                                              cfg, replicates, threads, seed);
    report.manifold = is_complex_v<Scalar> ? "grassmann_complex" : "grassmann_real";
    report.sampler = to_string(sampler.kind());
    return report;
}

/// Median radius versus n and the fitted log-log slope; O_P(1/sqrt(n))
/// behavior shows up as a slope near -1/2. Only non-trivial replicates
/// enter the medians.
inline ExperimentReport run_rate_experiment(const SphereSampler& sampler, double alpha,
                                            const std::vector<long>& n_grid,
                                            long replicates_per_n, int threads = 1,
                                            std::uint64_t seed = 1) {
    auto report = detail::rate_experiment(
        [&](const ConfidenceConfig& cfg) { return detail::SpherePipeline(sampler, cfg); },
        alpha, n_grid, replicates_per_n, threads, seed);
    report.manifold = "sphere";
    report.sampler = to_string(sampler.kind());
    return report;
}

template <typename Scalar>
ExperimentReport run_rate_experiment(const GrassmannSampler<Scalar>& sampler, double alpha,
                                     const std::vector<long>& n_grid, long replicates_per_n,
                                     int threads = 1, std::uint64_t seed = 1) {
    auto report = detail::rate_experiment(
        [&](const ConfidenceConfig& cfg) {
            return detail::GrassmannPipeline<Scalar>(sampler, cfg);
        },
        alpha, n_grid, replicates_per_n, threads, seed);
    report.manifold = is_complex_v<Scalar> ? "grassmann_complex" : "grassmann_real";
    report.sampler = to_string(sampler.kind());
    return report;
}

}  // namespace exmean
