// Command-line front end: analyze datasets on spheres, Grassmannians and
// projective shape space, synthesize the reference dataset, run Monte
// Carlo experiments, and render confidence-region figures.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "exmean/exmean.hpp"
#include "exmean/io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 2;
constexpr const char* kVersion = "0.1.0";

int log_level() {
    static const int level = [] {
        const char* env = std::getenv("EXC_LOG_LEVEL");
        return env ? std::atoi(env) : 0;
    }();
    return level;
}

void log_info(const std::string& msg) {
    if (log_level() >= 1) std::cerr << "[info] " << msg << "\n";
}

void log_debug(const std::string& msg) {
    if (log_level() >= 2) std::cerr << "[debug] " << msg << "\n";
}

void write_output(const std::optional<std::string>& path, const std::string& content) {
    if (path) {
        exmean::atomic_write_file(*path, content);
        log_info("wrote " + *path);
    } else {
        std::cout << content;
    }
}

template <typename T>
bool report_issues(const exmean::LoadResult<T>& result, const std::string& path) {
    for (const auto& issue : result.issues)
        std::cerr << path << ": row " << issue.row << ": " << issue.reason << "\n";
    return result.ok();
}

exmean::Json region_json(const exmean::SphereConfidenceRegion& region) {
    exmean::Json j;
    j["kind"] = region.trivial() ? "full_sphere" : "cone";
    j["trivial"] = region.trivial();
    if (!region.trivial()) {
        j["center"] = exmean::detail::vector_to_json(region.center->coords());
        j["angular_radius_radians"] = region.angular_radius;
        j["angular_radius_degrees"] = region.angular_radius * 180.0 / std::numbers::pi;
    }
    return j;
}

template <typename Scalar>
exmean::Json region_json(const exmean::GrassmannConfidenceRegion<Scalar>& region) {
    exmean::Json j;
    j["kind"] = region.trivial() ? "full_space" : "ball";
    j["trivial"] = region.trivial();
    j["radius"] = region.radius;
    if (region.center)
        j["center_frame"] = exmean::detail::matrix_to_json<Scalar>(region.center->frame());
    return j;
}

exmean::Json diagnostics_json(const exmean::GrassmannDiagnostics& d) {
    exmean::Json j;
    j["eigengap"] = d.eigengap;
    j["gap_threshold"] = d.gap_threshold;
    j["spectrum"] = exmean::detail::vector_to_json(d.spectrum);
    return j;
}

// --- analyze ---------------------------------------------------------------

struct AnalyzeOptions {
    std::string input;
    std::string manifold;
    std::string format = "auto";
    double alpha = 0.05;
    std::optional<long> m;
    std::optional<long> ambient_dim;
    std::optional<std::string> out;
    std::optional<std::string> svg;
    std::optional<std::string> viewport_spec;
};

exmean::Viewport viewport_from_spec(const std::string& spec) {
    std::vector<double> v;
    std::istringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ',')) v.push_back(std::stod(part));
    if (v.size() != 4 || !(v[0] < v[1]) || !(v[2] < v[3]))
        throw std::invalid_argument("viewport must be xmin,xmax,ymin,ymax with min < max");
    return exmean::Viewport{v[0], v[1], v[2], v[3]};
}

exmean::Viewport auto_viewport(const std::vector<exmean::RealVector>& points,
                               const exmean::RealVector& mean) {
    double xmin = mean[0], xmax = mean[0], ymin = mean[1], ymax = mean[1];
    for (const auto& p : points) {
        xmin = std::min(xmin, p[0]);
        xmax = std::max(xmax, p[0]);
        ymin = std::min(ymin, p[1]);
        ymax = std::max(ymax, p[1]);
    }
    const double pad = 0.2 * std::max({xmax - xmin, ymax - ymin, 1e-3});
    return exmean::Viewport{xmin - pad, xmax + pad, ymin - pad, ymax + pad};
}

int analyze_sphere(const AnalyzeOptions& opt, const std::string& text) {
    exmean::LoadResult<exmean::UnitVector> load;
    if (opt.format == "csv" ||
        (opt.format == "auto" && std::filesystem::path(opt.input).extension() == ".csv")) {
        load = exmean::parse_unit_vector_csv(text);
    } else {
        load = exmean::parse_sphere_json(exmean::Json::parse(text));
    }
    if (!report_issues(load, opt.input)) return kExitBadInput;
    if (opt.ambient_dim && load.rows.front().dim() != *opt.ambient_dim) {
        std::cerr << "--ambient-dim " << *opt.ambient_dim << " does not match data dimension "
                  << load.rows.front().dim() << "\n";
        return kExitBadInput;
    }

    const exmean::ConfidenceConfig cfg(opt.alpha, static_cast<long>(load.rows.size()));
    const auto mean = exmean::euclidean_mean(load.rows);
    const auto region = exmean::sphere_region_from_mean(mean, cfg);

    exmean::Json report;
    report["input"] = opt.input;
    report["manifold"] = "sphere";
    report["alpha"] = opt.alpha;
    report["n"] = load.rows.size();
    report["euclidean_mean"] = exmean::detail::vector_to_json(mean.coords());
    report["diagnostics"] = {{"mean_norm", region.diagnostics.mean_norm},
                             {"threshold", region.diagnostics.threshold}};
    const auto extrinsic = exmean::project_to_sphere(mean);
    report["extrinsic_mean_kind"] = extrinsic ? "point" : "full_sphere";
    if (extrinsic) report["extrinsic_mean"] = exmean::detail::vector_to_json(extrinsic->coords());
    report["region"] = region_json(region);
    write_output(opt.out, report.dump(2) + "\n");
    return kExitOk;
}

template <typename Scalar>
int analyze_grassmann(const AnalyzeOptions& opt, const std::string& text) {
    auto load = exmean::parse_grassmann_json<Scalar>(exmean::Json::parse(text));
    if (!report_issues(load, opt.input)) return kExitBadInput;
    const auto& first = load.rows.front();
    if (opt.m && first.dim() != *opt.m) {
        std::cerr << "--m " << *opt.m << " does not match frame width " << first.dim() << "\n";
        return kExitBadInput;
    }
    if (opt.ambient_dim && first.ambient_dim() != *opt.ambient_dim) {
        std::cerr << "--ambient-dim " << *opt.ambient_dim << " does not match frame height "
                  << first.ambient_dim() << "\n";
        return kExitBadInput;
    }

    const exmean::ConfidenceConfig cfg(opt.alpha, static_cast<long>(load.rows.size()));
    const auto mean = exmean::grassmann_euclidean_mean(load.rows);
    const auto region = exmean::grassmann_region_from_mean(mean, first.dim(), cfg);

    exmean::Json report;
    report["input"] = opt.input;
    report["manifold"] = exmean::is_complex_v<Scalar> ? "grassmann_complex" : "grassmann_real";
    report["alpha"] = opt.alpha;
    report["n"] = load.rows.size();
    report["m"] = first.dim();
    report["ambient_dim"] = first.ambient_dim();
    report["euclidean_mean"] = exmean::detail::matrix_to_json<Scalar>(mean.entries());
    report["diagnostics"] = diagnostics_json(region.diagnostics);
    report["extrinsic_mean_kind"] = region.center ? "subspace" : "non_unique";
    if (region.center)
        report["extrinsic_mean_frame"] =
            exmean::detail::matrix_to_json<Scalar>(region.center->frame());
    report["region"] = region_json(region);
    if (first.dim() == 1 && first.ambient_dim() == 2) {
        const char* advisory = exmean::is_complex_v<Scalar>
                                   ? "CP^1 is isometric to S^2; the sphere pipeline uses a "
                                     "lower-dimensional ambient space for such data"
                                   : "RP^1 is isometric to S^1; the sphere pipeline uses a "
                                     "lower-dimensional ambient space for such data";
        report["advisory"] = advisory;
        std::cerr << "warning: " << advisory << "\n";
    }
    write_output(opt.out, report.dump(2) + "\n");
    return kExitOk;
}

int analyze_projective(const AnalyzeOptions& opt, const std::string& text) {
    auto load = exmean::parse_projective_json(exmean::Json::parse(text));
    if (!report_issues(load, opt.input)) return kExitBadInput;
    const Eigen::Index m = load.rows.front().affine_dim();
    if (opt.m && m != *opt.m) {
        std::cerr << "--m " << *opt.m << " does not match point dimension " << m << "\n";
        return kExitBadInput;
    }

    std::vector<exmean::RealSubspace> rays;
    rays.reserve(load.rows.size());
    for (const auto& p : load.rows) rays.push_back(p.ray());

    const exmean::ConfidenceConfig cfg(opt.alpha, static_cast<long>(rays.size()));
    const auto mean = exmean::grassmann_euclidean_mean(rays);
    const auto region = exmean::grassmann_region_from_mean(mean, 1, cfg);

    exmean::Json report;
    report["input"] = opt.input;
    report["manifold"] = "projective_shape";
    report["alpha"] = opt.alpha;
    report["n"] = rays.size();
    report["m"] = m;
    report["euclidean_mean"] = exmean::detail::matrix_to_json<double>(mean.entries());
    report["diagnostics"] = diagnostics_json(region.diagnostics);
    report["region"] = region_json(region);
    report["extrinsic_mean_kind"] = region.center ? "subspace" : "non_unique";

    if (region.center) {
        const exmean::HomogeneousPoint mu(region.center->frame().col(0));
        exmean::Json projective;
        try {
            const exmean::RealVector z = exmean::dehomogenize(mu);
            const double delta = std::min(region.radius, std::sqrt(2.0));
            const auto quadric = exmean::quadric_region(mu, delta);
            report["extrinsic_mean"] = exmean::detail::vector_to_json(z);
            projective["z"] = exmean::detail::vector_to_json(z);
            projective["delta"] = delta;
            projective["quadric"] = exmean::detail::matrix_to_json<double>(quadric.Q);
            if (quadric.conic_class)
                projective["conic_class"] = exmean::to_string(*quadric.conic_class);
            report["projective"] = projective;

            if (opt.svg) {
                if (m != 2) {
                    std::cerr << "--svg requires planar data (m = 2)\n";
                    return kExitBadInput;
                }
                std::vector<exmean::RealVector> affine;
                for (const auto& p : load.rows) affine.push_back(exmean::dehomogenize(p));
                const auto vp = opt.viewport_spec ? viewport_from_spec(*opt.viewport_spec)
                                                  : auto_viewport(affine, z);
                exmean::atomic_write_file(*opt.svg,
                                          exmean::render_region_svg(quadric, affine, vp));
                report["svg_path"] = *opt.svg;
                log_info("wrote " + *opt.svg);
            }
        } catch (const std::domain_error& e) {
            report["mean_at_infinity"] = true;
            std::cerr << "warning: " << e.what() << "\n";
        }
    }
    write_output(opt.out, report.dump(2) + "\n");
    return kExitOk;
}

int run_analyze(const AnalyzeOptions& opt) {
    const std::string text = exmean::read_file(opt.input);
    log_debug("analyze manifold=" + opt.manifold);
    if (opt.manifold == "sphere") return analyze_sphere(opt, text);
    if (opt.manifold == "grassmann_real") return analyze_grassmann<double>(opt, text);
    if (opt.manifold == "grassmann_complex") return analyze_grassmann<exmean::Complex>(opt, text);
    if (opt.manifold == "projective_shape") return analyze_projective(opt, text);
    std::cerr << "unknown manifold '" << opt.manifold << "'\n";
    return kExitBadInput;
}

// --- simulate ---------------------------------------------------------------

struct ConfigErrors {
    std::vector<std::string> messages;

    void require(bool ok, const std::string& msg) {
        if (!ok) messages.push_back(msg);
    }
};

exmean::UnitVector axis_from_config(const exmean::Json& sampler, ConfigErrors& errors) {
    if (sampler.contains("axis")) {
        return exmean::UnitVector(
            exmean::detail::vector_from_json(sampler["axis"], "sampler.axis"));
    }
    long dim = 3;
    if (sampler.contains("dim")) dim = sampler["dim"].get<long>();
    errors.require(dim >= 2, "sampler.dim must be >= 2");
    exmean::RealVector e1 = exmean::RealVector::Zero(std::max<long>(dim, 2));
    e1[0] = 1.0;
    return exmean::UnitVector(e1);
}

exmean::SphereSampler sphere_sampler_from_config(const exmean::Json& sampler,
                                                 ConfigErrors& errors) {
    const std::string kind = sampler.value("kind", "");
    auto axis = axis_from_config(sampler, errors);
    if (kind == "point_mass") return exmean::SphereSampler::point_mass(axis);
    if (kind == "antipodal_mixture") return exmean::SphereSampler::antipodal_mixture(axis);
    if (kind == "spherical_cap_uniform") {
        errors.require(sampler.contains("cap_cos"), "sampler.cap_cos required for caps");
        return exmean::SphereSampler::spherical_cap(axis, sampler.value("cap_cos", 0.5));
    }
    if (kind == "langevin_like_rejection") {
        errors.require(sampler.contains("kappa"), "sampler.kappa required for langevin");
        return exmean::SphereSampler::langevin(axis, sampler.value("kappa", 1.0));
    }
    errors.require(false, "sampler.kind '" + kind + "' is not a sphere sampler");
    return exmean::SphereSampler::point_mass(axis);
}

template <typename Scalar>
exmean::GrassmannSampler<Scalar> grassmann_sampler_from_config(const exmean::Json& sampler,
                                                               ConfigErrors& errors) {
    const std::string kind = sampler.value("kind", "");
    if (kind == "subspace_uniform_pair") {
        const long ambient = sampler.value("ambient_dim", 3);
        errors.require(ambient >= 2, "sampler.ambient_dim must be >= 2");
        return exmean::GrassmannSampler<Scalar>::uniform_pair(std::max<long>(ambient, 2));
    }
    if (kind == "subspace_perturbation" || kind == "point_mass") {
        const double angle = kind == "point_mass" ? 0.0 : sampler.value("angle", -1.0);
        errors.require(kind == "point_mass" || sampler.contains("angle"),
                       "sampler.angle required for subspace_perturbation");
        errors.require(angle >= 0.0 && angle < 1.5707,
                       "sampler.angle must lie in [0, pi/2)");
        exmean::Vector<Scalar> axis;
        if (sampler.contains("axis")) {
            const auto real_axis =
                exmean::detail::vector_from_json(sampler["axis"], "sampler.axis");
            axis = real_axis.template cast<Scalar>();
        } else {
            const long dim = sampler.value("ambient_dim", 3);
            errors.require(dim >= 2, "sampler.ambient_dim must be >= 2");
            axis = exmean::Vector<Scalar>::Zero(std::max<long>(dim, 2));
            axis[0] = Scalar(1);
        }
        if (!errors.messages.empty())
            return exmean::GrassmannSampler<Scalar>::uniform_pair(3);
        return exmean::GrassmannSampler<Scalar>::line_perturbation(axis, angle);
    }
    errors.require(false, "sampler.kind '" + kind + "' is not a grassmann sampler");
    return exmean::GrassmannSampler<Scalar>::uniform_pair(3);
}

int run_simulate(const std::string& config_path, const std::string& out_path,
                 std::optional<int> threads_override) {
    exmean::Json config;
    try {
        config = exmean::Json::parse(exmean::read_file(config_path));
    } catch (const std::exception& e) {
        std::cerr << config_path << ": " << e.what() << "\n";
        return kExitBadInput;
    }

    ConfigErrors errors;
    const std::string experiment = config.value("experiment", "");
    const std::string manifold = config.value("manifold", "");
    errors.require(experiment == "coverage" || experiment == "rate",
                   "experiment must be 'coverage' or 'rate'");
    errors.require(manifold == "sphere" || manifold == "grassmann_real" ||
                       manifold == "grassmann_complex",
                   "manifold must be sphere, grassmann_real or grassmann_complex");
    const double alpha = config.value("alpha", 0.0);
    errors.require(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0,1)");
    errors.require(config.contains("sampler") && config["sampler"].is_object(),
                   "sampler object required");
    const std::uint64_t seed = config.value("seed", 1ull);
    const int threads = threads_override.value_or(config.value("threads", 1));

    std::vector<long> n_grid;
    long n = 0, replicates = 0, replicates_per_n = 0;
    if (experiment == "coverage") {
        n = config.value("n", 0l);
        replicates = config.value("replicates", 0l);
        errors.require(n >= 1, "n must be >= 1");
        errors.require(replicates >= 100, "replicates must be >= 100");
    } else {
        if (config.contains("n_grid") && config["n_grid"].is_array())
            for (const auto& v : config["n_grid"]) n_grid.push_back(v.get<long>());
        errors.require(n_grid.size() >= 2, "n_grid must list at least two sizes");
        if (n_grid.size() >= 2) {
            auto [lo, hi] = std::minmax_element(n_grid.begin(), n_grid.end());
            errors.require(*lo >= 1 && *hi >= 100 * *lo,
                           "n_grid must span at least two decades");
        }
        replicates_per_n = config.value("replicates_per_n", 0l);
        errors.require(replicates_per_n >= 2, "replicates_per_n must be >= 2");
    }

    exmean::Json sampler_cfg = config.value("sampler", exmean::Json::object());
    exmean::ExperimentReport report;
    try {
        if (manifold == "sphere") {
            auto sampler = sphere_sampler_from_config(sampler_cfg, errors);
            if (!errors.messages.empty()) throw std::invalid_argument("config invalid");
            report = experiment == "coverage"
                         ? exmean::run_coverage_experiment(
                               sampler, exmean::ConfidenceConfig(alpha, n), replicates,
                               threads, seed)
                         : exmean::run_rate_experiment(sampler, alpha, n_grid,
                                                       replicates_per_n, threads, seed);
        } else if (manifold == "grassmann_real") {
            auto sampler = grassmann_sampler_from_config<double>(sampler_cfg, errors);
            if (!errors.messages.empty()) throw std::invalid_argument("config invalid");
            report = experiment == "coverage"
                         ? exmean::run_coverage_experiment(
                               sampler, exmean::ConfidenceConfig(alpha, n), replicates,
                               threads, seed)
                         : exmean::run_rate_experiment(sampler, alpha, n_grid,
                                                       replicates_per_n, threads, seed);
        } else {
            auto sampler = grassmann_sampler_from_config<exmean::Complex>(sampler_cfg, errors);
            if (!errors.messages.empty()) throw std::invalid_argument("config invalid");
            report = experiment == "coverage"
                         ? exmean::run_coverage_experiment(
                               sampler, exmean::ConfidenceConfig(alpha, n), replicates,
                               threads, seed)
                         : exmean::run_rate_experiment(sampler, alpha, n_grid,
                                                       replicates_per_n, threads, seed);
        }
    } catch (const std::exception& e) {
        if (errors.messages.empty()) errors.messages.push_back(e.what());
    }
    if (!errors.messages.empty()) {
        for (const auto& msg : errors.messages) std::cerr << config_path << ": " << msg << "\n";
        return kExitBadInput;
    }

    exmean::Json out = exmean::to_json(report);
    out["config_echo"] = config;
    out["version"] = kVersion;
    exmean::atomic_write_file(out_path, out.dump(2) + "\n");
    std::filesystem::path csv_path(out_path);
    csv_path.replace_extension(".csv");
    exmean::atomic_write_file(csv_path, exmean::to_csv(report));
    log_info("wrote " + out_path + " and " + csv_path.string());
    return kExitOk;
}

// --- render -----------------------------------------------------------------

int run_render(const std::string& report_path, const std::string& data_path,
               const std::string& out_path, const std::optional<std::string>& viewport_spec) {
    exmean::Json report;
    try {
        report = exmean::Json::parse(exmean::read_file(report_path));
    } catch (const std::exception& e) {
        std::cerr << report_path << ": " << e.what() << "\n";
        return kExitBadInput;
    }
    if (!report.contains("projective")) {
        std::cerr << report_path << ": no projective section; render needs an analyze report "
                     "for projective_shape data\n";
        return kExitBadInput;
    }
    const auto& projective = report["projective"];

    exmean::QuadricRegion region;
    try {
        region.z = exmean::detail::vector_from_json(projective.at("z"), "projective.z");
        region.m = region.z.size();
        region.delta = projective.at("delta").get<double>();
        region.Q = exmean::detail::matrix_from_json<double>(projective.at("quadric"),
                                                            "projective.quadric");
        if (region.m != 2) throw std::invalid_argument("render requires m = 2");
    } catch (const std::exception& e) {
        std::cerr << report_path << ": " << e.what() << "\n";
        return kExitBadInput;
    }

    auto load = exmean::parse_projective_json(exmean::Json::parse(exmean::read_file(data_path)));
    if (!report_issues(load, data_path)) return kExitBadInput;
    std::vector<exmean::RealVector> affine;
    for (const auto& p : load.rows) {
        try {
            affine.push_back(exmean::dehomogenize(p));
        } catch (const std::domain_error&) {
            log_info("skipping a data point on the hyperplane at infinity");
        }
    }

    const auto vp = viewport_spec ? viewport_from_spec(*viewport_spec)
                                  : auto_viewport(affine, region.z);
    exmean::atomic_write_file(out_path, exmean::render_region_svg(region, affine, vp));
    log_info("wrote " + out_path);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Non-asymptotic confidence sets for extrinsic means on spheres, "
                 "Grassmannians and projective shape space"};
    app.require_subcommand(1);

    AnalyzeOptions analyze_opt;
    auto* analyze = app.add_subcommand("analyze", "Compute mean and confidence region");
    analyze->add_option("--in", analyze_opt.input, "Input dataset")->required();
    analyze->add_option("--manifold", analyze_opt.manifold,
                        "sphere | grassmann_real | grassmann_complex | projective_shape")
        ->required();
    analyze->add_option("--format", analyze_opt.format, "csv | json | auto");
    analyze->add_option("--alpha", analyze_opt.alpha, "Confidence parameter in (0,1)");
    analyze->add_option("--m", analyze_opt.m, "Expected subspace dimension");
    analyze->add_option("--ambient-dim", analyze_opt.ambient_dim, "Expected ambient dimension");
    analyze->add_option("--out", analyze_opt.out, "Report path (stdout when omitted)");
    analyze->add_option("--svg", analyze_opt.svg, "Figure path (projective_shape, m = 2)");
    analyze->add_option("--viewport", analyze_opt.viewport_spec, "xmin,xmax,ymin,ymax");

    std::uint64_t synth_seed = 7;
    std::string synth_out;
    auto* synthesize = app.add_subcommand("synthesize", "Write the reference planar dataset");
    synthesize->add_option("--seed", synth_seed, "Generator seed");
    synthesize->add_option("--out", synth_out, "Output dataset path")->required();

    std::string sim_config, sim_out;
    std::optional<int> sim_threads;
    auto* simulate = app.add_subcommand("simulate", "Run a Monte Carlo experiment");
    simulate->add_option("--config", sim_config, "Experiment config (JSON)")->required();
    simulate->add_option("--out", sim_out, "Report path (JSON; CSV written alongside)")
        ->required();
    simulate->add_option("--threads", sim_threads, "Worker threads (overrides config)");

    std::string render_report, render_data, render_out;
    std::optional<std::string> render_viewport;
    auto* render = app.add_subcommand("render", "Render a confidence-region figure");
    render->add_option("--report", render_report, "analyze report (JSON)")->required();
    render->add_option("--data", render_data, "Dataset used for the analysis")->required();
    render->add_option("--out", render_out, "SVG path")->required();
    render->add_option("--viewport", render_viewport, "xmin,xmax,ymin,ymax");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*analyze) {
            if (!(analyze_opt.alpha > 0.0 && analyze_opt.alpha < 1.0)) {
                std::cerr << "--alpha must lie in (0,1)\n";
                return kExitBadInput;
            }
            return run_analyze(analyze_opt);
        }
        if (*synthesize) {
            const auto points = exmean::synthesize_section5_data(synth_seed);
            exmean::atomic_write_file(
                synth_out, exmean::projective_dataset_json(points, synth_seed).dump(2) + "\n");
            log_info("wrote " + synth_out);
            return kExitOk;
        }
        if (*simulate) return run_simulate(sim_config, sim_out, sim_threads);
        if (*render) return run_render(render_report, render_data, render_out, render_viewport);
    } catch (const exmean::Json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::domain_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitOk;
}
