#pragma once

#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "exmean/projective.hpp"
#include "exmean/simulate.hpp"
#include "exmean/types.hpp"

namespace exmean {

using Json = nlohmann::json;

/// A row that failed validation, with its 0-based index and the reason.
struct RowIssue {
    std::size_t row;
    std::string reason;
};

template <typename T>
struct LoadResult {
    std::vector<T> rows;
    std::vector<RowIssue> issues;

    bool ok() const { return issues.empty(); }
};

/// Writes via a sibling temp file and rename, so readers never observe a
/// partially written file.
inline void atomic_write_file(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out << content;
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// ---------------------------------------------------------------------------
// CSV of unit vectors: one observation per row, k+1 columns.

inline LoadResult<UnitVector> parse_unit_vector_csv(const std::string& text) {
    LoadResult<UnitVector> result;
    std::istringstream lines(text);
    std::string line;
    std::size_t row = 0;
    std::optional<Eigen::Index> dim;
    while (std::getline(lines, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) {
            ++row;
            continue;
        }
        std::vector<double> values;
        std::istringstream cells(line);
        std::string cell;
        bool parse_error = false;
        while (std::getline(cells, cell, ',')) {
            try {
                std::size_t used = 0;
                const double v = std::stod(cell, &used);
                while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used])))
                    ++used;
                if (used != cell.size()) throw std::invalid_argument("trailing characters");
                values.push_back(v);
            } catch (const std::exception&) {
                result.issues.push_back({row, "cannot parse '" + cell + "' as a number"});
                parse_error = true;
                break;
            }
        }
        if (!parse_error) {
            if (dim && static_cast<Eigen::Index>(values.size()) != *dim) {
                result.issues.push_back(
                    {row, "expected " + std::to_string(*dim) + " columns, got " +
                              std::to_string(values.size())});
            } else {
                try {
                    RealVector v = Eigen::Map<const RealVector>(values.data(),
                                                                static_cast<Eigen::Index>(values.size()));
                    result.rows.emplace_back(v);
                    if (!dim) dim = static_cast<Eigen::Index>(values.size());
                } catch (const std::exception& e) {
                    result.issues.push_back({row, e.what()});
                }
            }
        }
        ++row;
    }
    if (result.rows.empty() && result.issues.empty())
        result.issues.push_back({0, "file contains no data rows"});
    return result;
}

inline std::string unit_vector_csv(const std::vector<UnitVector>& data) {
    std::string out;
    char buf[64];
    for (const auto& v : data) {
        for (Eigen::Index i = 0; i < v.dim(); ++i) {
            std::snprintf(buf, sizeof(buf), "%.17g", v.coords()[i]);
            out += buf;
            out += (i + 1 < v.dim()) ? ',' : '\n';
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// JSON datasets. Complex entries are [re, im] pairs.

namespace detail {

inline double json_number(const Json& j, const std::string& what) {
    if (!j.is_number()) throw std::invalid_argument(what + " must be a number");
    return j.get<double>();
}

template <typename Scalar>
Scalar json_scalar(const Json& j, const std::string& what) {
    if constexpr (is_complex_v<Scalar>) {
        if (j.is_number()) return Complex(j.get<double>(), 0.0);
        if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
            return Complex(j[0].get<double>(), j[1].get<double>());
        throw std::invalid_argument(what + " must be a number or [re, im] pair");
    } else {
        return json_number(j, what);
    }
}

template <typename Scalar>
Json scalar_to_json(const Scalar& v) {
    if constexpr (is_complex_v<Scalar>) {
        return Json::array({v.real(), v.imag()});
    } else {
        return v;
    }
}

template <typename Scalar>
Json matrix_to_json(const Matrix<Scalar>& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(scalar_to_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

template <typename Scalar>
Matrix<Scalar> matrix_from_json(const Json& j, const std::string& what) {
    if (!j.is_array() || j.empty()) throw std::invalid_argument(what + " must be a non-empty array of rows");
    const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
    if (!j[0].is_array() || j[0].empty())
        throw std::invalid_argument(what + " rows must be non-empty arrays");
    const Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
    Matrix<Scalar> m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        if (!j[i].is_array() || static_cast<Eigen::Index>(j[i].size()) != cols)
            throw std::invalid_argument(what + " rows have inconsistent lengths");
        for (Eigen::Index c = 0; c < cols; ++c)
            m(i, c) = json_scalar<Scalar>(j[i][c], what + " entry");
    }
    return m;
}

inline RealVector vector_from_json(const Json& j, const std::string& what) {
    if (!j.is_array() || j.empty()) throw std::invalid_argument(what + " must be a non-empty array");
    RealVector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i)
        v[static_cast<Eigen::Index>(i)] = json_number(j[i], what + " entry");
    return v;
}

inline Json vector_to_json(const RealVector& v) {
    Json arr = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
    return arr;
}

}  // namespace detail

/// Parses {"points": [[...], ...]} into unit vectors (sphere data).
inline LoadResult<UnitVector> parse_sphere_json(const Json& doc) {
    LoadResult<UnitVector> result;
    if (!doc.contains("points") || !doc["points"].is_array()) {
        result.issues.push_back({0, "dataset needs a 'points' array"});
        return result;
    }
    std::optional<Eigen::Index> dim;
    for (std::size_t i = 0; i < doc["points"].size(); ++i) {
        try {
            RealVector v = detail::vector_from_json(doc["points"][i], "point");
            if (dim && v.size() != *dim) throw std::invalid_argument("inconsistent dimension");
            result.rows.emplace_back(v);
            if (!dim) dim = v.size();
        } catch (const std::exception& e) {
            result.issues.push_back({i, e.what()});
        }
    }
    if (result.rows.empty() && result.issues.empty())
        result.issues.push_back({0, "dataset contains no points"});
    return result;
}

/// Parses {"frames": [[[...]], ...]} into subspaces (Grassmann data).
template <typename Scalar>
LoadResult<Subspace<Scalar>> parse_grassmann_json(const Json& doc) {
    LoadResult<Subspace<Scalar>> result;
    if (!doc.contains("frames") || !doc["frames"].is_array()) {
        result.issues.push_back({0, "dataset needs a 'frames' array"});
        return result;
    }
    std::optional<std::pair<Eigen::Index, Eigen::Index>> shape;
    for (std::size_t i = 0; i < doc["frames"].size(); ++i) {
        try {
            Matrix<Scalar> f = detail::matrix_from_json<Scalar>(doc["frames"][i], "frame");
            if (shape && (f.rows() != shape->first || f.cols() != shape->second))
                throw std::invalid_argument("inconsistent frame shape");
            result.rows.emplace_back(std::move(f));
            if (!shape) shape = {result.rows.back().ambient_dim(), result.rows.back().dim()};
        } catch (const std::exception& e) {
            result.issues.push_back({i, e.what()});
        }
    }
    if (result.rows.empty() && result.issues.empty())
        result.issues.push_back({0, "dataset contains no frames"});
    return result;
}

/// Parses {"points": [[...], ...]} of homogeneous representatives into
/// projective points.
inline LoadResult<HomogeneousPoint> parse_projective_json(const Json& doc) {
    LoadResult<HomogeneousPoint> result;
    if (!doc.contains("points") || !doc["points"].is_array()) {
        result.issues.push_back({0, "dataset needs a 'points' array"});
        return result;
    }
    std::optional<Eigen::Index> dim;
    for (std::size_t i = 0; i < doc["points"].size(); ++i) {
        try {
            RealVector v = detail::vector_from_json(doc["points"][i], "point");
            if (dim && v.size() != *dim) throw std::invalid_argument("inconsistent dimension");
            result.rows.emplace_back(v);
            if (!dim) dim = v.size();
        } catch (const std::exception& e) {
            result.issues.push_back({i, e.what()});
        }
    }
    if (result.rows.empty() && result.issues.empty())
        result.issues.push_back({0, "dataset contains no points"});
    return result;
}

inline Json projective_dataset_json(const std::vector<HomogeneousPoint>& points,
                                    std::uint64_t seed) {
    Json doc;
    doc["format"] = "json_dataset";
    doc["manifold"] = "projective_shape";
    doc["m"] = 2;
    doc["ambient_dim"] = 3;
    doc["seed"] = seed;
    Json rows = Json::array();
    for (const auto& p : points) rows.push_back(detail::vector_to_json(p.representative()));
    doc["points"] = rows;
    return doc;
}

// ---------------------------------------------------------------------------
// Experiment reports.

inline Json to_json(const ExperimentReport& report) {
    Json j;
    j["experiment"] = report.experiment;
    j["manifold"] = report.manifold;
    j["sampler"] = report.sampler;
    j["seed"] = report.seed;
    j["threads"] = report.threads;
    j["alpha"] = report.alpha;
    j["n"] = report.n;
    j["replicates"] = report.replicates;
    j["coverage_frequency"] = report.coverage_frequency;
    j["trivial_frequency"] = report.trivial_frequency;
    if (std::isfinite(report.median_radius)) j["median_radius"] = report.median_radius;
    if (std::isfinite(report.radius_q05)) j["radius_q05"] = report.radius_q05;
    if (std::isfinite(report.radius_q95)) j["radius_q95"] = report.radius_q95;
    if (report.rate_slope) j["rate_slope"] = *report.rate_slope;
    if (!report.per_n.empty()) {
        Json rows = Json::array();
        for (const auto& row : report.per_n) {
            Json r;
            r["n"] = row.n;
            r["replicates"] = row.replicates;
            r["median_radius"] = row.median_radius;
            r["trivial_frequency"] = row.trivial_frequency;
            rows.push_back(r);
        }
        j["per_n"] = rows;
    }
    return j;
}

inline std::string to_csv(const ExperimentReport& report) {
    char buf[64];
    auto num = [&buf](double v) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return std::string(buf);
    };
    std::string out;
    if (report.experiment == "rate") {
        out = "experiment,manifold,sampler,alpha,seed,n,replicates,median_radius,"
              "trivial_frequency,rate_slope\n";
        for (const auto& row : report.per_n) {
            out += report.experiment + "," + report.manifold + "," + report.sampler + "," +
                   num(report.alpha) + "," + std::to_string(report.seed) + "," +
                   std::to_string(row.n) + "," + std::to_string(row.replicates) + "," +
                   num(row.median_radius) + "," + num(row.trivial_frequency) + "," +
                   (report.rate_slope ? num(*report.rate_slope) : "") + "\n";
        }
    } else {
        out = "experiment,manifold,sampler,alpha,seed,n,replicates,coverage_frequency,"
              "trivial_frequency,median_radius,radius_q05,radius_q95\n";
        out += report.experiment + "," + report.manifold + "," + report.sampler + "," +
               num(report.alpha) + "," + std::to_string(report.seed) + "," +
               std::to_string(report.n) + "," + std::to_string(report.replicates) + "," +
               num(report.coverage_frequency) + "," + num(report.trivial_frequency) + "," +
               num(report.median_radius) + "," + num(report.radius_q05) + "," +
               num(report.radius_q95) + "\n";
    }
    return out;
}

}  // namespace exmean
