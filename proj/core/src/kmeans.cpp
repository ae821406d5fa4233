#include <cmath>
#include <limits>
#include <stdexcept>

#include "segmint/cluster.hpp"
#include "segmint/rng.hpp"

namespace segmint {

const char* to_string(Algorithm a) {
    return a == Algorithm::KMeans ? "kmeans" : "clara";
}

Algorithm algorithm_from_string(const std::string& s) {
    if (s == "kmeans") return Algorithm::KMeans;
    if (s == "clara") return Algorithm::Clara;
    throw std::invalid_argument("unknown algorithm: " + s + " (expected kmeans or clara)");
}

namespace {

// nearest center, ties to lowest id
int nearest_center(const Eigen::MatrixXd& matrix, const Eigen::MatrixXd& centers,
                   Eigen::Index row, double* dist_out = nullptr) {
    int best = 0;
    double best_d = (matrix.row(row) - centers.row(0)).squaredNorm();
    for (int j = 1; j < centers.rows(); ++j) {
        const double d = (matrix.row(row) - centers.row(j)).squaredNorm();
        if (d < best_d) {
            best_d = d;
            best = j;
        }
    }
    if (dist_out) *dist_out = best_d;
    return best;
}

// Assigns every row to its nearest center; returns the number of changed
// assignments. dist[i] ends as the squared distance to the assigned center.
std::size_t assign_all(const Eigen::MatrixXd& matrix, const Eigen::MatrixXd& centers,
                       std::vector<int>& assignments, std::vector<double>& dist) {
    std::size_t changed = 0;
    for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
        double d = 0.0;
        const int c = nearest_center(matrix, centers, i, &d);
        auto idx = static_cast<std::size_t>(i);
        if (assignments[idx] != c) {
            assignments[idx] = c;
            ++changed;
        }
        dist[idx] = d;
    }
    return changed;
}

// Reseeds each empty cluster with the point farthest from its assigned
// center (donor cluster must keep a member) and moves that point over.
// Returns true if any cluster needed repair.
bool repair_empty_clusters(const Eigen::MatrixXd& matrix, Eigen::MatrixXd& centers,
                           std::vector<int>& assignments, std::vector<double>& dist, int k) {
    std::vector<int> counts(static_cast<std::size_t>(k), 0);
    for (int a : assignments) counts[static_cast<std::size_t>(a)]++;
    bool repaired = false;
    for (int empty = 0; empty < k; ++empty) {
        if (counts[static_cast<std::size_t>(empty)] > 0) continue;
        Eigen::Index farthest = -1;
        double far_d = -1.0;
        for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
            const auto idx = static_cast<std::size_t>(i);
            if (counts[static_cast<std::size_t>(assignments[idx])] < 2) continue;
            if (dist[idx] > far_d) {
                far_d = dist[idx];
                farthest = i;
            }
        }
        if (farthest < 0) throw std::logic_error("kmeans: cannot repair empty cluster");
        const auto fidx = static_cast<std::size_t>(farthest);
        counts[static_cast<std::size_t>(assignments[fidx])]--;
        assignments[fidx] = empty;
        counts[static_cast<std::size_t>(empty)] = 1;
        centers.row(empty) = matrix.row(farthest);
        dist[fidx] = 0.0;
        repaired = true;
    }
    return repaired;
}

Eigen::MatrixXd initial_centers(const Eigen::MatrixXd& matrix, int k, Rng& rng,
                                KMeansInit init) {
    const std::size_t n = static_cast<std::size_t>(matrix.rows());
    Eigen::MatrixXd centers(k, matrix.cols());
    if (init == KMeansInit::Forgy) {
        auto rows = rng.sample_without_replacement(n, static_cast<std::size_t>(k));
        for (int j = 0; j < k; ++j)
            centers.row(j) = matrix.row(static_cast<Eigen::Index>(rows[static_cast<std::size_t>(j)]));
        return centers;
    }
    // k-means++: distance-squared weighted picks
    std::vector<double> d2(n, std::numeric_limits<double>::infinity());
    centers.row(0) = matrix.row(static_cast<Eigen::Index>(rng.uniform_index(n)));
    for (int j = 1; j < k; ++j) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d =
                (matrix.row(static_cast<Eigen::Index>(i)) - centers.row(j - 1)).squaredNorm();
            d2[i] = std::min(d2[i], d);
            total += d2[i];
        }
        std::size_t pick = n - 1;
        if (total > 0.0) {
            const double target = rng.uniform() * total;
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                acc += d2[i];
                if (acc >= target) {
                    pick = i;
                    break;
                }
            }
        } else {
            pick = rng.uniform_index(n);
        }
        centers.row(j) = matrix.row(static_cast<Eigen::Index>(pick));
    }
    return centers;
}

}  // namespace

ClusteringResult kmeans(const Eigen::MatrixXd& matrix, int k, std::uint64_t seed,
                        const KMeansOptions& options) {
    const Eigen::Index n = matrix.rows();
    if (k < 1) throw std::invalid_argument("kmeans: k must be >= 1");
    if (k > n) throw std::invalid_argument("kmeans: k exceeds number of rows");
    if (!matrix.allFinite()) throw std::invalid_argument("kmeans: matrix must be finite");

    ClusteringResult result;
    result.algorithm = Algorithm::KMeans;
    result.k = k;
    result.seed = seed;

    if (k == n) {
        result.assignments.resize(static_cast<std::size_t>(n));
        for (Eigen::Index i = 0; i < n; ++i)
            result.assignments[static_cast<std::size_t>(i)] = static_cast<int>(i);
        result.centers = matrix;
        result.objective = 0.0;
        return result;
    }

    Rng rng(seed);
    Eigen::MatrixXd centers = initial_centers(matrix, k, rng, options.init);

    std::vector<int> assignments(static_cast<std::size_t>(n), -1);
    std::vector<double> dist(static_cast<std::size_t>(n), 0.0);
    assign_all(matrix, centers, assignments, dist);
    repair_empty_clusters(matrix, centers, assignments, dist, k);

    auto wcss_of = [&dist] {
        double s = 0.0;
        for (double d : dist) s += d;
        return s;
    };

    double prev = std::numeric_limits<double>::infinity();
    bool repaired_last = false;
    for (int iter = 1; iter <= options.max_iterations; ++iter) {
        Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, matrix.cols());
        std::vector<int> counts(static_cast<std::size_t>(k), 0);
        for (Eigen::Index i = 0; i < n; ++i) {
            const int a = assignments[static_cast<std::size_t>(i)];
            sums.row(a) += matrix.row(i);
            counts[static_cast<std::size_t>(a)]++;
        }
        for (int j = 0; j < k; ++j)
            if (counts[static_cast<std::size_t>(j)] > 0)
                centers.row(j) = sums.row(j) / counts[static_cast<std::size_t>(j)];

        const std::size_t changed = assign_all(matrix, centers, assignments, dist);
        repaired_last = repair_empty_clusters(matrix, centers, assignments, dist, k);

        const double wcss = wcss_of();
        if (wcss > prev + 1e-9 * std::max(1.0, prev))
            throw std::logic_error("kmeans: WCSS increased across an iteration");
        result.objective_history.push_back(wcss);
        result.iterations = iter;

        const bool converged =
            !repaired_last && (changed == 0 || prev - wcss < options.tolerance);
        prev = wcss;
        if (converged) break;
    }

    // A repair in the last iteration leaves some points possibly closer to
    // the reseeded center than to their own; settle without moving centers.
    for (int guard = 0; repaired_last && guard <= k; ++guard) {
        const std::size_t changed = assign_all(matrix, centers, assignments, dist);
        repaired_last = repair_empty_clusters(matrix, centers, assignments, dist, k);
        if (changed == 0 && !repaired_last) break;
        const double wcss = wcss_of();
        result.objective_history.push_back(wcss);
        prev = wcss;
    }

    result.assignments = std::move(assignments);
    result.centers = std::move(centers);
    result.objective = prev;
    return result;
}

}  // namespace segmint
