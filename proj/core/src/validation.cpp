#include "segmint/validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "segmint/parallel.hpp"

namespace segmint {

namespace {

std::vector<int> cluster_sizes(const std::vector<int>& assignments, int k) {
    std::vector<int> sizes(static_cast<std::size_t>(k), 0);
    for (int a : assignments) {
        if (a < 0 || a >= k) throw std::invalid_argument("assignment out of range");
        sizes[static_cast<std::size_t>(a)]++;
    }
    return sizes;
}

}  // namespace

SilhouetteResult silhouette(const Eigen::MatrixXd& matrix, const std::vector<int>& assignments,
                            int k, int threads) {
    const Eigen::Index n = matrix.rows();
    if (static_cast<std::size_t>(n) != assignments.size())
        throw std::invalid_argument("silhouette: assignment length mismatch");
    if (k < 2) throw std::invalid_argument("silhouette: need k >= 2");
    const auto sizes = cluster_sizes(assignments, k);
    for (int c = 0; c < k; ++c)
        if (sizes[static_cast<std::size_t>(c)] == 0)
            throw std::invalid_argument("silhouette: empty cluster " + std::to_string(c));

    SilhouetteResult result;
    result.per_point.assign(static_cast<std::size_t>(n), 0.0);

    parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t i) {
        const int own = assignments[i];
        if (sizes[static_cast<std::size_t>(own)] == 1) {
            result.per_point[i] = 0.0;  // singleton convention
            return;
        }
        std::vector<double> sum(static_cast<std::size_t>(k), 0.0);
        for (Eigen::Index j = 0; j < n; ++j) {
            if (static_cast<std::size_t>(j) == i) continue;
            sum[static_cast<std::size_t>(assignments[static_cast<std::size_t>(j)])] +=
                (matrix.row(static_cast<Eigen::Index>(i)) - matrix.row(j)).norm();
        }
        const double a =
            sum[static_cast<std::size_t>(own)] / (sizes[static_cast<std::size_t>(own)] - 1);
        double b = std::numeric_limits<double>::infinity();
        for (int c = 0; c < k; ++c) {
            if (c == own) continue;
            b = std::min(b, sum[static_cast<std::size_t>(c)] / sizes[static_cast<std::size_t>(c)]);
        }
        const double denom = std::max(a, b);
        result.per_point[i] = denom > 0.0 ? (b - a) / denom : 0.0;
    });

    double total = 0.0;
    for (double s : result.per_point) total += s;
    result.average = total / static_cast<double>(n);
    return result;
}

double calinski_harabasz(const Eigen::MatrixXd& matrix, const std::vector<int>& assignments,
                         int k) {
    const Eigen::Index n = matrix.rows();
    if (static_cast<std::size_t>(n) != assignments.size())
        throw std::invalid_argument("calinski_harabasz: assignment length mismatch");
    if (k < 2 || k >= n)
        throw std::invalid_argument("calinski_harabasz: need 2 <= k < n");
    const auto sizes = cluster_sizes(assignments, k);

    const Eigen::RowVectorXd grand = matrix.colwise().mean();
    Eigen::MatrixXd centers = Eigen::MatrixXd::Zero(k, matrix.cols());
    for (Eigen::Index i = 0; i < n; ++i)
        centers.row(assignments[static_cast<std::size_t>(i)]) += matrix.row(i);
    for (int c = 0; c < k; ++c) {
        if (sizes[static_cast<std::size_t>(c)] == 0)
            throw std::invalid_argument("calinski_harabasz: empty cluster " + std::to_string(c));
        centers.row(c) /= sizes[static_cast<std::size_t>(c)];
    }

    double between = 0.0;
    for (int c = 0; c < k; ++c)
        between += sizes[static_cast<std::size_t>(c)] * (centers.row(c) - grand).squaredNorm();
    double within = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
        within += (matrix.row(i) - centers.row(assignments[static_cast<std::size_t>(i)]))
                      .squaredNorm();

    if (within == 0.0) return std::numeric_limits<double>::infinity();
    return (between / (k - 1)) / (within / static_cast<double>(n - k));
}

KSelection select_best_k(const SweepReport& report, Algorithm algorithm) {
    KSelection sel;
    bool any = false;
    double best_sil = -std::numeric_limits<double>::infinity();
    double best_cal = -std::numeric_limits<double>::infinity();
    int covered = 0;
    for (const auto& entry : report.entries) {
        if (entry.algorithm != algorithm) continue;
        ++covered;
        any = true;
        if (entry.silhouette_avg > best_sil) {
            best_sil = entry.silhouette_avg;
            sel.k_silhouette = entry.k;
        }
        if (entry.calinski > best_cal) {
            best_cal = entry.calinski;
            sel.k_calinski = entry.k;
        }
    }
    if (!any || covered < 2)
        throw std::invalid_argument("select_best_k: report must cover at least 2 values of k");
    sel.agreed = sel.k_silhouette == sel.k_calinski;
    sel.k_low = std::min(sel.k_silhouette, sel.k_calinski);
    sel.k_high = std::max(sel.k_silhouette, sel.k_calinski);
    return sel;
}

}  // namespace segmint
