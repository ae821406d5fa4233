#pragma once

#include <Eigen/Dense>
#include <vector>

#include "segmint/cluster.hpp"

namespace segmint {

struct SilhouetteResult {
    std::vector<double> per_point;
    double average = 0.0;
};

// Rousseeuw silhouette widths: s(i) = (b(i) - a(i)) / max(a(i), b(i)) with
// Euclidean distances accumulated per cluster (no n x n materialization).
// Singleton-cluster points get s(i) = 0.
SilhouetteResult silhouette(const Eigen::MatrixXd& matrix, const std::vector<int>& assignments,
                            int k, int threads = 1);

// Calinski-Harabasz index (B/(k-1)) / (W/(n-k)).
double calinski_harabasz(const Eigen::MatrixXd& matrix, const std::vector<int>& assignments,
                         int k);

struct KSelection {
    int k_silhouette = 0;
    int k_calinski = 0;
    bool agreed = false;
    int k_low = 0;   // min of the two argmax k
    int k_high = 0;  // max
};

// Argmax of each index over the sweep entries of one algorithm. Agreement of
// the two indices is reported, never resolved silently.
KSelection select_best_k(const SweepReport& report, Algorithm algorithm);

}  // namespace segmint
