#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace segmint {

enum class Algorithm { KMeans, Clara };

const char* to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& s);

struct ClusteringResult {
    Algorithm algorithm = Algorithm::KMeans;
    int k = 0;
    std::vector<int> assignments;       // cluster id per row, every id in [0,k) non-empty
    Eigen::MatrixXd centers;            // k x d (KMeans)
    std::vector<int> medoids;           // row indices, ascending (Clara)
    double objective = 0.0;             // WCSS (KMeans) / mean dissimilarity (Clara)
    std::uint64_t seed = 0;
    int iterations = 0;
    std::vector<double> objective_history;  // per-iteration WCSS (KMeans)
};

enum class KMeansInit { Forgy, PlusPlus };

struct KMeansOptions {
    int max_iterations = 100;
    double tolerance = 1e-8;  // absolute WCSS improvement
    KMeansInit init = KMeansInit::Forgy;
};

// Lloyd iterations from a random-row start. Ties in the nearest-center rule
// go to the lowest center id; empty clusters are reseeded with the point
// farthest from its current center.
ClusteringResult kmeans(const Eigen::MatrixXd& matrix, int k, std::uint64_t seed,
                        const KMeansOptions& options = {});

struct PamResult {
    std::vector<int> medoids;      // ascending
    std::vector<int> assignments;  // index into medoids order
    double objective = 0.0;        // sum of dissimilarity to nearest medoid
    int swap_steps = 0;
};

// k-medoids on a precomputed dissimilarity matrix: greedy BUILD then
// best-improvement SWAP until no swap strictly decreases the objective.
PamResult pam(const Eigen::MatrixXd& dissimilarity, int k);

Eigen::MatrixXd pairwise_euclidean(const Eigen::MatrixXd& matrix);

struct ClaraOptions {
    int samples = 5;
    int sample_size = 0;  // 0 -> min(n, 40 + 2k)
};

// PAM on random row subsets; after the first draw every sample is forced to
// contain the best medoids so far. The sample whose medoids give the lowest
// mean dissimilarity over the full data wins.
ClusteringResult clara(const Eigen::MatrixXd& matrix, int k, std::uint64_t seed,
                       const ClaraOptions& options = {});

struct SweepConfig {
    int k_min = 2;
    int k_max = 20;
    int restarts = 100;
    std::uint64_t base_seed = 0;
    int clara_samples = 5;
    int clara_sample_size = 0;
    int max_iterations = 100;
    double tolerance = 1e-8;
    KMeansInit kmeans_init = KMeansInit::Forgy;
    int threads = 1;
};

struct SweepEntry {
    Algorithm algorithm = Algorithm::KMeans;
    int k = 0;
    int best_restart = 0;
    ClusteringResult best;
    double silhouette_avg = 0.0;
    double calinski = 0.0;
};

struct SweepReport {
    SweepConfig config;
    std::vector<SweepEntry> entries;  // ordered by (algorithm, k)

    const SweepEntry& entry(Algorithm a, int k) const;
};

// Per-run seed for (algorithm, k, restart); restarts can run on any worker
// count without changing results.
std::uint64_t derive_run_seed(std::uint64_t base_seed, Algorithm algorithm, int k, int restart);

// For each k in [k_min, k_max] runs `restarts` seeded runs per algorithm,
// keeps the lowest objective (ties: lowest restart index) and attaches
// silhouette and Calinski-Harabasz scores for the retained run.
SweepReport sweep(const Eigen::MatrixXd& matrix, const std::vector<Algorithm>& algorithms,
                  const SweepConfig& config);

}  // namespace segmint
