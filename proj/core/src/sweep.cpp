#include <algorithm>
#include <limits>
#include <stdexcept>

#include "segmint/cluster.hpp"
#include "segmint/parallel.hpp"
#include "segmint/rng.hpp"
#include "segmint/validation.hpp"

namespace segmint {

std::uint64_t derive_run_seed(std::uint64_t base_seed, Algorithm algorithm, int k, int restart) {
    return derive_seed(base_seed, {algorithm == Algorithm::KMeans ? 1ULL : 2ULL,
                                   static_cast<std::uint64_t>(k),
                                   static_cast<std::uint64_t>(restart)});
}

const SweepEntry& SweepReport::entry(Algorithm a, int k) const {
    for (const auto& e : entries)
        if (e.algorithm == a && e.k == k) return e;
    throw std::out_of_range("sweep report has no entry for this (algorithm, k)");
}

namespace {

ClusteringResult run_once(const Eigen::MatrixXd& matrix, Algorithm algorithm, int k,
                          std::uint64_t seed, const SweepConfig& config) {
    if (algorithm == Algorithm::KMeans) {
        KMeansOptions opt;
        opt.max_iterations = config.max_iterations;
        opt.tolerance = config.tolerance;
        opt.init = config.kmeans_init;
        return kmeans(matrix, k, seed, opt);
    }
    ClaraOptions opt;
    opt.samples = config.clara_samples;
    opt.sample_size = config.clara_sample_size;
    return clara(matrix, k, seed, opt);
}

}  // namespace

SweepReport sweep(const Eigen::MatrixXd& matrix, const std::vector<Algorithm>& algorithms,
                  const SweepConfig& config) {
    if (config.k_min < 2 || config.k_min > config.k_max)
        throw std::invalid_argument("sweep: need 2 <= k_min <= k_max");
    if (config.k_max > matrix.rows())
        throw std::invalid_argument("sweep: k_max exceeds number of rows");
    if (config.restarts < 1) throw std::invalid_argument("sweep: restarts must be >= 1");
    if (algorithms.empty()) throw std::invalid_argument("sweep: no algorithms requested");

    struct Task {
        Algorithm algorithm;
        int k;
        int restart;
        double objective = std::numeric_limits<double>::quiet_NaN();
    };
    std::vector<Task> tasks;
    const int k_count = config.k_max - config.k_min + 1;
    tasks.reserve(algorithms.size() * static_cast<std::size_t>(k_count) *
                  static_cast<std::size_t>(config.restarts));
    for (Algorithm a : algorithms)
        for (int k = config.k_min; k <= config.k_max; ++k)
            for (int r = 0; r < config.restarts; ++r) tasks.push_back({a, k, r});

    // phase 1: objectives only; full results are cheap to rebuild from seeds
    parallel_for(tasks.size(), config.threads, [&](std::size_t t) {
        Task& task = tasks[t];
        const std::uint64_t seed =
            derive_run_seed(config.base_seed, task.algorithm, task.k, task.restart);
        task.objective = run_once(matrix, task.algorithm, task.k, seed, config).objective;
    });

    // phase 2: deterministic reduction, then re-run the winners
    SweepReport report;
    report.config = config;
    for (Algorithm a : algorithms) {
        for (int k = config.k_min; k <= config.k_max; ++k) {
            const Task* winner = nullptr;
            for (const auto& task : tasks) {
                if (task.algorithm != a || task.k != k) continue;
                if (!winner || task.objective < winner->objective) winner = &task;
            }
            SweepEntry entry;
            entry.algorithm = a;
            entry.k = k;
            entry.best_restart = winner->restart;
            const std::uint64_t seed = derive_run_seed(config.base_seed, a, k, winner->restart);
            entry.best = run_once(matrix, a, k, seed, config);
            report.entries.push_back(std::move(entry));
        }
    }

    parallel_for(report.entries.size(), config.threads, [&](std::size_t i) {
        auto& entry = report.entries[i];
        entry.silhouette_avg = silhouette(matrix, entry.best.assignments, entry.k).average;
        entry.calinski = calinski_harabasz(matrix, entry.best.assignments, entry.k);
    });
    return report;
}

}  // namespace segmint
