#include <algorithm>
#include <limits>
#include <stdexcept>
#include <unordered_set>

#include "segmint/cluster.hpp"
#include "segmint/rng.hpp"

namespace segmint {

namespace {

// Full-data assignment to medoid rows; returns mean dissimilarity.
double assign_to_medoids(const Eigen::MatrixXd& matrix, const std::vector<int>& medoids,
                         std::vector<int>& assignments) {
    const Eigen::Index n = matrix.rows();
    assignments.resize(static_cast<std::size_t>(n));
    double total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        int best = 0;
        double best_d = (matrix.row(i) - matrix.row(medoids[0])).norm();
        for (std::size_t m = 1; m < medoids.size(); ++m) {
            const double d = (matrix.row(i) - matrix.row(medoids[m])).norm();
            if (d < best_d) {
                best_d = d;
                best = static_cast<int>(m);
            }
        }
        assignments[static_cast<std::size_t>(i)] = best;
        total += best_d;
    }
    return total / static_cast<double>(n);
}

}  // namespace

ClusteringResult clara(const Eigen::MatrixXd& matrix, int k, std::uint64_t seed,
                       const ClaraOptions& options) {
    const int n = static_cast<int>(matrix.rows());
    if (k < 1) throw std::invalid_argument("clara: k must be >= 1");
    if (options.samples < 1) throw std::invalid_argument("clara: samples must be >= 1");
    if (!matrix.allFinite()) throw std::invalid_argument("clara: matrix must be finite");

    int sample_size = options.sample_size > 0 ? options.sample_size : std::min(n, 40 + 2 * k);
    sample_size = std::min(sample_size, n);
    if (sample_size <= k)
        throw std::invalid_argument("clara: sample_size must exceed k");

    Rng rng(seed);
    ClusteringResult best;
    best.algorithm = Algorithm::Clara;
    best.k = k;
    best.seed = seed;
    best.objective = std::numeric_limits<double>::infinity();

    for (int s = 0; s < options.samples; ++s) {
        std::vector<std::size_t> sample;
        if (s == 0 || best.medoids.empty()) {
            sample = rng.sample_without_replacement(static_cast<std::size_t>(n),
                                                    static_cast<std::size_t>(sample_size));
        } else {
            // keep the incumbent medoids, fill the rest uniformly
            std::unordered_set<int> in_sample(best.medoids.begin(), best.medoids.end());
            std::vector<std::size_t> rest;
            rest.reserve(static_cast<std::size_t>(n) - in_sample.size());
            for (int i = 0; i < n; ++i)
                if (!in_sample.count(i)) rest.push_back(static_cast<std::size_t>(i));
            auto extra = rng.sample_without_replacement(
                rest.size(), static_cast<std::size_t>(sample_size) - in_sample.size());
            sample.assign(best.medoids.begin(), best.medoids.end());
            for (std::size_t e : extra) sample.push_back(rest[e]);
            std::sort(sample.begin(), sample.end());
        }

        Eigen::MatrixXd sub(sample.size(), matrix.cols());
        for (std::size_t i = 0; i < sample.size(); ++i)
            sub.row(static_cast<Eigen::Index>(i)) = matrix.row(static_cast<Eigen::Index>(sample[i]));

        const PamResult local = pam(pairwise_euclidean(sub), k);

        std::vector<int> medoids(local.medoids.size());
        for (std::size_t m = 0; m < local.medoids.size(); ++m)
            medoids[m] = static_cast<int>(sample[static_cast<std::size_t>(local.medoids[m])]);
        // sample indices are ascending, so mapped medoids stay ascending

        std::vector<int> assignments;
        const double objective = assign_to_medoids(matrix, medoids, assignments);
        if (objective < best.objective) {
            best.medoids = std::move(medoids);
            best.assignments = std::move(assignments);
            best.objective = objective;
            best.iterations = s + 1;  // winning sample (1-based)
        }
    }
    return best;
}

}  // namespace segmint
