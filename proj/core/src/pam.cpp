#include <algorithm>
#include <limits>
#include <stdexcept>

#include "segmint/cluster.hpp"

namespace segmint {

Eigen::MatrixXd pairwise_euclidean(const Eigen::MatrixXd& matrix) {
    const Eigen::Index n = matrix.rows();
    Eigen::MatrixXd d(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        d(i, i) = 0.0;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double dij = (matrix.row(i) - matrix.row(j)).norm();
            d(i, j) = dij;
            d(j, i) = dij;
        }
    }
    return d;
}

namespace {

void validate_dissimilarity(const Eigen::MatrixXd& d) {
    if (d.rows() != d.cols())
        throw std::invalid_argument("pam: dissimilarity matrix must be square");
    for (Eigen::Index i = 0; i < d.rows(); ++i) {
        if (d(i, i) != 0.0)
            throw std::invalid_argument("pam: dissimilarity diagonal must be zero");
        for (Eigen::Index j = i + 1; j < d.cols(); ++j) {
            if (d(i, j) != d(j, i))
                throw std::invalid_argument("pam: dissimilarity matrix must be symmetric");
            if (d(i, j) < 0.0)
                throw std::invalid_argument("pam: dissimilarities must be non-negative");
        }
    }
}

}  // namespace

PamResult pam(const Eigen::MatrixXd& dissimilarity, int k) {
    validate_dissimilarity(dissimilarity);
    const int n = static_cast<int>(dissimilarity.rows());
    if (k < 1 || k > n) throw std::invalid_argument("pam: k must be in [1, n]");

    std::vector<char> is_medoid(static_cast<std::size_t>(n), 0);
    std::vector<int> medoids;
    medoids.reserve(static_cast<std::size_t>(k));

    // nearest[i] / second[i]: distance to the closest and second-closest
    // medoid of point i, maintained through BUILD and SWAP
    std::vector<double> nearest(static_cast<std::size_t>(n),
                                std::numeric_limits<double>::infinity());
    std::vector<double> second(static_cast<std::size_t>(n),
                               std::numeric_limits<double>::infinity());

    auto add_medoid = [&](int m) {
        is_medoid[static_cast<std::size_t>(m)] = 1;
        medoids.push_back(m);
        for (int i = 0; i < n; ++i) {
            const double d = dissimilarity(i, m);
            auto idx = static_cast<std::size_t>(i);
            if (d < nearest[idx]) {
                second[idx] = nearest[idx];
                nearest[idx] = d;
            } else if (d < second[idx]) {
                second[idx] = d;
            }
        }
    };

    // BUILD: first medoid minimizes total dissimilarity, then greedily add
    // the candidate with the largest total decrease (ties: lowest index).
    {
        int best = 0;
        double best_total = std::numeric_limits<double>::infinity();
        for (int m = 0; m < n; ++m) {
            const double total = dissimilarity.col(m).sum();
            if (total < best_total) {
                best_total = total;
                best = m;
            }
        }
        add_medoid(best);
    }
    while (static_cast<int>(medoids.size()) < k) {
        int best = -1;
        double best_gain = -std::numeric_limits<double>::infinity();
        for (int c = 0; c < n; ++c) {
            if (is_medoid[static_cast<std::size_t>(c)]) continue;
            double gain = 0.0;
            for (int i = 0; i < n; ++i) {
                const double d = dissimilarity(i, c);
                if (d < nearest[static_cast<std::size_t>(i)])
                    gain += nearest[static_cast<std::size_t>(i)] - d;
            }
            if (gain > best_gain) {
                best_gain = gain;
                best = c;
            }
        }
        add_medoid(best);
    }

    auto objective_of = [&] {
        double total = 0.0;
        for (int i = 0; i < n; ++i) total += nearest[static_cast<std::size_t>(i)];
        return total;
    };

    auto recompute_neighbours = [&] {
        for (int i = 0; i < n; ++i) {
            double n1 = std::numeric_limits<double>::infinity();
            double n2 = std::numeric_limits<double>::infinity();
            for (int m : medoids) {
                const double d = dissimilarity(i, m);
                if (d < n1) {
                    n2 = n1;
                    n1 = d;
                } else if (d < n2) {
                    n2 = d;
                }
            }
            nearest[static_cast<std::size_t>(i)] = n1;
            second[static_cast<std::size_t>(i)] = n2;
        }
    };

    // SWAP: apply the best strictly-improving (medoid, candidate) exchange
    // until none exists. Tie-break on (medoid position, candidate index).
    PamResult result;
    result.objective = objective_of();
    if (k < n) {
        for (;;) {
            double best_delta = -1e-12;  // strict decrease required
            int best_m = -1, best_h = -1;
            for (std::size_t mi = 0; mi < medoids.size(); ++mi) {
                const int m = medoids[mi];
                for (int h = 0; h < n; ++h) {
                    if (is_medoid[static_cast<std::size_t>(h)]) continue;
                    double delta = 0.0;
                    for (int i = 0; i < n; ++i) {
                        if (i == h) {
                            delta -= nearest[static_cast<std::size_t>(i)];
                            continue;
                        }
                        const auto idx = static_cast<std::size_t>(i);
                        const double d_ih = dissimilarity(i, h);
                        const double d_im = dissimilarity(i, m);
                        if (d_im > nearest[idx]) {
                            // i is not served by m
                            if (d_ih < nearest[idx]) delta += d_ih - nearest[idx];
                        } else {
                            // i loses m; falls back to second or to h
                            delta += std::min(d_ih, second[idx]) - nearest[idx];
                        }
                    }
                    if (delta < best_delta) {
                        best_delta = delta;
                        best_m = static_cast<int>(mi);
                        best_h = h;
                    }
                }
            }
            if (best_h < 0) break;
            is_medoid[static_cast<std::size_t>(medoids[static_cast<std::size_t>(best_m)])] = 0;
            is_medoid[static_cast<std::size_t>(best_h)] = 1;
            medoids[static_cast<std::size_t>(best_m)] = best_h;
            recompute_neighbours();
            const double obj = objective_of();
            if (obj >= result.objective)
                throw std::logic_error("pam: swap failed to decrease the objective");
            result.objective = obj;
            result.swap_steps++;
        }
    }

    std::sort(medoids.begin(), medoids.end());
    result.medoids = medoids;
    result.assignments.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        int best = 0;
        double best_d = dissimilarity(i, medoids[0]);
        for (std::size_t m = 1; m < medoids.size(); ++m) {
            const double d = dissimilarity(i, medoids[m]);
            if (d < best_d) {
                best_d = d;
                best = static_cast<int>(m);
            }
        }
        result.assignments[static_cast<std::size_t>(i)] = best;
    }
    return result;
}

}  // namespace segmint
