#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "segmint/cluster.hpp"

namespace segmint {

struct PcaResult {
    Eigen::MatrixXd scores;             // n x components
    Eigen::MatrixXd loadings;           // d x components, orthonormal columns
    Eigen::VectorXd explained_variance; // descending eigenvalues (sample covariance)
    double total_variance = 0.0;
};

// Projection onto the leading principal components. The sign of each loading
// column is fixed so its largest-magnitude coefficient is positive.
PcaResult pca_project(const Eigen::MatrixXd& matrix, int components = 2);

struct BoxStat {
    double min = 0.0, q1 = 0.0, median = 0.0, q3 = 0.0, max = 0.0, mean = 0.0;
    std::size_t n = 0;

    double iqr() const { return q3 - q1; }
};

struct BoxStats {
    std::vector<std::string> attributes;
    std::vector<std::vector<BoxStat>> stats;  // [cluster][attribute]

    int cluster_count() const { return static_cast<int>(stats.size()); }
};

// Linear-interpolation quantile on sorted data (the common type-7 rule).
double quantile_sorted(const std::vector<double>& sorted, double p);

// Five-number summary plus mean per (cluster, attribute).
BoxStats cluster_summary(const Eigen::MatrixXd& matrix, const std::vector<std::string>& columns,
                         const std::vector<int>& assignments, int k);
// Same, over all rows as one cluster.
BoxStats global_summary(const Eigen::MatrixXd& matrix, const std::vector<std::string>& columns);

enum class Sign { Minus = -1, Zero = 0, Plus = 1 };
const char* to_string(Sign s);

struct ExpressionProfile {
    std::string stage;
    Algorithm algorithm = Algorithm::KMeans;
    int cluster = 0;
    std::map<std::string, Sign> markers;
    std::map<std::string, double> effects;  // standardized median difference

    // non-zero markers as a signed set
    std::vector<std::pair<std::string, Sign>> signature() const;
};

// effect(c,a) = (median_c(a) - median_global(a)) / IQR_global(a); the sign is
// + when effect >= tau, - when effect <= -tau, else 0.
std::vector<ExpressionProfile> expression_markers(const BoxStats& stats, const BoxStats& global,
                                                  double tau = 0.5, const std::string& stage = "",
                                                  Algorithm algorithm = Algorithm::KMeans);

enum class PersonalityLabel { Unlabeled, Selfish, NonSelfish };
const char* to_string(PersonalityLabel label);

struct ClusterRef {
    std::string stage;
    Algorithm algorithm = Algorithm::KMeans;
    int cluster = 0;
};

struct BehaviouralGroup {
    int id = 0;
    std::vector<std::pair<std::string, Sign>> signature;
    std::vector<ClusterRef> members;
    PersonalityLabel label = PersonalityLabel::Unlabeled;
    double selfishness_score = 0.0;
};

// Jaccard similarity of signed marker sets ("+x" matches only "+x").
double signed_jaccard(const std::vector<std::pair<std::string, Sign>>& a,
                      const std::vector<std::pair<std::string, Sign>>& b);

// Greedy agglomeration: repeatedly merge the most similar pair of groups
// while similarity >= threshold. A merged group's signature is the
// intersection of its members' signatures, falling back to majority signs
// (then to the most common markers) when the intersection is empty.
std::vector<BehaviouralGroup> match_groups(const std::vector<ExpressionProfile>& profiles,
                                           double threshold = 0.5);

}  // namespace segmint
