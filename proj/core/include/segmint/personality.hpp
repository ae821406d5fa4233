#pragma once

#include <Eigen/Dense>
#include <set>
#include <string>
#include <vector>

#include "segmint/profiling.hpp"

namespace segmint {

// Per-rater 1..7 scores of how strongly each expenditure attribute reads as
// selfish / non-selfish spending.
struct RatingsMatrix {
    std::vector<std::string> raters;
    std::vector<std::string> attributes;
    Eigen::MatrixXd selfish;     // raters x attributes
    Eigen::MatrixXd nonselfish;  // raters x attributes

    void validate() const;
};

// CSV layout: one row per rater, columns <attr>_selfish and <attr>_nonselfish
// (an optional leading "rater" column carries the id).
RatingsMatrix read_ratings_csv(const std::string& path);

enum class Normalization { None, UnitMax, ZScore };
const char* to_string(Normalization n);
Normalization normalization_from_string(const std::string& s);

struct RankedWeight {
    std::string attribute;
    double weight = 0.0;
};

// descending by weight, ties by attribute name
using SelfishnessRanking = std::vector<RankedWeight>;

// weight(a) = mean selfish score - mean non-selfish score, optionally
// normalized (UnitMax divides by max |weight|, ZScore standardizes across
// attributes). All modes preserve the ordering.
SelfishnessRanking selfishness_weights(const RatingsMatrix& ratings,
                                       Normalization normalization = Normalization::None);

// Bundled reference ranking for the standard expenditure attributes.
SelfishnessRanking builtin_selfishness_ranking();

SelfishnessRanking read_ranking_csv(const std::string& path);
void write_ranking_csv(const SelfishnessRanking& ranking, const std::string& path);

// score(g) = sum of weights of "+" expenditure markers minus sum of weights
// of "-" expenditure markers; selfish above +epsilon, non-selfish below
// -epsilon, unlabeled inside the dead zone. Non-expenditure markers are
// ignored; an expenditure marker missing from the ranking is an error.
void characterize_groups(std::vector<BehaviouralGroup>& groups,
                         const SelfishnessRanking& ranking,
                         const std::set<std::string>& expenditure_attributes,
                         double epsilon = 0.1);

}  // namespace segmint
