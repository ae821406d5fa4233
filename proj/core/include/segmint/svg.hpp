#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "segmint/profiling.hpp"

namespace segmint {

// Static SVG charts, one self-contained file each.

// Boxes of one attribute across clusters (whiskers at min/max).
std::string render_boxplot_svg(const std::string& attribute,
                               const std::vector<BoxStat>& per_cluster);

// First-two-component projection colored by cluster with loading arrows.
std::string render_biplot_svg(const Eigen::MatrixXd& scores, const std::vector<int>& assignments,
                              int k, const Eigen::MatrixXd& loadings,
                              const std::vector<std::string>& attributes,
                              const std::string& title);

struct IndexCurve {
    std::string name;
    std::vector<int> k;
    std::vector<double> value;
};

// One polyline per (algorithm, index) over the swept k range.
std::string render_index_curves_svg(const std::vector<IndexCurve>& curves,
                                    const std::string& title);

}  // namespace segmint
