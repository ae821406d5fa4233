#pragma once

#include <map>
#include <nlohmann/json_fwd.hpp>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "segmint/table.hpp"

namespace segmint {

struct PrunedPair {
    std::string kept;
    std::string removed;
    double r = 0.0;
};

struct PreprocessLog {
    std::vector<std::string> dropped_duplicate_ids;
    std::size_t dropped_duplicate_rows = 0;
    std::size_t dropped_missing_heavy_rows = 0;
    std::map<std::string, std::size_t> imputed_cells;
    std::vector<PrunedPair> pruned_pairs;
    std::map<std::string, std::map<std::string, double>> encoded_columns;
    std::vector<std::string> dropped_columns;
    std::string stage;
    std::vector<std::string> notes;

    void merge(const PreprocessLog& other);
    nlohmann::json to_json() const;
};

// Attribute subset used for a clustering experiment. Identifier and
// contact-time columns are always removed on top of these exclusions.
struct StageSpec {
    std::string name;
    std::set<AttributeCategory> excluded_categories;
    std::set<std::string> excluded_columns;
};

// month/year of first contact; irrelevant to segmentation and always dropped
inline const std::vector<std::string> kTimeColumns = {"month", "year"};

StageSpec stage_a();
// B drops the nominal demographic leftovers (including occupation).
StageSpec stage_b();
// C additionally drops the whole debt-details category.
StageSpec stage_c();

// Resolves "A"/"B"/"C" or a custom stage by name; unknown names raise an
// error listing what is available.
StageSpec stage_by_name(const std::string& name, const std::vector<StageSpec>& custom = {});

StageSpec load_stage_spec(const std::string& path);
nlohmann::json stage_to_json(const StageSpec& spec);
StageSpec stage_from_json(const nlohmann::json& j);

// Removes every row whose id occurs more than once (all copies). Set
// keep_first to retain the first copy instead.
std::pair<DataTable, PreprocessLog> drop_duplicates(const DataTable& table,
                                                    const std::string& id_column,
                                                    bool keep_first = false);

// Drops rows missing strictly more than max_missing_fraction of the
// non-identifier columns.
std::pair<DataTable, PreprocessLog> drop_missing_heavy_rows(const DataTable& table,
                                                            double max_missing_fraction);

// Column mean for numeric cells, column mode for nominal (ties by
// lexicographically smallest label).
std::pair<DataTable, PreprocessLog> impute(const DataTable& table);

// Sample Pearson correlation. Throws on length mismatch, length < 2, or a
// zero-variance vector.
double pearson(std::span<const double> x, std::span<const double> y);

// For each numeric column pair with |r| > threshold, removes the
// schema-later column. Later columns are re-tested against survivors only,
// so no surviving pair exceeds the threshold. Constant columns are skipped
// with a log note.
std::pair<DataTable, PreprocessLog> prune_correlated(const DataTable& table, double threshold);

// Nominal -> numeric codes 0,1,2,... in lexicographic label order.
std::pair<DataTable, PreprocessLog> encode_nominal(const DataTable& table);

DataTable select_stage(const DataTable& table, const StageSpec& stage,
                       PreprocessLog* log = nullptr);

// Column-wise standardization: mean 0, sample sd 1 (divisor n-1). Constant
// columns map to all-zeros.
Eigen::MatrixXd scale(const Eigen::MatrixXd& matrix);

struct CleanOptions {
    std::string id_column = "pid";
    bool keep_first_duplicate = false;
    // occupation carries too many missing values to survive cleaning
    std::vector<std::string> drop_columns = {"occupation"};
    double max_missing_fraction = 0.5;
    double correlation_threshold = 0.95;
    StageSpec stage = stage_a();
};

// Fixed-order cleaning pipeline: duplicates -> column drops -> missing-heavy
// rows -> impute -> prune correlated -> encode nominal -> stage selection.
// Idempotent on its own output (duplicate removal is skipped when the id
// column is no longer present).
std::pair<DataTable, PreprocessLog> clean_pipeline(const DataTable& table,
                                                   const CleanOptions& options);

}  // namespace segmint
