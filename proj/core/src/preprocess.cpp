#include "segmint/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <nlohmann/json.hpp>
#include <stdexcept>
#include <unordered_map>

namespace segmint {

void PreprocessLog::merge(const PreprocessLog& other) {
    dropped_duplicate_ids.insert(dropped_duplicate_ids.end(),
                                 other.dropped_duplicate_ids.begin(),
                                 other.dropped_duplicate_ids.end());
    dropped_duplicate_rows += other.dropped_duplicate_rows;
    dropped_missing_heavy_rows += other.dropped_missing_heavy_rows;
    for (const auto& [col, n] : other.imputed_cells) imputed_cells[col] += n;
    pruned_pairs.insert(pruned_pairs.end(), other.pruned_pairs.begin(), other.pruned_pairs.end());
    for (const auto& [col, mapping] : other.encoded_columns) encoded_columns[col] = mapping;
    dropped_columns.insert(dropped_columns.end(), other.dropped_columns.begin(),
                           other.dropped_columns.end());
    if (!other.stage.empty()) stage = other.stage;
    notes.insert(notes.end(), other.notes.begin(), other.notes.end());
}

nlohmann::json PreprocessLog::to_json() const {
    nlohmann::json j;
    j["dropped_duplicate_ids"] = dropped_duplicate_ids;
    j["dropped_duplicate_rows"] = dropped_duplicate_rows;
    j["dropped_missing_heavy_rows"] = dropped_missing_heavy_rows;
    j["imputed_cells"] = imputed_cells;
    j["pruned_pairs"] = nlohmann::json::array();
    for (const auto& p : pruned_pairs)
        j["pruned_pairs"].push_back({{"kept", p.kept}, {"removed", p.removed}, {"r", p.r}});
    j["encoded_columns"] = encoded_columns;
    j["dropped_columns"] = dropped_columns;
    j["stage"] = stage;
    j["notes"] = notes;
    return j;
}

StageSpec stage_a() { return StageSpec{"A", {}, {}}; }

StageSpec stage_b() {
    StageSpec s;
    s.name = "B";
    s.excluded_columns = {"gender", "marital_status", "tenure",
                          "employment_status", "region", "occupation"};
    return s;
}

StageSpec stage_c() {
    StageSpec s = stage_b();
    s.name = "C";
    s.excluded_categories.insert(AttributeCategory::DebtDetails);
    return s;
}

StageSpec stage_by_name(const std::string& name, const std::vector<StageSpec>& custom) {
    for (const auto& s : custom)
        if (s.name == name) return s;
    if (name == "A") return stage_a();
    if (name == "B") return stage_b();
    if (name == "C") return stage_c();
    std::string known = "A, B, C";
    for (const auto& s : custom) known += ", " + s.name;
    throw std::invalid_argument("unknown stage '" + name + "' (known stages: " + known + ")");
}

nlohmann::json stage_to_json(const StageSpec& spec) {
    nlohmann::json j;
    j["name"] = spec.name;
    j["excluded_categories"] = nlohmann::json::array();
    for (auto cat : spec.excluded_categories) j["excluded_categories"].push_back(to_string(cat));
    j["excluded_columns"] = spec.excluded_columns;
    return j;
}

StageSpec stage_from_json(const nlohmann::json& j) {
    StageSpec spec;
    spec.name = j.at("name").get<std::string>();
    if (j.contains("excluded_categories"))
        for (const auto& c : j.at("excluded_categories"))
            spec.excluded_categories.insert(attribute_category_from_string(c.get<std::string>()));
    if (j.contains("excluded_columns"))
        for (const auto& c : j.at("excluded_columns"))
            spec.excluded_columns.insert(c.get<std::string>());
    return spec;
}

StageSpec load_stage_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open stage spec: " + path);
    nlohmann::json j;
    in >> j;
    return stage_from_json(j);
}

std::pair<DataTable, PreprocessLog> drop_duplicates(const DataTable& table,
                                                    const std::string& id_column,
                                                    bool keep_first) {
    PreprocessLog log;
    const Column& ids = table.column(id_column);  // throws if absent
    std::unordered_map<std::string, std::size_t> counts;
    for (std::size_t i = 0; i < table.row_count(); ++i) counts[ids.cell_text(i)]++;

    std::vector<char> keep(table.row_count(), 1);
    std::unordered_map<std::string, bool> logged;
    for (std::size_t i = 0; i < table.row_count(); ++i) {
        std::string id = ids.cell_text(i);
        if (counts[id] <= 1) continue;
        bool first_copy = !logged.count(id);
        if (first_copy) {
            logged[id] = true;
            log.dropped_duplicate_ids.push_back(id);
        }
        if (keep_first && first_copy) continue;
        keep[i] = 0;
        log.dropped_duplicate_rows++;
    }
    return {table.filter_rows(keep), std::move(log)};
}

std::pair<DataTable, PreprocessLog> drop_missing_heavy_rows(const DataTable& table,
                                                            double max_missing_fraction) {
    if (max_missing_fraction < 0.0 || max_missing_fraction >= 1.0)
        throw std::invalid_argument("max_missing_fraction must be in [0, 1)");
    PreprocessLog log;
    std::size_t considered = 0;
    for (const auto& col : table.columns())
        if (col.spec.category != AttributeCategory::Identifier) ++considered;
    if (considered == 0) return {table, std::move(log)};

    std::vector<char> keep(table.row_count(), 1);
    for (std::size_t i = 0; i < table.row_count(); ++i) {
        std::size_t missing = 0;
        for (const auto& col : table.columns()) {
            if (col.spec.category == AttributeCategory::Identifier) continue;
            if (col.missing[i]) ++missing;
        }
        if (static_cast<double>(missing) >
            max_missing_fraction * static_cast<double>(considered)) {
            keep[i] = 0;
            log.dropped_missing_heavy_rows++;
        }
    }
    return {table.filter_rows(keep), std::move(log)};
}

std::pair<DataTable, PreprocessLog> impute(const DataTable& table) {
    PreprocessLog log;
    std::vector<Column> cols = table.columns();
    for (auto& col : cols) {
        std::size_t missing = static_cast<std::size_t>(
            std::count(col.missing.begin(), col.missing.end(), char(1)));
        if (missing == 0) continue;
        if (missing == col.size())
            throw std::runtime_error("cannot impute fully-missing column: " + col.spec.name);

        if (col.is_numeric()) {
            double sum = 0.0;
            std::size_t n = 0;
            for (std::size_t i = 0; i < col.size(); ++i) {
                if (!col.missing[i]) {
                    sum += col.numeric[i];
                    ++n;
                }
            }
            const double mean = sum / static_cast<double>(n);
            for (std::size_t i = 0; i < col.size(); ++i) {
                if (col.missing[i]) {
                    col.numeric[i] = mean;
                    col.missing[i] = 0;
                }
            }
        } else {
            std::map<std::string, std::size_t> freq;
            for (std::size_t i = 0; i < col.size(); ++i)
                if (!col.missing[i]) freq[col.labels[i]]++;
            // std::map iterates labels in lexicographic order, so the first
            // maximal count is the tie-broken mode
            std::string mode;
            std::size_t best = 0;
            for (const auto& [label, n] : freq) {
                if (n > best) {
                    best = n;
                    mode = label;
                }
            }
            for (std::size_t i = 0; i < col.size(); ++i) {
                if (col.missing[i]) {
                    col.labels[i] = mode;
                    col.missing[i] = 0;
                }
            }
        }
        log.imputed_cells[col.spec.name] = missing;
    }
    return {DataTable::from_columns(std::move(cols)), std::move(log)};
}

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("pearson: length mismatch");
    const std::size_t n = x.size();
    if (n < 2) throw std::invalid_argument("pearson: need at least 2 observations");

    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);

    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        throw std::invalid_argument("pearson: constant vector has no defined correlation");
    return sxy / std::sqrt(sxx * syy);
}

namespace {

bool is_constant(const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
}

}  // namespace

std::pair<DataTable, PreprocessLog> prune_correlated(const DataTable& table, double threshold) {
    if (!(threshold > 0.0 && threshold <= 1.0))
        throw std::invalid_argument("prune_correlated: threshold must be in (0, 1]");
    PreprocessLog log;

    std::vector<std::size_t> numeric_idx;
    for (std::size_t i = 0; i < table.column_count(); ++i)
        if (table.column(i).is_numeric()) numeric_idx.push_back(i);

    std::vector<std::size_t> survivors;
    std::vector<char> removed(table.column_count(), 0);
    for (std::size_t j : numeric_idx) {
        const Column& cj = table.column(j);
        if (std::any_of(cj.missing.begin(), cj.missing.end(), [](char m) { return m != 0; }))
            throw std::invalid_argument("prune_correlated: impute column first: " + cj.spec.name);
        if (cj.numeric.empty() || is_constant(cj.numeric)) {
            log.notes.push_back("constant column skipped in correlation pruning: " +
                                cj.spec.name);
            continue;
        }
        bool drop = false;
        for (std::size_t i : survivors) {
            const double r = pearson(table.column(i).numeric, cj.numeric);
            if (std::abs(r) > threshold) {
                log.pruned_pairs.push_back({table.column(i).spec.name, cj.spec.name, r});
                drop = true;
                break;
            }
        }
        if (drop)
            removed[j] = 1;
        else
            survivors.push_back(j);
    }

    std::vector<std::string> to_drop;
    for (std::size_t i = 0; i < table.column_count(); ++i)
        if (removed[i]) to_drop.push_back(table.column(i).spec.name);
    return {table.drop_columns(to_drop), std::move(log)};
}

std::pair<DataTable, PreprocessLog> encode_nominal(const DataTable& table) {
    PreprocessLog log;
    std::vector<Column> cols = table.columns();
    for (auto& col : cols) {
        if (col.is_numeric()) continue;
        if (std::any_of(col.missing.begin(), col.missing.end(), [](char m) { return m != 0; }))
            throw std::invalid_argument("encode_nominal: impute column first: " + col.spec.name);

        std::vector<std::string> levels(col.labels);
        std::sort(levels.begin(), levels.end());
        levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
        std::map<std::string, double> codes;
        for (std::size_t c = 0; c < levels.size(); ++c)
            codes[levels[c]] = static_cast<double>(c);

        col.numeric.resize(col.size());
        for (std::size_t i = 0; i < col.size(); ++i) col.numeric[i] = codes[col.labels[i]];
        col.labels.clear();
        col.spec.kind = AttributeKind::Numeric;
        log.encoded_columns[col.spec.name] = std::move(codes);
    }
    return {DataTable::from_columns(std::move(cols)), std::move(log)};
}

DataTable select_stage(const DataTable& table, const StageSpec& stage, PreprocessLog* log) {
    std::vector<std::string> to_drop;
    for (const auto& col : table.columns()) {
        const bool is_time = std::find(kTimeColumns.begin(), kTimeColumns.end(),
                                       col.spec.name) != kTimeColumns.end();
        if (col.spec.category == AttributeCategory::Identifier || is_time ||
            stage.excluded_categories.count(col.spec.category) ||
            stage.excluded_columns.count(col.spec.name)) {
            to_drop.push_back(col.spec.name);
        }
    }
    if (log) {
        log->stage = stage.name;
        for (const auto& name : stage.excluded_columns)
            if (!table.has_column(name))
                log->notes.push_back("stage " + stage.name + " excludes absent column: " + name);
        log->dropped_columns.insert(log->dropped_columns.end(), to_drop.begin(), to_drop.end());
    }
    return table.drop_columns(to_drop);
}

Eigen::MatrixXd scale(const Eigen::MatrixXd& matrix) {
    const Eigen::Index n = matrix.rows();
    if (n < 2) throw std::invalid_argument("scale: need at least 2 rows");
    Eigen::MatrixXd out(matrix.rows(), matrix.cols());
    for (Eigen::Index c = 0; c < matrix.cols(); ++c) {
        const double mean = matrix.col(c).mean();
        Eigen::VectorXd centered = matrix.col(c).array() - mean;
        const double sd = std::sqrt(centered.squaredNorm() / static_cast<double>(n - 1));
        // treat numerically-constant columns as constant
        if (sd <= 1e-12 * std::max(1.0, std::abs(mean)))
            out.col(c).setZero();
        else
            out.col(c) = centered / sd;
    }
    return out;
}

std::pair<DataTable, PreprocessLog> clean_pipeline(const DataTable& table,
                                                   const CleanOptions& options) {
    PreprocessLog log;
    DataTable current = table;

    if (current.has_column(options.id_column)) {
        auto [t, l] = drop_duplicates(current, options.id_column, options.keep_first_duplicate);
        current = std::move(t);
        log.merge(l);
    } else {
        log.notes.push_back("id column '" + options.id_column +
                            "' not present; duplicate removal skipped");
    }

    std::vector<std::string> droppable;
    for (const auto& name : options.drop_columns)
        if (current.has_column(name)) droppable.push_back(name);
    if (!droppable.empty()) {
        current = current.drop_columns(droppable);
        log.dropped_columns.insert(log.dropped_columns.end(), droppable.begin(),
                                   droppable.end());
    }

    {
        auto [t, l] = drop_missing_heavy_rows(current, options.max_missing_fraction);
        current = std::move(t);
        log.merge(l);
    }
    {
        auto [t, l] = impute(current);
        current = std::move(t);
        log.merge(l);
    }
    {
        auto [t, l] = prune_correlated(current, options.correlation_threshold);
        current = std::move(t);
        log.merge(l);
    }
    {
        auto [t, l] = encode_nominal(current);
        current = std::move(t);
        log.merge(l);
    }
    current = select_stage(current, options.stage, &log);
    return {std::move(current), std::move(log)};
}

}  // namespace segmint
