#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <string>
#include <vector>

namespace segmint {

enum class AttributeKind { Numeric, Nominal };

enum class AttributeCategory {
    Demographics,
    UnsecuredDebt,
    Assets,
    Expenditure,
    DebtDetails,
    Income,
    Identifier,
};

const char* to_string(AttributeKind kind);
const char* to_string(AttributeCategory category);
AttributeKind attribute_kind_from_string(const std::string& s);
AttributeCategory attribute_category_from_string(const std::string& s);

struct ColumnSpec {
    std::string name;
    AttributeKind kind = AttributeKind::Numeric;
    AttributeCategory category = AttributeCategory::Demographics;

    bool operator==(const ColumnSpec&) const = default;
};

using Schema = std::vector<ColumnSpec>;

// Bundled schema for debt-counselling client tables: identifier, demographics
// (numeric and nominal), unsecured debt balances, assets, expenditure,
// debt-detail payment columns and income. Columns not listed here can be
// added through a user schema file.
Schema default_schema();

Schema load_schema(const std::string& path);
void save_schema(const Schema& schema, const std::string& path);

// Column-typed storage. Numeric columns keep `numeric` populated, nominal
// columns keep `labels`; `missing[i]` flags cell i regardless of kind.
struct Column {
    ColumnSpec spec;
    std::vector<double> numeric;
    std::vector<std::string> labels;
    std::vector<char> missing;

    std::size_t size() const { return missing.size(); }
    bool is_numeric() const { return spec.kind == AttributeKind::Numeric; }
    // string form of cell i ("" for missing); used for id comparison
    std::string cell_text(std::size_t i) const;
};

// Immutable after construction; operations produce new tables.
class DataTable {
public:
    DataTable() = default;

    static DataTable from_columns(std::vector<Column> columns);

    std::size_t row_count() const { return rows_; }
    std::size_t column_count() const { return columns_.size(); }

    Schema schema() const;
    const std::vector<Column>& columns() const { return columns_; }
    const Column& column(std::size_t index) const { return columns_.at(index); }
    const Column& column(const std::string& name) const;
    bool has_column(const std::string& name) const;
    std::size_t column_index(const std::string& name) const;

    DataTable select_columns(const std::vector<std::string>& names) const;
    DataTable drop_columns(const std::vector<std::string>& names) const;
    DataTable filter_rows(const std::vector<char>& keep) const;

    std::size_t missing_count() const;

    bool operator==(const DataTable&) const = default;

private:
    std::vector<Column> columns_;
    std::size_t rows_ = 0;
};

// RFC-4180-style CSV with a required header. Header names must match the
// schema exactly as a set; cell order follows the header. Cells equal to
// missing_token (or empty) become Missing.
DataTable read_csv(const std::string& path, const Schema& schema,
                   const std::string& missing_token = "NA");

void write_csv(const DataTable& table, const std::string& path,
               const std::string& missing_token = "NA");

struct MatrixView {
    Eigen::MatrixXd values;  // n x d
    std::vector<std::string> columns;
};

// Dense matrix over the named numeric columns. Missing cells and nominal
// columns are contract violations: impute/encode first.
MatrixView to_matrix(const DataTable& table, const std::vector<std::string>& columns);
// All numeric columns, schema order.
MatrixView to_matrix(const DataTable& table);

// Shortest round-trip decimal form (read_csv parses it back to the same bits).
std::string format_double(double value);

}  // namespace segmint
