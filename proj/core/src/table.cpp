#include "segmint/table.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace segmint {

const char* to_string(AttributeKind kind) {
    switch (kind) {
        case AttributeKind::Numeric: return "numeric";
        case AttributeKind::Nominal: return "nominal";
    }
    return "?";
}

const char* to_string(AttributeCategory category) {
    switch (category) {
        case AttributeCategory::Demographics: return "demographics";
        case AttributeCategory::UnsecuredDebt: return "unsecured_debt";
        case AttributeCategory::Assets: return "assets";
        case AttributeCategory::Expenditure: return "expenditure";
        case AttributeCategory::DebtDetails: return "debt_details";
        case AttributeCategory::Income: return "income";
        case AttributeCategory::Identifier: return "identifier";
    }
    return "?";
}

AttributeKind attribute_kind_from_string(const std::string& s) {
    if (s == "numeric") return AttributeKind::Numeric;
    if (s == "nominal") return AttributeKind::Nominal;
    throw std::invalid_argument("unknown attribute kind: " + s);
}

AttributeCategory attribute_category_from_string(const std::string& s) {
    if (s == "demographics") return AttributeCategory::Demographics;
    if (s == "unsecured_debt") return AttributeCategory::UnsecuredDebt;
    if (s == "assets") return AttributeCategory::Assets;
    if (s == "expenditure") return AttributeCategory::Expenditure;
    if (s == "debt_details") return AttributeCategory::DebtDetails;
    if (s == "income") return AttributeCategory::Income;
    if (s == "identifier") return AttributeCategory::Identifier;
    throw std::invalid_argument("unknown attribute category: " + s);
}

Schema default_schema() {
    using K = AttributeKind;
    using C = AttributeCategory;
    Schema s;
    auto add = [&s](const char* name, K kind, C cat) { s.push_back({name, kind, cat}); };

    add("pid", K::Numeric, C::Identifier);

    add("age", K::Numeric, C::Demographics);
    add("ndep", K::Numeric, C::Demographics);
    add("month", K::Numeric, C::Demographics);
    add("year", K::Numeric, C::Demographics);
    add("gender", K::Nominal, C::Demographics);
    add("marital_status", K::Nominal, C::Demographics);
    add("tenure", K::Nominal, C::Demographics);
    add("employment_status", K::Nominal, C::Demographics);
    add("region", K::Nominal, C::Demographics);
    add("occupation", K::Nominal, C::Demographics);

    add("udebt", K::Numeric, C::UnsecuredDebt);
    for (const char* n : {"udcat", "udcoll", "udcc", "udgec", "udod", "udpl", "udsc", "udoth"})
        add(n, K::Numeric, C::UnsecuredDebt);

    add("hvalue", K::Numeric, C::Assets);
    add("finasset", K::Numeric, C::Assets);
    add("carvalue", K::Numeric, C::Assets);

    add("mortdebt", K::Numeric, C::DebtDetails);
    add("mortterm", K::Numeric, C::DebtDetails);
    for (const char* n : {"cpcat", "cpcoll", "cpcc", "cpgec", "cpod", "cppl", "cpsc", "cpoth"})
        add(n, K::Numeric, C::DebtDetails);
    for (const char* n : {"tcat", "tcoll", "tcc", "tcgec", "tcod", "tcpl", "tcsc", "tcoth"})
        add(n, K::Numeric, C::DebtDetails);

    for (const char* n : {"clothing", "travel", "food", "services", "housing", "motoring",
                          "leisure", "priority", "sundries", "sempspend", "other"})
        add(n, K::Numeric, C::Expenditure);

    add("income", K::Numeric, C::Income);
    return s;
}

Schema load_schema(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open schema file: " + path);
    nlohmann::json j;
    in >> j;
    if (!j.is_array()) throw std::runtime_error("schema file must hold a JSON array: " + path);
    Schema schema;
    std::unordered_set<std::string> seen;
    for (const auto& item : j) {
        ColumnSpec spec;
        spec.name = item.at("name").get<std::string>();
        spec.kind = attribute_kind_from_string(item.at("kind").get<std::string>());
        spec.category = attribute_category_from_string(item.at("category").get<std::string>());
        if (!seen.insert(spec.name).second)
            throw std::runtime_error("duplicate column in schema: " + spec.name);
        schema.push_back(std::move(spec));
    }
    return schema;
}

void save_schema(const Schema& schema, const std::string& path) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& spec : schema) {
        j.push_back({{"name", spec.name},
                     {"kind", to_string(spec.kind)},
                     {"category", to_string(spec.category)}});
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write schema file: " + path);
    out << j.dump(2) << '\n';
}

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc{}) throw std::runtime_error("format_double failed");
    return std::string(buf, ptr);
}

std::string Column::cell_text(std::size_t i) const {
    if (missing[i]) return std::string();
    return is_numeric() ? format_double(numeric[i]) : labels[i];
}

DataTable DataTable::from_columns(std::vector<Column> columns) {
    DataTable t;
    std::unordered_set<std::string> seen;
    for (const auto& col : columns) {
        if (!seen.insert(col.spec.name).second)
            throw std::invalid_argument("duplicate column name: " + col.spec.name);
        if (col.is_numeric()) {
            if (col.numeric.size() != col.missing.size())
                throw std::invalid_argument("column size mismatch: " + col.spec.name);
        } else {
            if (col.labels.size() != col.missing.size())
                throw std::invalid_argument("column size mismatch: " + col.spec.name);
        }
    }
    if (!columns.empty()) {
        t.rows_ = columns.front().size();
        for (const auto& col : columns)
            if (col.size() != t.rows_)
                throw std::invalid_argument("ragged columns: " + col.spec.name);
    }
    t.columns_ = std::move(columns);
    return t;
}

Schema DataTable::schema() const {
    Schema s;
    s.reserve(columns_.size());
    for (const auto& col : columns_) s.push_back(col.spec);
    return s;
}

bool DataTable::has_column(const std::string& name) const {
    return std::any_of(columns_.begin(), columns_.end(),
                       [&](const Column& c) { return c.spec.name == name; });
}

std::size_t DataTable::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < columns_.size(); ++i)
        if (columns_[i].spec.name == name) return i;
    throw std::out_of_range("no such column: " + name);
}

const Column& DataTable::column(const std::string& name) const {
    return columns_[column_index(name)];
}

DataTable DataTable::select_columns(const std::vector<std::string>& names) const {
    std::vector<Column> cols;
    cols.reserve(names.size());
    for (const auto& name : names) cols.push_back(column(name));
    return from_columns(std::move(cols));
}

DataTable DataTable::drop_columns(const std::vector<std::string>& names) const {
    std::vector<Column> cols;
    for (const auto& col : columns_) {
        if (std::find(names.begin(), names.end(), col.spec.name) == names.end())
            cols.push_back(col);
    }
    return from_columns(std::move(cols));
}

DataTable DataTable::filter_rows(const std::vector<char>& keep) const {
    if (keep.size() != rows_) throw std::invalid_argument("filter_rows: mask size mismatch");
    std::vector<Column> cols;
    cols.reserve(columns_.size());
    for (const auto& col : columns_) {
        Column out;
        out.spec = col.spec;
        for (std::size_t i = 0; i < rows_; ++i) {
            if (!keep[i]) continue;
            out.missing.push_back(col.missing[i]);
            if (col.is_numeric())
                out.numeric.push_back(col.numeric[i]);
            else
                out.labels.push_back(col.labels[i]);
        }
        cols.push_back(std::move(out));
    }
    return from_columns(std::move(cols));
}

std::size_t DataTable::missing_count() const {
    std::size_t n = 0;
    for (const auto& col : columns_)
        n += static_cast<std::size_t>(std::count(col.missing.begin(), col.missing.end(), char(1)));
    return n;
}

namespace {

// One CSV record, handling quoted fields and CRLF. Returns false at EOF with
// no data.
bool read_record(std::istream& in, std::vector<std::string>& fields) {
    fields.clear();
    std::string field;
    bool in_quotes = false;
    bool any = false;
    int ch;
    while ((ch = in.get()) != EOF) {
        any = true;
        char c = static_cast<char>(ch);
        if (in_quotes) {
            if (c == '"') {
                if (in.peek() == '"') {
                    field.push_back('"');
                    in.get();
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"') {
            in_quotes = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else if (c == '\r') {
            // swallow; LF handled next
        } else if (c == '\n') {
            fields.push_back(std::move(field));
            return true;
        } else {
            field.push_back(c);
        }
    }
    if (!any) return false;
    fields.push_back(std::move(field));
    return true;
}

bool needs_quoting(const std::string& s) {
    return s.find_first_of(",\"\n\r") != std::string::npos;
}

void write_field(std::ostream& out, const std::string& s) {
    if (!needs_quoting(s)) {
        out << s;
        return;
    }
    out << '"';
    for (char c : s) {
        if (c == '"') out << '"';
        out << c;
    }
    out << '"';
}

double parse_numeric(const std::string& s, std::size_t row, const std::string& column) {
    const char* first = s.data();
    const char* last = s.data() + s.size();
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw std::runtime_error("unparseable numeric cell '" + s + "' at row " +
                                 std::to_string(row) + ", column " + column);
    }
    return value;
}

}  // namespace

DataTable read_csv(const std::string& path, const Schema& schema,
                   const std::string& missing_token) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open CSV file: " + path);

    std::unordered_map<std::string, const ColumnSpec*> by_name;
    for (const auto& spec : schema) {
        if (!by_name.emplace(spec.name, &spec).second)
            throw std::invalid_argument("duplicate column in schema: " + spec.name);
    }

    std::vector<std::string> header;
    if (!read_record(in, header)) throw std::runtime_error("CSV file is empty: " + path);

    std::vector<Column> cols;
    cols.reserve(header.size());
    std::unordered_set<std::string> seen;
    for (const auto& name : header) {
        if (!seen.insert(name).second)
            throw std::runtime_error("duplicate header column: " + name);
        auto it = by_name.find(name);
        if (it == by_name.end())
            throw std::runtime_error("header column not in schema: " + name);
        Column col;
        col.spec = *it->second;
        cols.push_back(std::move(col));
    }
    if (header.size() != schema.size()) {
        for (const auto& spec : schema)
            if (!seen.count(spec.name))
                throw std::runtime_error("schema column missing from header: " + spec.name);
    }

    std::vector<std::string> fields;
    std::size_t row = 0;
    while (read_record(in, fields)) {
        if (fields.size() == 1 && fields[0].empty()) continue;  // trailing blank line
        if (fields.size() != header.size())
            throw std::runtime_error("row " + std::to_string(row) + " has " +
                                     std::to_string(fields.size()) + " fields, expected " +
                                     std::to_string(header.size()));
        for (std::size_t c = 0; c < fields.size(); ++c) {
            Column& col = cols[c];
            const std::string& cell = fields[c];
            if (cell.empty() || cell == missing_token) {
                col.missing.push_back(1);
                if (col.is_numeric())
                    col.numeric.push_back(0.0);
                else
                    col.labels.emplace_back();
            } else {
                col.missing.push_back(0);
                if (col.is_numeric())
                    col.numeric.push_back(parse_numeric(cell, row, col.spec.name));
                else
                    col.labels.push_back(cell);
            }
        }
        ++row;
    }
    return DataTable::from_columns(std::move(cols));
}

void write_csv(const DataTable& table, const std::string& path,
               const std::string& missing_token) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write CSV file: " + path);
    const auto& cols = table.columns();
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (c) out << ',';
        write_field(out, cols[c].spec.name);
    }
    out << '\n';
    for (std::size_t i = 0; i < table.row_count(); ++i) {
        for (std::size_t c = 0; c < cols.size(); ++c) {
            if (c) out << ',';
            const Column& col = cols[c];
            if (col.missing[i]) {
                out << missing_token;
            } else if (col.is_numeric()) {
                out << format_double(col.numeric[i]);
            } else {
                write_field(out, col.labels[i]);
            }
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

MatrixView to_matrix(const DataTable& table, const std::vector<std::string>& columns) {
    MatrixView view;
    view.columns = columns;
    view.values.resize(static_cast<Eigen::Index>(table.row_count()),
                       static_cast<Eigen::Index>(columns.size()));
    for (std::size_t c = 0; c < columns.size(); ++c) {
        const Column& col = table.column(columns[c]);
        if (!col.is_numeric())
            throw std::invalid_argument("to_matrix: column is nominal: " + col.spec.name);
        for (std::size_t i = 0; i < table.row_count(); ++i) {
            if (col.missing[i])
                throw std::invalid_argument("to_matrix: missing cell in column " + col.spec.name +
                                            " at row " + std::to_string(i));
            view.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) =
                col.numeric[i];
        }
    }
    return view;
}

MatrixView to_matrix(const DataTable& table) {
    std::vector<std::string> names;
    for (const auto& col : table.columns())
        if (col.is_numeric()) names.push_back(col.spec.name);
    return to_matrix(table, names);
}

}  // namespace segmint
