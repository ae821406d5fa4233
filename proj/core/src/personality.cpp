#include "segmint/personality.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>

#include "segmint/table.hpp"

namespace segmint {

const char* to_string(Normalization n) {
    switch (n) {
        case Normalization::None: return "none";
        case Normalization::UnitMax: return "unit_max";
        case Normalization::ZScore: return "zscore";
    }
    return "?";
}

Normalization normalization_from_string(const std::string& s) {
    if (s == "none") return Normalization::None;
    if (s == "unit_max") return Normalization::UnitMax;
    if (s == "zscore") return Normalization::ZScore;
    throw std::invalid_argument("unknown normalization: " + s);
}

void RatingsMatrix::validate() const {
    if (attributes.empty()) throw std::invalid_argument("ratings: no attributes");
    if (selfish.rows() == 0) throw std::invalid_argument("ratings: no raters");
    if (selfish.rows() != nonselfish.rows() || selfish.cols() != nonselfish.cols() ||
        selfish.cols() != static_cast<Eigen::Index>(attributes.size()))
        throw std::invalid_argument("ratings: matrix shapes disagree");
    for (const auto* m : {&selfish, &nonselfish}) {
        for (Eigen::Index r = 0; r < m->rows(); ++r) {
            for (Eigen::Index c = 0; c < m->cols(); ++c) {
                const double v = (*m)(r, c);
                if (v < 1.0 || v > 7.0 || v != std::floor(v))
                    throw std::invalid_argument("ratings: scores must be integers in [1, 7]");
            }
        }
    }
}

RatingsMatrix read_ratings_csv(const std::string& path) {
    std::ifstream probe(path);
    if (!probe) throw std::runtime_error("cannot open ratings file: " + path);
    std::string header_line;
    std::getline(probe, header_line);
    probe.close();

    // derive the attribute list from the *_selfish / *_nonselfish pairs
    std::vector<std::string> header;
    {
        std::string field;
        for (char c : header_line) {
            if (c == ',') {
                header.push_back(field);
                field.clear();
            } else if (c != '\r') {
                field.push_back(c);
            }
        }
        header.push_back(field);
    }

    const std::string kSelfish = "_selfish";
    const std::string kNonselfish = "_nonselfish";
    std::vector<std::string> attributes;
    Schema schema;
    for (const auto& name : header) {
        if (name == "rater") {
            schema.push_back({name, AttributeKind::Nominal, AttributeCategory::Identifier});
            continue;
        }
        schema.push_back({name, AttributeKind::Numeric, AttributeCategory::Expenditure});
        if (name.size() > kNonselfish.size() &&
            name.compare(name.size() - kNonselfish.size(), kNonselfish.size(), kNonselfish) == 0)
            continue;
        if (name.size() > kSelfish.size() &&
            name.compare(name.size() - kSelfish.size(), kSelfish.size(), kSelfish) == 0) {
            attributes.push_back(name.substr(0, name.size() - kSelfish.size()));
            continue;
        }
        throw std::runtime_error("ratings column '" + name +
                                 "' is neither <attr>_selfish nor <attr>_nonselfish");
    }

    const DataTable table = read_csv(path, schema);
    RatingsMatrix ratings;
    ratings.attributes = attributes;
    const auto rows = static_cast<Eigen::Index>(table.row_count());
    ratings.selfish.resize(rows, static_cast<Eigen::Index>(attributes.size()));
    ratings.nonselfish.resize(rows, static_cast<Eigen::Index>(attributes.size()));
    for (std::size_t a = 0; a < attributes.size(); ++a) {
        const std::string s_name = attributes[a] + kSelfish;
        const std::string n_name = attributes[a] + kNonselfish;
        if (!table.has_column(n_name))
            throw std::runtime_error("ratings: missing column " + n_name);
        const Column& s_col = table.column(s_name);
        const Column& n_col = table.column(n_name);
        for (Eigen::Index r = 0; r < rows; ++r) {
            const auto i = static_cast<std::size_t>(r);
            if (s_col.missing[i] || n_col.missing[i])
                throw std::runtime_error("ratings: missing score for " + attributes[a]);
            ratings.selfish(r, static_cast<Eigen::Index>(a)) = s_col.numeric[i];
            ratings.nonselfish(r, static_cast<Eigen::Index>(a)) = n_col.numeric[i];
        }
    }
    if (table.has_column("rater")) {
        const Column& rater = table.column("rater");
        for (std::size_t i = 0; i < table.row_count(); ++i)
            ratings.raters.push_back(rater.cell_text(i));
    } else {
        for (Eigen::Index r = 0; r < rows; ++r) ratings.raters.push_back(std::to_string(r));
    }
    ratings.validate();
    return ratings;
}

SelfishnessRanking selfishness_weights(const RatingsMatrix& ratings,
                                       Normalization normalization) {
    ratings.validate();
    const auto a_count = static_cast<std::size_t>(ratings.attributes.size());
    std::vector<double> raw(a_count);
    for (std::size_t a = 0; a < a_count; ++a) {
        const auto c = static_cast<Eigen::Index>(a);
        raw[a] = ratings.selfish.col(c).mean() - ratings.nonselfish.col(c).mean();
    }

    if (normalization == Normalization::UnitMax) {
        double max_abs = 0.0;
        for (double w : raw) max_abs = std::max(max_abs, std::abs(w));
        if (max_abs > 0.0)
            for (double& w : raw) w /= max_abs;
    } else if (normalization == Normalization::ZScore) {
        double mean = 0.0;
        for (double w : raw) mean += w;
        mean /= static_cast<double>(a_count);
        double var = 0.0;
        for (double w : raw) var += (w - mean) * (w - mean);
        const double sd = a_count > 1 ? std::sqrt(var / static_cast<double>(a_count - 1)) : 0.0;
        if (sd > 0.0)
            for (double& w : raw) w = (w - mean) / sd;
    }

    SelfishnessRanking ranking;
    ranking.reserve(a_count);
    for (std::size_t a = 0; a < a_count; ++a) ranking.push_back({ratings.attributes[a], raw[a]});
    std::sort(ranking.begin(), ranking.end(), [](const RankedWeight& x, const RankedWeight& y) {
        if (x.weight != y.weight) return x.weight > y.weight;
        return x.attribute < y.attribute;
    });
    return ranking;
}

SelfishnessRanking builtin_selfishness_ranking() {
    return {
        {"leisure", 1.53},   {"travel", 0.99},   {"food", 0.88},
        {"clothing", 0.42},  {"sempspend", -0.16}, {"motoring", -0.20},
        {"other", -0.42},    {"housing", -0.54}, {"priority", -0.8},
    };
}

SelfishnessRanking read_ranking_csv(const std::string& path) {
    Schema schema = {{"attribute", AttributeKind::Nominal, AttributeCategory::Expenditure},
                     {"weight", AttributeKind::Numeric, AttributeCategory::Expenditure}};
    const DataTable table = read_csv(path, schema);
    SelfishnessRanking ranking;
    const Column& attr = table.column("attribute");
    const Column& weight = table.column("weight");
    for (std::size_t i = 0; i < table.row_count(); ++i) {
        if (attr.missing[i] || weight.missing[i])
            throw std::runtime_error("ranking file has missing cells: " + path);
        ranking.push_back({attr.labels[i], weight.numeric[i]});
    }
    std::sort(ranking.begin(), ranking.end(), [](const RankedWeight& x, const RankedWeight& y) {
        if (x.weight != y.weight) return x.weight > y.weight;
        return x.attribute < y.attribute;
    });
    return ranking;
}

void write_ranking_csv(const SelfishnessRanking& ranking, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write ranking file: " + path);
    out << "attribute,weight,rank\n";
    for (std::size_t i = 0; i < ranking.size(); ++i)
        out << ranking[i].attribute << ',' << format_double(ranking[i].weight) << ','
            << (i + 1) << '\n';
}

void characterize_groups(std::vector<BehaviouralGroup>& groups,
                         const SelfishnessRanking& ranking,
                         const std::set<std::string>& expenditure_attributes, double epsilon) {
    std::map<std::string, double> weight;
    for (const auto& rw : ranking) weight[rw.attribute] = rw.weight;

    for (auto& group : groups) {
        double score = 0.0;
        for (const auto& [attr, sign] : group.signature) {
            if (!expenditure_attributes.count(attr)) continue;
            auto it = weight.find(attr);
            if (it == weight.end())
                throw std::invalid_argument("expenditure attribute '" + attr +
                                            "' is not covered by the selfishness ranking");
            score += sign == Sign::Plus ? it->second : -it->second;
        }
        group.selfishness_score = score;
        if (score > epsilon)
            group.label = PersonalityLabel::Selfish;
        else if (score < -epsilon)
            group.label = PersonalityLabel::NonSelfish;
        else
            group.label = PersonalityLabel::Unlabeled;
    }
}

}  // namespace segmint
