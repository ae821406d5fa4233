#include "segmint/profiling.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace segmint {

const char* to_string(Sign s) {
    switch (s) {
        case Sign::Plus: return "+";
        case Sign::Minus: return "-";
        case Sign::Zero: return "0";
    }
    return "?";
}

const char* to_string(PersonalityLabel label) {
    switch (label) {
        case PersonalityLabel::Selfish: return "selfish";
        case PersonalityLabel::NonSelfish: return "non_selfish";
        case PersonalityLabel::Unlabeled: return "unlabeled";
    }
    return "?";
}

double quantile_sorted(const std::vector<double>& sorted, double p) {
    if (sorted.empty()) throw std::invalid_argument("quantile_sorted: empty data");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("quantile_sorted: p must be in [0, 1]");
    if (sorted.size() == 1) return sorted.front();
    const double h = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= sorted.size()) return sorted.back();
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

namespace {

BoxStat box_stat(std::vector<double>& values) {
    std::sort(values.begin(), values.end());
    BoxStat s;
    s.n = values.size();
    s.min = values.front();
    s.max = values.back();
    s.q1 = quantile_sorted(values, 0.25);
    s.median = quantile_sorted(values, 0.5);
    s.q3 = quantile_sorted(values, 0.75);
    double total = 0.0;
    for (double v : values) total += v;
    s.mean = total / static_cast<double>(values.size());
    return s;
}

}  // namespace

BoxStats cluster_summary(const Eigen::MatrixXd& matrix, const std::vector<std::string>& columns,
                         const std::vector<int>& assignments, int k) {
    if (static_cast<std::size_t>(matrix.rows()) != assignments.size())
        throw std::invalid_argument("cluster_summary: assignment length mismatch");
    if (static_cast<std::size_t>(matrix.cols()) != columns.size())
        throw std::invalid_argument("cluster_summary: column name count mismatch");
    if (k < 1) throw std::invalid_argument("cluster_summary: k must be >= 1");

    BoxStats out;
    out.attributes = columns;
    out.stats.resize(static_cast<std::size_t>(k));
    for (int c = 0; c < k; ++c) {
        std::vector<Eigen::Index> rows;
        for (Eigen::Index i = 0; i < matrix.rows(); ++i)
            if (assignments[static_cast<std::size_t>(i)] == c) rows.push_back(i);
        if (rows.empty())
            throw std::invalid_argument("cluster_summary: empty cluster " + std::to_string(c));
        auto& per_attr = out.stats[static_cast<std::size_t>(c)];
        per_attr.resize(columns.size());
        std::vector<double> values(rows.size());
        for (std::size_t a = 0; a < columns.size(); ++a) {
            for (std::size_t r = 0; r < rows.size(); ++r)
                values[r] = matrix(rows[r], static_cast<Eigen::Index>(a));
            per_attr[a] = box_stat(values);
        }
    }
    return out;
}

BoxStats global_summary(const Eigen::MatrixXd& matrix, const std::vector<std::string>& columns) {
    std::vector<int> all(static_cast<std::size_t>(matrix.rows()), 0);
    return cluster_summary(matrix, columns, all, 1);
}

std::vector<std::pair<std::string, Sign>> ExpressionProfile::signature() const {
    std::vector<std::pair<std::string, Sign>> sig;
    for (const auto& [attr, sign] : markers)
        if (sign != Sign::Zero) sig.emplace_back(attr, sign);
    return sig;
}

std::vector<ExpressionProfile> expression_markers(const BoxStats& stats, const BoxStats& global,
                                                  double tau, const std::string& stage,
                                                  Algorithm algorithm) {
    if (tau <= 0.0) throw std::invalid_argument("expression_markers: tau must be positive");
    if (global.cluster_count() != 1)
        throw std::invalid_argument("expression_markers: global stats must hold one cluster");
    if (global.attributes != stats.attributes)
        throw std::invalid_argument("expression_markers: attribute sets differ");

    // IQR floor keeps zero-spread attributes from blowing up the ratio
    constexpr double kIqrFloor = 1e-12;

    std::vector<ExpressionProfile> profiles;
    profiles.reserve(stats.stats.size());
    for (int c = 0; c < stats.cluster_count(); ++c) {
        ExpressionProfile p;
        p.stage = stage;
        p.algorithm = algorithm;
        p.cluster = c;
        for (std::size_t a = 0; a < stats.attributes.size(); ++a) {
            const BoxStat& cs = stats.stats[static_cast<std::size_t>(c)][a];
            const BoxStat& gs = global.stats[0][a];
            const double iqr = std::max(gs.iqr(), kIqrFloor);
            const double effect = (cs.median - gs.median) / iqr;
            p.effects[stats.attributes[a]] = effect;
            Sign sign = Sign::Zero;
            if (effect >= tau)
                sign = Sign::Plus;
            else if (effect <= -tau)
                sign = Sign::Minus;
            p.markers[stats.attributes[a]] = sign;
        }
        profiles.push_back(std::move(p));
    }
    return profiles;
}

double signed_jaccard(const std::vector<std::pair<std::string, Sign>>& a,
                      const std::vector<std::pair<std::string, Sign>>& b) {
    if (a.empty() && b.empty()) return 0.0;
    std::set<std::pair<std::string, Sign>> sa(a.begin(), a.end());
    std::set<std::pair<std::string, Sign>> sb(b.begin(), b.end());
    std::size_t inter = 0;
    for (const auto& m : sa) inter += sb.count(m);
    const std::size_t uni = sa.size() + sb.size() - inter;
    return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

namespace {

struct WorkingGroup {
    std::vector<std::size_t> members;  // profile indices, ascending
    std::vector<std::pair<std::string, Sign>> signature;
};

std::vector<std::pair<std::string, Sign>> merged_signature(
    const std::vector<ExpressionProfile>& profiles, const std::vector<std::size_t>& members) {
    // intersection of member signatures
    std::map<std::pair<std::string, Sign>, std::size_t> counts;
    for (std::size_t m : members)
        for (const auto& marker : profiles[m].signature()) counts[marker]++;

    std::vector<std::pair<std::string, Sign>> sig;
    for (const auto& [marker, n] : counts)
        if (n == members.size()) sig.push_back(marker);
    if (!sig.empty()) return sig;

    // fall back to strict-majority signs, then to the most common markers
    for (const auto& [marker, n] : counts)
        if (2 * n > members.size()) sig.push_back(marker);
    if (!sig.empty()) return sig;

    std::size_t best = 0;
    for (const auto& [marker, n] : counts) best = std::max(best, n);
    for (const auto& [marker, n] : counts)
        if (n == best) sig.push_back(marker);
    return sig;
}

}  // namespace

std::vector<BehaviouralGroup> match_groups(const std::vector<ExpressionProfile>& profiles,
                                           double threshold) {
    if (profiles.empty()) throw std::invalid_argument("match_groups: no profiles given");

    std::vector<WorkingGroup> groups;
    groups.reserve(profiles.size());
    for (std::size_t i = 0; i < profiles.size(); ++i)
        groups.push_back({{i}, profiles[i].signature()});

    for (;;) {
        double best_sim = -1.0;
        std::size_t best_a = 0, best_b = 0;
        for (std::size_t a = 0; a < groups.size(); ++a) {
            for (std::size_t b = a + 1; b < groups.size(); ++b) {
                const double sim = signed_jaccard(groups[a].signature, groups[b].signature);
                // ties resolved by (lowest first member, lowest second member),
                // which is the iteration order
                if (sim > best_sim) {
                    best_sim = sim;
                    best_a = a;
                    best_b = b;
                }
            }
        }
        if (best_sim < threshold || groups.size() < 2) break;
        WorkingGroup merged;
        merged.members = groups[best_a].members;
        merged.members.insert(merged.members.end(), groups[best_b].members.begin(),
                              groups[best_b].members.end());
        std::sort(merged.members.begin(), merged.members.end());
        merged.signature = merged_signature(profiles, merged.members);
        groups.erase(groups.begin() + static_cast<std::ptrdiff_t>(best_b));
        groups[best_a] = std::move(merged);
    }

    // stable ids by lowest member profile index
    std::sort(groups.begin(), groups.end(), [](const WorkingGroup& a, const WorkingGroup& b) {
        return a.members.front() < b.members.front();
    });

    std::vector<BehaviouralGroup> out;
    out.reserve(groups.size());
    for (std::size_t g = 0; g < groups.size(); ++g) {
        BehaviouralGroup bg;
        bg.id = static_cast<int>(g);
        bg.signature = groups[g].signature;
        for (std::size_t m : groups[g].members) {
            const auto& p = profiles[m];
            bg.members.push_back({p.stage, p.algorithm, p.cluster});
        }
        out.push_back(std::move(bg));
    }
    return out;
}

}  // namespace segmint
