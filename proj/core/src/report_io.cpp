#include "segmint/report_io.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <stdexcept>

#include "segmint/table.hpp"

namespace segmint {

nlohmann::json sweep_config_to_json(const SweepConfig& config) {
    return {{"k_min", config.k_min},
            {"k_max", config.k_max},
            {"restarts", config.restarts},
            {"base_seed", config.base_seed},
            {"clara_samples", config.clara_samples},
            {"clara_sample_size", config.clara_sample_size},
            {"max_iterations", config.max_iterations},
            {"tolerance", config.tolerance},
            {"kmeans_init", config.kmeans_init == KMeansInit::PlusPlus ? "plusplus" : "forgy"},
            {"threads", config.threads}};
}

SweepConfig sweep_config_from_json(const nlohmann::json& j) {
    SweepConfig c;
    c.k_min = j.value("k_min", c.k_min);
    c.k_max = j.value("k_max", c.k_max);
    c.restarts = j.value("restarts", c.restarts);
    c.base_seed = j.value("base_seed", c.base_seed);
    c.clara_samples = j.value("clara_samples", c.clara_samples);
    c.clara_sample_size = j.value("clara_sample_size", c.clara_sample_size);
    c.max_iterations = j.value("max_iterations", c.max_iterations);
    c.tolerance = j.value("tolerance", c.tolerance);
    c.kmeans_init = j.value("kmeans_init", std::string("forgy")) == "plusplus"
                        ? KMeansInit::PlusPlus
                        : KMeansInit::Forgy;
    c.threads = j.value("threads", c.threads);
    return c;
}

nlohmann::json sweep_report_to_json(const SweepReport& report,
                                    const std::vector<std::string>& assignment_files) {
    nlohmann::json j;
    j["config"] = sweep_config_to_json(report.config);
    j["entries"] = nlohmann::json::array();
    for (std::size_t i = 0; i < report.entries.size(); ++i) {
        const auto& e = report.entries[i];
        nlohmann::json ej{{"algorithm", to_string(e.algorithm)},
                          {"k", e.k},
                          {"objective", e.best.objective},
                          {"seed", e.best.seed},
                          {"iterations", e.best.iterations},
                          {"best_restart", e.best_restart},
                          {"silhouette", e.silhouette_avg},
                          {"calinski", e.calinski}};
        if (!assignment_files.empty()) ej["assignment_file"] = assignment_files.at(i);
        if (e.algorithm == Algorithm::Clara) ej["medoids"] = e.best.medoids;
        j["entries"].push_back(std::move(ej));
    }
    return j;
}

std::string scores_csv(const SweepReport& report) {
    std::ostringstream ss;
    ss << "k,algorithm,silhouette,calinski\n";
    for (const auto& e : report.entries)
        ss << e.k << ',' << to_string(e.algorithm) << ',' << format_double(e.silhouette_avg)
           << ',' << format_double(e.calinski) << '\n';
    return ss.str();
}

void write_assignments_csv(const std::vector<int>& assignments, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write assignments file: " + path);
    out << "cluster\n";
    for (int a : assignments) out << a << '\n';
}

std::vector<int> read_assignments_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open assignments file: " + path);
    std::string line;
    std::getline(in, line);
    std::vector<int> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        out.push_back(std::stoi(line));
    }
    return out;
}

nlohmann::json selection_to_json(const KSelection& selection) {
    nlohmann::json j{{"k_silhouette", selection.k_silhouette},
                     {"k_calinski", selection.k_calinski}};
    if (selection.agreed)
        j["verdict"] = {{"agreed", selection.k_silhouette}};
    else
        j["verdict"] = {{"range", {selection.k_low, selection.k_high}}};
    return j;
}

nlohmann::json profiles_to_json(const std::vector<ExpressionProfile>& profiles) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& p : profiles) {
        nlohmann::json pj{{"stage", p.stage},
                          {"algorithm", to_string(p.algorithm)},
                          {"cluster", p.cluster}};
        pj["markers"] = nlohmann::json::object();
        for (const auto& [attr, sign] : p.markers)
            if (sign != Sign::Zero) pj["markers"][attr] = to_string(sign);
        pj["effects"] = p.effects;
        j.push_back(std::move(pj));
    }
    return j;
}

nlohmann::json groups_to_json(const std::vector<BehaviouralGroup>& groups) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& g : groups) {
        nlohmann::json gj{{"id", g.id},
                          {"label", to_string(g.label)},
                          {"selfishness_score", g.selfishness_score}};
        gj["signature"] = nlohmann::json::object();
        for (const auto& [attr, sign] : g.signature) gj["signature"][attr] = to_string(sign);
        gj["members"] = nlohmann::json::array();
        for (const auto& m : g.members)
            gj["members"].push_back({{"stage", m.stage},
                                     {"algorithm", to_string(m.algorithm)},
                                     {"cluster", m.cluster}});
        j.push_back(std::move(gj));
    }
    return j;
}

std::vector<BehaviouralGroup> groups_from_json(const nlohmann::json& j) {
    std::vector<BehaviouralGroup> groups;
    for (const auto& gj : j) {
        BehaviouralGroup g;
        g.id = gj.at("id").get<int>();
        g.selfishness_score = gj.value("selfishness_score", 0.0);
        const std::string label = gj.value("label", "unlabeled");
        g.label = label == "selfish"       ? PersonalityLabel::Selfish
                  : label == "non_selfish" ? PersonalityLabel::NonSelfish
                                           : PersonalityLabel::Unlabeled;
        for (const auto& [attr, sign] : gj.at("signature").items())
            g.signature.emplace_back(attr, sign.get<std::string>() == "+" ? Sign::Plus
                                                                          : Sign::Minus);
        if (gj.contains("members")) {
            for (const auto& mj : gj.at("members")) {
                ClusterRef ref;
                ref.stage = mj.value("stage", "");
                ref.algorithm = algorithm_from_string(mj.at("algorithm").get<std::string>());
                ref.cluster = mj.at("cluster").get<int>();
                g.members.push_back(std::move(ref));
            }
        }
        groups.push_back(std::move(g));
    }
    return groups;
}

std::string box_stats_csv(const BoxStats& stats) {
    std::ostringstream ss;
    ss << "cluster,attribute,min,q1,median,q3,max,mean,n\n";
    for (int c = 0; c < stats.cluster_count(); ++c) {
        for (std::size_t a = 0; a < stats.attributes.size(); ++a) {
            const BoxStat& s = stats.stats[static_cast<std::size_t>(c)][a];
            ss << c << ',' << stats.attributes[a] << ',' << format_double(s.min) << ','
               << format_double(s.q1) << ',' << format_double(s.median) << ','
               << format_double(s.q3) << ',' << format_double(s.max) << ','
               << format_double(s.mean) << ',' << s.n << '\n';
        }
    }
    return ss.str();
}

}  // namespace segmint
