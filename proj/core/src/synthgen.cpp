#include "segmint/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <stdexcept>

#include "segmint/rng.hpp"

namespace segmint {

namespace {

// z value of the 0.75 normal quantile
constexpr double kZ75 = 0.6744897501960817;

const char* family_name(AttributeModel::Family f) {
    switch (f) {
        case AttributeModel::Family::LogNormal: return "lognormal";
        case AttributeModel::Family::Normal: return "normal";
        case AttributeModel::Family::UniformInt: return "uniform_int";
        case AttributeModel::Family::Categorical: return "categorical";
        case AttributeModel::Family::Derived: return "derived";
    }
    return "?";
}

AttributeModel::Family family_from_name(const std::string& s) {
    if (s == "lognormal") return AttributeModel::Family::LogNormal;
    if (s == "normal") return AttributeModel::Family::Normal;
    if (s == "uniform_int") return AttributeModel::Family::UniformInt;
    if (s == "categorical") return AttributeModel::Family::Categorical;
    if (s == "derived") return AttributeModel::Family::Derived;
    throw std::invalid_argument("unknown attribute model family: " + s);
}

}  // namespace

double lognormal_iqr(double median, double sigma) {
    return median * (std::exp(kZ75 * sigma) - std::exp(-kZ75 * sigma));
}

double normal_iqr(double sd) { return 2.0 * kZ75 * sd; }

SynthConfig default_synth_config() {
    SynthConfig cfg;
    cfg.schema = default_schema();
    cfg.missing_rate = 0.01;
    cfg.duplicate_rate = 0.01;

    auto lognormal = [](double median, double sigma) {
        AttributeModel m;
        m.family = AttributeModel::Family::LogNormal;
        m.a = median;
        m.b = sigma;
        return m;
    };
    auto normal = [](double mean, double sd, double lo) {
        AttributeModel m;
        m.family = AttributeModel::Family::Normal;
        m.a = mean;
        m.b = sd;
        m.lo_clamp = lo;
        return m;
    };
    auto uniform_int = [](int lo, int hi) {
        AttributeModel m;
        m.family = AttributeModel::Family::UniformInt;
        m.a = lo;
        m.b = hi;
        return m;
    };
    auto categorical = [](std::vector<std::string> labels, std::vector<double> weights) {
        AttributeModel m;
        m.family = AttributeModel::Family::Categorical;
        m.labels = std::move(labels);
        m.weights = std::move(weights);
        return m;
    };
    auto derived = [](std::string source, double factor, double noise) {
        AttributeModel m;
        m.family = AttributeModel::Family::Derived;
        m.source = std::move(source);
        m.factor = factor;
        m.noise = noise;
        return m;
    };

    auto& mm = cfg.models;
    mm["age"] = normal(45.0, 12.0, 18.0);
    mm["ndep"] = uniform_int(0, 4);
    mm["month"] = uniform_int(1, 12);
    mm["year"] = uniform_int(2004, 2008);
    mm["gender"] = categorical({"female", "male"}, {0.52, 0.48});
    mm["marital_status"] =
        categorical({"divorced", "married", "single", "widowed"}, {0.15, 0.45, 0.33, 0.07});
    mm["tenure"] = categorical({"mortgage", "own", "rent"}, {0.4, 0.15, 0.45});
    mm["employment_status"] = categorical({"employed", "retired", "self_employed", "unemployed"},
                                          {0.62, 0.1, 0.12, 0.16});
    mm["region"] = categorical({"london", "midlands", "north", "scotland", "south", "wales"},
                               {0.18, 0.2, 0.25, 0.12, 0.18, 0.07});
    mm["occupation"] = categorical({"clerical", "manual", "professional", "service", "skilled"},
                                   {0.2, 0.27, 0.18, 0.2, 0.15});

    mm["udebt"] = lognormal(15000.0, 0.4);
    for (const char* n : {"udcat", "udcoll", "udcc", "udgec", "udod", "udpl", "udsc", "udoth"})
        mm[n] = lognormal(1500.0, 0.5);

    // hvalue / carvalue / income take -2 IQR shifts in some groups; their
    // sigmas keep median - 2 IQR comfortably positive
    mm["hvalue"] = lognormal(120000.0, 0.25);
    mm["finasset"] = lognormal(3000.0, 0.4);
    mm["carvalue"] = lognormal(2500.0, 0.25);

    mm["mortdebt"] = derived("hvalue", 0.75, 0.02);
    mm["mortterm"] = lognormal(180.0, 0.4);
    const char* ud_sources[] = {"udcat", "udcoll", "udcc", "udgec", "udod", "udpl", "udsc", "udoth"};
    const char* cp_names[] = {"cpcat", "cpcoll", "cpcc", "cpgec", "cpod", "cppl", "cpsc", "cpoth"};
    for (int i = 0; i < 8; ++i) mm[cp_names[i]] = derived(ud_sources[i], 0.04, 0.02);
    for (const char* n : {"tcat", "tcoll", "tcc", "tcgec", "tcod", "tcpl", "tcsc", "tcoth"})
        mm[n] = lognormal(36.0, 0.5);

    mm["clothing"] = lognormal(60.0, 0.4);
    mm["travel"] = lognormal(120.0, 0.4);
    mm["food"] = lognormal(300.0, 0.3);
    mm["services"] = lognormal(120.0, 0.4);
    mm["housing"] = lognormal(450.0, 0.4);
    mm["motoring"] = lognormal(150.0, 0.4);
    mm["leisure"] = lognormal(80.0, 0.4);
    mm["priority"] = lognormal(200.0, 0.4);
    mm["sundries"] = lognormal(50.0, 0.4);
    mm["sempspend"] = lognormal(40.0, 0.4);
    mm["other"] = lognormal(60.0, 0.4);

    mm["income"] = lognormal(1300.0, 0.25);

    // expensive houses and assets, heavy debt repayment and other expenses
    cfg.groups.push_back(
        {1, 200, {{"hvalue", 2}, {"finasset", 2}, {"priority", 2}, {"other", 2}}});
    // low income, cheap cars, heavy travel spending
    cfg.groups.push_back({2, 160, {{"income", -2}, {"carvalue", -2}, {"travel", 2}}});
    // expensive houses, heavy travel spending
    cfg.groups.push_back({3, 120, {{"hvalue", 2}, {"travel", 2}}});
    // high income, cheap houses, heavy priority/other/motoring spending
    cfg.groups.push_back(
        {4, 200, {{"income", 2}, {"hvalue", -2}, {"priority", 2}, {"other", 2}, {"motoring", 2}}});
    // high income and expensive assets
    cfg.groups.push_back({5, 240, {{"income", 2}, {"finasset", 2}, {"carvalue", 2}}});
    // large unsecured debt, heavy travel spending
    cfg.groups.push_back({6, 120, {{"udebt", 2}, {"travel", 2}}});
    return cfg;
}

namespace {

nlohmann::json model_to_json(const AttributeModel& m) {
    nlohmann::json j;
    j["family"] = family_name(m.family);
    switch (m.family) {
        case AttributeModel::Family::LogNormal:
            j["median"] = m.a;
            j["sigma"] = m.b;
            break;
        case AttributeModel::Family::Normal:
            j["mean"] = m.a;
            j["sd"] = m.b;
            j["lo_clamp"] = m.lo_clamp;
            break;
        case AttributeModel::Family::UniformInt:
            j["lo"] = m.a;
            j["hi"] = m.b;
            break;
        case AttributeModel::Family::Categorical:
            j["labels"] = m.labels;
            j["weights"] = m.weights;
            break;
        case AttributeModel::Family::Derived:
            j["source"] = m.source;
            j["factor"] = m.factor;
            j["noise"] = m.noise;
            break;
    }
    return j;
}

AttributeModel model_from_json(const nlohmann::json& j) {
    AttributeModel m;
    m.family = family_from_name(j.at("family").get<std::string>());
    switch (m.family) {
        case AttributeModel::Family::LogNormal:
            m.a = j.at("median").get<double>();
            m.b = j.at("sigma").get<double>();
            break;
        case AttributeModel::Family::Normal:
            m.a = j.at("mean").get<double>();
            m.b = j.at("sd").get<double>();
            m.lo_clamp = j.value("lo_clamp", 0.0);
            break;
        case AttributeModel::Family::UniformInt:
            m.a = j.at("lo").get<double>();
            m.b = j.at("hi").get<double>();
            break;
        case AttributeModel::Family::Categorical:
            m.labels = j.at("labels").get<std::vector<std::string>>();
            m.weights = j.at("weights").get<std::vector<double>>();
            break;
        case AttributeModel::Family::Derived:
            m.source = j.at("source").get<std::string>();
            m.factor = j.at("factor").get<double>();
            m.noise = j.value("noise", 0.0);
            break;
    }
    return m;
}

}  // namespace

SynthConfig load_synth_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open synth config: " + path);
    nlohmann::json j;
    in >> j;

    SynthConfig cfg = default_synth_config();
    if (j.contains("schema_file"))
        cfg.schema = load_schema(j.at("schema_file").get<std::string>());
    if (j.contains("missing_rate")) cfg.missing_rate = j.at("missing_rate").get<double>();
    if (j.contains("duplicate_rate")) cfg.duplicate_rate = j.at("duplicate_rate").get<double>();
    if (j.contains("models")) {
        for (const auto& [name, mj] : j.at("models").items())
            cfg.models[name] = model_from_json(mj);
    }
    if (j.contains("groups")) {
        cfg.groups.clear();
        for (const auto& gj : j.at("groups")) {
            GroupSpec g;
            g.id = gj.at("id").get<int>();
            g.size = gj.at("size").get<std::size_t>();
            if (gj.contains("shifts"))
                for (const auto& [attr, mult] : gj.at("shifts").items())
                    g.shifts[attr] = mult.get<double>();
            cfg.groups.push_back(std::move(g));
        }
    }
    return cfg;
}

void save_synth_config(const SynthConfig& config, const std::string& path) {
    nlohmann::json j;
    j["missing_rate"] = config.missing_rate;
    j["duplicate_rate"] = config.duplicate_rate;
    j["models"] = nlohmann::json::object();
    for (const auto& [name, m] : config.models) j["models"][name] = model_to_json(m);
    j["groups"] = nlohmann::json::array();
    for (const auto& g : config.groups) {
        nlohmann::json gj;
        gj["id"] = g.id;
        gj["size"] = g.size;
        gj["shifts"] = g.shifts;
        j["groups"].push_back(gj);
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write synth config: " + path);
    out << j.dump(2) << '\n';
}

namespace {

double base_iqr(const AttributeModel& m) {
    switch (m.family) {
        case AttributeModel::Family::LogNormal: return lognormal_iqr(m.a, m.b);
        case AttributeModel::Family::Normal: return normal_iqr(m.b);
        default:
            throw std::invalid_argument("shift declared on an attribute without a continuous model");
    }
}

}  // namespace

SynthOutput generate(const SynthConfig& config, std::uint64_t seed) {
    if (config.groups.empty()) throw std::invalid_argument("generate: no group specs");
    if (config.missing_rate < 0.0 || config.missing_rate >= 1.0 ||
        config.duplicate_rate < 0.0 || config.duplicate_rate >= 1.0)
        throw std::invalid_argument("generate: rates must be in [0, 1)");
    for (const auto& g : config.groups)
        if (g.size < 1) throw std::invalid_argument("generate: group sizes must be >= 1");

    std::size_t n = 0;
    for (const auto& g : config.groups) n += g.size;

    Rng rng(seed);

    std::vector<Column> cols;
    cols.reserve(config.schema.size());
    for (const auto& spec : config.schema) {
        Column col;
        col.spec = spec;
        col.missing.assign(n, 0);
        if (spec.kind == AttributeKind::Numeric)
            col.numeric.assign(n, 0.0);
        else
            col.labels.assign(n, std::string());
        cols.push_back(std::move(col));
    }

    auto model_of = [&](const std::string& name) -> const AttributeModel& {
        auto it = config.models.find(name);
        if (it == config.models.end())
            throw std::invalid_argument("no attribute model for column: " + name);
        return it->second;
    };

    std::vector<int> ground_truth;
    ground_truth.reserve(n);

    // pass 1: independent draws, row-major within each group block
    std::size_t row = 0;
    for (const auto& group : config.groups) {
        for (std::size_t g = 0; g < group.size; ++g, ++row) {
            ground_truth.push_back(group.id);
            for (auto& col : cols) {
                const std::string& name = col.spec.name;
                if (col.spec.category == AttributeCategory::Identifier) {
                    col.numeric[row] = static_cast<double>(100000 + row);
                    continue;
                }
                const AttributeModel& m = model_of(name);
                switch (m.family) {
                    case AttributeModel::Family::LogNormal: {
                        double v = rng.lognormal(std::log(m.a), m.b);
                        auto shift = group.shifts.find(name);
                        if (shift != group.shifts.end())
                            v = std::max(0.0, v + shift->second * base_iqr(m));
                        col.numeric[row] = v;
                        break;
                    }
                    case AttributeModel::Family::Normal: {
                        double v = rng.normal(m.a, m.b);
                        auto shift = group.shifts.find(name);
                        if (shift != group.shifts.end()) v += shift->second * base_iqr(m);
                        col.numeric[row] = std::max(m.lo_clamp, v);
                        break;
                    }
                    case AttributeModel::Family::UniformInt:
                        col.numeric[row] = static_cast<double>(
                            rng.uniform_int(static_cast<int>(m.a), static_cast<int>(m.b)));
                        break;
                    case AttributeModel::Family::Categorical: {
                        double total = 0.0;
                        for (double w : m.weights) total += w;
                        double target = rng.uniform() * total;
                        std::size_t pick = m.labels.size() - 1;
                        double acc = 0.0;
                        for (std::size_t c = 0; c < m.weights.size(); ++c) {
                            acc += m.weights[c];
                            if (acc >= target) {
                                pick = c;
                                break;
                            }
                        }
                        col.labels[row] = m.labels[pick];
                        break;
                    }
                    case AttributeModel::Family::Derived:
                        break;  // pass 2
                }
            }
        }
    }

    // pass 2: derived columns from their sources
    for (auto& col : cols) {
        if (col.spec.category == AttributeCategory::Identifier) continue;
        const AttributeModel& m = model_of(col.spec.name);
        if (m.family != AttributeModel::Family::Derived) continue;
        const Column* source = nullptr;
        for (const auto& c : cols)
            if (c.spec.name == m.source) source = &c;
        if (!source || !source->is_numeric())
            throw std::invalid_argument("derived column source missing: " + m.source);
        for (std::size_t i = 0; i < n; ++i)
            col.numeric[i] = m.factor * source->numeric[i] *
                             (m.noise > 0.0 ? std::exp(rng.normal(0.0, m.noise)) : 1.0);
    }

    // duplicates: re-emit sampled rows under the same pid with a fresh
    // contact date
    const auto dup_count = static_cast<std::size_t>(config.duplicate_rate *
                                                    static_cast<double>(n));
    if (dup_count > 0) {
        auto sources = rng.sample_without_replacement(n, dup_count);
        for (std::size_t s : sources) {
            for (auto& col : cols) {
                col.missing.push_back(col.missing[s]);
                if (col.is_numeric())
                    col.numeric.push_back(col.numeric[s]);
                else
                    col.labels.push_back(col.labels[s]);
                if (col.spec.name == "month")
                    col.numeric.back() = static_cast<double>(rng.uniform_int(1, 12));
                else if (col.spec.name == "year")
                    col.numeric.back() = static_cast<double>(rng.uniform_int(2004, 2008));
            }
            ground_truth.push_back(ground_truth[s]);
        }
    }

    // missing-value injection over non-identifier cells
    if (config.missing_rate > 0.0) {
        const std::size_t total_rows = n + dup_count;
        for (std::size_t i = 0; i < total_rows; ++i) {
            for (auto& col : cols) {
                if (col.spec.category == AttributeCategory::Identifier) continue;
                if (rng.uniform() < config.missing_rate) col.missing[i] = 1;
            }
        }
    }

    SynthOutput out;
    out.table = DataTable::from_columns(std::move(cols));
    out.ground_truth = std::move(ground_truth);
    return out;
}

void write_ground_truth_csv(const std::vector<int>& ground_truth, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write ground truth file: " + path);
    out << "group\n";
    for (int g : ground_truth) out << g << '\n';
}

std::vector<int> read_ground_truth_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open ground truth file: " + path);
    std::string line;
    std::getline(in, line);  // header
    std::vector<int> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        out.push_back(std::stoi(line));
    }
    return out;
}

}  // namespace segmint
