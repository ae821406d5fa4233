#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "segmint/table.hpp"

namespace segmint {

// Base sampling model for one attribute.
struct AttributeModel {
    enum class Family { LogNormal, Normal, UniformInt, Categorical, Derived };
    Family family = Family::LogNormal;
    double a = 0.0;  // LogNormal: median; Normal: mean; UniformInt: lo
    double b = 0.0;  // LogNormal: sigma (log scale); Normal: sd; UniformInt: hi
    double lo_clamp = 0.0;  // Normal only: lower clamp (monetary non-negativity)
    std::vector<std::string> labels;   // Categorical
    std::vector<double> weights;       // Categorical, same length as labels
    std::string source;                // Derived: value = factor * source * exp(N(0, noise))
    double factor = 1.0;
    double noise = 0.0;
};

// One planted group: shifts are additive offsets expressed as multiples of
// the base distribution's IQR, applied to each draw (clamped at zero for
// monetary attributes).
struct GroupSpec {
    int id = 0;
    std::size_t size = 0;
    std::map<std::string, double> shifts;
};

struct SynthConfig {
    Schema schema;
    std::map<std::string, AttributeModel> models;
    std::vector<GroupSpec> groups;
    double missing_rate = 0.0;
    double duplicate_rate = 0.0;
};

// interquartile ranges of the base families, used to translate shift
// multiples into raw offsets
double lognormal_iqr(double median, double sigma);
double normal_iqr(double sd);

// Six planted spending-behaviour groups over the default schema, signature
// attributes offset by +/-2 IQR.
SynthConfig default_synth_config();

SynthConfig load_synth_config(const std::string& path);
void save_synth_config(const SynthConfig& config, const std::string& path);

struct SynthOutput {
    DataTable table;
    std::vector<int> ground_truth;  // group id per emitted row
};

// Deterministic generation: same config and seed give byte-identical CSV.
// Duplicate rows reuse an existing pid (contact date re-drawn) and are
// appended after the base rows.
SynthOutput generate(const SynthConfig& config, std::uint64_t seed);

void write_ground_truth_csv(const std::vector<int>& ground_truth, const std::string& path);
std::vector<int> read_ground_truth_csv(const std::string& path);

}  // namespace segmint
