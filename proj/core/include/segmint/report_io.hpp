#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>
#include <vector>

#include "segmint/cluster.hpp"
#include "segmint/personality.hpp"
#include "segmint/profiling.hpp"
#include "segmint/validation.hpp"

namespace segmint {

nlohmann::json sweep_config_to_json(const SweepConfig& config);
SweepConfig sweep_config_from_json(const nlohmann::json& j);

// Per (algorithm, k): objective, seed, iterations, silhouette, calinski and
// the assignment file the entry was written to.
nlohmann::json sweep_report_to_json(const SweepReport& report,
                                    const std::vector<std::string>& assignment_files);

// k, algorithm, silhouette, calinski rows for plotting.
std::string scores_csv(const SweepReport& report);

void write_assignments_csv(const std::vector<int>& assignments, const std::string& path);
std::vector<int> read_assignments_csv(const std::string& path);

nlohmann::json selection_to_json(const KSelection& selection);
nlohmann::json profiles_to_json(const std::vector<ExpressionProfile>& profiles);
nlohmann::json groups_to_json(const std::vector<BehaviouralGroup>& groups);
std::vector<BehaviouralGroup> groups_from_json(const nlohmann::json& j);

std::string box_stats_csv(const BoxStats& stats);

}  // namespace segmint
