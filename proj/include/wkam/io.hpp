#pragma once

#include <filesystem>
#include <json.hpp>
#include <string>

#include "wkam/hj.hpp"
#include "wkam/mather.hpp"
#include "wkam/weakkam.hpp"

namespace wkam::io {

using json = nlohmann::ordered_json;

// Full round-trip precision (17 significant digits), locale-independent.
std::string format_value(double v);

// FNV-1a over the canonical dump; stable across runs and platforms.
std::string config_hash(const json& config);

// Thrown for missing/ill-typed config fields; what() carries the field path.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json load_config(const std::filesystem::path& path);
double require_number(const json& j, const std::string& path);
long long require_integer(const json& j, const std::string& path);
std::string require_string(const json& j, const std::string& path);
const json& require_node(const json& j, const std::string& path);

// CSV artifacts. Every writer emits a header row and one record per line.
void write_levels_csv(const std::filesystem::path& path, const std::vector<ScalarField>& levels,
                      long long level0);
void write_monitors_csv(const std::filesystem::path& path,
                        const std::vector<LevelMonitor>& monitors, long long level0);
void write_surface_csv(const std::filesystem::path& path, const EffectiveSurface& surface);
void write_measure_csv(const std::filesystem::path& path, const OccupationMeasure& mu);
void write_aubry_csv(const std::filesystem::path& path, const AubrySet& aubry);
void write_scaling_csv(const std::filesystem::path& path, const ScalingReport& report);

// JSON sidecar next to an artifact: config + its hash, grid, model name,
// tolerances, plus command-specific entries. Never includes timestamps, so
// outputs stay byte-identical across runs.
void write_sidecar(const std::filesystem::path& artifact, const json& config,
                   const json& extra);

}  // namespace wkam::io
