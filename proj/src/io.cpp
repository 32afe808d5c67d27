#include "wkam/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace wkam::io {

namespace {

void open_or_throw(std::ofstream& out, const std::filesystem::path& path) {
  out.open(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path.string());
}

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> parts;
  std::stringstream ss(path);
  std::string item;
  while (std::getline(ss, item, '.')) parts.push_back(item);
  return parts;
}

void coords_columns(std::ofstream& out, const GridSpec& g) {
  for (int a = 0; a < g.d; ++a) out << ",m" << a;
}

}  // namespace

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string config_hash(const json& config) {
  std::string dump = config.dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file: " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config parse error in " + path.string() + ": " + e.what());
  }
}

const json& require_node(const json& j, const std::string& path) {
  const json* cur = &j;
  for (const std::string& part : split_path(path)) {
    if (!cur->is_object() || !cur->contains(part))
      throw ConfigError("missing config field: " + path);
    cur = &(*cur)[part];
  }
  return *cur;
}

double require_number(const json& j, const std::string& path) {
  const json& node = require_node(j, path);
  if (!node.is_number()) throw ConfigError("config field is not a number: " + path);
  return node.get<double>();
}

long long require_integer(const json& j, const std::string& path) {
  const json& node = require_node(j, path);
  if (!node.is_number_integer()) throw ConfigError("config field is not an integer: " + path);
  return node.get<long long>();
}

std::string require_string(const json& j, const std::string& path) {
  const json& node = require_node(j, path);
  if (!node.is_string()) throw ConfigError("config field is not a string: " + path);
  return node.get<std::string>();
}

void write_levels_csv(const std::filesystem::path& path, const std::vector<ScalarField>& levels,
                      long long level0) {
  std::ofstream out;
  open_or_throw(out, path);
  if (levels.empty()) throw std::invalid_argument("write_levels_csv: no levels");
  const GridSpec& g = levels.front().grid;
  out << "level";
  coords_columns(out, g);
  out << ",value\n";
  std::vector<int> m(g.d);
  for (std::size_t j = 0; j < levels.size(); ++j) {
    const ScalarField& v = levels[j];
    for (std::size_t idx : g.sites(v.parity)) {
      g.coords_of(idx, m);
      out << (level0 + static_cast<long long>(j));
      for (int a = 0; a < g.d; ++a) out << ',' << m[static_cast<std::size_t>(a)];
      out << ',' << format_value(v.values[idx]) << '\n';
    }
  }
}

void write_monitors_csv(const std::filesystem::path& path,
                        const std::vector<LevelMonitor>& monitors, long long level0) {
  std::ofstream out;
  open_or_throw(out, path);
  out << "level,max_slope,semiconcavity,cfl_margin\n";
  for (std::size_t j = 0; j < monitors.size(); ++j)
    out << (level0 + static_cast<long long>(j)) << ',' << format_value(monitors[j].max_slope)
        << ',' << format_value(monitors[j].semiconcavity) << ','
        << format_value(monitors[j].cfl_margin) << '\n';
}

void write_surface_csv(const std::filesystem::path& path, const EffectiveSurface& surface) {
  std::ofstream out;
  open_or_throw(out, path);
  for (int a = 0; a < surface.d; ++a) out << "c" << a << ',';
  out << "H,bracket,residual";
  if (!surface.H_forward.empty()) out << ",H_forward";
  out << '\n';
  std::vector<int> idx(static_cast<std::size_t>(surface.d), 0);
  for (std::size_t flat = 0; flat < surface.size(); ++flat) {
    std::vector<double> c = surface.c_at(idx);
    for (double cc : c) out << format_value(cc) << ',';
    out << format_value(surface.H[flat]) << ',' << format_value(surface.bracket[flat]) << ','
        << format_value(surface.residual[flat]);
    if (!surface.H_forward.empty()) out << ',' << format_value(surface.H_forward[flat]);
    out << '\n';
    for (int a = surface.d - 1; a >= 0; --a) {
      if (++idx[static_cast<std::size_t>(a)] <
          static_cast<int>(surface.axes[static_cast<std::size_t>(a)].size()))
        break;
      idx[static_cast<std::size_t>(a)] = 0;
    }
  }
}

void write_measure_csv(const std::filesystem::path& path, const OccupationMeasure& mu) {
  std::ofstream out;
  open_or_throw(out, path);
  const GridSpec& g = mu.grid;
  out << "level";
  coords_columns(out, g);
  out << ",mass";
  for (int a = 0; a < g.d; ++a) out << ",xi" << a;
  out << '\n';
  std::vector<int> m(g.d);
  for (const SupportNode& node : mu.nodes) {
    g.coords_of(node.site, m);
    out << node.level;
    for (int a = 0; a < g.d; ++a) out << ',' << m[static_cast<std::size_t>(a)];
    out << ',' << format_value(node.mass);
    for (double z : node.control) out << ',' << format_value(z);
    out << '\n';
  }
}

void write_aubry_csv(const std::filesystem::path& path, const AubrySet& aubry) {
  std::ofstream out;
  open_or_throw(out, path);
  const GridSpec& g = aubry.grid;
  out << "level";
  coords_columns(out, g);
  for (int a = 0; a < g.d; ++a) out << ",xi" << a;
  out << '\n';
  std::vector<int> m(g.d);
  for (std::size_t k = 0; k < aubry.member.size(); ++k) {
    for (std::size_t idx : g.sites(g.level_parity(static_cast<long long>(k)))) {
      if (!aubry.member[k][idx]) continue;
      g.coords_of(idx, m);
      out << k;
      for (int a = 0; a < g.d; ++a) out << ',' << m[static_cast<std::size_t>(a)];
      std::span<const double> z = aubry.control_at(static_cast<long long>(k), idx);
      for (int a = 0; a < g.d; ++a) out << ',' << format_value(z[static_cast<std::size_t>(a)]);
      out << '\n';
    }
  }
}

void write_scaling_csv(const std::filesystem::path& path, const ScalingReport& report) {
  std::ofstream out;
  open_or_throw(out, path);
  out << "N,K,h,H,bracket,error,interp_gap\n";
  for (const ScalingRow& row : report.rows)
    out << row.N << ',' << row.K << ',' << format_value(row.h) << ','
        << format_value(row.H_delta) << ',' << format_value(row.bracket) << ','
        << format_value(row.error) << ',' << format_value(row.interp_gap) << '\n';
}

void write_sidecar(const std::filesystem::path& artifact, const json& config,
                   const json& extra) {
  json side;
  side["artifact"] = artifact.filename().string();
  side["config"] = config;
  side["config_hash"] = config_hash(config);
  for (auto it = extra.begin(); it != extra.end(); ++it) side[it.key()] = it.value();
  std::ofstream out;
  std::filesystem::path p = artifact;
  p += ".json";
  open_or_throw(out, p);
  out << side.dump(2) << '\n';
}

}  // namespace wkam::io
