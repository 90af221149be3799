#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "spectral_clt/spike_model.hpp"

namespace spectral_clt {

using Json = nlohmann::json;

/// Parses "value:multiplicity[,value:multiplicity...]"; a bare value has
/// multiplicity one. Throws InputError.
std::vector<Spike> parse_spike_spec(std::string_view spec);

/// Parameters of one command: values from an optional JSON config file,
/// overlaid by flags given on the command line.
class RunConfig {
 public:
  RunConfig() : values_(Json::object()) {}

  /// Throws InputError if the file is missing or is not a JSON object.
  static RunConfig from_file(const std::string& path);

  void set(const std::string& key, Json value) { values_[key] = std::move(value); }
  bool has(const std::string& key) const { return values_.contains(key); }
  const Json& values() const noexcept { return values_; }

 private:
  Json values_;
};

/// Typed access to a RunConfig that collects every violation and reports
/// them together from finish().
class ConfigReader {
 public:
  ConfigReader(const RunConfig& config, std::set<std::string> allowed_keys);

  std::optional<int> positive_int(const std::string& key, bool required);
  std::optional<double> real(const std::string& key, bool required);
  std::optional<std::string> text(const std::string& key, bool required);
  std::optional<std::uint64_t> seed(const std::string& key, bool required);
  std::optional<std::vector<double>> real_list(const std::string& key, bool required);
  /// String spec or array of [value, multiplicity] pairs or
  /// {"value":..., "multiplicity":...} objects. Absent means no spikes.
  std::vector<Spike> spikes(const std::string& key);
  bool flag(const std::string& key);

  void fail(std::string message) { errors_.push_back(std::move(message)); }
  bool ok() const noexcept { return errors_.empty(); }
  /// Throws InputError listing every collected violation, one per line.
  void finish() const;

 private:
  const Json* find(const std::string& key, bool required);

  const RunConfig& config_;
  std::vector<std::string> errors_;
};

}  // namespace spectral_clt
