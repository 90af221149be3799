#include "spectral_clt/run_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "spectral_clt/errors.hpp"

namespace spectral_clt {

std::vector<Spike> parse_spike_spec(std::string_view spec) {
  std::vector<Spike> spikes;
  if (spec.empty()) return spikes;
  auto bad = [&](std::string_view item) {
    return InputError("bad spike '" + std::string(item) + "' (expected value:multiplicity)");
  };
  while (true) {
    const auto comma = spec.find(',');
    const std::string_view item = spec.substr(0, comma);
    const auto colon = item.find(':');
    const std::string_view value_text = item.substr(0, colon);
    Spike s;
    auto [vp, ve] = std::from_chars(value_text.data(), value_text.data() + value_text.size(), s.value);
    if (value_text.empty() || ve != std::errc{} || vp != value_text.data() + value_text.size()) throw bad(item);
    if (colon != std::string_view::npos) {
      const std::string_view mult_text = item.substr(colon + 1);
      auto [mp, me] = std::from_chars(mult_text.data(), mult_text.data() + mult_text.size(), s.multiplicity);
      if (mult_text.empty() || me != std::errc{} || mp != mult_text.data() + mult_text.size()) throw bad(item);
    }
    spikes.push_back(s);
    if (comma == std::string_view::npos) break;
    spec.remove_prefix(comma + 1);
  }
  return spikes;
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config '" + path + "'");
  RunConfig config;
  try {
    in >> config.values_;
  } catch (const Json::exception& e) {
    throw InputError("config '" + path + "' is not valid JSON: " + e.what());
  }
  if (!config.values_.is_object()) throw InputError("config '" + path + "' must be a JSON object");
  return config;
}

ConfigReader::ConfigReader(const RunConfig& config, std::set<std::string> allowed_keys)
    : config_(config) {
  for (const auto& [key, value] : config.values().items()) {
    if (!allowed_keys.contains(key)) errors_.push_back("unknown key '" + key + "'");
  }
}

const Json* ConfigReader::find(const std::string& key, bool required) {
  const auto& values = config_.values();
  const auto it = values.find(key);
  if (it == values.end() || it->is_null()) {
    if (required) errors_.push_back("missing required '" + key + "'");
    return nullptr;
  }
  return &*it;
}

std::optional<int> ConfigReader::positive_int(const std::string& key, bool required) {
  const Json* v = find(key, required);
  if (!v) return std::nullopt;
  if (!v->is_number_integer() || v->get<long long>() < 1 || v->get<long long>() > (1LL << 30)) {
    errors_.push_back("'" + key + "' must be a positive integer, got " + v->dump());
    return std::nullopt;
  }
  return v->get<int>();
}

std::optional<double> ConfigReader::real(const std::string& key, bool required) {
  const Json* v = find(key, required);
  if (!v) return std::nullopt;
  if (!v->is_number() || !std::isfinite(v->get<double>())) {
    errors_.push_back("'" + key + "' must be a number, got " + v->dump());
    return std::nullopt;
  }
  return v->get<double>();
}

std::optional<std::string> ConfigReader::text(const std::string& key, bool required) {
  const Json* v = find(key, required);
  if (!v) return std::nullopt;
  if (!v->is_string()) {
    errors_.push_back("'" + key + "' must be a string, got " + v->dump());
    return std::nullopt;
  }
  return v->get<std::string>();
}

std::optional<std::uint64_t> ConfigReader::seed(const std::string& key, bool required) {
  const Json* v = find(key, required);
  if (!v) return std::nullopt;
  if (!v->is_number_integer() || (v->is_number_integer() && !v->is_number_unsigned() && v->get<long long>() < 0)) {
    errors_.push_back("'" + key + "' must be a non-negative integer, got " + v->dump());
    return std::nullopt;
  }
  return v->get<std::uint64_t>();
}

std::optional<std::vector<double>> ConfigReader::real_list(const std::string& key, bool required) {
  const Json* v = find(key, required);
  if (!v) return std::nullopt;
  std::vector<double> out;
  if (v->is_number()) {
    out.push_back(v->get<double>());
  } else if (v->is_array()) {
    for (const auto& item : *v) {
      if (!item.is_number()) {
        errors_.push_back("'" + key + "' must contain only numbers, got " + item.dump());
        return std::nullopt;
      }
      out.push_back(item.get<double>());
    }
  } else if (v->is_string()) {
    std::string_view rest = v->get_ref<const std::string&>();
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string_view item = rest.substr(0, comma);
      double x = 0.0;
      const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), x);
      if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size()) {
        errors_.push_back("'" + key + "': '" + std::string(item) + "' is not a number");
        return std::nullopt;
      }
      out.push_back(x);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
  } else {
    errors_.push_back("'" + key + "' must be a number list, got " + v->dump());
    return std::nullopt;
  }
  if (out.empty()) {
    errors_.push_back("'" + key + "' is empty");
    return std::nullopt;
  }
  return out;
}

std::vector<Spike> ConfigReader::spikes(const std::string& key) {
  const Json* v = find(key, false);
  if (!v) return {};
  try {
    if (v->is_string()) return parse_spike_spec(v->get<std::string>());
    if (v->is_array()) {
      std::vector<Spike> out;
      for (const auto& item : *v) {
        if (item.is_array() && item.size() == 2 && item[0].is_number() && item[1].is_number_integer()) {
          out.push_back({item[0].get<double>(), item[1].get<int>()});
        } else if (item.is_object() && item.contains("value") && item["value"].is_number()) {
          const int mult = item.value("multiplicity", 1);
          out.push_back({item["value"].get<double>(), mult});
        } else {
          errors_.push_back("'" + key + "': bad spike entry " + item.dump());
        }
      }
      return out;
    }
  } catch (const Error& e) {
    errors_.push_back(e.what());
    return {};
  } catch (const Json::exception& e) {
    errors_.push_back("'" + key + "': " + e.what());
    return {};
  }
  errors_.push_back("'" + key + "' must be a spike string or array, got " + v->dump());
  return {};
}

bool ConfigReader::flag(const std::string& key) {
  const Json* v = find(key, false);
  if (!v) return false;
  if (!v->is_boolean()) {
    errors_.push_back("'" + key + "' must be true or false, got " + v->dump());
    return false;
  }
  return v->get<bool>();
}

void ConfigReader::finish() const {
  if (errors_.empty()) return;
  std::ostringstream msg;
  msg << "invalid configuration (" << errors_.size() << " problem" << (errors_.size() > 1 ? "s" : "")
      << "):";
  for (const auto& e : errors_) msg << "\n  - " << e;
  throw InputError(msg.str());
}

}  // namespace spectral_clt
