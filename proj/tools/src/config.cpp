#include "config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "derham/errors.hpp"
#include "derham/presets.hpp"

namespace derham::cli {

namespace {

using nlohmann::json;

Scalar parse_entry(const json& value, bool decimal_exact, const std::string& where) {
  try {
    if (value.is_string()) return Scalar::parse(value.get<std::string>(), decimal_exact);
    if (value.is_number_integer()) return Scalar(value.get<long long>());
    if (value.is_number_unsigned()) return Scalar(Rational(value.get<unsigned long long>()));
    if (value.is_number_float()) {
      const Scalar x = Scalar::approx(value.get<double>());
      return decimal_exact ? x.to_mode(Mode::exact) : x;
    }
  } catch (const DomainError& e) {
    throw ParseError(where + ": " + e.what());
  }
  throw ParseError(where + ": expected a number or a numeric string");
}

MoebiusMatrix parse_matrix(const json& value, bool decimal_exact, const std::string& name) {
  json flat = value;
  // Accept [[a, b], [c, d]] as well as [a, b, c, d].
  if (value.is_array() && value.size() == 2 && value[0].is_array() && value[1].is_array()) {
    flat = json::array();
    for (const auto& row : value) {
      if (row.size() != 2) throw ParseError(name + ": rows must have two entries");
      flat.push_back(row[0]);
      flat.push_back(row[1]);
    }
  }
  if (!flat.is_array() || flat.size() != 4)
    throw ParseError(name + ": expected four entries a, b, c, d");
  static const char* const names[] = {"a", "b", "c", "d"};
  Scalar e[4];
  for (int i = 0; i < 4; ++i)
    e[i] = parse_entry(flat[i], decimal_exact, name + "." + names[i]);
  return {e[0], e[1], e[2], e[3]};
}

SystemConfig preset_from(std::string_view name, std::string_view param, bool decimal_exact) {
  Scalar value;
  try {
    value = Scalar::parse(param, decimal_exact);
  } catch (const DomainError& e) {
    throw ParseError("preset parameter: " + std::string(e.what()));
  }
  SystemConfig config;
  config.preset = std::string(name) + ":" + std::string(param);
  DeRhamSystem sys = [&] {
    if (name == "lebesgue") return presets::lebesgue(value);
    if (name == "walk") return presets::walk(value);
    throw ParseError("unknown preset '" + std::string(name) + "' (expected lebesgue or walk)");
  }();
  config.a0 = sys.a0();
  config.a1 = sys.a1();
  return config;
}

}  // namespace

SystemConfig parse_config(std::string_view text, bool decimal_exact) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError("malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  if (!doc.is_object()) throw ParseError("config must be a JSON object");
  if (doc.contains("schema")) {
    const auto& schema = doc["schema"];
    if (!schema.is_number_integer() || schema.get<int>() != kSchemaVersion)
      throw ParseError("unsupported schema " + schema.dump() + " (expected 1)");
  }

  const bool has_matrices = doc.contains("A0") || doc.contains("A1");
  const bool has_preset = doc.contains("preset");
  if (has_matrices == has_preset)
    throw ParseError("config needs either A0 and A1 or a preset, not both");

  SystemConfig config;
  if (has_preset) {
    const auto& p = doc["preset"];
    if (p.is_string()) {
      config = preset_config(p.get<std::string>(), decimal_exact);
    } else if (p.is_object() && p.size() == 1) {
      const auto& [name, param] = *p.items().begin();
      const std::string text = param.is_string() ? param.get<std::string>() : param.dump();
      config = preset_from(name, text, decimal_exact);
    } else {
      throw ParseError("preset must be {\"lebesgue\": p}, {\"walk\": u} or \"name:param\"");
    }
  } else {
    if (!doc.contains("A0") || !doc.contains("A1")) throw ParseError("both A0 and A1 are required");
    config.a0 = parse_matrix(doc["A0"], decimal_exact, "A0");
    config.a1 = parse_matrix(doc["A1"], decimal_exact, "A1");
  }
  if (doc.contains("label")) {
    if (!doc["label"].is_string()) throw ParseError("label must be a string");
    config.label = doc["label"].get<std::string>();
  }
  return config;
}

SystemConfig read_config_file(const std::string& path, bool decimal_exact) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path + "'");
  return parse_config(buffer.str(), decimal_exact);
}

SystemConfig preset_config(std::string_view text, bool decimal_exact) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw ParseError("preset must look like NAME:PARAM, got '" + std::string(text) + "'");
  return preset_from(text.substr(0, colon), text.substr(colon + 1), decimal_exact);
}

DeRhamSystem build_system(const SystemConfig& config, std::optional<Mode> mode) {
  DeRhamSystem sys = validate(config.a0, config.a1);
  if (!mode || *mode == sys.mode()) return sys;
  if (*mode == Mode::exact)
    throw PreconditionError("exact mode requested but the system has irrational or decimal entries");
  return sys.to_mode(Mode::approx);
}

}  // namespace derham::cli
